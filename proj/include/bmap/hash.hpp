#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace bmap {

// FNV-1a, 64-bit. Used for content digests (run ids, config digests).
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string to_hex(std::uint64_t value); // 16 lowercase hex digits

} // namespace bmap
