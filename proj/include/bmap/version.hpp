#pragma once

namespace bmap {

inline constexpr const char* kVersion = "0.1.0";

} // namespace bmap
