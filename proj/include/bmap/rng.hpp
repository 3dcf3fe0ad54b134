#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace bmap {

// SplitMix64 finalizer. Bijective on 64-bit values.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Counter-based random stream: draw k of stream (master_seed, stream_id,
// purpose) is a pure function of those four integers. Streams are
// independent of evaluation order and of how work is split across threads,
// which is what makes simulations reproducible for any worker count.
class StreamRng {
public:
    StreamRng(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t purpose)
        : key_(mix64(mix64(mix64(master_seed + 0x9e3779b97f4a7c15ULL) ^ stream_id) ^
                     (purpose + 0xd1b54a32d192ed03ULL))) {}

    std::uint64_t next_u64() {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix64(key_ ^ counter_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Standard normal via Box-Muller; the pair's second value is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0x1.0p-200) u1 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    // Uniformly distributed direction (normalized Gaussian vector).
    void unit_vector(std::span<double> out) {
        while (true) {
            double s = 0;
            for (double& x : out) {
                x = normal();
                s += x * x;
            }
            if (s > 1e-24) {
                double inv = 1.0 / std::sqrt(s);
                for (double& x : out) x *= inv;
                return;
            }
        }
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0;
    bool has_spare_ = false;
};

// Purpose keys for per-agent streams.
inline constexpr std::uint64_t kPurposeInit = 0;
inline constexpr std::uint64_t kPurposeWander = 1;

} // namespace bmap
