#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

namespace rct {

/// Seed for every stochastic routine in the library. Identical seed + identical
/// parameters reproduce identical output bits on a given platform.
using Seed = std::uint64_t;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace detail {
constexpr std::uint64_t mix_seed_word(std::uint64_t h, std::uint64_t v) noexcept {
    return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}
}  // namespace detail

/// Derive an independent child seed from a base seed and an ordered key
/// (cell coordinates, replicate index, ...). The derivation is a pure hash,
/// so workers can draw their own seeds in any order.
template <class... Words>
constexpr Seed derive_seed(Seed base, Words... words) noexcept {
    std::uint64_t h = splitmix64(base);
    ((h = detail::mix_seed_word(h, static_cast<std::uint64_t>(words))), ...);
    return h;
}

/// Stable 64-bit key for a double-valued grid coordinate.
inline std::uint64_t key_bits(double v) noexcept {
    return std::bit_cast<std::uint64_t>(v);
}

/// Seeded generator with the couple of draws this library needs: raw 64-bit
/// words, unbiased bounded integers, and standard normals (Box-Muller, so the
/// stream is identical wherever the mt19937_64 stream is).
class Rng {
public:
    explicit Rng(Seed seed) : engine_(splitmix64(seed ^ 0x5bf0363546e35f19ULL)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n), unbiased via rejection. n must be >= 1.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t x = engine_();
            if (x >= threshold) return x % n;
        }
    }

    /// Uniform double in (0, 1].
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal draw.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace rct
