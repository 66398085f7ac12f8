#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace mst {

// splitmix64 finalizer; used both as a mixer and as a seed expander.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic random stream. Draws are produced by a mt19937_64 engine
/// (bit-identical across platforms); uniform doubles are built from the raw
/// 64-bit output rather than std::uniform_real_distribution, whose mapping is
/// implementation-defined.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    /// Uniform double in (0,1): 53 mantissa bits, offset by half an ulp so
    /// neither endpoint is attainable.
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Lemire-style rejection for an unbiased draw.
        std::uint64_t x = engine_();
        __uint128_t prod = static_cast<__uint128_t>(x) * n;
        auto low = static_cast<std::uint64_t>(prod);
        if (low < n) {
            std::uint64_t threshold = (0ULL - n) % n;
            while (low < threshold) {
                x = engine_();
                prod = static_cast<__uint128_t>(x) * n;
                low = static_cast<std::uint64_t>(prod);
            }
        }
        return static_cast<std::uint64_t>(prod >> 64);
    }

    double normal() {
        // Marsaglia polar, cached second value.
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * f;
        have_cached_ = true;
        return u * f;
    }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

/// Split-style stream derivation: the master seed and every path element are
/// folded through splitmix64, so distinct (master, path) pairs give
/// independent engines and identical pairs give bit-identical streams.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::span<const std::uint64_t> path) {
    std::uint64_t state = master;
    std::uint64_t seed = splitmix64(state);
    for (std::uint64_t p : path) {
        state ^= p * 0xff51afd7ed558ccdULL;
        seed ^= splitmix64(state);
    }
    return seed;
}

inline RandomStream derive_stream(std::uint64_t master,
                                  std::initializer_list<std::uint64_t> path) {
    std::vector<std::uint64_t> p(path);
    return RandomStream(derive_seed(master, p));
}

}  // namespace mst
