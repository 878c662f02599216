#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace leadlag {

/// SplitMix64 finalizer. Bijective mixing of a 64-bit word.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a 64-bit hash, used for config hashes and day keys.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Counter-based deterministic RNG.
///
/// The stream is fully determined by (seed, stream, substream): output k is
/// mix64(key + k) where key itself is a mix of the three components. Keyed
/// streams are independent of evaluation order, so per-day / per-resample
/// streams give identical results in serial and parallel runs.
class CounterRng {
public:
    static CounterRng keyed(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t substream = 0) {
        CounterRng r;
        r.key_ = mix64(mix64(mix64(seed) ^ stream) ^ substream);
        return r;
    }

    std::uint64_t next_u64() { return mix64(key_ + ++counter_); }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller. Two uniforms per pair, second value
    /// cached, so draws stay a pure function of the counter sequence.
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        // u1 in (0, 1] so log() is finite.
        const double u1 =
            (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    /// Uniform integer in [0, n). Plain modulo: the ~2^-53 bias is
    /// irrelevant next to the cross-language reproducibility of the formula.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace leadlag
