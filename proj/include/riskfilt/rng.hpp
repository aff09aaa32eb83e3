#ifndef RISKFILT_RNG_HPP
#define RISKFILT_RNG_HPP

#include <cstdint>

namespace riskfilt {

/// SplitMix64 finalizer. Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based stream: draw j of stream (seed, k) is
///     mix64(base_k + j * GOLDEN),   base_k = mix64(seed ^ mix64(k + 1)).
/// A draw depends only on (seed, k, j), so results are independent of
/// evaluation order and thread count.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : base_(mix64(seed ^ mix64(stream + 1))), counter_(0) {}

    std::uint64_t next_u64() { return mix64(base_ + (counter_++) * 0x9e3779b97f4a7c15ULL); }

    /// Uniform draw strictly inside (0, 1).
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal draw via the inverse-CDF transform (one uniform per normal).
    double next_normal() { return inverse_normal_cdf(next_uniform()); }

    /// Wichura's AS241 (PPND16) rational approximation of the
    /// standard normal quantile function; relative error below 1e-15
    /// for p in (0, 1).
    static double inverse_normal_cdf(double p);

private:
    std::uint64_t base_;
    std::uint64_t counter_;
};

}  // namespace riskfilt

#endif
