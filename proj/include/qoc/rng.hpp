#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace qoc {

// Counter-based splittable random stream: the splitmix64 output function
// applied to a Weyl counter, keyed by hashing (seed, replicate, stage).
// A replicate owns its stream, so results never depend on which thread
// runs it. Satisfies UniformRandomBitGenerator.
class RngStream {
public:
    using result_type = std::uint64_t;

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    explicit RngStream(std::uint64_t seed) : state_(hash(seed)) {}

    RngStream(std::uint64_t seed, std::uint64_t replicate, std::uint64_t stage = 0)
        : state_(hash(hash(hash(seed) ^ (replicate + 0x51'7c'c1'b7'27'22'0a'95ULL)) ^
                      (stage + 0x9e'37'79'b9'7f'4a'7c'15ULL))) {}

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform draw on (0, 1).
    double uniform() {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal draw, Marsaglia polar method with a cached mate.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * f;
        has_cached_ = true;
        return u * f;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t hash(std::uint64_t z) { return mix(z + 0x9e3779b97f4a7c15ULL); }

    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

inline int draw_binomial(RngStream& rng, int n, double p) {
    if (n <= 0) return 0;
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    return std::binomial_distribution<int>(n, p)(rng);
}

inline double draw_gamma(RngStream& rng, double shape) {
    return std::gamma_distribution<double>(shape, 1.0)(rng);
}

inline double draw_beta(RngStream& rng, double a, double b) {
    const double x = draw_gamma(rng, a);
    const double y = draw_gamma(rng, b);
    return x / (x + y);
}

/// Draws an index from a discrete distribution given cumulative weights.
inline int draw_categorical(RngStream& rng, const std::vector<double>& cum) {
    const double u = rng.uniform() * cum.back();
    for (std::size_t i = 0; i < cum.size(); ++i)
        if (u <= cum[i]) return static_cast<int>(i);
    return static_cast<int>(cum.size()) - 1;
}

}  // namespace qoc
