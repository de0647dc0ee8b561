#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace phkm {

/// Mixes a base seed with stream identifiers so that derived generators are
/// statistically independent.  Uses the splitmix64 finalizer, which is a
/// bijection on 64-bit words.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return mix_seed(mix_seed(seed, a), b);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
    return mix_seed(mix_seed(seed, a, b), c);
}

/// Deterministic random number generator.
///
/// Wraps std::mt19937_64 but implements all distribution draws by hand, so a
/// given seed produces an identical stream on every platform and standard
/// library.  (The engine is specified exactly by the standard; the
/// distribution classes are not.)
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw from [0, 1) with 53 bits of precision.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform draw from [a, b).
    double uniform(double a, double b) {
        if (!(a <= b)) throw std::invalid_argument("uniform: requires a <= b");
        return a + (b - a) * uniform();
    }

    /// Standard normal draw via the Box-Muller transform.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * pi() * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Unbiased uniform integer from [0, n) via rejection sampling.
    std::uint64_t integer(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("integer: n must be positive");
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

    /// Index draw proportional to the given non-negative weights.
    std::size_t weighted_index(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) {
            if (w < 0.0 || !std::isfinite(w))
                throw std::invalid_argument("weighted_index: weights must be finite and >= 0");
            total += w;
        }
        if (total <= 0.0) return integer(weights.size());
        double target = uniform() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (target < acc) return i;
        }
        return weights.size() - 1;
    }

    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace phkm
