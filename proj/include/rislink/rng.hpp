#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace rislink {

/// One step of the splitmix64 mixing function. Used to turn structured
/// seed material (master seed + stream indices) into well-spread generator
/// seeds, so that related jobs never share a random stream.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent sub-seed from a master seed and a stream index.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(splitmix64(master) ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1));
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t s1, std::uint64_t s2) {
    return derive_seed(derive_seed(master, s1), s2);
}

/// Deterministic random source. All stochastic quantities in the library are
/// drawn through this class from explicit seeds; there is no global generator
/// state anywhere. Gaussian variates use the Marsaglia polar transform rather
/// than std::normal_distribution, whose output is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal variate.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    /// Circularly-symmetric complex Gaussian with E[|z|^2] = variance.
    /// variance == 0 yields exactly zero without consuming draws, so optional
    /// channel components stay aligned across parameterizations.
    std::complex<double> complex_gaussian(double variance) {
        if (variance == 0.0) return {0.0, 0.0};
        const double s = std::sqrt(variance / 2.0);
        const double re = s * gaussian();
        const double im = s * gaussian();
        return {re, im};
    }

    /// Unit-variance complex Gaussian; always consumes the same number of
    /// draws, so scaled uses keep streams aligned across power settings.
    std::complex<double> unit_complex_gaussian() {
        const double s = std::sqrt(0.5);
        const double re = s * gaussian();
        const double im = s * gaussian();
        return {re, im};
    }

    /// Fair coin flip.
    bool flip() { return (gen_() >> 63) != 0; }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rislink
