#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "agsp/common.hpp"
#include "agsp/matrix.hpp"

namespace agsp {

/// Deterministic standard-normal stream: MT19937-64 drives 53-bit uniforms in
/// (0, 1], turned into normal pairs by the Box-Muller transform. The generator
/// is fully specified so a seed reproduces the same stream everywhere.
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

  private:
    // (0, 1]: zero excluded so log() stays finite
    double uniform01() {
        const std::uint64_t bits = rng_() >> 11;  // top 53 bits
        return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
    }
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// x + sigma * g with g drawn from NormalSampler(seed).
inline RealVec add_gaussian_noise(const RealVec& x, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw param_error("add_gaussian_noise: sigma must be nonnegative");
    if (sigma == 0.0) return x;
    NormalSampler g(seed);
    RealVec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + sigma * g();
    return y;
}

}  // namespace agsp
