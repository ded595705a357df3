#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "cojam/linalg2.hpp"

// Deterministic Gaussian sampling.  std::normal_distribution is
// implementation-defined, so identical seeds could give different draws on
// different standard libraries; instead complex Gaussians are produced by an
// explicit Box-Muller transform over mt19937_64, which is fully specified.
namespace cojam {

// splitmix64 finalizer; good avalanche, used to derive independent seed
// streams from (master seed, stream index) pairs.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 0x9E3779B97F4A7C15ull));
}

class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in (0, 1]: top 53 bits of the engine output, shifted off zero so
  // log(u) below is always finite.
  double uniform01() {
    return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
  }

  // One circularly-symmetric complex Gaussian with E|x|^2 = variance.
  // A single Box-Muller pair supplies the real and imaginary parts.
  cx complex_normal(double variance) {
    const double u1 = uniform01();
    const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    const double mag = std::sqrt(-2.0 * std::log(u1)) * std::sqrt(0.5 * variance);
    const double ang = 2.0 * 3.141592653589793238462643383279502884 * u2;
    return {mag * std::cos(ang), mag * std::sin(ang)};
  }

  CVec2 complex_normal_pair(double variance) {
    // Fixed draw order: first component, then second.
    const cx c1 = complex_normal(variance);
    const cx c2 = complex_normal(variance);
    return {c1, c2};
  }

  // Standard real Gaussian (mean 0, unit variance).
  double normal() {
    const double u1 = uniform01();
    const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace cojam
