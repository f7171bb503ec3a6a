#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "matdiff/matrix.hpp"
#include "matdiff/symmetric_matrix.hpp"

namespace matdiff {

/// Counter-based normal and uniform draws. A stream is a 64-bit key derived by
/// hashing (seed, index, ...); draw k of a stream is a pure function of
/// (key, k), so any subset of draws can be produced in any order or thread.
namespace rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t index) noexcept {
  return mix64(mix64(key + kGolden) ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

/// Uniform in (0, 1].
constexpr double uniform_at(std::uint64_t key, std::uint64_t counter) noexcept {
  const std::uint64_t bits = mix64(key + (counter + 1) * kGolden);
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

/// Standard normal by Box-Muller on uniforms (2k, 2k+1).
inline double normal_at(std::uint64_t key, std::uint64_t counter) noexcept {
  const double u1 = uniform_at(key, 2 * counter);
  const double u2 = uniform_at(key, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rng

/// Sequential view over one counter-based stream.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t index) : key_(rng::derive(seed, index)) {}
  RngStream(std::uint64_t seed, std::uint64_t index, std::uint64_t sub)
      : key_(rng::derive(rng::derive(seed, index), sub)) {}

  double uniform() noexcept { return rng::uniform_at(key_, counter_++); }
  double normal() noexcept { return rng::normal_at(key_, counter_++); }
  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Gaussian matrix with i.i.d. N(0,1) entries.
inline Matrix random_gaussian_matrix(std::size_t dim, RngStream& stream) {
  Matrix g(dim);
  for (double& v : g.data()) v = stream.normal();
  return g;
}

/// Entries N(0,1), then symmetrized as (G + G^T)/2.
inline SymmetricMatrix random_symmetric(std::size_t dim, RngStream& stream) {
  const Matrix g = random_gaussian_matrix(dim, stream);
  Matrix s(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) s(i, j) = 0.5 * (g(i, j) + g(j, i));
  return SymmetricMatrix(s);
}

/// G^T G with G Gaussian.
inline SymmetricMatrix random_psd(std::size_t dim, RngStream& stream) {
  const Matrix g = random_gaussian_matrix(dim, stream);
  return SymmetricMatrix(g.transpose() * g);
}

/// Normalized Gaussian vector, uniform on the sphere.
inline UnitVector random_unit_vector(std::size_t dim, RngStream& stream) {
  std::vector<double> v(dim);
  for (;;) {
    double n2 = 0.0;
    for (double& x : v) {
      x = stream.normal();
      n2 += x * x;
    }
    if (n2 > 1e-300) return UnitVector(std::move(v));
  }
}

}  // namespace matdiff
