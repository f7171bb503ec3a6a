#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "matdiff/matrix.hpp"
#include "matdiff/symmetric_matrix.hpp"

namespace matdiff {

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  [[nodiscard]] double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Eigenvalues in non-decreasing order; column k of `eigenvectors` pairs
/// with eigenvalues[k].
struct SpectralDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;

  [[nodiscard]] std::size_t dim() const noexcept { return eigenvalues.size(); }
  [[nodiscard]] double min_eigenvalue() const { return eigenvalues.front(); }
  [[nodiscard]] double max_eigenvalue() const { return eigenvalues.back(); }

  /// Q diag(values) Q^T.
  [[nodiscard]] SymmetricMatrix reassemble(std::span<const double> values) const {
    const std::size_t d = dim();
    if (values.size() != d) throw DimensionError("reassemble: expected one value per eigenvalue");
    Matrix out(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < d; ++k) s += eigenvectors(i, k) * values[k] * eigenvectors(j, k);
        out(i, j) = s;
        out(j, i) = s;
      }
    return SymmetricMatrix(out);
  }
  [[nodiscard]] SymmetricMatrix reassemble() const { return reassemble(eigenvalues); }
};

struct JacobiSettings {
  int max_sweeps = 50;
  double relative_tolerance = 1e-12;
};

namespace detail {

inline double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace detail

/// Cyclic Jacobi eigensolver. Sweeps over all (p,q) pairs in row order until
/// the off-diagonal Frobenius norm drops below tol * ||A||_F.
inline SpectralDecomposition spectral_decompose(const SymmetricMatrix& input,
                                                const JacobiSettings& settings = {}) {
  const std::size_t d = input.dim();
  Matrix a = input.matrix();
  Matrix v = Matrix::identity(d);
  const double threshold = settings.relative_tolerance * input.frobenius_norm();

  double off = detail::off_diagonal_norm(a);
  int sweep = 0;
  while (off > threshold) {
    if (sweep == settings.max_sweeps) {
      throw ConvergenceError("spectral_decompose: Jacobi did not converge after " +
                                 std::to_string(settings.max_sweeps) +
                                 " sweeps, off-diagonal residual " + std::to_string(off),
                             off);
    }
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < d; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    off = detail::off_diagonal_norm(a);
    ++sweep;
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return a(l, l) < a(r, r); });

  SpectralDecomposition out{Vector(d), Matrix(d)};
  for (std::size_t k = 0; k < d; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

inline Vector eigenvalues(const SymmetricMatrix& a) { return spectral_decompose(a).eigenvalues; }

}  // namespace matdiff
