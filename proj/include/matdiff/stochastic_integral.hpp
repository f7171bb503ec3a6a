#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "matdiff/brownian.hpp"
#include "matdiff/matrix.hpp"
#include "matdiff/symmetric_matrix.hpp"

namespace matdiff {

class GridMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Symmetric-matrix-valued process sampled at every grid point t_0..t_n.
/// Value k may depend only on path information up to t_k.
class MatrixProcess {
 public:
  MatrixProcess(TimeGrid grid, std::vector<SymmetricMatrix> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.steps() + 1)
      throw GridMismatchError("MatrixProcess: need steps + 1 values, got " + std::to_string(values_.size()));
    for (const auto& v : values_)
      if (v.dim() != values_.front().dim()) throw DimensionError("MatrixProcess: mixed dimensions");
  }

  static MatrixProcess constant(const TimeGrid& grid, const SymmetricMatrix& value) {
    return {grid, std::vector<SymmetricMatrix>(grid.steps() + 1, value)};
  }

  [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t dim() const noexcept { return values_.front().dim(); }
  [[nodiscard]] const SymmetricMatrix& at(std::size_t k) const { return values_.at(k); }
  [[nodiscard]] const std::vector<SymmetricMatrix>& values() const noexcept { return values_; }

 private:
  TimeGrid grid_;
  std::vector<SymmetricMatrix> values_;
};

namespace detail {

inline void check_compatible(const MatrixProcess& a, const BrownianPath& path, const MatrixProcess& c,
                             std::size_t k_end) {
  if (!(a.grid() == path.grid()) || !(c.grid() == path.grid()))
    throw GridMismatchError("stochastic integral: process and path grids differ");
  if (a.dim() != path.dim() || c.dim() != path.dim())
    throw DimensionError("stochastic integral: process and path dimensions differ");
  if (k_end > path.grid().steps())
    throw std::out_of_range("stochastic integral: k_end beyond grid");
}

inline void check_compatible(const MatrixProcess& a, const MatrixProcess& c, std::size_t k_end) {
  if (!(a.grid() == c.grid())) throw GridMismatchError("isometry_rhs: process grids differ");
  if (a.dim() != c.dim()) throw DimensionError("isometry_rhs: process dimensions differ");
  if (k_end > a.grid().steps()) throw std::out_of_range("isometry_rhs: k_end beyond grid");
}

}  // namespace detail

/// Left-point partial sums of A dB C at every grid index: element k is
/// sum_{m<k} A_{t_m} dB_m C_{t_m}, element 0 is zero.
inline std::vector<Matrix> ito_integral_path(const MatrixProcess& a, const BrownianPath& path,
                                             const MatrixProcess& c) {
  detail::check_compatible(a, path, c, path.grid().steps());
  const std::size_t n = path.grid().steps();
  std::vector<Matrix> out;
  out.reserve(n + 1);
  out.emplace_back(path.dim());
  for (std::size_t m = 0; m < n; ++m)
    out.push_back(out.back() + a.at(m).matrix() * path.increment(m) * c.at(m).matrix());
  return out;
}

/// sum_{m<k_end} A_{t_m} dB_m C_{t_m}. Not symmetric in general.
inline Matrix ito_integral(const MatrixProcess& a, const BrownianPath& path, const MatrixProcess& c,
                           std::size_t k_end) {
  detail::check_compatible(a, path, c, k_end);
  Matrix sum(path.dim());
  for (std::size_t m = 0; m < k_end; ++m) sum += a.at(m).matrix() * path.increment(m) * c.at(m).matrix();
  return sum;
}

/// sum_{m<k_end} C_{t_m} dB_m^T A_{t_m}, the transpose of ito_integral(A, path, C).
inline Matrix ito_integral_transposed(const MatrixProcess& c, const BrownianPath& path,
                                      const MatrixProcess& a, std::size_t k_end) {
  detail::check_compatible(a, path, c, k_end);
  Matrix sum(path.dim());
  for (std::size_t m = 0; m < k_end; ++m)
    sum += c.at(m).matrix() * path.increment(m).transpose() * a.at(m).matrix();
  return sum;
}

/// M + M^T with M = ito_integral(A, path, C, k_end).
inline SymmetricMatrix symmetrized_diffusion(const MatrixProcess& a, const BrownianPath& path,
                                             const MatrixProcess& c, std::size_t k_end) {
  return SymmetricMatrix::sum_with_transpose(ito_integral(a, path, c, k_end));
}

inline std::vector<SymmetricMatrix> symmetrized_diffusion_path(const MatrixProcess& a,
                                                               const BrownianPath& path,
                                                               const MatrixProcess& c) {
  std::vector<SymmetricMatrix> out;
  for (const Matrix& m : ito_integral_path(a, path, c)) out.push_back(SymmetricMatrix::sum_with_transpose(m));
  return out;
}

/// Single-path contribution to the isometry right-hand side:
/// sum_{m<k_end} x^T C_m^T C_m A_m A_m^T y dt.
inline double isometry_rhs(const MatrixProcess& a, const MatrixProcess& c, std::span<const double> x,
                           std::span<const double> y, std::size_t k_end) {
  detail::check_compatible(a, c, k_end);
  if (x.size() != a.dim() || y.size() != a.dim()) throw DimensionError("isometry_rhs: vector length");
  const double dt = a.grid().dt();
  double sum = 0.0;
  for (std::size_t m = 0; m < k_end; ++m) {
    const Matrix& am = a.at(m).matrix();
    const Matrix& cm = c.at(m).matrix();
    const Matrix integrand = cm.transpose() * cm * am * am.transpose();
    sum += bilinear(x, integrand, y) * dt;
  }
  return sum;
}

/// Left-point Riemann sums of P at every grid index.
inline std::vector<SymmetricMatrix> time_integral_path(const MatrixProcess& p) {
  const double dt = p.grid().dt();
  std::vector<SymmetricMatrix> out;
  out.reserve(p.grid().steps() + 1);
  out.emplace_back(p.dim());
  for (std::size_t m = 0; m < p.grid().steps(); ++m) out.push_back(out.back() + p.at(m) * dt);
  return out;
}

/// sum_{m<k_end} P_{t_m} dt.
inline SymmetricMatrix time_integral(const MatrixProcess& p, std::size_t k_end) {
  if (k_end > p.grid().steps()) throw std::out_of_range("time_integral: k_end beyond grid");
  const double dt = p.grid().dt();
  SymmetricMatrix sum(p.dim());
  for (std::size_t m = 0; m < k_end; ++m) sum += p.at(m) * dt;
  return sum;
}

}  // namespace matdiff
