#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "matdiff/matrix.hpp"

namespace matdiff {

class SymmetryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Real symmetric d x d matrix. Entries (i,j) and (j,i) are bitwise equal and
/// finite.
class SymmetricMatrix {
 public:
  /// Relative asymmetry above which construction from a general matrix fails.
  static constexpr double kAsymmetryTolerance = 1e-8;

  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t dim) : m_(dim) {}

  /// Symmetrizes as (M + M^T)/2. Rejects ||M - M^T||_F > 1e-8 ||M||_F and
  /// non-finite entries.
  explicit SymmetricMatrix(const Matrix& m) : m_(m.dim()) {
    const std::size_t d = m.dim();
    if (!m.all_finite()) throw SymmetryError("SymmetricMatrix: non-finite entry");
    double asym = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const double diff = m(i, j) - m(j, i);
        asym += diff * diff;
      }
    asym = std::sqrt(asym);
    if (asym > kAsymmetryTolerance * m.frobenius_norm()) {
      throw SymmetryError("SymmetricMatrix: input is not symmetric (||M - M^T||_F = " +
                          std::to_string(asym) + ")");
    }
    for (std::size_t i = 0; i < d; ++i) {
      m_(i, i) = m(i, i);
      for (std::size_t j = i + 1; j < d; ++j) {
        const double v = 0.5 * (m(i, j) + m(j, i));
        m_(i, j) = v;
        m_(j, i) = v;
      }
    }
  }

  SymmetricMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : SymmetricMatrix(Matrix(rows)) {}

  static SymmetricMatrix zero(std::size_t dim) { return SymmetricMatrix(dim); }
  static SymmetricMatrix identity(std::size_t dim) { return SymmetricMatrix(Matrix::identity(dim)); }
  static SymmetricMatrix diagonal(std::span<const double> diag) {
    return SymmetricMatrix(Matrix::diagonal(diag));
  }
  static SymmetricMatrix scaled_identity(std::size_t dim, double s) {
    return SymmetricMatrix(Matrix::identity(dim) * s);
  }

  [[nodiscard]] std::size_t dim() const noexcept { return m_.dim(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  [[nodiscard]] const Matrix& matrix() const noexcept { return m_; }
  [[nodiscard]] double frobenius_norm() const noexcept { return m_.frobenius_norm(); }
  [[nodiscard]] double trace() const noexcept { return m_.trace(); }

  /// A*A, exactly symmetric since both triangles sum identical products.
  [[nodiscard]] SymmetricMatrix squared() const { return SymmetricMatrix(m_ * m_); }

  /// Upper triangle in row order: (0,0), (0,1), ..., (0,d-1), (1,1), ...
  [[nodiscard]] std::vector<double> upper_triangle() const {
    std::vector<double> out;
    out.reserve(dim() * (dim() + 1) / 2);
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i; j < dim(); ++j) out.push_back(m_(i, j));
    return out;
  }

  SymmetricMatrix& operator+=(const SymmetricMatrix& o) {
    m_ += o.m_;
    return *this;
  }
  SymmetricMatrix& operator-=(const SymmetricMatrix& o) {
    m_ -= o.m_;
    return *this;
  }
  SymmetricMatrix& operator*=(double s) {
    m_ *= s;
    return *this;
  }
  friend SymmetricMatrix operator+(SymmetricMatrix a, const SymmetricMatrix& b) { return a += b; }
  friend SymmetricMatrix operator-(SymmetricMatrix a, const SymmetricMatrix& b) { return a -= b; }
  friend SymmetricMatrix operator*(SymmetricMatrix a, double s) { return a *= s; }
  friend SymmetricMatrix operator*(double s, SymmetricMatrix a) { return a *= s; }
  friend Matrix operator*(const SymmetricMatrix& a, const SymmetricMatrix& b) { return a.m_ * b.m_; }
  friend Vector operator*(const SymmetricMatrix& a, std::span<const double> x) { return a.m_ * x; }
  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

  /// M + M^T. Both triangles add the same two numbers, so the result is
  /// exactly symmetric without a tolerance check.
  static SymmetricMatrix sum_with_transpose(const Matrix& m) {
    SymmetricMatrix s(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j) s.m_(i, j) = m(i, j) + m(j, i);
    if (!s.m_.all_finite()) throw SymmetryError("SymmetricMatrix: non-finite entry");
    return s;
  }

 private:
  Matrix m_;
};

/// Vector normalized to unit Euclidean length at construction.
class UnitVector {
 public:
  explicit UnitVector(std::vector<double> v) : v_(std::move(v)) {
    double n = 0.0;
    for (double x : v_) n += x * x;
    n = std::sqrt(n);
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("UnitVector: zero or non-finite vector");
    for (double& x : v_) x /= n;
  }
  UnitVector(std::initializer_list<double> v) : UnitVector(std::vector<double>(v)) {}

  static UnitVector basis(std::size_t dim, std::size_t k) {
    std::vector<double> v(dim, 0.0);
    v.at(k) = 1.0;
    return UnitVector(std::move(v));
  }

  [[nodiscard]] std::size_t dim() const noexcept { return v_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return v_; }
  double operator[](std::size_t i) const noexcept { return v_[i]; }

 private:
  std::vector<double> v_;
};

}  // namespace matdiff
