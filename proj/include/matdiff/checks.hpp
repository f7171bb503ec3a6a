#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "matdiff/brownian.hpp"
#include "matdiff/functional_calculus.hpp"
#include "matdiff/parallel.hpp"
#include "matdiff/random.hpp"
#include "matdiff/report.hpp"
#include "matdiff/sde.hpp"
#include "matdiff/statistics.hpp"
#include "matdiff/stochastic_integral.hpp"

namespace matdiff {

namespace tolerance {
inline constexpr double kInq2 = 1e-10;
inline constexpr double kInqNice = 1e-12;
inline constexpr double kPropCauchy = 1e-10;
inline constexpr double kLipschitzDenominator = 1e-14;
inline constexpr double kStandardErrors = 3.0;
}  // namespace tolerance

// Stream tags keep the draws of different checks independent under one seed.
namespace stream_tag {
inline constexpr std::uint64_t kInq2 = 0x1A;
inline constexpr std::uint64_t kInqNice = 0x2B;
inline constexpr std::uint64_t kPropCauchy = 0x3C;
inline constexpr std::uint64_t kLipschitz = 0x4D;
}  // namespace stream_tag

inline constexpr std::size_t kSampleChunk = 256;

// ---------------------------------------------------------------------------
// Per-sample violation measures. Positive values are violations.

/// -lambda_min(2A^2 + 2B^2 - (A+B)^2).
inline double inq2_violation(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  const SymmetricMatrix gap = 2.0 * a.squared() + 2.0 * b.squared() - (a + b).squared();
  return -spectral_decompose(gap).min_eigenvalue();
}

/// (x^T A x)^2 - x^T A^2 x.
inline double inq_nice_violation(const SymmetricMatrix& a, const UnitVector& x) {
  const double q = quadratic_form(x, a);
  return q * q - quadratic_form(x, a.squared());
}

/// (sum_k x^T A_k x dt)^2 - t sum_k x^T A_k^2 x dt with t = n dt, the
/// pre-limit form of the integral Cauchy inequality.
inline double prop_cauchy_violation(std::span<const SymmetricMatrix> steps, double dt, const UnitVector& x) {
  const double t = dt * static_cast<double>(steps.size());
  double first = 0.0;
  double second = 0.0;
  for (const auto& a : steps) {
    first += quadratic_form(x, a) * dt;
    second += quadratic_form(x, a.squared()) * dt;
  }
  return first * first - t * second;
}

namespace detail {

inline void require_samples(std::size_t samples, std::size_t dim) {
  if (samples == 0) throw std::invalid_argument("check: samples must be at least 1");
  if (dim == 0) throw std::invalid_argument("check: dimension must be positive");
}

/// Maximum of `violation(i)` over samples, computed in parallel chunks.
template <class Fn>
double max_violation(std::size_t samples, Fn violation) {
  const double lowest = -std::numeric_limits<double>::infinity();
  return chunked_reduce<double>(
      samples, kSampleChunk, lowest,
      [&](std::size_t begin, std::size_t end) {
        double worst = lowest;
        for (std::size_t i = begin; i < end; ++i) worst = std::max(worst, violation(i));
        return worst;
      },
      [](double a, double b) { return std::max(a, b); });
}

inline CheckReport make_report(std::string name, std::size_t samples, double worst, double tol) {
  CheckReport r;
  r.name = std::move(name);
  r.samples = samples;
  r.worst_violation = std::max(worst, 0.0);
  r.tolerance = tol;
  r.finalize();
  return r;
}

}  // namespace detail

/// (A+B)^2 <= 2A^2 + 2B^2 on random symmetric pairs.
inline CheckReport check_inq2(std::size_t samples, std::size_t dim, std::uint64_t seed) {
  detail::require_samples(samples, dim);
  const double worst = detail::max_violation(samples, [&](std::size_t i) {
    RngStream s(seed, stream_tag::kInq2, i);
    const SymmetricMatrix a = random_symmetric(dim, s);
    const SymmetricMatrix b = random_symmetric(dim, s);
    return inq2_violation(a, b);
  });
  return detail::make_report("inq2_d" + std::to_string(dim), samples, worst, tolerance::kInq2);
}

/// (x^T A x)^2 <= x^T A^2 x on random symmetric A and uniform unit x.
inline CheckReport check_inq_nice(std::size_t samples, std::size_t dim, std::uint64_t seed) {
  detail::require_samples(samples, dim);
  const double worst = detail::max_violation(samples, [&](std::size_t i) {
    RngStream s(seed, stream_tag::kInqNice, i);
    const SymmetricMatrix a = random_symmetric(dim, s);
    const UnitVector x = random_unit_vector(dim, s);
    return inq_nice_violation(a, x);
  });
  return detail::make_report("inq_nice_d" + std::to_string(dim), samples, worst, tolerance::kInqNice);
}

/// Discrete integral Cauchy inequality on random piecewise-constant processes
/// with `steps` pieces over [0, 1].
inline CheckReport check_prop_cauchy(std::size_t samples, std::size_t dim, std::size_t steps, std::uint64_t seed) {
  detail::require_samples(samples, dim);
  if (steps == 0) throw std::invalid_argument("check_prop_cauchy: steps must be positive");
  const double dt = 1.0 / static_cast<double>(steps);
  const double worst = detail::max_violation(samples, [&](std::size_t i) {
    RngStream s(seed, stream_tag::kPropCauchy, i);
    std::vector<SymmetricMatrix> process;
    process.reserve(steps);
    for (std::size_t k = 0; k < steps; ++k) process.push_back(random_symmetric(dim, s));
    const UnitVector x = random_unit_vector(dim, s);
    return prop_cauchy_violation(process, dt, x);
  });
  return detail::make_report("prop_cauchy_d" + std::to_string(dim), samples, worst, tolerance::kPropCauchy);
}

// ---------------------------------------------------------------------------
// Matrix Lipschitz constant

enum class SpectrumKind { symmetric, psd };

/// How estimate_lipschitz draws A1, A2: Gaussian symmetric or G^T G, times `scale`.
struct MatrixSampler {
  SpectrumKind kind = SpectrumKind::symmetric;
  double scale = 1.0;

  [[nodiscard]] SymmetricMatrix draw(std::size_t dim, RngStream& s) const {
    return (kind == SpectrumKind::psd ? random_psd(dim, s) : random_symmetric(dim, s)) * scale;
  }
};

/// Max over samples of x^T (g(A1)-g(A2))^2 x / x^T (A1-A2)^2 x, skipping pairs
/// whose denominator is below 1e-14.
inline LipschitzEstimate estimate_lipschitz(const ScalarFunctionSpec& fn, std::size_t samples, std::size_t dim,
                                            std::uint64_t seed, MatrixSampler sampler = {}) {
  detail::require_samples(samples, dim);
  // NaN marks a skipped pair.
  const std::vector<double> ratios = parallel_map<double>(samples, [&](std::size_t i) {
    RngStream s(seed, stream_tag::kLipschitz, i);
    const SymmetricMatrix a1 = sampler.draw(dim, s);
    const SymmetricMatrix a2 = sampler.draw(dim, s);
    const UnitVector x = random_unit_vector(dim, s);
    const double den = quadratic_form(x, (a1 - a2).squared());
    if (den < tolerance::kLipschitzDenominator) return std::numeric_limits<double>::quiet_NaN();
    const double num = quadratic_form(x, (apply_scalar_fn(fn, a1) - apply_scalar_fn(fn, a2)).squared());
    return num / den;
  });

  LipschitzEstimate est;
  est.fn_name = fn.name;
  est.dims = {dim};
  for (double r : ratios) {
    if (std::isnan(r)) {
      ++est.skipped;
      continue;
    }
    ++est.sample_count;
    est.sampled_ratio_max = std::max(est.sampled_ratio_max, r);
    est.running_max.push_back(est.sampled_ratio_max);
  }
  if (est.sample_count == 0) throw std::runtime_error("estimate_lipschitz: every sampled pair was degenerate");
  return est;
}

// ---------------------------------------------------------------------------
// Monte Carlo drivers

inline constexpr std::size_t kPathChunk = 512;

/// y^T M^2 x with M = int A dB C over the grid, averaged over paths and
/// compared with the isometry right-hand side at 3 standard errors.
inline CheckReport mc_isometry(const SymmetricMatrix& a, const SymmetricMatrix& c, const Vector& x, const Vector& y,
                               std::size_t paths, const TimeGrid& grid, std::uint64_t seed) {
  if (paths < 2) throw std::invalid_argument("mc_isometry: need at least two paths");
  const std::size_t d = a.dim();
  const MatrixProcess a_proc = MatrixProcess::constant(grid, a);
  const MatrixProcess c_proc = MatrixProcess::constant(grid, c);
  const double rhs = isometry_rhs(a_proc, c_proc, x, y, grid.steps());

  const RunningStats stats = chunked_reduce<RunningStats>(
      paths, kPathChunk, RunningStats{},
      [&](std::size_t begin, std::size_t end) {
        RunningStats local;
        for (std::size_t p = begin; p < end; ++p) {
          const BrownianPath path = sample_path(grid, d, {seed, p});
          const Matrix m = ito_integral(a_proc, path, c_proc, grid.steps());
          local.add(bilinear(y, m * m, x));
        }
        return local;
      },
      [](const RunningStats& l, const RunningStats& r) { return l.merged(r); });

  CheckReport r;
  r.name = "isometry";
  r.samples = paths;
  r.estimate = stats.mean;
  r.expected = rhs;
  r.standard_error = stats.standard_error();
  r.worst_violation = std::abs(stats.mean - rhs);
  r.tolerance = tolerance::kStandardErrors * stats.standard_error();
  r.finalize();
  return r;
}

struct MomentBetaEstimate {
  double beta = 0.0;          ///< max over grid times of the per-time ratio
  std::vector<double> per_time;  ///< ratio at t_1..t_n
  std::size_t paths = 0;
};

/// Smallest beta with E[x^T (M+M^T)^2 x] <= beta (|E[x^T M^2 x]| + |E[x^T (M^T)^2 x]|)
/// at every grid time, M = int A dB C, expectations by Monte Carlo.
inline MomentBetaEstimate estimate_moment_beta(const SymmetricMatrix& a, const SymmetricMatrix& c, std::size_t paths,
                                             const TimeGrid& grid, const UnitVector& x, std::uint64_t seed) {
  if (paths == 0) throw std::invalid_argument("estimate_moment_beta: need at least one path");
  const std::size_t d = a.dim();
  const std::size_t n = grid.steps();
  const MatrixProcess a_proc = MatrixProcess::constant(grid, a);
  const MatrixProcess c_proc = MatrixProcess::constant(grid, c);

  // Per grid time: sums of x^T(M+M^T)^2 x, x^T M^2 x, x^T (M^T)^2 x.
  using Sums = std::vector<double>;
  const Sums totals = chunked_reduce<Sums>(
      paths, kPathChunk, Sums(3 * n, 0.0),
      [&](std::size_t begin, std::size_t end) {
        Sums local(3 * n, 0.0);
        for (std::size_t p = begin; p < end; ++p) {
          const BrownianPath path = sample_path(grid, d, {seed, p});
          const std::vector<Matrix> m = ito_integral_path(a_proc, path, c_proc);
          for (std::size_t k = 1; k <= n; ++k) {
            const Matrix mt = m[k].transpose();
            const Matrix sym = m[k] + mt;
            local[3 * (k - 1)] += quadratic_form(x, sym * sym);
            local[3 * (k - 1) + 1] += quadratic_form(x, m[k] * m[k]);
            local[3 * (k - 1) + 2] += quadratic_form(x, mt * mt);
          }
        }
        return local;
      },
      [](Sums acc, const Sums& part) {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
        return acc;
      });

  MomentBetaEstimate est;
  est.paths = paths;
  const double inv = 1.0 / static_cast<double>(paths);
  for (std::size_t k = 0; k < n; ++k) {
    const double lhs = totals[3 * k] * inv;
    const double rhs = std::abs(totals[3 * k + 1] * inv) + std::abs(totals[3 * k + 2] * inv);
    if (!(rhs > 1e-12 * std::abs(lhs)) || rhs == 0.0) {
      throw std::runtime_error("estimate_moment_beta: right-hand side is numerically zero at t = " +
                               std::to_string(grid.time(k + 1)));
    }
    est.per_time.push_back(lhs / rhs);
    est.beta = std::max(est.beta, lhs / rhs);
  }
  return est;
}

struct WishartParams {
  std::size_t dim = 2;
  double alpha = 3.0;
  SymmetricMatrix x0 = SymmetricMatrix::zero(2);
  double sqrt_clip = 1e6;

  [[nodiscard]] SdeModel model() const { return wishart_model(dim, alpha, x0, sqrt_clip); }
};

/// Euler paths of the Wishart model; E[tr X_tau] against tr X0 + alpha d tau.
inline CheckReport mc_trace_moment(const WishartParams& params, std::size_t paths, const TimeGrid& grid,
                                   std::uint64_t seed) {
  if (paths < 2) throw std::invalid_argument("mc_trace_moment: need at least two paths");
  const SdeModel model = params.model();
  const RunningStats stats = chunked_reduce<RunningStats>(
      paths, kPathChunk, RunningStats{},
      [&](std::size_t begin, std::size_t end) {
        RunningStats local;
        for (std::size_t p = begin; p < end; ++p) {
          const PathSolution sol = euler_solve(model, sample_path(grid, params.dim, {seed, p}));
          local.add(sol.states.back().trace());
        }
        return local;
      },
      [](const RunningStats& l, const RunningStats& r) { return l.merged(r); });

  CheckReport r;
  r.name = "trace_moment";
  r.samples = paths;
  r.estimate = stats.mean;
  r.expected = params.x0.trace() + params.alpha * static_cast<double>(params.dim) * grid.horizon();
  r.standard_error = stats.standard_error();
  r.worst_violation = std::abs(stats.mean - *r.expected);
  r.tolerance = tolerance::kStandardErrors * stats.standard_error();
  r.finalize();
  return r;
}

}  // namespace matdiff
