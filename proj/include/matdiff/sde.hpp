#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matdiff/brownian.hpp"
#include "matdiff/functional_calculus.hpp"
#include "matdiff/random.hpp"
#include "matdiff/spectral.hpp"
#include "matdiff/stochastic_integral.hpp"
#include "matdiff/symmetric_matrix.hpp"

namespace matdiff {

/// dX = g(X) dB f(X) + f(X) dB^T g(X) + b(X) dt with scalar rules lifted by
/// functional calculus. Every coefficient must declare a bound.
class SdeModel {
 public:
  SdeModel(ScalarFunctionSpec g, ScalarFunctionSpec f, ScalarFunctionSpec b, SymmetricMatrix x0,
           bool requires_psd_start = false)
      : g_(std::move(g)), f_(std::move(f)), b_(std::move(b)), x0_(std::move(x0)) {
    if (x0_.dim() == 0) throw std::invalid_argument("SdeModel: dimension must be positive");
    for (const auto* spec : {&g_, &f_, &b_}) {
      if (!spec->fn) throw std::invalid_argument("SdeModel: coefficient '" + spec->name + "' has no rule");
      if (!spec->bound || !(*spec->bound > 0.0))
        throw std::invalid_argument("SdeModel: coefficient '" + spec->name + "' must declare a positive bound");
      if (auto bad = find_bound_violation(*spec))
        throw std::invalid_argument("SdeModel: coefficient '" + spec->name + "' exceeds its bound at x = " +
                                    std::to_string(*bad));
    }
    if (requires_psd_start && !is_psd(x0_, 1e-10))
      throw std::invalid_argument("SdeModel: initial condition must be positive semidefinite");
  }

  [[nodiscard]] const ScalarFunctionSpec& g() const noexcept { return g_; }
  [[nodiscard]] const ScalarFunctionSpec& f() const noexcept { return f_; }
  [[nodiscard]] const ScalarFunctionSpec& b() const noexcept { return b_; }
  [[nodiscard]] const SymmetricMatrix& x0() const noexcept { return x0_; }
  [[nodiscard]] std::size_t dim() const noexcept { return x0_.dim(); }

  std::vector<std::string> warnings;

 private:
  ScalarFunctionSpec g_, f_, b_;
  SymmetricMatrix x0_;
};

/// g(X), f(X), b(X) from one shared decomposition of X.
struct Coefficients {
  SymmetricMatrix g, f, b;
  double min_eigenvalue;
};

inline Coefficients evaluate_coefficients(const SdeModel& model, const SymmetricMatrix& x) {
  const SpectralDecomposition eig = spectral_decompose(x);
  return {apply_scalar_fn(model.g(), eig), apply_scalar_fn(model.f(), eig), apply_scalar_fn(model.b(), eig),
          eig.min_eigenvalue()};
}

enum class SolveMethod { euler, picard };

inline const char* to_string(SolveMethod m) { return m == SolveMethod::euler ? "euler" : "picard"; }

struct PathSolution {
  TimeGrid grid;
  std::vector<SymmetricMatrix> states;  ///< X at t_0..t_n
  SolveMethod method;
  StreamId path_stream;
  Vector min_eigenvalues;  ///< smallest eigenvalue of each state; PSD is not enforced
};

/// One Euler-Maruyama step. The noise enters as N + N^T with N = g dB f, so
/// the result is exactly symmetric.
inline SymmetricMatrix euler_step(const SdeModel& model, const SymmetricMatrix& x, const Matrix& db, double dt) {
  if (x.dim() != model.dim() || db.dim() != model.dim()) throw DimensionError("euler_step: dimension mismatch");
  const Coefficients c = evaluate_coefficients(model, x);
  return x + SymmetricMatrix::sum_with_transpose(c.g.matrix() * db * c.f.matrix()) + c.b * dt;
}

inline PathSolution euler_solve(const SdeModel& model, const BrownianPath& path) {
  if (path.dim() != model.dim()) throw DimensionError("euler_solve: model and path dimensions differ");
  const std::size_t n = path.grid().steps();
  const double dt = path.grid().dt();
  PathSolution sol{path.grid(), {}, SolveMethod::euler, path.stream(), {}};
  sol.states.reserve(n + 1);
  sol.min_eigenvalues.reserve(n + 1);
  sol.states.push_back(model.x0());
  for (std::size_t k = 0; k < n; ++k) {
    const SymmetricMatrix& x = sol.states.back();
    const Coefficients c = evaluate_coefficients(model, x);
    sol.min_eigenvalues.push_back(c.min_eigenvalue);
    sol.states.push_back(x + SymmetricMatrix::sum_with_transpose(c.g.matrix() * path.increment(k) * c.f.matrix()) +
                         c.b * dt);
  }
  sol.min_eigenvalues.push_back(spectral_decompose(sol.states.back()).min_eigenvalue());
  return sol;
}

// ---------------------------------------------------------------------------
// Picard iteration on a fixed path

/// Canonical basis vectors followed by `random_count` uniform unit vectors
/// drawn from `seed`.
inline std::vector<UnitVector> default_test_vectors(std::size_t dim, std::uint64_t seed,
                                                    std::size_t random_count = 8) {
  std::vector<UnitVector> out;
  for (std::size_t k = 0; k < dim; ++k) out.push_back(UnitVector::basis(dim, k));
  RngStream stream(seed, 0x7E57'0000ULL);
  for (std::size_t k = 0; k < random_count; ++k) out.push_back(random_unit_vector(dim, stream));
  return out;
}

/// Least-squares fit of log d_n ~ log c + n log(beta*tau) - log n! over the
/// tail, with c then raised so that c (beta tau)^n / n! bounds every tail
/// point from above.
struct RateFit {
  double c = 0.0;
  double beta = 0.0;
  std::size_t first_index = 0;
  std::size_t points = 0;
  double lift = 0.0;             ///< log of the factor applied to the least-squares c
  std::vector<double> residuals;  ///< log(bound) - log(d_n) per tail point

  [[nodiscard]] double bound(std::size_t n, double tau) const {
    return c * std::exp(static_cast<double>(n) * std::log(beta * tau) - std::lgamma(static_cast<double>(n) + 1.0));
  }
};

inline std::optional<RateFit> fit_factorial_rate(const std::vector<double>& d_n, double tau,
                                                 std::size_t first_index = 3) {
  std::vector<double> ns, ys;
  for (std::size_t n = std::max<std::size_t>(first_index, 1); n < d_n.size(); ++n) {
    if (!(d_n[n] > 0.0)) continue;
    ns.push_back(static_cast<double>(n));
    ys.push_back(std::log(d_n[n]) + std::lgamma(static_cast<double>(n) + 1.0));
  }
  if (ns.size() < 2) return std::nullopt;
  const double m = static_cast<double>(ns.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    sx += ns[i];
    sy += ys[i];
    sxx += ns[i] * ns[i];
    sxy += ns[i] * ys[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  std::vector<double> deviation;
  for (std::size_t i = 0; i < ns.size(); ++i) deviation.push_back(ys[i] - (intercept + slope * ns[i]));
  const double lift = std::max(0.0, *std::max_element(deviation.begin(), deviation.end()));

  RateFit fit;
  fit.beta = std::exp(slope) / tau;
  fit.c = std::exp(intercept + lift);
  fit.first_index = static_cast<std::size_t>(ns.front());
  fit.points = ns.size();
  fit.lift = lift;
  for (double dev : deviation) fit.residuals.push_back(lift - dev);
  return fit;
}

struct PicardSettings {
  std::size_t max_iter = 25;  ///< largest n for which d_n is computed
  double stop_tol = 1e-10;
  std::vector<UnitVector> test_vectors;  ///< empty: default_test_vectors(d, test_vector_seed)
  std::uint64_t test_vector_seed = 0;
};

struct PicardDiagnostics {
  std::size_t iterates_kept = 2;
  std::vector<double> d_n;  ///< d_n = sup_k max_x |x^T (X^(n+1)_k - X^(n)_k) x|, n = 0, 1, ...
  std::vector<UnitVector> test_vectors;
  bool converged = false;
  std::optional<RateFit> rate_fit;
};

struct PicardResult {
  PathSolution solution;
  PicardDiagnostics diagnostics;
};

/// Picard iteration X^(n+1) = X0 + int b(X^(n)) dt + int g(X^(n)) dB f(X^(n))
/// + int f(X^(n)) dB^T g(X^(n)) on one shared path, starting from X^(0) = X0.
inline PicardResult picard_solve(const SdeModel& model, const BrownianPath& path, PicardSettings settings = {}) {
  if (path.dim() != model.dim()) throw DimensionError("picard_solve: model and path dimensions differ");
  const TimeGrid& grid = path.grid();
  const std::size_t n = grid.steps();
  const std::size_t d = model.dim();

  PicardDiagnostics diag;
  diag.test_vectors = settings.test_vectors.empty() ? default_test_vectors(d, settings.test_vector_seed)
                                                    : std::move(settings.test_vectors);
  for (const auto& x : diag.test_vectors)
    if (x.dim() != d) throw DimensionError("picard_solve: test vector dimension mismatch");

  std::vector<SymmetricMatrix> current(n + 1, model.x0());
  for (std::size_t iter = 0; iter <= settings.max_iter; ++iter) {
    std::vector<SymmetricMatrix> gs, fs, bs;
    gs.reserve(n + 1);
    fs.reserve(n + 1);
    bs.reserve(n + 1);
    for (const auto& x : current) {
      Coefficients c = evaluate_coefficients(model, x);
      gs.push_back(std::move(c.g));
      fs.push_back(std::move(c.f));
      bs.push_back(std::move(c.b));
    }
    const MatrixProcess g_proc(grid, std::move(gs));
    const MatrixProcess f_proc(grid, std::move(fs));
    const MatrixProcess b_proc(grid, std::move(bs));
    const std::vector<SymmetricMatrix> drift = time_integral_path(b_proc);
    const std::vector<SymmetricMatrix> noise = symmetrized_diffusion_path(g_proc, path, f_proc);

    std::vector<SymmetricMatrix> next;
    next.reserve(n + 1);
    double sup = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      next.push_back(model.x0() + drift[k] + noise[k]);
      const SymmetricMatrix delta = next.back() - current[k];
      for (const auto& x : diag.test_vectors) sup = std::max(sup, std::abs(quadratic_form(x, delta)));
    }
    diag.d_n.push_back(sup);
    current = std::move(next);
    if (sup < settings.stop_tol) {
      diag.converged = true;
      break;
    }
  }
  diag.rate_fit = fit_factorial_rate(diag.d_n, grid.horizon());

  PathSolution sol{grid, std::move(current), SolveMethod::picard, path.stream(), {}};
  sol.min_eigenvalues.reserve(n + 1);
  for (const auto& x : sol.states) sol.min_eigenvalues.push_back(spectral_decompose(x).min_eigenvalue());
  return {std::move(sol), std::move(diag)};
}

// ---------------------------------------------------------------------------
// Wishart model

/// alpha in {1, ..., d-1} or alpha >= d-1.
inline bool in_wallach_set(std::size_t dim, double alpha) {
  const double upper = static_cast<double>(dim) - 1.0;
  if (alpha >= upper) return true;
  return alpha >= 1.0 && alpha == std::floor(alpha);
}

/// dX = sqrt(X) dB + dB^T sqrt(X) + alpha I dt, with the square root clipped
/// at `sqrt_clip` so every coefficient is bounded.
inline SdeModel wishart_model(std::size_t dim, double alpha, const SymmetricMatrix& x0, double sqrt_clip = 1e6) {
  if (dim < 1) throw std::invalid_argument("wishart_model: dimension must be at least 1");
  if (!(sqrt_clip > 0.0)) throw std::invalid_argument("wishart_model: sqrt clip bound must be positive");
  if (x0.dim() != dim) throw DimensionError("wishart_model: initial condition dimension mismatch");
  if (!std::isfinite(alpha)) throw std::invalid_argument("wishart_model: alpha must be finite");
  auto b = functions::constant(alpha);
  b.name = "alpha";
  SdeModel model(functions::clipped_sqrt(sqrt_clip), functions::constant(1.0), std::move(b), x0, true);
  if (!in_wallach_set(dim, alpha)) {
    model.warnings.push_back("alpha = " + std::to_string(alpha) + " is outside the Wallach set for d = " +
                             std::to_string(dim));
  }
  return model;
}

}  // namespace matdiff
