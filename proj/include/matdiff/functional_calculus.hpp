#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "matdiff/spectral.hpp"
#include "matdiff/symmetric_matrix.hpp"

namespace matdiff {

class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what, double offending)
      : std::domain_error(what), offending_(offending) {}
  [[nodiscard]] double offending_value() const noexcept { return offending_; }

 private:
  double offending_;
};

enum class DomainPolicy {
  total,                  ///< evaluate fn on every real eigenvalue
  clip_negative_to_zero,  ///< evaluate fn(max(lambda, 0))
  reject_outside_domain,  ///< throw DomainError outside [domain_lower, domain_upper]
};

/// A scalar rule R -> R that can be lifted to symmetric matrices through their
/// spectral decomposition.
struct ScalarFunctionSpec {
  std::string name;
  std::function<double(double)> fn;
  DomainPolicy policy = DomainPolicy::total;
  std::optional<double> bound;  ///< M with |fn| <= M on the admitted domain
  double domain_lower = -std::numeric_limits<double>::infinity();
  double domain_upper = std::numeric_limits<double>::infinity();

  /// Evaluates at one eigenvalue, applying the domain policy.
  [[nodiscard]] double evaluate(double lambda) const {
    switch (policy) {
      case DomainPolicy::clip_negative_to_zero:
        return fn(std::max(lambda, 0.0));
      case DomainPolicy::reject_outside_domain:
        if (!(lambda >= domain_lower && lambda <= domain_upper)) {
          std::ostringstream msg;
          msg.precision(17);
          msg << "function '" << name << "': eigenvalue " << lambda << " outside domain ["
              << domain_lower << ", " << domain_upper << "]";
          throw DomainError(msg.str(), lambda);
        }
        return fn(lambda);
      case DomainPolicy::total:
        break;
    }
    return fn(lambda);
  }
};

namespace functions {

inline ScalarFunctionSpec identity() { return {"identity", [](double x) { return x; }, DomainPolicy::total, std::nullopt}; }

inline ScalarFunctionSpec constant(double c) {
  return {"const", [c](double) { return c; }, DomainPolicy::total, std::max(std::abs(c), 1.0)};
}

inline ScalarFunctionSpec affine(double slope, double intercept) {
  return {"affine", [slope, intercept](double x) { return slope * x + intercept; }, DomainPolicy::total, std::nullopt};
}

inline ScalarFunctionSpec square() { return {"square", [](double x) { return x * x; }, DomainPolicy::total, std::nullopt}; }

inline ScalarFunctionSpec sqrt() {
  return {"sqrt", [](double x) { return std::sqrt(x); }, DomainPolicy::clip_negative_to_zero, std::nullopt};
}

/// min(sqrt(max(x, 0)), M): the bounded square root used by the Wishart model.
inline ScalarFunctionSpec clipped_sqrt(double clip) {
  if (!(clip > 0.0)) throw std::invalid_argument("clipped_sqrt: clip bound must be positive");
  return {"clipped_sqrt", [clip](double x) { return std::min(std::sqrt(std::max(x, 0.0)), clip); },
          DomainPolicy::total, clip};
}

/// max(min(x, M), -M), a bounded Lipschitz identity.
inline ScalarFunctionSpec clamp(double clip) {
  if (!(clip > 0.0)) throw std::invalid_argument("clamp: clip bound must be positive");
  return {"clamp", [clip](double x) { return std::clamp(x, -clip, clip); }, DomainPolicy::total, clip};
}

inline ScalarFunctionSpec tanh() {
  return {"tanh", [](double x) { return std::tanh(x); }, DomainPolicy::total, 1.0};
}

}  // namespace functions

/// Spot-checks |fn(x)| <= bound on a fixed spread of points in [-1e6, 1e6].
/// Returns the first admitted point violating the bound, if any.
inline std::optional<double> find_bound_violation(const ScalarFunctionSpec& spec) {
  if (!spec.bound) return std::nullopt;
  const double m = *spec.bound;
  for (int e = -6; e <= 6; ++e) {
    for (double mantissa : {1.0, 2.5, 5.0, 7.5}) {
      for (double sign : {-1.0, 1.0}) {
        const double x = sign * mantissa * std::pow(10.0, e);
        if (spec.policy == DomainPolicy::reject_outside_domain &&
            !(x >= spec.domain_lower && x <= spec.domain_upper))
          continue;
        const double y = spec.evaluate(x);
        if (!(std::abs(y) <= m)) return x;
      }
    }
  }
  if (!(std::abs(spec.evaluate(0.0)) <= m)) return 0.0;
  return std::nullopt;
}

/// Lifts fn through an existing decomposition: Q fn(Lambda) Q^T.
inline SymmetricMatrix apply_scalar_fn(const ScalarFunctionSpec& spec,
                                       const SpectralDecomposition& decomposition) {
  Vector values(decomposition.dim());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = spec.evaluate(decomposition.eigenvalues[k]);
    if (!std::isfinite(values[k])) {
      throw DomainError("function '" + spec.name + "' is not finite at eigenvalue " +
                            std::to_string(decomposition.eigenvalues[k]),
                        decomposition.eigenvalues[k]);
    }
  }
  return decomposition.reassemble(values);
}

inline SymmetricMatrix apply_scalar_fn(const ScalarFunctionSpec& spec, const SymmetricMatrix& a) {
  return apply_scalar_fn(spec, spectral_decompose(a));
}

/// Square root with negative eigenvalues clipped to zero.
inline SymmetricMatrix matrix_sqrt(const SymmetricMatrix& a) {
  return apply_scalar_fn(functions::sqrt(), a);
}

inline bool is_psd(const SymmetricMatrix& a, double tol) {
  if (tol < 0.0) throw std::invalid_argument("is_psd: tolerance must be non-negative");
  return spectral_decompose(a).min_eigenvalue() >= -tol;
}

/// A <= B in the Loewner order, i.e. B - A is PSD up to tol.
inline bool loewner_leq(const SymmetricMatrix& a, const SymmetricMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw DimensionError("loewner_leq: dimension mismatch");
  return is_psd(b - a, tol);
}

inline double quadratic_form(const UnitVector& x, const SymmetricMatrix& a) {
  if (x.dim() != a.dim()) throw DimensionError("quadratic_form: dimension mismatch");
  return dot(x.values(), a * x.values());
}

inline double quadratic_form(const UnitVector& x, const Matrix& a) {
  if (x.dim() != a.dim()) throw DimensionError("quadratic_form: dimension mismatch");
  return dot(x.values(), a * x.values());
}

}  // namespace matdiff
