#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace matdiff {

/// Outcome of one property check. pass == (worst_violation <= tolerance).
struct CheckReport {
  std::string name;
  std::size_t samples = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<double> estimate;        ///< Monte Carlo mean, when applicable
  std::optional<double> expected;        ///< analytic target, when applicable
  std::optional<double> standard_error;  ///< of `estimate`
  std::vector<double> details;           ///< optional per-sample violations

  void finalize() { pass = worst_violation <= tolerance; }
};

/// Empirical constant c of x^T (g(A1) - g(A2))^2 x <= c x^T (A1 - A2)^2 x.
struct LipschitzEstimate {
  std::string fn_name;
  double sampled_ratio_max = 0.0;
  std::size_t sample_count = 0;
  std::size_t skipped = 0;
  std::vector<std::size_t> dims;
  std::vector<double> running_max;  ///< ratio max after each accepted sample
};

inline void to_json(nlohmann::json& j, const CheckReport& r) {
  j = nlohmann::json{{"name", r.name},
                     {"samples", r.samples},
                     {"worst_violation", r.worst_violation},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass}};
  if (r.estimate) j["estimate"] = *r.estimate;
  if (r.expected) j["expected"] = *r.expected;
  if (r.standard_error) j["standard_error"] = *r.standard_error;
  if (!r.details.empty()) j["details"] = r.details;
}

inline void from_json(const nlohmann::json& j, CheckReport& r) {
  j.at("name").get_to(r.name);
  j.at("samples").get_to(r.samples);
  j.at("worst_violation").get_to(r.worst_violation);
  j.at("tolerance").get_to(r.tolerance);
  j.at("pass").get_to(r.pass);
  r.estimate = j.contains("estimate") ? std::optional<double>(j["estimate"].get<double>()) : std::nullopt;
  r.expected = j.contains("expected") ? std::optional<double>(j["expected"].get<double>()) : std::nullopt;
  r.standard_error =
      j.contains("standard_error") ? std::optional<double>(j["standard_error"].get<double>()) : std::nullopt;
  r.details = j.value("details", std::vector<double>{});
}

inline bool operator==(const CheckReport& a, const CheckReport& b) {
  return a.name == b.name && a.samples == b.samples && a.worst_violation == b.worst_violation &&
         a.tolerance == b.tolerance && a.pass == b.pass && a.estimate == b.estimate && a.expected == b.expected &&
         a.standard_error == b.standard_error && a.details == b.details;
}

inline void to_json(nlohmann::json& j, const LipschitzEstimate& e) {
  j = nlohmann::json{{"fn_name", e.fn_name},
                     {"sampled_ratio_max", e.sampled_ratio_max},
                     {"sample_count", e.sample_count},
                     {"skipped", e.skipped},
                     {"dims", e.dims}};
}

}  // namespace matdiff
