#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "matdiff/brownian.hpp"
#include "matdiff/checks.hpp"
#include "matdiff/csv.hpp"
#include "matdiff/functional_calculus.hpp"
#include "matdiff/parallel.hpp"
#include "matdiff/report.hpp"
#include "matdiff/sde.hpp"
#include "matdiff/statistics.hpp"

namespace matdiff::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Bad flags, config or model description; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Settings after merging defaults, the JSON config file, CLI flags and the
/// MATRIXDIFF_SEED fallback. Unset optionals take per-subcommand defaults.
struct Settings {
  std::optional<std::size_t> dim, samples, paths, steps, max_iter;
  std::optional<double> horizon, alpha, sqrt_clip, x0_scale, stop_tol;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> model, out, format, method, dump_paths;
  std::optional<std::string> g, f, b;
  nlohmann::json x0, a, c, x, y;  // null when absent
};

namespace detail {

template <class T>
void take(std::optional<T>& slot, const nlohmann::json& j, const char* key) {
  if (j.contains(key)) slot = j.at(key).get<T>();
}

/// Flat JSON object; unknown keys are rejected.
inline Settings load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("config '" + path + "' must be a JSON object");
  static const std::vector<std::string> known{
      "dim", "samples", "paths", "steps", "horizon", "seed", "model", "alpha", "out", "format",
      "method", "threads", "sqrt_clip", "x0_scale", "x0", "max_iter", "stop_tol", "g", "f", "b",
      "a", "c", "x", "y", "dump_paths"};
  for (const auto& item : j.items())
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw UsageError("config '" + path + "': unknown key '" + item.key() + "'");

  Settings s;
  try {
    take(s.dim, j, "dim");
    take(s.samples, j, "samples");
    take(s.paths, j, "paths");
    take(s.steps, j, "steps");
    take(s.max_iter, j, "max_iter");
    take(s.horizon, j, "horizon");
    take(s.alpha, j, "alpha");
    take(s.sqrt_clip, j, "sqrt_clip");
    take(s.x0_scale, j, "x0_scale");
    take(s.stop_tol, j, "stop_tol");
    take(s.seed, j, "seed");
    take(s.threads, j, "threads");
    take(s.model, j, "model");
    take(s.out, j, "out");
    take(s.format, j, "format");
    take(s.method, j, "method");
    take(s.dump_paths, j, "dump_paths");
    take(s.g, j, "g");
    take(s.f, j, "f");
    take(s.b, j, "b");
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
  for (const char* key : {"x0", "a", "c", "x", "y"}) {
    if (!j.contains(key)) continue;
    nlohmann::json& slot = std::string(key) == "x0" ? s.x0
                           : std::string(key) == "a" ? s.a
                           : std::string(key) == "c" ? s.c
                           : std::string(key) == "x" ? s.x
                                                     : s.y;
    slot = j.at(key);
  }
  return s;
}

inline std::uint64_t parse_seed(const std::string& text, const char* origin) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError(std::string(origin) + ": seed must be a decimal 64-bit integer, got '" + text + "'");
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(origin) + ": seed out of range: '" + text + "'");
  }
}

/// Flattens a row-major array (flat or nested) of dim*dim numbers.
inline std::vector<double> matrix_entries(const nlohmann::json& j, std::size_t dim, const char* key) {
  std::vector<double> flat;
  auto push = [&](const nlohmann::json& v) {
    if (!v.is_number()) throw UsageError(std::string("config '") + key + "': entries must be numbers");
    flat.push_back(v.get<double>());
  };
  if (!j.is_array()) throw UsageError(std::string("config '") + key + "' must be an array");
  for (const auto& row : j) {
    if (row.is_array()) {
      for (const auto& v : row) push(v);
    } else {
      push(row);
    }
  }
  if (flat.size() != dim * dim)
    throw UsageError(std::string("config '") + key + "': expected " + std::to_string(dim * dim) + " entries");
  return flat;
}

inline SymmetricMatrix symmetric_from_json(const nlohmann::json& j, std::size_t dim, const char* key) {
  try {
    return SymmetricMatrix(Matrix(dim, matrix_entries(j, dim, key)));
  } catch (const SymmetryError& e) {
    throw UsageError(std::string("config '") + key + "': " + e.what());
  }
}

inline Vector vector_from_json(const nlohmann::json& j, std::size_t dim, const char* key) {
  if (!j.is_array() || j.size() != dim)
    throw UsageError(std::string("config '") + key + "' must be an array of " + std::to_string(dim) + " numbers");
  Vector v;
  for (const auto& e : j) {
    if (!e.is_number()) throw UsageError(std::string("config '") + key + "': entries must be numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

/// Parses "name" or "name:arg" into a bounded scalar rule.
inline ScalarFunctionSpec parse_function(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::optional<double> arg;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      arg = std::stod(text.substr(colon + 1), &used);
      if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("function '" + text + "': bad numeric argument");
    }
  }
  auto need = [&](const char* what) {
    if (!arg) throw UsageError("function '" + text + "' needs an argument (" + what + ")");
    return *arg;
  };
  try {
    if (name == "const") {
      auto spec = functions::constant(need("value"));
      spec.name = text;
      return spec;
    }
    if (name == "clipped_sqrt") return functions::clipped_sqrt(need("clip bound"));
    if (name == "clamp") return functions::clamp(need("clip bound"));
    if (name == "neg_clamp") {
      const double m = need("clip bound");
      if (!(m > 0.0)) throw UsageError("function '" + text + "': clip bound must be positive");
      return {"neg_clamp", [m](double v) { return -std::clamp(v, -m, m); }, DomainPolicy::total, m};
    }
    if (name == "tanh" && !arg) return functions::tanh();
  } catch (const std::invalid_argument& e) {
    throw UsageError("function '" + text + "': " + e.what());
  }
  throw UsageError("unknown function '" + text +
                   "' (expected const:<v>, clipped_sqrt:<M>, clamp:<M>, neg_clamp:<M> or tanh)");
}

struct Resolved {
  std::size_t dim;
  std::uint64_t seed;
  std::string model_name;
  std::optional<WishartParams> wishart;
  std::optional<SdeModel> model;
};

inline SymmetricMatrix initial_condition(const Settings& s, std::size_t dim) {
  if (!s.x0.is_null()) return symmetric_from_json(s.x0, dim, "x0");
  return SymmetricMatrix::scaled_identity(dim, s.x0_scale.value_or(0.0));
}

inline Resolved resolve_model(const Settings& s, std::ostream& err) {
  Resolved r;
  r.dim = s.dim.value_or(2);
  if (r.dim == 0) throw UsageError("--dim must be at least 1");
  r.seed = s.seed.value_or(0);
  r.model_name = s.model.value_or("wishart");
  const SymmetricMatrix x0 = initial_condition(s, r.dim);
  try {
    if (r.model_name == "wishart") {
      WishartParams p{r.dim, s.alpha.value_or(3.0), x0, s.sqrt_clip.value_or(1e6)};
      r.model = p.model();
      r.wishart = std::move(p);
    } else if (r.model_name == "custom") {
      if (!s.g || !s.f || !s.b) throw UsageError("model 'custom' needs g, f and b in the config file");
      r.model = SdeModel(parse_function(*s.g), parse_function(*s.f), parse_function(*s.b), x0);
    } else {
      throw UsageError("--model must be 'wishart' or 'custom'");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (const auto& w : r.model->warnings) err << "warning: " << w << '\n';
  return r;
}

inline TimeGrid grid_from(const Settings& s, std::size_t default_steps) {
  try {
    return TimeGrid(s.horizon.value_or(1.0), s.steps.value_or(default_steps));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline std::string format_of(const Settings& s, const char* fallback) {
  const std::string fmt = s.format.value_or(fallback);
  if (fmt != "csv" && fmt != "json") throw UsageError("--format must be 'csv' or 'json'");
  return fmt;
}

inline void write_reports(std::ostream& out, const std::vector<CheckReport>& reports, const std::string& fmt) {
  if (fmt == "json") {
    out << nlohmann::json(reports).dump(2) << '\n';
    return;
  }
  write_csv_row(out, {"name", "samples", "worst_violation", "tolerance", "pass"});
  for (const auto& r : reports)
    write_csv_row(out, {r.name, std::to_string(r.samples), format_double(r.worst_violation),
                        format_double(r.tolerance), r.pass ? "true" : "false"});
}

inline int exit_for(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; }) ? kExitOk
                                                                                                   : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_simulate(const Settings& s, std::ostream& out, std::ostream& err) {
  const Resolved r = resolve_model(s, err);
  const TimeGrid grid = grid_from(s, 256);
  const std::size_t paths = s.paths.value_or(1);
  if (paths == 0) throw UsageError("--paths must be at least 1");
  const std::string method = s.method.value_or("euler");
  if (method != "euler" && method != "picard") throw UsageError("--method must be 'euler' or 'picard'");
  const std::string fmt = format_of(s, "csv");

  PicardSettings picard;
  picard.max_iter = s.max_iter.value_or(picard.max_iter);
  picard.stop_tol = s.stop_tol.value_or(picard.stop_tol);
  picard.test_vector_seed = r.seed;

  if (s.dump_paths) {
    std::ofstream dump(*s.dump_paths, std::ios::binary);
    if (!dump) throw UsageError("cannot open '" + *s.dump_paths + "' for writing");
    for (std::size_t p = 0; p < paths; ++p) write_brownian_path(dump, sample_path(grid, r.dim, {r.seed, p}));
  }

  struct Accumulated {
    std::vector<SymmetricMatrix> sum;
    RunningStats trace;
    double min_eigenvalue = std::numeric_limits<double>::infinity();
    std::size_t unconverged = 0;
  };
  const std::size_t n = grid.steps();
  const Accumulated init{std::vector<SymmetricMatrix>(n + 1, SymmetricMatrix(r.dim)), {}, std::numeric_limits<double>::infinity(), 0};
  const Accumulated acc = chunked_reduce<Accumulated>(
      paths, 64, init,
      [&](std::size_t begin, std::size_t end) {
        Accumulated local = init;
        for (std::size_t p = begin; p < end; ++p) {
          const BrownianPath path = sample_path(grid, r.dim, {r.seed, p});
          PathSolution sol = method == "euler" ? euler_solve(*r.model, path) : [&] {
            PicardResult res = picard_solve(*r.model, path, picard);
            if (!res.diagnostics.converged) ++local.unconverged;
            return std::move(res.solution);
          }();
          for (std::size_t k = 0; k <= n; ++k) local.sum[k] += sol.states[k];
          local.trace.add(sol.states.back().trace());
          for (double m : sol.min_eigenvalues) local.min_eigenvalue = std::min(local.min_eigenvalue, m);
        }
        return local;
      },
      [](Accumulated l, const Accumulated& rhs) {
        for (std::size_t k = 0; k < l.sum.size(); ++k) l.sum[k] += rhs.sum[k];
        l.trace = l.trace.merged(rhs.trace);
        l.min_eigenvalue = std::min(l.min_eigenvalue, rhs.min_eigenvalue);
        l.unconverged += rhs.unconverged;
        return l;
      });

  std::vector<SymmetricMatrix> mean = acc.sum;
  for (auto& m : mean) m *= 1.0 / static_cast<double>(paths);
  if (acc.unconverged) err << "warning: " << acc.unconverged << " Picard solve(s) did not reach the stopping tolerance\n";

  if (fmt == "csv") {
    write_solution_csv(out, grid, mean, paths == 1 ? "x" : "mean_x");
  } else {
    nlohmann::json j{{"model", r.model_name},
                     {"method", method},
                     {"dim", r.dim},
                     {"steps", n},
                     {"horizon", grid.horizon()},
                     {"paths", paths},
                     {"seed", r.seed},
                     {"final_mean", mean.back().upper_triangle()},
                     {"final_trace_mean", acc.trace.mean},
                     {"final_trace_standard_error", acc.trace.standard_error()},
                     {"min_eigenvalue", acc.min_eigenvalue},
                     {"unconverged", acc.unconverged},
                     {"warnings", r.model->warnings}};
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

inline int cmd_verify(const Settings& s, std::ostream& out) {
  const std::size_t dim = s.dim.value_or(3);
  const std::size_t samples = s.samples.value_or(10000);
  const std::size_t steps = s.steps.value_or(32);
  const std::uint64_t seed = s.seed.value_or(0);
  const std::string fmt = format_of(s, "json");
  if (dim == 0 || samples == 0 || steps == 0) throw UsageError("--dim, --samples and --steps must be positive");

  std::vector<CheckReport> reports{check_inq2(samples, dim, seed), check_inq_nice(samples, dim, seed),
                                   check_prop_cauchy(samples, dim, steps, seed)};
  auto lipschitz_report = [&](const ScalarFunctionSpec& fn, double expected, const std::string& name) {
    const LipschitzEstimate est = estimate_lipschitz(fn, samples, dim, seed);
    CheckReport r;
    r.name = name;
    r.samples = est.sample_count;
    r.estimate = est.sampled_ratio_max;
    r.expected = expected;
    r.worst_violation = std::abs(est.sampled_ratio_max - expected);
    r.tolerance = 1e-9;
    r.finalize();
    return r;
  };
  reports.push_back(lipschitz_report(functions::identity(), 1.0, "lipschitz_identity_d" + std::to_string(dim)));
  reports.push_back(lipschitz_report(functions::affine(-2.0, 0.5), 4.0, "lipschitz_affine_d" + std::to_string(dim)));
  write_reports(out, reports, fmt);
  return exit_for(reports);
}

inline int cmd_isometry(const Settings& s, std::ostream& out) {
  const std::size_t dim = s.dim.value_or(2);
  if (dim == 0) throw UsageError("--dim must be at least 1");
  const TimeGrid grid = grid_from(s, 16);
  const std::size_t paths = s.paths.value_or(100000);
  if (paths < 2) throw UsageError("--paths must be at least 2");
  const std::string fmt = format_of(s, "json");

  Vector diag(dim);
  for (std::size_t i = 0; i < dim; ++i) diag[i] = static_cast<double>(i + 1);
  const SymmetricMatrix a = s.a.is_null() ? SymmetricMatrix::diagonal(diag) : symmetric_from_json(s.a, dim, "a");
  const SymmetricMatrix c = s.c.is_null() ? SymmetricMatrix::identity(dim) : symmetric_from_json(s.c, dim, "c");
  Vector last(dim, 0.0);
  last[dim - 1] = 1.0;
  const Vector x = s.x.is_null() ? last : vector_from_json(s.x, dim, "x");
  const Vector y = s.y.is_null() ? last : vector_from_json(s.y, dim, "y");

  const std::vector<CheckReport> reports{mc_isometry(a, c, x, y, paths, grid, s.seed.value_or(0))};
  write_reports(out, reports, fmt);
  return exit_for(reports);
}

inline int cmd_trace_moment(const Settings& s, std::ostream& out, std::ostream& err) {
  const Resolved r = resolve_model(s, err);
  if (!r.wishart) throw UsageError("trace-moment needs --model wishart");
  const TimeGrid grid = grid_from(s, 256);
  const std::size_t paths = s.paths.value_or(10000);
  if (paths < 2) throw UsageError("--paths must be at least 2");
  const std::vector<CheckReport> reports{mc_trace_moment(*r.wishart, paths, grid, r.seed)};
  write_reports(out, reports, format_of(s, "json"));
  return exit_for(reports);
}

inline int cmd_picard_convergence(const Settings& s, std::ostream& out, std::ostream& err) {
  const Resolved r = resolve_model(s, err);
  const TimeGrid grid = grid_from(s, 256);
  const std::size_t paths = s.paths.value_or(20);
  if (paths == 0) throw UsageError("--paths must be at least 1");
  const std::string fmt = format_of(s, "json");
  PicardSettings settings;
  settings.max_iter = s.max_iter.value_or(settings.max_iter);
  settings.stop_tol = s.stop_tol.value_or(settings.stop_tol);
  settings.test_vector_seed = r.seed;

  const std::vector<PicardDiagnostics> diags = parallel_map<PicardDiagnostics>(paths, [&](std::size_t p) {
    return picard_solve(*r.model, sample_path(grid, r.dim, {r.seed, p}), settings).diagnostics;
  });
  const bool all_converged =
      std::all_of(diags.begin(), diags.end(), [](const PicardDiagnostics& d) { return d.converged; });

  if (fmt == "csv") {
    write_csv_row(out, {"path", "n", "d_n"});
    for (std::size_t p = 0; p < paths; ++p)
      for (std::size_t k = 0; k < diags[p].d_n.size(); ++k)
        write_csv_row(out, {std::to_string(p), std::to_string(k), format_double(diags[p].d_n[k])});
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t p = 0; p < paths; ++p) {
      nlohmann::json row{{"path", p}, {"converged", diags[p].converged}, {"d_n", diags[p].d_n}};
      if (const auto& fit = diags[p].rate_fit) {
        row["rate_fit"] = {{"c", fit->c},           {"beta", fit->beta},   {"first_index", fit->first_index},
                           {"points", fit->points}, {"lift", fit->lift}, {"residuals", fit->residuals}};
      } else {
        row["rate_fit"] = nullptr;
      }
      rows.push_back(std::move(row));
    }
    nlohmann::json j{{"model", r.model_name}, {"dim", r.dim},           {"steps", grid.steps()},
                     {"horizon", grid.horizon()}, {"seed", r.seed},     {"max_iter", settings.max_iter},
                     {"stop_tol", settings.stop_tol}, {"all_converged", all_converged}, {"paths", rows}};
    out << j.dump(2) << '\n';
  }
  return all_converged ? kExitOk : kExitCheckFailed;
}

}  // namespace detail

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and verification of matrix-valued diffusions on symmetric matrices", "matdiff"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::size_t dim = 0, samples = 0, paths = 0, steps = 0, max_iter = 0;
  double horizon = 0, alpha = 0, sqrt_clip = 0, x0_scale = 0, stop_tol = 0;
  std::string seed_text, model, config, out_path, format, method, dump_paths;
  unsigned threads = 0;

  auto* o_dim = app.add_option("--dim", dim, "Matrix dimension d");
  auto* o_samples = app.add_option("--samples", samples, "Random samples per inequality check");
  auto* o_paths = app.add_option("--paths", paths, "Monte Carlo paths");
  auto* o_steps = app.add_option("--steps", steps, "Grid steps n");
  auto* o_horizon = app.add_option("--horizon", horizon, "Time horizon tau");
  auto* o_seed = app.add_option("--seed", seed_text, "Master seed (decimal 64-bit)");
  auto* o_model = app.add_option("--model", model, "wishart or custom");
  auto* o_alpha = app.add_option("--alpha", alpha, "Wishart drift alpha");
  app.add_option("--config", config, "Flat JSON config file; flags override it");
  auto* o_out = app.add_option("--out", out_path, "Write output to this file instead of stdout");
  auto* o_format = app.add_option("--format", format, "csv or json");
  auto* o_method = app.add_option("--method", method, "simulate: euler or picard");
  auto* o_clip = app.add_option("--clip", sqrt_clip, "Wishart square-root clip bound M");
  auto* o_x0 = app.add_option("--x0-scale", x0_scale, "Initial condition s*I");
  auto* o_iter = app.add_option("--max-iter", max_iter, "Picard: largest n for which d_n is computed");
  auto* o_tol = app.add_option("--stop-tol", stop_tol, "Picard: stop once d_n falls below this");
  auto* o_threads = app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  auto* o_dump = app.add_option("--dump-paths", dump_paths, "simulate: write Brownian increments (binary)");

  auto* simulate = app.add_subcommand("simulate", "Solve the SDE and write the path (or mean path) as CSV");
  auto* verify = app.add_subcommand("verify", "Run the matrix inequality suites and emit JSON reports");
  auto* isometry = app.add_subcommand("isometry", "Monte Carlo check of the Ito isometry");
  auto* picard = app.add_subcommand("picard-convergence", "Picard d_n table and contraction-rate fit");
  auto* trace = app.add_subcommand("trace-moment", "Monte Carlo check of E[tr X_tau] for the Wishart model");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Settings s = config.empty() ? Settings{} : detail::load_config(config);
    if (o_dim->count()) s.dim = dim;
    if (o_samples->count()) s.samples = samples;
    if (o_paths->count()) s.paths = paths;
    if (o_steps->count()) s.steps = steps;
    if (o_horizon->count()) s.horizon = horizon;
    if (o_model->count()) s.model = model;
    if (o_alpha->count()) s.alpha = alpha;
    if (o_out->count()) s.out = out_path;
    if (o_format->count()) s.format = format;
    if (o_method->count()) s.method = method;
    if (o_clip->count()) s.sqrt_clip = sqrt_clip;
    if (o_x0->count()) s.x0_scale = x0_scale;
    if (o_iter->count()) s.max_iter = max_iter;
    if (o_tol->count()) s.stop_tol = stop_tol;
    if (o_threads->count()) s.threads = threads;
    if (o_dump->count()) s.dump_paths = dump_paths;
    if (o_seed->count()) {
      s.seed = detail::parse_seed(seed_text, "--seed");
    } else if (!s.seed) {
      if (const char* env = std::getenv("MATRIXDIFF_SEED")) s.seed = detail::parse_seed(env, "MATRIXDIFF_SEED");
    }
    if (s.threads) set_worker_count(*s.threads);

    std::ostringstream buffer;
    int code = kExitOk;
    if (*simulate) code = detail::cmd_simulate(s, buffer, err);
    else if (*verify) code = detail::cmd_verify(s, buffer);
    else if (*isometry) code = detail::cmd_isometry(s, buffer);
    else if (*picard) code = detail::cmd_picard_convergence(s, buffer, err);
    else if (*trace) code = detail::cmd_trace_moment(s, buffer, err);

    if (s.out) {
      std::ofstream file(*s.out, std::ios::binary);
      if (!file) throw UsageError("cannot open '" + *s.out + "' for writing");
      file << buffer.str();
    } else {
      out << buffer.str();
    }
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace matdiff::cli
