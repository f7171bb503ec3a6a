// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit code is non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "matdiff/matdiff.hpp"
#include "oracles.hpp"

using namespace matdiff;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome inequality_suites() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool pass = true;
  for (std::size_t d : {2U, 3U, 5U, 8U}) {
    for (const CheckReport& r :
         {check_inq2(10000, d, 1), check_inq_nice(10000, d, 1), check_prop_cauchy(10000, d, 16, 1)}) {
      worst = std::max(worst, r.worst_violation);
      pass = pass && r.pass && r.worst_violation <= 1e-10;
    }
  }
  const double elapsed = seconds_since(t0);
  pass = pass && elapsed < 30.0;
  return {pass, "worst violation " + fmt(worst) + " (tol 1e-10), " + fmt(elapsed) + " s (limit 30 s)"};
}

Outcome functional_calculus() {
  RngStream s(2, 0);
  double worst_sqrt = 0.0, worst_spectrum = 0.0;
  for (std::size_t i = 0; i < 500; ++i) {
    const std::size_t d = 1 + i % 8;
    const SymmetricMatrix a = random_psd(d, s);
    const SymmetricMatrix root = matrix_sqrt(a);
    const double scale = std::max(1.0, a.frobenius_norm());
    worst_sqrt = std::max(worst_sqrt, (root.squared() - a).frobenius_norm() / scale);
    // Spectrum of sqrt(A) is sqrt of the spectrum of A, as sorted multisets.
    Vector expected = eigenvalues(a);
    for (double& l : expected) l = std::sqrt(std::max(l, 0.0));
    std::sort(expected.begin(), expected.end());
    const Vector got = eigenvalues(root);
    for (std::size_t k = 0; k < d; ++k)
      worst_spectrum = std::max(worst_spectrum, std::abs(got[k] - expected[k]) / std::sqrt(scale));
  }
  const bool pass = worst_sqrt <= 1e-8 && worst_spectrum <= 1e-8;
  return {pass, "max relative sqrt residual " + fmt(worst_sqrt) + ", spectral mapping deviation " +
                    fmt(worst_spectrum) + " (tol 1e-8)"};
}

Outcome ito_oracle() {
  RngStream s(3, 0);
  double worst = 0.0;
  for (std::size_t t = 0; t < 200; ++t) {
    const std::size_t d = 1 + t % 4;
    const std::size_t n = 1 + (t * 7) % 16;
    const TimeGrid g(1.0, n);
    std::vector<SymmetricMatrix> av, cv;
    for (std::size_t k = 0; k <= n; ++k) {
      av.push_back(random_symmetric(d, s));
      cv.push_back(random_symmetric(d, s));
    }
    const MatrixProcess a(g, av), c(g, cv);
    const BrownianPath path = sample_path(g, d, {3, t});
    const Matrix fast = ito_integral(a, path, c, n);
    const Matrix slow = oracle::ito_integral_entrywise(a, path, c, n);
    worst = std::max(worst, (fast - slow).frobenius_norm());
  }
  return {worst <= 1e-12, "max Frobenius difference " + fmt(worst) + " over 200 triples (tol 1e-12)"};
}

Outcome isometry() {
  const auto t0 = std::chrono::steady_clock::now();
  const Vector e2{0.0, 1.0};
  const CheckReport r = mc_isometry(SymmetricMatrix::diagonal(std::vector<double>{1.0, 2.0}),
                                    SymmetricMatrix::identity(2), e2, e2, 100000, TimeGrid(1.0, 16), 4);
  const double elapsed = seconds_since(t0);
  const bool pass = r.pass && *r.expected == 4.0 && elapsed < 60.0;
  return {pass, "estimate " + fmt(*r.estimate) + " vs 4, |diff| " + fmt(r.worst_violation) + " <= 3 SE " +
                    fmt(r.tolerance) + ", " + fmt(elapsed) + " s"};
}

Outcome moment_beta() {
  bool pass = true;
  std::string detail;
  for (std::size_t d : {1U, 2U, 3U}) {
    const auto id = SymmetricMatrix::identity(d);
    const MomentBetaEstimate e = estimate_moment_beta(id, id, 100000, TimeGrid(1.0, 4), UnitVector::basis(d, 0), 5);
    const double target = static_cast<double>(d + 1);
    const double rel = std::abs(e.beta - target) / target;
    pass = pass && rel <= 0.10;
    detail += "d=" + std::to_string(d) + ": beta " + fmt(e.beta) + " (target " + fmt(target) + ", rel " +
              fmt(rel) + ") ";
  }
  return {pass, detail + "(tol 10%)"};
}

Outcome trace_moment() {
  const WishartParams params{2, 3.0, SymmetricMatrix::zero(2), 1e6};
  const CheckReport r = mc_trace_moment(params, 10000, TimeGrid(1.0, 256), 6);
  return {r.pass && *r.expected == 6.0,
          "E[tr X_1] " + fmt(*r.estimate) + " vs 6, |diff| " + fmt(r.worst_violation) + " <= 3 SE " + fmt(r.tolerance)};
}

SdeModel picard_model() { return wishart_model(2, 3.0, SymmetricMatrix::scaled_identity(2, 9.0), 10.0); }

Outcome picard_contraction() {
  const SdeModel model = picard_model();
  const TimeGrid grid(1.0, 256);
  const std::vector<PicardDiagnostics> diags = parallel_map<PicardDiagnostics>(
      20, [&](std::size_t p) { return picard_solve(model, sample_path(grid, 2, {7, p})).diagnostics; });
  std::size_t good = 0;
  double worst_last = 0.0, worst_residual = 0.0;
  for (const auto& diag : diags) {
    const auto& d = diag.d_n;
    bool ok = diag.converged && d.size() <= 26 && d.back() < 1e-10;
    for (std::size_t n = 3; n + 1 < d.size(); ++n) ok = ok && d[n + 1] < d[n];
    ok = ok && diag.rate_fit.has_value();
    if (diag.rate_fit) {
      for (double r : diag.rate_fit->residuals) {
        worst_residual = std::min(worst_residual, r);
        ok = ok && r >= 0.0;
      }
    }
    worst_last = std::max(worst_last, d.back());
    good += ok;
  }
  return {good == 20, std::to_string(good) + "/20 paths strictly decreasing from n=3 with final d_n < 1e-10 " +
                          "(worst final " + fmt(worst_last) + ", min fit residual " + fmt(worst_residual) + ")"};
}

Outcome picard_euler() {
  // Converged Picard on a fine grid is the reference; Euler runs on coarsened
  // copies of the same Brownian path.
  const SdeModel model = picard_model();
  const std::size_t fine_steps = 4096;
  const std::vector<std::size_t> levels{64, 256, 1024};
  const std::size_t paths = 20;
  const std::vector<std::vector<double>> dist = parallel_map<std::vector<double>>(paths, [&](std::size_t p) {
    const BrownianPath fine = sample_path(TimeGrid(1.0, fine_steps), 2, {8, p});
    const PicardResult ref = picard_solve(model, fine);
    std::vector<double> out;
    for (std::size_t n : levels) {
      const PathSolution e = euler_solve(model, fine.coarsen(fine_steps / n));
      out.push_back(ref.diagnostics.converged ? (e.states.back() - ref.solution.states.back()).frobenius_norm()
                                              : std::nan(""));
    }
    return out;
  });
  std::vector<double> medians;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    std::vector<double> col;
    for (const auto& row : dist) col.push_back(row[l]);
    if (std::any_of(col.begin(), col.end(), [](double v) { return std::isnan(v); }))
      return {false, "Picard reference did not converge on every path"};
    std::nth_element(col.begin(), col.begin() + paths / 2 - 1, col.end());
    const double lo = col[paths / 2 - 1];
    const double hi = *std::min_element(col.begin() + paths / 2, col.end());
    medians.push_back(0.5 * (lo + hi));
  }
  std::size_t non_monotone = 0;
  for (std::size_t l = 1; l < medians.size(); ++l) non_monotone += !(medians[l] < medians[l - 1]);
  return {non_monotone <= 1 && medians.back() < medians.front(),
          "median distance at n=64/256/1024: " + fmt(medians[0]) + " / " + fmt(medians[1]) + " / " +
              fmt(medians[2]) + " (" + std::to_string(non_monotone) + " non-monotone steps)"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  const std::string exe = MATDIFF_CLI_PATH;
  const std::vector<std::string> invocations{
      "simulate --dim 2 --alpha 3 --steps 256 --paths 1 --seed 7",
      "simulate --dim 3 --alpha 2 --x0-scale 1 --steps 64 --paths 40 --seed 9 --format json",
      "simulate --method picard --x0-scale 9 --clip 10 --steps 64 --paths 4 --seed 3",
      "verify --dim 3 --samples 2000 --seed 5",
      "isometry --paths 5000 --seed 6",
      "trace-moment --paths 500 --steps 32 --seed 8",
      "picard-convergence --paths 3 --steps 64 --x0-scale 9 --clip 10 --seed 4"};
  const auto dir = std::filesystem::temp_directory_path() / "matdiff_acceptance";
  std::filesystem::create_directories(dir);
  std::size_t identical = 0;
  for (std::size_t i = 0; i < invocations.size(); ++i) {
    std::vector<std::future<int>> runs;
    std::vector<std::filesystem::path> outs;
    for (const char* threads : {"", " --threads 1", " --threads 2", " --threads 4"}) {
      outs.push_back(dir / ("run" + std::to_string(i) + "_" + std::to_string(outs.size())));
      const std::string cmd = "\"" + exe + "\" " + invocations[i] + threads + " --out \"" + outs.back().string() +
                              "\" 2>/dev/null";
      runs.push_back(std::async(std::launch::async, [cmd] { return std::system(cmd.c_str()); }));
    }
    std::vector<int> codes;
    for (auto& r : runs) codes.push_back(r.get());
    // A sequential rerun after the concurrent batch.
    outs.push_back(dir / ("run" + std::to_string(i) + "_seq"));
    codes.push_back(std::system(("\"" + exe + "\" " + invocations[i] + " --out \"" + outs.back().string() +
                                 "\" 2>/dev/null").c_str()));
    const std::string first = slurp(outs.front());
    bool same = !first.empty() && std::all_of(codes.begin(), codes.end(), [&](int c) { return c == codes[0]; });
    for (const auto& o : outs) same = same && slurp(o) == first;
    identical += same;
    if (!same) std::cerr << "  non-identical output for: " << invocations[i] << '\n';
  }
  std::filesystem::remove_all(dir);
  return {identical == invocations.size(), std::to_string(identical) + "/" + std::to_string(invocations.size()) +
                                               " invocations byte-identical across 5 runs (4 concurrent)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"inequality suites", inequality_suites},
      {"functional calculus", functional_calculus},
      {"Ito oracle equivalence", ito_oracle},
      {"isometry", isometry},
      {"second-moment constant beta", moment_beta},
      {"Wishart trace moment", trace_moment},
      {"Picard contraction", picard_contraction},
      {"Picard/Euler consistency", picard_euler},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
