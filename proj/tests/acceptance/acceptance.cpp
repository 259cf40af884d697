// Acceptance gate: one line per criterion, exit code = number of failures.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lve/cli.hpp"
#include "lve/combinatorics.hpp"
#include "lve/engine.hpp"
#include "lve/kernels.hpp"
#include "lve/lattice.hpp"
#include "lve/oracle.hpp"

using namespace lve;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int idx, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", idx, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  int checked = 0, bad = 0;
  for (int N = 0; N <= 8; ++N)
    for (int n1 = 0; n1 <= 6; ++n1)
      for (int n2 = 0; n2 <= 6; ++n2) {
        ++checked;
        if (!check_lemma2(N, n1, n2)) ++bad;
      }
  const double dt = seconds_since(t0);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "subset identity: %d cases, %d violations, %.1f s", checked, bad,
                dt);
  report(1, bad == 0 && dt < 10.0, buf);
}

void criterion2() {
  const CatalanTable cat = catalan_table(24);
  const BallotTable bal = ballot_table(24);
  int bad = 0;
  for (int n = 1; n <= 14; ++n)
    for (int m = 1; m <= n; ++m)
      if (!check_lemma3_recursion(n, m, cat, bal)) ++bad;
  double worst = 0.0;
  bool tail_ok = true;
  for (double x : {0.1, 0.2})
    for (int m : {0, 1, 2}) {
      const double res = gf_residual(x, cat, bal, 20, m);
      const double tail = gf_tail_bound(x, 20);
      worst = std::max(worst, res / tail);
      tail_ok = tail_ok && res <= tail;
    }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "recursion violations %d, worst residual/tail %.2e", bad, worst);
  report(2, bad == 0 && tail_ok, buf);
}

void criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  const LatticeSpec spec = make_lattice(0.25, 16.0, Boundary::dirichlet);
  const RngStream root(91);
  int violations = 0;
  double worst = 0.0;
  std::uint64_t id = 0;
  for (double theta : {0.0, 1.0, 1.4})
    for (double lam : {0.05, 0.125}) {
      const ModelParams p{std::polar(1.0, theta), lam};
      for (int d = 0; d < 200; ++d) {
        const SigmaField sigma = sample_noise(spec, 1.0, root.child(id++));
        const Lemma1Report r = check_lemma1(spec, p, sigma);
        worst = std::max(worst, r.max_violation);
        if (!r.holds) ++violations;
      }
    }
  const double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "1200 draws on 128 sites, %d violations, worst excess %.1e, %.1f s", violations,
                worst, dt);
  report(3, violations == 0 && dt < 120.0, buf);
}

void criterion4() {
  EvalBudget small;
  small.outer_samples = 4;
  small.inner_samples = {2};
  bool pass = true;
  double worst_coarse = 0.0, worst_fine = 0.0;
  for (int pass_idx = 0; pass_idx < 2; ++pass_idx) {
    const double a = pass_idx == 0 ? 0.25 : 0.0625;
    const double tol = pass_idx == 0 ? 0.07 : 0.005;
    double& worst = pass_idx == 0 ? worst_coarse : worst_fine;
    const LatticeSpec spec = make_lattice(a, 16.0, Boundary::dirichlet);
    const Engine eng(spec, ModelParams{cdouble(1.0, 0.0), 0.0});
    const int y1 = spec.n_sites / 2;
    for (int sep = 0; sep <= 4; ++sep) {
      const int y2 = y1 + static_cast<int>(std::lround(sep / a));
      const TwoPointResult res = eng.two_point(y1, y2, 0, small, RngStream(5));
      if (res.partial_sum.std_err != 0.0) pass = false;
      const double ref = covariance_C(1.0, spec.site(y1), spec.site(y2));
      const double rel = std::abs(res.partial_sum.mean.real() - ref) / ref;
      worst = std::max(worst, rel);
      if (rel > tol) pass = false;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "free propagator vs continuum: worst rel err %.2e (a=0.25), %.2e (a=0.0625)",
                worst_coarse, worst_fine);
  report(4, pass, buf);
}

std::vector<TwoPointResult> g_theorem1_runs;  // reused by the parity criterion

void criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  const LatticeSpec spec = make_lattice(0.25, 16.0, Boundary::dirichlet);
  const EvalBudget budget;  // default: s_nodes 8, outer 2000, inner {200,4,2}
  const RngStream root(17);
  bool pass = true;
  double worst_margin = 1e300;
  std::uint64_t id = 0;
  for (double lam : {0.02, 0.05, 0.1}) {
    const Engine eng(spec, ModelParams{cdouble(1.0, 0.0), lam});
    for (int sep : {0, 1, 2}) {
      const int y1 = spec.n_sites / 2;
      const int y2 = y1 + static_cast<int>(std::lround(sep / spec.a));
      const TwoPointResult res = eng.two_point(y1, y2, 2, budget, root.child(id++));
      g_theorem1_runs.push_back(res);
      worst_margin = std::min(worst_margin, res.bound_check.margin);
      if (!res.bound_check.pass) pass = false;
    }
  }
  const double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "9 grid points, worst margin %.3e, %.0f s", worst_margin, dt);
  report(5, pass && dt < 1800.0, buf);
}

void criterion6() {
  const LatticeSpec spec = make_lattice(1.0, 3.0, Boundary::dirichlet);  // 6 sites
  EvalBudget budget;
  budget.outer_samples = 2000;
  budget.inner_samples = {100, 4, 2};
  bool pass = true;
  std::string detail;
  for (double lam : {0.02, 0.05}) {
    const ModelParams p{cdouble(1.0, 0.0), lam};
    const TinyModel tiny = make_tiny_model(spec, p);
    const QuadratureResult oq = oracle_two_point_quadrature(tiny, 2, 3);
    if (!oq.converged) pass = false;
    const Engine eng(spec, p);
    const TwoPointResult lve = eng.two_point(2, 3, 2, budget, RngStream(23));
    const double diff = std::abs(lve.partial_sum.mean - cdouble(oq.value));
    const double allow = lve.tail + 3.0 * lve.partial_sum.std_err + 3.0 * oq.error;
    if (diff > allow) pass = false;
    const Estimate os = oracle_two_point_sigma(spec, p, 2, 3, 200000, RngStream(29));
    const double odiff = std::abs(os.mean - cdouble(oq.value));
    if (odiff > 3.0 * os.std_err) pass = false;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "[lam=%.2f lve-quad %.1e<=%.1e quad-sigma %.1e<=%.1e] ", lam,
                  diff, allow, odiff, 3.0 * os.std_err);
    detail += buf;
  }
  report(6, pass, detail);
}

void criterion7() {
  bool pass = true;
  double worst = 0.0;
  for (const TwoPointResult& r : g_theorem1_runs) {
    const double ratio = std::abs(r.partial_sum.mean.imag()) / (3.0 * r.partial_sum.std_err);
    worst = std::max(worst, ratio);
    if (ratio > 1.0) pass = false;
  }
  const LatticeSpec spec = make_lattice(0.25, 4.0, Boundary::dirichlet);  // 32 sites
  const Engine eng(spec, ModelParams{cdouble(1.0, 0.0), 0.05});
  EvalBudget budget;
  budget.outer_samples = 2000;
  budget.inner_samples = {100, 4, 2};
  for (int n : {0, 1}) {
    WQuery q;
    q.n = n;
    q.kind = WKind::vacuum;
    q.t = 1.0;
    q.points = {16};
    const Estimate e = eng.eval_w(q, budget, RngStream(100 + n));
    const double ratio = std::abs(e.mean.real()) / (3.0 * e.std_err);
    worst = std::max(worst, ratio);
    if (ratio > 1.0) pass = false;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "real/imag parity, worst |off-parity|/3sigma %.2f", worst);
  report(7, pass, buf);
}

void criterion8() {
  const LatticeSpec spec = make_lattice(0.25, 4.0, Boundary::dirichlet);  // 32 sites
  const Engine eng(spec, ModelParams{cdouble(1.0, 0.0), 0.05});
  EvalBudget fast_b;
  fast_b.outer_samples = 1000;
  fast_b.inner_samples = {64, 4, 2};
  EvalBudget gen_b;
  gen_b.outer_samples = 250;
  gen_b.inner_samples = {16, 4, 2};
  RngStream pick(55);
  bool pass = true;
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const int y1 = static_cast<int>(pick.uniform01() * spec.n_sites);
    const int y2 = static_cast<int>(pick.uniform01() * spec.n_sites);
    WQuery q;
    q.n = 1;
    q.kind = WKind::source;
    q.t = 1.0;
    q.points = {y1, y2};
    const Estimate w1 = eng.eval_w(q, fast_b, RngStream(200).child(k));
    q.refine_m = 1;
    const Estimate w11 = eng.eval_wnm(q, gen_b, RngStream(300).child(k));
    const double ratio =
        std::abs(w1.mean - w11.mean) / (3.0 * std::hypot(w1.std_err, w11.std_err));
    worst = std::max(worst, ratio);
    if (ratio > 1.0) pass = false;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "10 pairs on 32 sites, worst |diff|/3sigma %.2f", worst);
  report(8, pass, buf);
}

void criterion9() {
  const LatticeSpec spec = make_lattice(0.25, 4.0, Boundary::dirichlet);  // 32 sites
  const Engine eng(spec, ModelParams{cdouble(1.0, 0.0), 0.05});
  EvalBudget budget;
  budget.outer_samples = 400;
  budget.inner_samples = {64, 4, 2};
  bool pass = true;
  std::string detail;
  for (int n : {0, 1}) {
    const Lemma4Report r = eng.lemma4_check(n, 1.0, budget, RngStream(400 + n), 20);
    if (!r.pass) pass = false;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "[n=%d max ratio %.3f violations %d] ", n, r.max_ratio,
                  r.violations);
    detail += buf;
  }
  report(9, pass, detail);
}

void criterion10() {
  const LatticeSpec spec = make_lattice(0.25, 16.0, Boundary::dirichlet);  // 128 sites
  EvalBudget budget;
  budget.outer_samples = 800;
  budget.inner_samples = {100, 4, 2};
  bool pass = true;
  std::string detail;
  {
    const Engine free_eng(spec, ModelParams{cdouble(1.0, 0.0), 0.0});
    const PressureResult r = free_eng.pressure(1, budget, RngStream(500));
    if (r.estimate.mean != cdouble(0.0) || r.estimate.std_err != 0.0) pass = false;
    detail += "[lam=0 exact 0] ";
  }
  for (double lam : {0.05, 0.125}) {
    const Engine eng(spec, ModelParams{cdouble(1.0, 0.0), lam});
    const PressureResult r = eng.pressure(1, budget, RngStream(600 + (lam > 0.1)));
    const double obs = std::abs(r.estimate.mean);
    const double allow = theorem2_bound(eng.params()) + 3.0 * r.estimate.std_err;
    if (obs > allow) pass = false;
    if (!r.x_independent) pass = false;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "[lam=%.3f obs %.3e <= %.3e x-indep %d] ", lam, obs, allow,
                  r.x_independent ? 1 : 0);
    detail += buf;
  }
  report(10, pass, detail);
}

void criterion11() {
  const fs::path dir = fs::temp_directory_path() / "lve_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"two_point": {
    "a": 0.5, "L_box": 4.0, "lambda": [0.05], "separations": [0.0, 1.0], "n_max": 1,
    "budget": {"s_nodes": 4, "outer_samples": 200, "inner_samples": [32, 4, 2], "max_order": 1}
  }})";
  const int rc1 = cli::run({"two-point", "--config", cfg.string(), "--seed", "77", "--threads",
                            "1", "--out", (dir / "t1").string()});
  const int rc8 = cli::run({"two-point", "--config", cfg.string(), "--seed", "77", "--threads",
                            "8", "--out", (dir / "t8").string()});
  const std::string c1 = slurp(dir / "t1" / "results.csv");
  const std::string c8 = slurp(dir / "t8" / "results.csv");
  const bool pass = rc1 == 0 && rc8 == 0 && !c1.empty() && c1 == c8;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "results.csv identical across 1/8 workers: %s",
                c1 == c8 ? "yes" : "no");
  fs::remove_all(dir);
  report(11, pass, buf);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::printf("acceptance: %d of 11 criteria failed, %.0f s total\n", g_failures,
              seconds_since(t0));
  return g_failures;
}
