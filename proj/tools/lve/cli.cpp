#include "lve/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "lve/combinatorics.hpp"
#include "lve/engine.hpp"
#include "lve/kernels.hpp"
#include "lve/oracle.hpp"
#include "lve/parallel.hpp"

#ifndef LVELAB_GIT_REV
#define LVELAB_GIT_REV "unknown"
#endif

namespace lve::cli {

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitScience = 1;
constexpr int kExitResource = 2;
constexpr int kExitConfig = 64;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Row {
  std::string command;
  std::string item;
  double lambda = 0.0;
  double re_m2 = 0.0;
  double im_m2 = 0.0;
  double t = 0.0;
  double y1 = 0.0;
  double y2 = 0.0;
  double value_re = 0.0;
  double value_im = 0.0;
  double std_err = 0.0;
  double bound = 0.0;
  double tail = 0.0;
  double sigma = 0.0;
  bool pass = true;
};

struct RunContext {
  std::string command;
  json section;
  std::uint64_t seed = 12345;
  std::vector<Row> rows;

  Row& row(const std::string& item) {
    rows.push_back({});
    rows.back().command = command;
    rows.back().item = item;
    return rows.back();
  }
};

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double num(const json& s, const char* key, double dflt) {
  if (!s.contains(key)) return dflt;
  if (!s[key].is_number()) throw ConfigError(std::string(key) + ": expected a number");
  return s[key].get<double>();
}

std::int64_t integer(const json& s, const char* key, std::int64_t dflt) {
  if (!s.contains(key)) return dflt;
  if (!s[key].is_number_integer()) throw ConfigError(std::string(key) + ": expected an integer");
  return s[key].get<std::int64_t>();
}

std::vector<double> num_list(const json& s, const char* key, std::vector<double> dflt) {
  if (!s.contains(key)) return dflt;
  if (!s[key].is_array()) throw ConfigError(std::string(key) + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : s[key]) {
    if (!v.is_number()) throw ConfigError(std::string(key) + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

EvalBudget parse_budget(const json& section, EvalBudget dflt) {
  if (!section.contains("budget")) return dflt;
  const json& b = section["budget"];
  check_keys(b, {"s_nodes", "outer_samples", "inner_samples", "max_order"}, "budget");
  EvalBudget out = dflt;
  out.s_nodes = static_cast<int>(integer(b, "s_nodes", out.s_nodes));
  out.outer_samples = integer(b, "outer_samples", out.outer_samples);
  out.max_order = static_cast<int>(integer(b, "max_order", out.max_order));
  if (b.contains("inner_samples")) {
    out.inner_samples.clear();
    for (double v : num_list(b, "inner_samples", {}))
      out.inner_samples.push_back(static_cast<std::int64_t>(v));
  }
  out.validate();
  return out;
}

json budget_json(const EvalBudget& b) {
  return json{{"s_nodes", b.s_nodes},
              {"outer_samples", b.outer_samples},
              {"inner_samples", b.inner_samples},
              {"max_order", b.max_order}};
}

LatticeSpec parse_lattice(const json& s, double dflt_a, double dflt_L) {
  return make_lattice(num(s, "a", dflt_a), num(s, "L_box", dflt_L), Boundary::dirichlet);
}

ModelParams parse_params(const json& s, double lambda) {
  return ModelParams{cdouble(num(s, "m2_re", 1.0), num(s, "m2_im", 0.0)), lambda};
}

void fill_estimate(Row& r, const Estimate& e) {
  r.value_re = e.mean.real();
  r.value_im = e.mean.imag();
  r.std_err = e.std_err;
}

void fill_bound(Row& r, const BoundReport& b) {
  r.bound = b.bound;
  r.tail = b.tail;
  r.sigma = b.sigma;
  r.pass = b.pass;
}

// ---- subcommands ----------------------------------------------------

void run_verify_combinatorics(RunContext& ctx) {
  const json& s = ctx.section;
  check_keys(s, {"lemma2_N_max", "lemma2_index_max", "lemma3_n_max", "gf_x", "gf_n_max"},
             ctx.command);
  const int N_max = static_cast<int>(integer(s, "lemma2_N_max", 8));
  const int idx_max = static_cast<int>(integer(s, "lemma2_index_max", 6));
  const int l3_max = static_cast<int>(integer(s, "lemma3_n_max", 14));
  const std::vector<double> xs = num_list(s, "gf_x", {0.1, 0.2});
  const int gf_n = static_cast<int>(integer(s, "gf_n_max", 20));

  Row& r2 = ctx.row("lemma2");
  for (int N = 0; N <= N_max; ++N)
    for (int n1 = 0; n1 <= idx_max; ++n1)
      for (int n2 = 0; n2 <= idx_max; ++n2)
        if (!check_lemma2(N, n1, n2)) {
          r2.pass = false;
          std::fprintf(stderr, "lemma2 fails at N=%d n1=%d n2=%d\n", N, n1, n2);
        }
  r2.value_re = static_cast<double>((N_max + 1) * (idx_max + 1) * (idx_max + 1));

  const CatalanTable cat = catalan_table(std::max(l3_max, gf_n) + 1);
  const BallotTable bal = ballot_table(std::max(l3_max, gf_n) + 1);
  Row& r3 = ctx.row("lemma3_recursion");
  int cases = 0;
  for (int n = 1; n <= l3_max; ++n)
    for (int m = 1; m <= n; ++m, ++cases)
      if (!check_lemma3_recursion(n, m, cat, bal)) {
        r3.pass = false;
        std::fprintf(stderr, "lemma3 recursion fails at n=%d m=%d\n", n, m);
      }
  r3.value_re = cases;

  const BallotTable small_fast = ballot_table(10);
  const BallotTable small_enum = ballot_table_enumerated(10);
  Row& rb = ctx.row("ballot_cross_check");
  for (int n = 0; n <= 10; ++n)
    for (int m = 0; m <= 10; ++m)
      if (small_fast.at(n, m) != small_enum.at(n, m)) {
        rb.pass = false;
        std::fprintf(stderr, "ballot paths disagree at n=%d m=%d\n", n, m);
      }

  for (double x : xs) {
    for (int m : {0, 1, 2}) {
      Row& r = ctx.row("gf_residual_m" + std::to_string(m));
      r.y1 = x;
      const double res = gf_residual(x, cat, bal, gf_n, m);
      const double tail = gf_tail_bound(x, gf_n);
      r.value_re = res;
      r.bound = tail;
      r.pass = res <= tail;
    }
  }
}

void run_bounds(RunContext& ctx) {
  const json& s = ctx.section;
  check_keys(s, {"re_m2", "lambda", "separations", "t"}, ctx.command);
  const std::vector<double> m2s = num_list(s, "re_m2", {1.0});
  const std::vector<double> lams = num_list(s, "lambda", {0.0, 0.05, 0.125});
  const std::vector<double> seps = num_list(s, "separations", {0.0, 1.0, 2.0});
  const double t = num(s, "t", 1.0);

  for (double m2 : m2s) {
    for (double lam : lams) {
      const ModelParams p{cdouble(m2, 0.0), lam};
      if (!p.admissible(t)) {
        Row& r = ctx.row("inadmissible");
        r.lambda = lam;
        r.re_m2 = m2;
        r.t = t;
        r.value_re = p.frontier();
        continue;
      }
      const DecayParams d = decay_params(p, t);
      Row& rc = ctx.row("decay_rate");
      rc.lambda = lam;
      rc.re_m2 = m2;
      rc.t = t;
      rc.value_re = std::sqrt(d.c * m2);
      Row& r2 = ctx.row("theorem2_bound");
      r2.lambda = lam;
      r2.re_m2 = m2;
      r2.value_re = theorem2_bound(p);
      for (double sep : seps) {
        Row& r1 = ctx.row("theorem1_bound");
        r1.lambda = lam;
        r1.re_m2 = m2;
        r1.t = t;
        r1.y2 = sep;
        r1.value_re = theorem1_bound(p, 0.0, sep);
      }
    }
  }
}

void run_two_point(RunContext& ctx) {
  const json& s = ctx.section;
  check_keys(s, {"a", "L_box", "m2_re", "m2_im", "lambda", "separations", "n_max", "budget"},
             ctx.command);
  const LatticeSpec spec = parse_lattice(s, 0.25, 16.0);
  const std::vector<double> lams = num_list(s, "lambda", {0.02, 0.05, 0.1});
  const std::vector<double> seps = num_list(s, "separations", {0.0, 1.0, 2.0});
  const int n_max = static_cast<int>(integer(s, "n_max", 2));
  const EvalBudget budget = parse_budget(s, EvalBudget{});

  const RngStream root(ctx.seed);
  std::uint64_t run_id = 0;
  for (double lam : lams) {
    const ModelParams p = parse_params(s, lam);
    const Engine eng(spec, p);
    for (double sep : seps) {
      const int y1 = spec.n_sites / 2;
      const int y2 = y1 + static_cast<int>(std::lround(sep / spec.a));
      const TwoPointResult res = eng.two_point(y1, y2, n_max, budget, root.child(run_id++));
      Row& r = ctx.row("two_point");
      r.lambda = lam;
      r.re_m2 = p.m2.real();
      r.im_m2 = p.m2.imag();
      r.t = 1.0;
      r.y1 = y1;
      r.y2 = y2;
      fill_estimate(r, res.partial_sum);
      fill_bound(r, res.bound_check);
      for (int n = 0; n <= n_max; ++n) {
        Row& rt = ctx.row("two_point_term_n" + std::to_string(n));
        rt.lambda = lam;
        rt.re_m2 = p.m2.real();
        rt.t = 1.0;
        rt.y1 = y1;
        rt.y2 = y2;
        fill_estimate(rt, res.terms[static_cast<std::size_t>(n)]);
      }
    }
  }
}

void run_pressure(RunContext& ctx) {
  const json& s = ctx.section;
  check_keys(s, {"a", "L_box", "m2_re", "m2_im", "lambda", "n_max", "budget"}, ctx.command);
  const LatticeSpec spec = parse_lattice(s, 0.25, 16.0);
  const std::vector<double> lams = num_list(s, "lambda", {0.0, 0.05, 0.125});
  const int n_max = static_cast<int>(integer(s, "n_max", 1));
  const EvalBudget budget = parse_budget(s, EvalBudget{});

  const RngStream root(ctx.seed);
  std::uint64_t run_id = 0;
  for (double lam : lams) {
    const ModelParams p = parse_params(s, lam);
    const Engine eng(spec, p);
    const PressureResult res = eng.pressure(n_max, budget, root.child(run_id++));
    Row& r = ctx.row("pressure");
    r.lambda = lam;
    r.re_m2 = p.m2.real();
    r.im_m2 = p.m2.imag();
    r.y1 = res.sites.front();
    fill_estimate(r, res.estimate);
    fill_bound(r, res.bound_check);
    for (std::size_t i = 0; i < res.sites.size(); ++i) {
      Row& rs = ctx.row("pressure_site");
      rs.lambda = lam;
      rs.re_m2 = p.m2.real();
      rs.y1 = res.sites[i];
      fill_estimate(rs, res.site_estimates[i]);
    }
    Row& rx = ctx.row("pressure_x_independent");
    rx.lambda = lam;
    rx.re_m2 = p.m2.real();
    rx.value_re = res.x_independent ? 1.0 : 0.0;
    rx.pass = res.x_independent;
  }
}

void run_resolvent_check(RunContext& ctx) {
  const json& s = ctx.section;
  check_keys(s, {"a", "L_box", "m2_abs", "m2_theta", "lambda", "n_draws"}, ctx.command);
  const LatticeSpec spec = parse_lattice(s, 0.25, 16.0);
  const double m2_abs = num(s, "m2_abs", 1.0);
  const std::vector<double> thetas = num_list(s, "m2_theta", {0.0, 1.0, 1.4});
  const std::vector<double> lams = num_list(s, "lambda", {0.05, 0.125});
  const int n_draws = static_cast<int>(integer(s, "n_draws", 200));

  const RngStream root(ctx.seed);
  std::uint64_t run_id = 0;
  for (double theta : thetas) {
    for (double lam : lams) {
      const ModelParams p{m2_abs * cdouble(std::cos(theta), std::sin(theta)), lam};
      double worst = 0.0;
      int violations = 0;
      for (int d = 0; d < n_draws; ++d) {
        const SigmaField sigma = sample_noise(spec, 1.0, root.child(run_id++));
        const Lemma1Report rep = check_lemma1(spec, p, sigma);
        worst = std::max(worst, rep.max_violation);
        if (!rep.holds) ++violations;
      }
      Row& r = ctx.row("lemma1");
      r.lambda = lam;
      r.re_m2 = p.m2.real();
      r.im_m2 = p.m2.imag();
      r.t = 1.0;
      r.value_re = worst;
      r.bound = 1e-9;
      r.pass = violations == 0;
    }
  }
}

void run_oracle_compare(RunContext& ctx) {
  const json& s = ctx.section;
  check_keys(s, {"n_sites", "a", "m2_re", "lambda", "y1", "y2", "sigma_samples", "n_max", "budget"},
             ctx.command);
  const int n_sites = static_cast<int>(integer(s, "n_sites", 6));
  const double a = num(s, "a", 1.0);
  const LatticeSpec spec = make_lattice(a, 0.5 * a * n_sites, Boundary::dirichlet);
  const std::vector<double> lams = num_list(s, "lambda", {0.02, 0.05});
  const int y1 = static_cast<int>(integer(s, "y1", n_sites / 2 - 1));
  const int y2 = static_cast<int>(integer(s, "y2", n_sites / 2));
  const std::int64_t sigma_samples = integer(s, "sigma_samples", 200000);
  const int n_max = static_cast<int>(integer(s, "n_max", 2));
  const EvalBudget budget = parse_budget(s, EvalBudget{});

  const RngStream root(ctx.seed);
  std::uint64_t run_id = 0;
  for (double lam : lams) {
    const ModelParams p = parse_params(s, lam);
    const TinyModel model = make_tiny_model(spec, p);
    const QuadratureResult qa = oracle_two_point_quadrature(model, y1, y2);
    Row& ra = ctx.row("oracle_quadrature");
    ra.lambda = lam;
    ra.re_m2 = p.m2.real();
    ra.y1 = y1;
    ra.y2 = y2;
    ra.value_re = qa.value;
    ra.std_err = qa.error;
    ra.pass = qa.converged;

    const Estimate qb = oracle_two_point_sigma(spec, p, y1, y2, sigma_samples, root.child(run_id++));
    Row& rb = ctx.row("oracle_sigma");
    rb.lambda = lam;
    rb.re_m2 = p.m2.real();
    rb.y1 = y1;
    rb.y2 = y2;
    fill_estimate(rb, qb);
    rb.sigma = 3.0 * qb.std_err;
    rb.pass = std::abs(qb.mean - qa.value) <= std::max(3.0 * qb.std_err, 1e-12);

    const Engine eng(spec, p);
    const TwoPointResult tp = eng.two_point(y1, y2, n_max, budget, root.child(run_id++));
    Row& rl = ctx.row("lve_vs_oracle");
    rl.lambda = lam;
    rl.re_m2 = p.m2.real();
    rl.t = 1.0;
    rl.y1 = y1;
    rl.y2 = y2;
    fill_estimate(rl, tp.partial_sum);
    rl.tail = tp.tail;
    rl.sigma = 3.0 * tp.partial_sum.std_err;
    rl.bound = qa.value;
    rl.pass = std::abs(tp.partial_sum.mean - qa.value) <= tp.tail + rl.sigma + 1e-12;
  }
}

void run_lemma_checks(RunContext& ctx) {
  const json& s = ctx.section;
  check_keys(s, {"a", "L_box", "m2_re", "m2_im", "lambda", "t", "n_draws", "budget",
                 "lemma5_pairs", "lemma5_L_box"},
             ctx.command);
  const LatticeSpec spec = parse_lattice(s, 0.25, 16.0);
  const double lam = num(s, "lambda", 0.05);
  const double t = num(s, "t", 1.0);
  const int n_draws = static_cast<int>(integer(s, "n_draws", 20));
  EvalBudget dflt;
  dflt.outer_samples = 400;
  dflt.inner_samples = {64, 4, 2};
  const EvalBudget budget = parse_budget(s, dflt);
  const ModelParams p = parse_params(s, lam);
  const Engine eng(spec, p);

  const RngStream root(ctx.seed);
  for (int n : {0, 1}) {
    const Lemma4Report rep = eng.lemma4_check(n, t, budget, root.child(10 + n), n_draws);
    Row& r = ctx.row("lemma4_n" + std::to_string(n));
    r.lambda = lam;
    r.re_m2 = p.m2.real();
    r.im_m2 = p.m2.imag();
    r.t = t;
    r.value_re = rep.max_ratio;
    r.bound = rep.bound;
    r.pass = rep.pass;
  }

  const int pairs = static_cast<int>(integer(s, "lemma5_pairs", 2));
  const LatticeSpec spec5 = make_lattice(spec.a, num(s, "lemma5_L_box", 4.0), Boundary::dirichlet);
  const Engine eng5(spec5, p);
  EvalBudget gen = budget;
  gen.outer_samples = std::max<std::int64_t>(50, budget.outer_samples / 4);
  gen.inner_samples = {16, 4, 2};
  RngStream r5 = root.child(20);
  for (int k = 0; k < pairs; ++k) {
    const int y1 = 2 + static_cast<int>(r5.child(3 * k).next_u64() % (spec5.n_sites / 2 - 2));
    const int y2 =
        spec5.n_sites / 2 + static_cast<int>(r5.child(3 * k + 1).next_u64() % (spec5.n_sites / 2 - 2));
    WQuery q;
    q.n = 1;
    q.kind = WKind::source;
    q.t = t;
    q.points = {y1, y2};
    const Estimate fast = eng5.eval_w(q, budget, r5.child(3 * k + 2).child(0));
    WQuery qm = q;
    qm.refine_m = 1;
    const Estimate refined = eng5.eval_wnm(qm, gen, r5.child(3 * k + 2).child(1));
    Row& r = ctx.row("lemma5_n1");
    r.lambda = lam;
    r.re_m2 = p.m2.real();
    r.t = t;
    r.y1 = y1;
    r.y2 = y2;
    fill_estimate(r, refined);
    r.bound = fast.mean.real();
    r.sigma = 3.0 * std::hypot(fast.std_err, refined.std_err);
    r.pass = std::abs(refined.mean - fast.mean) <= std::max(r.sigma, 1e-12);
  }
}

// ---- output ---------------------------------------------------------

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string render_csv(const std::vector<Row>& rows) {
  std::ostringstream out;
  out << "command,item,lambda,re_m2,im_m2,t,y1,y2,value_re,value_im,std_err,bound,tail,sigma,"
         "pass\n";
  for (const Row& r : rows) {
    out << r.command << ',' << r.item << ',' << fmt(r.lambda) << ',' << fmt(r.re_m2) << ','
        << fmt(r.im_m2) << ',' << fmt(r.t) << ',' << fmt(r.y1) << ',' << fmt(r.y2) << ','
        << fmt(r.value_re) << ',' << fmt(r.value_im) << ',' << fmt(r.std_err) << ','
        << fmt(r.bound) << ',' << fmt(r.tail) << ',' << fmt(r.sigma) << ',' << (r.pass ? 1 : 0)
        << '\n';
  }
  return out.str();
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Numerical laboratory for the inductive loop vertex expansion"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 12345;
  unsigned threads = 0;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--seed", seed, "Root RNG seed");
  app.add_option("--threads", threads, "Worker bound (0 = hardware)");
  app.add_option("--out", out_dir, "Output directory");

  static const std::vector<std::pair<std::string, void (*)(RunContext&)>> commands = {
      {"verify-combinatorics", run_verify_combinatorics},
      {"bounds", run_bounds},
      {"two-point", run_two_point},
      {"pressure", run_pressure},
      {"resolvent-check", run_resolvent_check},
      {"oracle-compare", run_oracle_compare},
      {"lemma-checks", run_lemma_checks},
  };
  for (const auto& [name, fn] : commands) {
    (void)fn;
    app.add_subcommand(name);
  }

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  set_max_threads(threads);

  RunContext ctx;
  ctx.seed = seed;
  json config = json::object();

  const auto wall_start = std::chrono::steady_clock::now();
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config file " + config_path);
      try {
        config = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
      }
    }
    std::set<std::string> sections;
    for (const auto& [name, fn] : commands) {
      (void)fn;
      std::string key = name;
      for (char& c : key)
        if (c == '-') c = '_';
      sections.insert(key);
    }
    check_keys(config, sections, "config");

    for (const auto& [name, fn] : commands) {
      if (!app.get_subcommand(name)->parsed()) continue;
      ctx.command = name;
      std::string key = name;
      for (char& c : key)
        if (c == '-') c = '_';
      ctx.section = config.contains(key) ? config[key] : json::object();
      fn(ctx);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "scientific precondition failed: %s\n", e.what());
    return kExitScience;
  } catch (const std::bad_alloc&) {
    std::fprintf(stderr, "out of memory\n");
    return kExitResource;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime failure: %s\n", e.what());
    return kExitResource;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

  const std::string csv = render_csv(ctx.rows);
  char digest[20];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(fnv1a(csv)));

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "cannot create output directory %s\n", out_dir.c_str());
    return kExitResource;
  }
  {
    std::ofstream f(out_dir + "/results.csv", std::ios::binary);
    f << csv;
    if (!f) {
      std::fprintf(stderr, "cannot write results.csv\n");
      return kExitResource;
    }
  }
  bool all_pass = true;
  for (const Row& r : ctx.rows) all_pass = all_pass && r.pass;
  {
    json manifest{{"command", ctx.command},
                  {"config", config},
                  {"seed", seed},
                  {"threads", threads},
                  {"version", LVELAB_GIT_REV},
                  {"default_budget", budget_json(EvalBudget{})},
                  {"wall_time_s", wall},
                  {"rows", ctx.rows.size()},
                  {"results_digest", std::string(digest)},
                  {"pass", all_pass}};
    std::ofstream f(out_dir + "/manifest.json", std::ios::binary);
    f << manifest.dump(2) << '\n';
  }

  for (const Row& r : ctx.rows)
    if (!r.pass) std::fprintf(stderr, "FAIL %s/%s\n", r.command.c_str(), r.item.c_str());
  std::printf("%s: %zu rows, digest %s, %s\n", ctx.command.c_str(), ctx.rows.size(), digest,
              all_pass ? "pass" : "FAIL");
  return all_pass ? kExitPass : kExitScience;
}

}  // namespace lve::cli
