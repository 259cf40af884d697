#pragma once

#include <optional>
#include <vector>

#include "lve/combinatorics.hpp"
#include "lve/estimate.hpp"
#include "lve/lattice.hpp"
#include "lve/params.hpp"
#include "lve/random.hpp"

namespace lve {

enum class WKind { vacuum, source };

// A requested expansion term. Vacuum kind: points = z0..zN (cycle
// formulas); source kind: points = y1, y2, z1..zN. refine_m selects the
// two-slot refinement W^(n,m) with the primed derivative points.
struct WQuery {
  int n = 0;
  WKind kind = WKind::source;
  std::optional<int> refine_m;
  double t = 1.0;
  std::vector<int> points;
  std::vector<int> primed;
  SigmaField base;  // empty means the zero field
};

// Sampling schedule. The evaluation tree assigns each convolution a
// depth: the top-level one has depth 0 and uses outer_samples draws; a
// factor reached from depth d opens its convolution at depth d+1 when
// the factor has order 0 and at depth d+2 otherwise (one level for the
// product, one for the nested recursion), drawing samples(depth) times
// with nodes(depth) Gauss-Legendre points for its ds integral.
struct EvalBudget {
  int s_nodes = 8;
  std::int64_t outer_samples = 2000;
  std::vector<std::int64_t> inner_samples = {200, 4, 2};
  int max_order = 2;

  std::int64_t samples(int depth) const {
    if (depth <= 0) return outer_samples;
    const std::size_t i = std::min(static_cast<std::size_t>(depth - 1), inner_samples.size() - 1);
    return inner_samples[i];
  }
  int nodes(int depth) const {
    int k = s_nodes >> depth;
    return k < 2 ? 2 : k;
  }
  void validate() const;
};

struct BoundReport {
  bool pass = false;
  double observed = 0.0;  // |estimate|
  double bound = 0.0;     // theorem-level bound
  double tail = 0.0;      // certified truncation allowance
  double sigma = 0.0;     // statistical 3-sigma allowance
  double margin = 0.0;    // bound + tail + sigma - observed
};

struct TwoPointResult {
  Estimate partial_sum;
  std::vector<Estimate> terms;  // per order 0..n_max
  double tail = 0.0;
  BoundReport bound_check;
};

struct PressureResult {
  Estimate estimate;  // at sites.front()
  BoundReport bound_check;
  std::vector<int> sites;
  std::vector<Estimate> site_estimates;
  bool x_independent = true;
  double tail_allowance = 0.0;
};

struct Lemma4Report {
  int n = 0;
  int n_draws = 0;
  double bound = 0.0;
  double max_ratio = 0.0;  // max over draws of |estimate| / (bound + 3 sigma)
  int violations = 0;
  bool pass = false;
};

// Recursive evaluator of the expansion terms on a fixed lattice. All
// results are pure functions of (query, budget, stream); parallelism
// never changes them.
class Engine {
 public:
  Engine(LatticeSpec spec, ModelParams params);

  const LatticeSpec& spec() const { return spec_; }
  const ModelParams& params() const { return params_; }

  // Order-0 permutation formulas; a shared noise draw serves all
  // permutations of one sample.
  Estimate eval_w0(const WQuery& query, const EvalBudget& budget, RngStream rng) const;

  // The order-n recursion. Fast profile-based paths cover source kind
  // with no z-points (n <= 2) and vacuum kind with one point (n = 1);
  // other queries go through the literal recursive sampler.
  Estimate eval_w(const WQuery& query, const EvalBudget& budget, RngStream rng) const;

  // The two-slot refinement W^(n,m).
  Estimate eval_wnm(const WQuery& query, const EvalBudget& budget, RngStream rng) const;

  TwoPointResult two_point(int y1, int y2, int n_max, const EvalBudget& budget,
                           RngStream rng) const;

  PressureResult pressure(int n_max, const EvalBudget& budget, RngStream rng,
                          std::vector<int> sites = {}) const;

  Lemma4Report lemma4_check(int n, double t, const EvalBudget& budget, RngStream rng,
                            int n_draws = 20) const;

 private:
  LatticeSpec spec_;
  ModelParams params_;
  CatalanTable catalan_;
  BallotTable ballot_;

  TridiagResolvent factorize(const SigmaField& sigma) const;

  Estimate fast_source(int n, int y1, int y2, double t, const SigmaField& base,
                       const EvalBudget& budget, RngStream rng) const;
  Estimate fast_vacuum1(int z, double t, const SigmaField& base, const EvalBudget& budget,
                        RngStream rng) const;

  void prof_w0_vacuum(const SigmaField& xi, double s,
                      const std::vector<std::vector<double>>& pool,
                      std::vector<cdouble>& out) const;
  void prof_w0_source(const SigmaField& xi, double s, int y1, int y2,
                      const std::vector<std::vector<double>>& pool,
                      std::vector<cdouble>& out) const;
  void prof_w1_vacuum(const SigmaField& xi, double s, int depth, const EvalBudget& budget,
                      RngStream rng, std::vector<cdouble>& out) const;
  void prof_w1_source(const SigmaField& xi, double s, int y1, int y2, int depth,
                      const EvalBudget& budget, RngStream rng, std::vector<cdouble>& out) const;

  cdouble w0_value(const WQuery& query, const TridiagResolvent& g) const;
  cdouble generic_estimate(const WQuery& query, const EvalBudget& budget, int depth,
                           RngStream rng) const;
  cdouble generic_draw(const WQuery& query, const EvalBudget& budget, int depth,
                       RngStream rng) const;
};

}  // namespace lve
