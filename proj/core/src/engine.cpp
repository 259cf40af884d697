#include "lve/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lve/kernels.hpp"
#include "lve/parallel.hpp"
#include "lve/quadrature.hpp"

namespace lve {

namespace {

constexpr int kMaxPermutationPoints = 6;
constexpr double kSigmaFloor = 1e-12;

double noise_scale(double variance, double a) {
  return variance > 0.0 ? std::sqrt(variance / a) : 0.0;
}

void shifted_field(const SigmaField& base, const std::vector<double>& zeta, double scale,
                   SigmaField& out) {
  out.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + scale * zeta[i];
}

// iid standard normal vectors, one per pool slot; a pool is generated
// once and reused across s-nodes, only the variance scale changes.
void fill_pool(const RngStream& rng, std::int64_t count, int n,
               std::vector<std::vector<double>>& pool) {
  pool.resize(static_cast<std::size_t>(count));
  for (std::int64_t p = 0; p < count; ++p)
    rng.child(static_cast<std::uint64_t>(p)).fill_normal(pool[p], static_cast<std::size_t>(n));
}

double three_sigma(double std_err) { return std::max(3.0 * std_err, kSigmaFloor); }

const SigmaField& resolve_base(const WQuery& q, SigmaField& storage, int n_sites) {
  if (!q.base.empty()) {
    if (q.base.size() != static_cast<std::size_t>(n_sites))
      throw std::invalid_argument("query base field size mismatch");
    return q.base;
  }
  storage.assign(static_cast<std::size_t>(n_sites), 0.0);
  return storage;
}

}  // namespace

void EvalBudget::validate() const {
  if (s_nodes < 1 || outer_samples < 1 || inner_samples.empty())
    throw std::invalid_argument("EvalBudget: all budget fields must be positive");
  for (auto k : inner_samples)
    if (k < 1) throw std::invalid_argument("EvalBudget: all budget fields must be positive");
  if (max_order < 0 || max_order > 3)
    throw std::invalid_argument("EvalBudget: max_order must be in [0, 3]");
}

Engine::Engine(LatticeSpec spec, ModelParams params)
    : spec_(spec), params_(params), catalan_(catalan_table(48)), ballot_(ballot_table(48)) {
  spec_.validate();
  params_.validate();
  if (spec_.boundary != Boundary::dirichlet)
    throw std::invalid_argument("engine needs the Dirichlet lattice");
}

TridiagResolvent Engine::factorize(const SigmaField& sigma) const {
  TridiagResolvent f(build_operator(spec_, params_, sigma));
  if (!f.ok()) throw std::runtime_error("tridiagonal factorization degenerated");
  return f;
}

cdouble Engine::w0_value(const WQuery& query, const TridiagResolvent& g) const {
  const double coupling = std::sqrt(2.0 * params_.lambda);
  const bool vacuum = query.kind == WKind::vacuum;
  const int fixed = vacuum ? 1 : 2;
  const int N = static_cast<int>(query.points.size()) - fixed;

  std::vector<int> sites;
  sites.reserve(query.points.size());
  for (int p : query.points) {
    if (p < 0 || p >= spec_.n_sites) throw std::invalid_argument("query point off the lattice");
    if (std::find(sites.begin(), sites.end(), p) == sites.end()) sites.push_back(p);
  }
  std::vector<std::vector<cdouble>> cols(sites.size());
  for (std::size_t k = 0; k < sites.size(); ++k) g.column(sites[k], cols[k]);
  auto gval = [&](int i, int j) -> cdouble {
    const std::size_t k = std::find(sites.begin(), sites.end(), j) - sites.begin();
    return cols[k][static_cast<std::size_t>(i)];
  };

  const int first = query.points[0];
  const int last = vacuum ? query.points[0] : query.points[1];
  if (N == 0)
    return vacuum ? cdouble(0.0, -coupling) * gval(first, first) : gval(first, last);

  std::vector<int> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), 0);
  cdouble sum(0.0, 0.0);
  do {
    cdouble prod(1.0, 0.0);
    int prev = first;
    for (int k = 0; k < N; ++k) {
      const int z = query.points[static_cast<std::size_t>(fixed + order[k])];
      prod *= gval(prev, z);
      prev = z;
    }
    prod *= gval(prev, last);
    sum += prod;
  } while (std::next_permutation(order.begin(), order.end()));

  cdouble pref = std::pow(cdouble(0.0, -2.0 * coupling), N);
  if (vacuum) pref *= 0.5 * cdouble(0.0, -2.0 * coupling);
  return pref * sum;
}

Estimate Engine::eval_w0(const WQuery& query, const EvalBudget& budget, RngStream rng) const {
  budget.validate();
  if (query.n != 0 || query.refine_m)
    throw std::invalid_argument("eval_w0 handles plain order-0 queries only");
  const int fixed = query.kind == WKind::vacuum ? 1 : 2;
  const int N = static_cast<int>(query.points.size()) - fixed;
  if (N < 0) throw std::invalid_argument("too few points for the query kind");
  if (N > kMaxPermutationPoints)
    throw std::invalid_argument("more than 6 derivative points: permutation sum rejected");

  if (params_.lambda == 0.0 && query.kind == WKind::vacuum) return Estimate::exact(0.0);

  SigmaField zero;
  const SigmaField& base = resolve_base(query, zero, spec_.n_sites);

  if (query.t <= 0.0 || params_.lambda == 0.0) {
    // point-mass convolution, or a sigma-independent integrand
    return Estimate::exact(w0_value(query, factorize(base)));
  }

  std::vector<cdouble> slots(static_cast<std::size_t>(budget.samples(0)));
  parallel_for(slots.size(), [&](std::size_t i) {
    SigmaField xi = sample_noise(spec_, query.t, rng.child(i));
    for (std::size_t k = 0; k < xi.size(); ++k) xi[k] += base[k];
    slots[i] = w0_value(query, factorize(xi));
  });
  return from_samples(slots);
}

void Engine::prof_w0_vacuum(const SigmaField& xi, double s,
                            const std::vector<std::vector<double>>& pool,
                            std::vector<cdouble>& out) const {
  const int n = spec_.n_sites;
  const double scale = noise_scale(s, spec_.a);
  const cdouble pref =
      cdouble(0.0, -std::sqrt(2.0 * params_.lambda)) / static_cast<double>(pool.size());
  out.assign(static_cast<std::size_t>(n), cdouble(0.0));
  SigmaField field;
  for (const auto& zeta : pool) {
    shifted_field(xi, zeta, scale, field);
    const TridiagResolvent g = factorize(field);
    const auto& diag = g.diagonal();
    for (int x = 0; x < n; ++x) out[x] += pref * diag[x];
  }
}

void Engine::prof_w0_source(const SigmaField& xi, double s, int y1, int y2,
                            const std::vector<std::vector<double>>& pool,
                            std::vector<cdouble>& out) const {
  const int n = spec_.n_sites;
  const double scale = noise_scale(s, spec_.a);
  const cdouble pref =
      cdouble(0.0, -2.0 * std::sqrt(2.0 * params_.lambda)) / static_cast<double>(pool.size());
  out.assign(static_cast<std::size_t>(n), cdouble(0.0));
  SigmaField field;
  std::vector<cdouble> c1, c2;
  for (const auto& zeta : pool) {
    shifted_field(xi, zeta, scale, field);
    const TridiagResolvent g = factorize(field);
    g.column(y1, c1);
    g.column(y2, c2);
    for (int x = 0; x < n; ++x) out[x] += pref * c1[x] * c2[x];
  }
}

void Engine::prof_w1_vacuum(const SigmaField& xi, double s, int depth, const EvalBudget& budget,
                            RngStream rng, std::vector<cdouble>& out) const {
  const int n = spec_.n_sites;
  out.assign(static_cast<std::size_t>(n), cdouble(0.0));
  if (s <= 0.0 || params_.lambda == 0.0) return;
  const std::int64_t k = budget.samples(depth);
  const std::int64_t kk = budget.samples(depth + 1);
  const QuadRule rule = gauss_legendre_on(budget.nodes(depth), s);
  const double a = spec_.a;

  std::vector<double> zeta;
  SigmaField field, field2;
  std::vector<cdouble> f1, w, tmp;
  std::vector<std::vector<double>> vacz, pairz;
  for (std::int64_t d = 0; d < k; ++d) {
    RngStream rd = rng.child(d);
    rd.child(0).fill_normal(zeta, static_cast<std::size_t>(n));
    fill_pool(rd.child(1), kk, n, vacz);
    fill_pool(rd.child(2), kk, n, pairz);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double sp = rule.nodes[j];
      shifted_field(xi, zeta, noise_scale(s - sp, a), field);
      prof_w0_vacuum(field, sp, vacz, f1);
      const double inner_scale = noise_scale(sp, a);
      const double c = rule.weights[j] / static_cast<double>(k * kk);
      w.resize(f1.size());
      for (int x = 0; x < n; ++x) w[x] = -4.0 * params_.lambda * a * f1[x];
      for (std::int64_t p = 0; p < kk; ++p) {
        shifted_field(field, pairz[p], inner_scale, field2);
        const TridiagResolvent g = factorize(field2);
        g.contract_square(w, tmp);
        for (int x = 0; x < n; ++x) out[x] += c * tmp[x];
      }
    }
  }
}

void Engine::prof_w1_source(const SigmaField& xi, double s, int y1, int y2, int depth,
                            const EvalBudget& budget, RngStream rng,
                            std::vector<cdouble>& out) const {
  const int n = spec_.n_sites;
  out.assign(static_cast<std::size_t>(n), cdouble(0.0));
  if (s <= 0.0 || params_.lambda == 0.0) return;
  const std::int64_t k = budget.samples(depth);
  const std::int64_t kk = budget.samples(depth + 1);
  const QuadRule rule = gauss_legendre_on(budget.nodes(depth), s);
  const double a = spec_.a;
  const double lam = params_.lambda;
  const cdouble pref1 = cdouble(0.0, -std::sqrt(2.0 * lam)) / static_cast<double>(kk);
  const cdouble pref2 = cdouble(0.0, -2.0 * std::sqrt(2.0 * lam)) / static_cast<double>(kk);

  std::vector<double> zeta;
  SigmaField field, field2;
  std::vector<std::vector<double>> vacz, srcz;
  std::vector<cdouble> f1, f2, wf1, wf2, t1, t2, tmp;
  std::vector<TridiagResolvent> vac_facts, src_facts;
  std::vector<std::vector<cdouble>> cy1(static_cast<std::size_t>(kk)),
      cy2(static_cast<std::size_t>(kk));

  for (std::int64_t d = 0; d < k; ++d) {
    RngStream rd = rng.child(d);
    rd.child(0).fill_normal(zeta, static_cast<std::size_t>(n));
    fill_pool(rd.child(1), kk, n, vacz);
    fill_pool(rd.child(2), kk, n, srcz);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double sp = rule.nodes[j];
      shifted_field(xi, zeta, noise_scale(s - sp, a), field);
      const double inner_scale = noise_scale(sp, a);

      vac_facts.clear();
      src_facts.clear();
      for (std::int64_t p = 0; p < kk; ++p) {
        shifted_field(field, vacz[p], inner_scale, field2);
        vac_facts.push_back(factorize(field2));
        shifted_field(field, srcz[p], inner_scale, field2);
        src_facts.push_back(factorize(field2));
        src_facts.back().column(y1, cy1[p]);
        src_facts.back().column(y2, cy2[p]);
      }
      f1.assign(static_cast<std::size_t>(n), cdouble(0.0));
      f2.assign(static_cast<std::size_t>(n), cdouble(0.0));
      for (std::int64_t p = 0; p < kk; ++p) {
        const auto& diag = vac_facts[p].diagonal();
        for (int x = 0; x < n; ++x) {
          f1[x] += pref1 * diag[x];
          f2[x] += pref2 * cy1[p][x] * cy2[p][x];
        }
      }
      wf1.resize(f1.size());
      wf2.resize(f2.size());
      for (int x = 0; x < n; ++x) {
        wf1[x] = a * f1[x];
        wf2[x] = -4.0 * lam * a * f2[x];
      }
      const double c = rule.weights[j] / static_cast<double>(k * kk);
      for (std::int64_t p = 0; p < kk; ++p) {
        // x attaches between the source legs (two chain orientations)
        src_facts[p].contract_chain(wf1, cy1[p], t1);
        src_facts[p].contract_chain(wf1, cy2[p], t2);
        for (int x = 0; x < n; ++x)
          out[x] += c * (-8.0 * lam) * (t1[x] * cy2[p][x] + t2[x] * cy1[p][x]);
        // x pairs with the integration point in a vacuum loop
        vac_facts[p].contract_square(wf2, tmp);
        for (int x = 0; x < n; ++x) out[x] += c * tmp[x];
      }
    }
  }
}

Estimate Engine::fast_source(int n, int y1, int y2, double t, const SigmaField& base,
                             const EvalBudget& budget, RngStream rng) const {
  const int ns = spec_.n_sites;
  const double a = spec_.a;
  const QuadRule rule = gauss_legendre_on(budget.nodes(0), t);
  std::vector<cdouble> slots(static_cast<std::size_t>(budget.samples(0)));

  parallel_for(slots.size(), [&](std::size_t i) {
    RngStream ri = rng.child(i);
    std::vector<double> zeta;
    ri.child(0).fill_normal(zeta, static_cast<std::size_t>(ns));
    std::vector<std::vector<double>> vacz, srcz;
    fill_pool(ri.child(1), budget.samples(1), ns, vacz);
    fill_pool(ri.child(2), budget.samples(1), ns, srcz);
    SigmaField xi;
    std::vector<cdouble> fa, fb, fc, fd;
    cdouble v(0.0, 0.0);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double s = rule.nodes[j];
      shifted_field(base, zeta, noise_scale(t - s, a), xi);
      prof_w0_vacuum(xi, s, vacz, fa);
      prof_w0_source(xi, s, y1, y2, srcz, fb);
      cdouble integ(0.0, 0.0);
      if (n == 1) {
        for (int x = 0; x < ns; ++x) integ += fa[x] * fb[x];
      } else {
        prof_w1_source(xi, s, y1, y2, 2, budget, ri.child(3).child(j), fd);
        prof_w1_vacuum(xi, s, 2, budget, ri.child(4).child(j), fc);
        for (int x = 0; x < ns; ++x) integ += fa[x] * fd[x] + fc[x] * fb[x];
      }
      v += rule.weights[j] * a * integ;
    }
    slots[i] = v;
  });
  return from_samples(slots);
}

Estimate Engine::fast_vacuum1(int z, double t, const SigmaField& base, const EvalBudget& budget,
                              RngStream rng) const {
  const int ns = spec_.n_sites;
  const double a = spec_.a;
  const QuadRule rule = gauss_legendre_on(budget.nodes(0), t);
  const std::int64_t k1 = budget.samples(1);
  std::vector<cdouble> slots(static_cast<std::size_t>(budget.samples(0)));

  parallel_for(slots.size(), [&](std::size_t i) {
    RngStream ri = rng.child(i);
    std::vector<double> zeta;
    ri.child(0).fill_normal(zeta, static_cast<std::size_t>(ns));
    std::vector<std::vector<double>> vacz, pairz;
    fill_pool(ri.child(1), k1, ns, vacz);
    fill_pool(ri.child(2), k1, ns, pairz);
    SigmaField xi, field2;
    std::vector<cdouble> f1, w, tmp;
    cdouble v(0.0, 0.0);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double s = rule.nodes[j];
      shifted_field(base, zeta, noise_scale(t - s, a), xi);
      prof_w0_vacuum(xi, s, vacz, f1);
      w.resize(f1.size());
      for (int x = 0; x < ns; ++x) w[x] = -4.0 * params_.lambda * a * f1[x];
      const double inner_scale = noise_scale(s, a);
      const double c = rule.weights[j] / static_cast<double>(k1);
      for (std::int64_t p = 0; p < k1; ++p) {
        shifted_field(xi, pairz[p], inner_scale, field2);
        const TridiagResolvent g = factorize(field2);
        g.contract_square(w, tmp);
        v += c * tmp[static_cast<std::size_t>(z)];
      }
    }
    slots[i] = v;
  });
  return from_samples(slots);
}

cdouble Engine::generic_estimate(const WQuery& query, const EvalBudget& budget, int depth,
                                 RngStream rng) const {
  const std::int64_t k = budget.samples(depth);
  cdouble acc(0.0, 0.0);
  for (std::int64_t d = 0; d < k; ++d) acc += generic_draw(query, budget, depth, rng.child(d));
  return acc / static_cast<double>(k);
}

cdouble Engine::generic_draw(const WQuery& query, const EvalBudget& budget, int depth,
                             RngStream rng) const {
  const int n_sites = spec_.n_sites;
  SigmaField zero;
  const SigmaField& base = resolve_base(query, zero, n_sites);

  const bool refined = query.refine_m.has_value();
  const int m = refined ? *query.refine_m : -1;
  if (refined) {
    if (query.kind != WKind::source)
      throw std::invalid_argument("refined queries are source-rooted");
    if (m > query.n) return cdouble(0.0, 0.0);
    if (m == 0 && (query.n != 0 || !query.primed.empty())) return cdouble(0.0, 0.0);
  }
  if (query.n == 0) {
    WQuery q0 = query;
    q0.refine_m.reset();
    q0.primed.clear();
    SigmaField xi = sample_noise(spec_, query.t, rng.child(0));
    for (std::size_t i = 0; i < xi.size(); ++i) xi[i] += base[i];
    return w0_value(q0, factorize(xi));
  }
  if (params_.lambda == 0.0) return cdouble(0.0, 0.0);

  // attachment candidates: z-points of plain queries, primed points of
  // refined ones
  const int fixed = query.kind == WKind::vacuum ? 1 : 2;
  std::vector<int> zs(query.points.begin() + fixed, query.points.end());
  const std::vector<int>& kset = refined ? query.primed : zs;
  const int Nk = static_cast<int>(kset.size());
  if (Nk > kMaxPermutationPoints) throw std::invalid_argument("too many derivative points");

  const QuadRule rule = gauss_legendre_on(budget.nodes(depth), query.t);
  std::vector<double> zeta;
  rng.child(1).fill_normal(zeta, static_cast<std::size_t>(n_sites));

  SigmaField xi;
  cdouble acc(0.0, 0.0);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const double s = rule.nodes[j];
    shifted_field(base, zeta, noise_scale(query.t - s, spec_.a), xi);
    cdouble integ(0.0, 0.0);
    for (int h = 0; h < query.n; ++h) {
      for (int mask = 0; mask < (1 << Nk); ++mask) {
        for (int x = 0; x < n_sites; ++x) {
          const std::uint64_t id =
              ((static_cast<std::uint64_t>(j) * query.n + h) * (1ULL << Nk) + mask) * n_sites + x;
          WQuery f1;
          f1.n = h;
          f1.kind = WKind::vacuum;
          f1.t = s;
          f1.base = xi;
          f1.points.push_back(x);
          for (int b = 0; b < Nk; ++b)
            if (mask & (1 << b)) f1.points.push_back(kset[b]);
          const int d1 = depth + (h == 0 ? 1 : 2);
          const cdouble v1 = generic_estimate(f1, budget, d1, rng.child(2 + 3 * id));

          const int n2 = query.n - h - 1;
          const int d2 = depth + (n2 == 0 ? 1 : 2);
          cdouble v2(0.0, 0.0);
          if (!refined) {
            WQuery f2;
            f2.n = n2;
            f2.kind = query.kind;
            f2.t = s;
            f2.base = xi;
            if (query.kind == WKind::vacuum) {
              f2.points = {query.points[0], x};
            } else {
              f2.points = {query.points[0], query.points[1], x};
            }
            for (int b = 0; b < Nk; ++b)
              if (!(mask & (1 << b))) f2.points.push_back(kset[b]);
            v2 = generic_estimate(f2, budget, d2, rng.child(3 + 3 * id));
          } else {
            // slot branch: x joins the plain z-list, m drops by one
            WQuery fz;
            fz.n = n2;
            fz.kind = WKind::source;
            fz.refine_m = m - 1;
            fz.t = s;
            fz.base = xi;
            fz.points = {query.points[0], query.points[1], x};
            fz.points.insert(fz.points.end(), zs.begin(), zs.end());
            for (int b = 0; b < Nk; ++b)
              if (!(mask & (1 << b))) fz.primed.push_back(kset[b]);
            v2 = generic_estimate(fz, budget, d2, rng.child(3 + 3 * id));
            // primed branch: x joins the primed list, m stays
            WQuery fp;
            fp.n = n2;
            fp.kind = WKind::source;
            fp.refine_m = m;
            fp.t = s;
            fp.base = xi;
            fp.points = {query.points[0], query.points[1]};
            fp.points.insert(fp.points.end(), zs.begin(), zs.end());
            fp.primed.push_back(x);
            for (int b = 0; b < Nk; ++b)
              if (!(mask & (1 << b))) fp.primed.push_back(kset[b]);
            v2 += generic_estimate(fp, budget, d2, rng.child(4 + 3 * id));
          }
          integ += spec_.a * v1 * v2;
        }
      }
    }
    acc += rule.weights[j] * integ;
  }
  return acc;
}

Estimate Engine::eval_w(const WQuery& query, const EvalBudget& budget, RngStream rng) const {
  budget.validate();
  if (query.refine_m) throw std::invalid_argument("eval_w takes plain queries; use eval_wnm");
  if (query.n == 0) return eval_w0(query, budget, rng);
  if (query.n > budget.max_order)
    throw std::invalid_argument("recursion order beyond the budget's max_order");
  if (params_.lambda == 0.0) return Estimate::exact(0.0);

  SigmaField zero;
  const SigmaField& base = resolve_base(query, zero, spec_.n_sites);

  if (query.kind == WKind::source && query.points.size() == 2 && query.n <= 2)
    return fast_source(query.n, query.points[0], query.points[1], query.t, base, budget, rng);
  if (query.kind == WKind::vacuum && query.points.size() == 1 && query.n == 1)
    return fast_vacuum1(query.points[0], query.t, base, budget, rng);

  std::vector<cdouble> slots(static_cast<std::size_t>(budget.samples(0)));
  parallel_for(slots.size(),
               [&](std::size_t i) { slots[i] = generic_draw(query, budget, 0, rng.child(i)); });
  return from_samples(slots);
}

Estimate Engine::eval_wnm(const WQuery& query, const EvalBudget& budget, RngStream rng) const {
  budget.validate();
  if (!query.refine_m) throw std::invalid_argument("eval_wnm needs refine_m");
  const int m = *query.refine_m;
  if (m < 0 || m > query.n || query.n > budget.max_order)
    throw std::invalid_argument("refinement indices out of range");
  if (query.kind != WKind::source)
    throw std::invalid_argument("refined queries are source-rooted");

  if (m == 0) {
    if (query.n != 0 || !query.primed.empty()) return Estimate::exact(0.0);
    WQuery q0 = query;
    q0.refine_m.reset();
    return eval_w0(q0, budget, rng);
  }
  if (params_.lambda == 0.0) return Estimate::exact(0.0);

  std::vector<cdouble> slots(static_cast<std::size_t>(budget.samples(0)));
  parallel_for(slots.size(),
               [&](std::size_t i) { slots[i] = generic_draw(query, budget, 0, rng.child(i)); });
  return from_samples(slots);
}

TwoPointResult Engine::two_point(int y1, int y2, int n_max, const EvalBudget& budget,
                                 RngStream rng) const {
  budget.validate();
  if (n_max > budget.max_order) throw std::invalid_argument("n_max beyond the budget's max_order");
  if (params_.lambda > 0.0 && !params_.strictly_admissible(1.0))
    throw std::domain_error("coupling is outside the strict convergence region");

  TwoPointResult res;
  for (int n = 0; n <= n_max; ++n) {
    WQuery q;
    q.n = n;
    q.kind = WKind::source;
    q.t = 1.0;
    q.points = {y1, y2};
    const Estimate term =
        n == 0 ? eval_w0(q, budget, rng.child(100)) : eval_w(q, budget, rng.child(100 + n));
    res.terms.push_back(term);
    res.partial_sum = n == 0 ? term : add(res.partial_sum, term);
  }
  const double r1 = spec_.site(y1);
  const double r2 = spec_.site(y2);
  res.tail = params_.lambda == 0.0 ? 0.0 : tail_bound(params_, n_max, 1.0, r1, r2, ballot_);

  BoundReport& rep = res.bound_check;
  rep.observed = std::abs(res.partial_sum.mean);
  rep.bound = theorem1_bound(params_, r1, r2);
  rep.tail = res.tail;
  rep.sigma = three_sigma(res.partial_sum.std_err);
  rep.margin = rep.bound + rep.tail + rep.sigma - rep.observed;
  rep.pass = rep.margin >= 0.0;
  return res;
}

PressureResult Engine::pressure(int n_max, const EvalBudget& budget, RngStream rng,
                                std::vector<int> sites) const {
  budget.validate();
  if (n_max > budget.max_order) throw std::invalid_argument("n_max beyond the budget's max_order");
  if (params_.lambda > 0.0 && !params_.admissible(1.0))
    throw std::domain_error("coupling is outside the convergence region");

  const int ns = spec_.n_sites;
  if (sites.empty()) {
    const int step = std::max(1, ns / 8);
    sites = {ns / 2, ns / 2 - step, ns / 2 + step};
  }
  for (int x : sites)
    if (x < 0 || x >= ns) throw std::invalid_argument("pressure site off the lattice");

  PressureResult res;
  res.sites = sites;

  if (params_.lambda == 0.0) {
    res.estimate = Estimate::exact(0.0);
    res.site_estimates.assign(sites.size(), Estimate::exact(0.0));
    res.bound_check.pass = true;
    return res;
  }

  const QuadRule rule = gauss_legendre_on(budget.nodes(0), 1.0);
  const double a = spec_.a;
  const double lam = params_.lambda;
  const cdouble pref0 = cdouble(0.0, -std::sqrt(2.0 * lam));
  const std::int64_t k1 = budget.samples(1);

  for (std::size_t si = 0; si < sites.size(); ++si) {
    const int x = sites[si];
    RngStream rs = rng.child(200 + si);
    std::vector<cdouble> slots(static_cast<std::size_t>(budget.samples(0)));
    parallel_for(slots.size(), [&](std::size_t i) {
      RngStream ri = rs.child(i);
      std::vector<double> zeta;
      ri.child(0).fill_normal(zeta, static_cast<std::size_t>(ns));
      std::vector<std::vector<double>> repz[2];
      fill_pool(ri.child(1), k1, ns, repz[0]);
      fill_pool(ri.child(2), k1, ns, repz[1]);
      SigmaField sigma(static_cast<std::size_t>(ns), 0.0), field;
      std::vector<cdouble> prof;
      cdouble v(0.0, 0.0);
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double t = rule.nodes[j];
        const double outer_scale = noise_scale(1.0 - t, a);
        for (int q = 0; q < ns; ++q) sigma[q] = outer_scale * zeta[q];
        const TridiagResolvent g = factorize(sigma);
        const cdouble gxx = g.diagonal()[static_cast<std::size_t>(x)];

        cdouble rep[2];
        const double inner_scale = noise_scale(t, a);
        for (int r = 0; r < 2; ++r) {
          cdouble w0(0.0, 0.0);
          for (std::int64_t p = 0; p < k1; ++p) {
            shifted_field(sigma, repz[r][p], inner_scale, field);
            w0 += pref0 * factorize(field).diagonal()[static_cast<std::size_t>(x)];
          }
          rep[r] = w0 / static_cast<double>(k1);
          if (n_max >= 1) {
            prof_w1_vacuum(sigma, t, 2, budget, ri.child(3 + r).child(j), prof);
            rep[r] += prof[static_cast<std::size_t>(x)];
          }
          for (int n = 2; n <= n_max; ++n) {
            WQuery q2;
            q2.n = n;
            q2.kind = WKind::vacuum;
            q2.t = t;
            q2.base = sigma;
            q2.points = {x};
            rep[r] += generic_estimate(q2, budget, 2, ri.child(5 + r).child(j).child(n));
          }
        }
        v += rule.weights[j] * 0.5 * (-4.0 * lam * gxx * gxx + rep[0] * rep[1]);
      }
      slots[i] = v;
    });
    res.site_estimates.push_back(from_samples(slots));
  }
  res.estimate = res.site_estimates.front();

  // certified allowance for the orders beyond n_max inside the square
  const double q = 2.0 * lam * std::pow(params_.re_m2(), -1.5);
  const double pref = std::sqrt(2.0 * lam) / (2.0 * std::sqrt(params_.re_m2()));
  double allowance = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const double qt = q * rule.nodes[j];
    const double full = pref * (qt > 0.0 ? (1.0 - std::sqrt(1.0 - 4.0 * qt)) / (2.0 * qt) : 1.0);
    double head = 0.0, pw = 1.0;
    for (int n = 0; n <= n_max; ++n, pw *= qt)
      head += pref * pw * static_cast<double>(catalan_.at(n));
    const double rem = std::max(0.0, full - head);
    allowance += rule.weights[j] * 0.5 * rem * (full + head);
  }
  res.tail_allowance = allowance;

  BoundReport& rep = res.bound_check;
  rep.observed = std::abs(res.estimate.mean);
  rep.bound = theorem2_bound(params_);
  rep.tail = allowance;
  rep.sigma = three_sigma(res.estimate.std_err);
  rep.margin = rep.bound + rep.tail + rep.sigma - rep.observed;
  rep.pass = rep.margin >= 0.0;

  res.x_independent = true;
  for (std::size_t p = 0; p + 1 < res.site_estimates.size(); ++p) {
    for (std::size_t s2 = p + 1; s2 < res.site_estimates.size(); ++s2) {
      const Estimate& ea = res.site_estimates[p];
      const Estimate& eb = res.site_estimates[s2];
      const double gap = std::abs(ea.mean - eb.mean);
      const double tol = three_sigma(std::hypot(ea.std_err, eb.std_err));
      if (gap > tol) res.x_independent = false;
    }
  }
  return res;
}

Lemma4Report Engine::lemma4_check(int n, double t, const EvalBudget& budget, RngStream rng,
                                  int n_draws) const {
  budget.validate();
  if (n < 0 || n > 1) throw std::invalid_argument("lemma4_check covers n in {0, 1}");

  Lemma4Report rep;
  rep.n = n;
  rep.n_draws = n_draws;
  rep.bound = lemma4_bound(params_, n, 0, t, catalan_);
  const int z = spec_.n_sites / 2;

  for (int d = 0; d < n_draws; ++d) {
    WQuery q;
    q.n = n;
    q.kind = WKind::vacuum;
    q.t = t;
    q.points = {z};
    q.base = sample_noise(spec_, 1.0, rng.child(2 * static_cast<std::uint64_t>(d)));
    const Estimate est =
        n == 0 ? eval_w0(q, budget, rng.child(2 * d + 1)) : eval_w(q, budget, rng.child(2 * d + 1));
    const double allow = rep.bound + three_sigma(est.std_err);
    const double ratio = std::abs(est.mean) / allow;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > 1.0) ++rep.violations;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

}  // namespace lve
