#include <cmath>

#include "doctest.h"
#include "lve/kernels.hpp"
#include "lve/lattice.hpp"
#include "lve/random.hpp"

using namespace lve;

TEST_CASE("lattice geometry") {
  const LatticeSpec spec = make_lattice(0.25, 16.0, Boundary::dirichlet);
  CHECK(spec.n_sites == 128);
  CHECK(spec.site(0) == doctest::Approx(-16.0 + 0.125));
  CHECK(spec.site(127) == doctest::Approx(16.0 - 0.125));
  CHECK(spec.a * spec.n_sites == doctest::Approx(32.0));
  CHECK_THROWS(make_lattice(-1.0, 16.0, Boundary::dirichlet));
}

TEST_CASE("operator assembly") {
  const LatticeSpec spec = make_lattice(0.5, 2.0, Boundary::dirichlet);
  const ModelParams p{cdouble(1.0, 0.5), 0.08};
  SigmaField sigma(spec.n_sites);
  for (int i = 0; i < spec.n_sites; ++i) sigma[i] = 0.3 * i - 1.0;
  const LatticeOperator H = build_operator(spec, p, sigma);
  const double coupling = 2.0 * std::sqrt(2.0 * p.lambda);
  for (int i = 1; i + 1 < spec.n_sites; ++i) {
    const cdouble row_sum = H.diag[i] + 2.0 * H.off;
    CHECK(row_sum.real() == doctest::Approx(1.0));
    CHECK(row_sum.imag() == doctest::Approx(0.5 + coupling * sigma[i]));
  }
  const LatticeOperator H0 =
      build_operator(spec, ModelParams{cdouble(1.0, 0.0), 0.0}, sigma);
  for (auto& d : H0.diag) CHECK(d.imag() == 0.0);
}

TEST_CASE("resolvent matches the continuum covariance at sigma = 0") {
  const LatticeSpec spec = make_lattice(0.25, 16.0, Boundary::dirichlet);
  const ModelParams p{cdouble(1.0, 0.0), 0.0};
  const SigmaField zero(spec.n_sites, 0.0);
  const Resolvent g = resolvent(spec, p, zero);
  CHECK(g.max_residual <= 1e-10 / spec.a);
  const int y1 = spec.n_sites / 2;
  for (int off = 0; off <= 16; off += 4) {
    const double truth = covariance_C(1.0, spec.site(y1), spec.site(y1 + off));
    CHECK(std::abs(g(y1, y1 + off).real() - truth) / truth < 0.07);
  }
}

TEST_CASE("resolvent symmetry and conjugation parity") {
  const LatticeSpec spec = make_lattice(0.25, 4.0, Boundary::dirichlet);
  const ModelParams p{cdouble(1.0, 0.0), 0.08};
  const SigmaField sigma = sample_noise(spec, 1.0, RngStream(5));
  const Resolvent g = resolvent(spec, p, sigma);
  SigmaField neg(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) neg[i] = -sigma[i];
  const Resolvent gn = resolvent(spec, p, neg);
  for (int i = 0; i < spec.n_sites; i += 3)
    for (int j = 0; j < spec.n_sites; j += 3) {
      CHECK(std::abs(g(i, j) - g(j, i)) <= 1e-12);
      CHECK(std::abs(gn(i, j) - std::conj(g(i, j))) <= 1e-10);
    }
}

TEST_CASE("decay rate of the free lattice propagator") {
  const LatticeSpec spec = make_lattice(0.1, 16.0, Boundary::dirichlet);
  const ModelParams p{cdouble(1.0, 0.0), 0.0};
  const SigmaField zero(spec.n_sites, 0.0);
  TridiagResolvent f(build_operator(spec, p, zero));
  REQUIRE(f.ok());
  std::vector<cdouble> col;
  const int x0 = spec.n_sites / 2;
  f.column(x0, col);
  // least-squares slope of log|g| over separations 1..4 lengths
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int off = 10; off <= 40; off += 5, ++n) {
    const double x = off * spec.a;
    const double y = std::log(std::abs(col[x0 + off]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(-slope - 1.0) < 0.05);
}

TEST_CASE("semiseparable factorization agrees with the dense solve") {
  const LatticeSpec spec = make_lattice(0.25, 2.0, Boundary::dirichlet);
  const ModelParams p{cdouble(2.0, 0.3), 0.05};
  const SigmaField sigma = sample_noise(spec, 1.0, RngStream(7));
  TridiagResolvent f(build_operator(spec, p, sigma));
  REQUIRE(f.ok());
  const Resolvent dense = resolvent(spec, p, sigma);
  std::vector<cdouble> col;
  for (int j = 0; j < spec.n_sites; ++j) {
    f.column(j, col);
    for (int i = 0; i < spec.n_sites; ++i) CHECK(std::abs(col[i] - dense(i, j)) <= 1e-10);
  }
  for (int i = 0; i < spec.n_sites; ++i)
    CHECK(std::abs(f.diagonal()[i] - dense(i, i)) <= 1e-12);
}

TEST_CASE("contractions against the squared and chained resolvent") {
  const LatticeSpec spec = make_lattice(0.25, 2.0, Boundary::dirichlet);
  const ModelParams p{cdouble(1.0, 0.4), 0.1};
  const SigmaField sigma = sample_noise(spec, 1.0, RngStream(9));
  TridiagResolvent f(build_operator(spec, p, sigma));
  REQUIRE(f.ok());
  const Resolvent dense = resolvent(spec, p, sigma);
  const int n = spec.n_sites;
  std::vector<cdouble> w(n), cy, sq, ch;
  for (int i = 0; i < n; ++i) w[i] = cdouble(0.1 * i - 0.4, 0.05);
  f.column(3, cy);
  f.contract_square(w, sq);
  f.contract_chain(w, cy, ch);
  for (int x = 0; x < n; ++x) {
    cdouble bs(0.0), bc(0.0);
    for (int xp = 0; xp < n; ++xp) {
      bs += w[xp] * dense(xp, x) * dense(xp, x);
      bc += w[xp] * cy[xp] * dense(xp, x);
    }
    CHECK(std::abs(sq[x] - bs) <= 1e-10 * std::max(1.0, std::abs(bs)));
    CHECK(std::abs(ch[x] - bc) <= 1e-10 * std::max(1.0, std::abs(bc)));
  }
}

TEST_CASE("periodic boundary is rejected by the factorization, served densely") {
  const LatticeSpec spec = make_lattice(0.5, 2.0, Boundary::periodic);
  const ModelParams p{cdouble(1.0, 0.0), 0.05};
  const SigmaField sigma = sample_noise(spec, 1.0, RngStream(3));
  CHECK_THROWS(TridiagResolvent(build_operator(spec, p, sigma)));
  const Resolvent g = resolvent(spec, p, sigma);
  CHECK(g.max_residual <= 1e-10 / spec.a);
}

TEST_CASE("entrywise comparator domination") {
  const LatticeSpec spec = make_lattice(0.25, 16.0, Boundary::dirichlet);
  SUBCASE("equality at sigma = 0, real mass") {
    const ModelParams p{cdouble(1.0, 0.0), 0.1};
    const SigmaField zero(spec.n_sites, 0.0);
    const Lemma1Report rep = check_lemma1(spec, p, zero);
    CHECK(rep.holds);
    CHECK(rep.max_violation <= 1e-12);
  }
  SUBCASE("random fields, rotated mass") {
    for (double theta : {0.0, 1.0, 1.4}) {
      const ModelParams p{cdouble(std::cos(theta), std::sin(theta)), 0.05};
      for (int d = 0; d < 5; ++d) {
        const SigmaField sigma = sample_noise(spec, 1.0, RngStream(40 + d));
        CHECK(check_lemma1(spec, p, sigma).holds);
      }
    }
  }
}
