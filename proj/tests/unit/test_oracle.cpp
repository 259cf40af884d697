#include <cmath>

#include "doctest.h"
#include "lve/oracle.hpp"

using namespace lve;

namespace {

const LatticeSpec tiny = make_lattice(0.5, 1.0, Boundary::dirichlet);  // 4 sites
const ModelParams free_p{cdouble(2.0, 0.0), 0.0};
const ModelParams weak_p{cdouble(2.0, 0.0), 0.05};

}  // namespace

TEST_CASE("quadrature oracle reproduces the free covariance") {
  const TinyModel m = make_tiny_model(tiny, free_p);
  for (int y1 = 0; y1 < tiny.n_sites; ++y1)
    for (int y2 = 0; y2 <= y1; ++y2) {
      const QuadratureResult r = oracle_two_point_quadrature(m, y1, y2);
      CHECK(r.converged);
      CHECK(std::abs(r.value - m.free_cov[y1 * tiny.n_sites + y2]) <= 1e-9);
    }
}

TEST_CASE("quadrature oracle symmetries") {
  const TinyModel m = make_tiny_model(tiny, weak_p);
  const QuadratureResult a = oracle_two_point_quadrature(m, 1, 2);
  const QuadratureResult b = oracle_two_point_quadrature(m, 2, 1);
  CHECK(std::abs(a.value - b.value) <= 1e-10);
  // reflection through the box midpoint
  const QuadratureResult c = oracle_two_point_quadrature(m, 0, 1);
  const QuadratureResult d = oracle_two_point_quadrature(m, 3, 2);
  CHECK(std::abs(c.value - d.value) <= 1e-10);
}

TEST_CASE("diagonal two point function decreases with the coupling") {
  double prev = 1e30;
  for (double lam : {0.0, 0.02, 0.05, 0.1}) {
    const TinyModel m = make_tiny_model(tiny, ModelParams{cdouble(2.0, 0.0), lam});
    const QuadratureResult r = oracle_two_point_quadrature(m, 1, 1);
    CHECK(r.converged);
    CHECK(r.value < prev + 1e-12);
    prev = r.value;
  }
}

TEST_CASE("sigma oracle is exact in the free theory") {
  const Estimate e = oracle_two_point_sigma(tiny, free_p, 1, 2, 5000, RngStream(7));
  const TinyModel m = make_tiny_model(tiny, free_p);
  CHECK(std::abs(e.mean - m.free_cov[1 * tiny.n_sites + 2]) <= 1e-12);
  CHECK(e.std_err <= 1e-12);
}

TEST_CASE("the two oracles agree on an interacting model") {
  const TinyModel m = make_tiny_model(tiny, weak_p);
  const QuadratureResult a = oracle_two_point_quadrature(m, 1, 2);
  const Estimate b = oracle_two_point_sigma(tiny, weak_p, 1, 2, 100000, RngStream(11));
  REQUIRE(a.converged);
  CHECK(b.std_err > 0.0);
  CHECK(std::abs(cdouble(a.value) - b.mean) <= 3.0 * b.std_err);
}

TEST_CASE("oracle guards") {
  SUBCASE("quadrature refuses more than eight sites") {
    const LatticeSpec big = make_lattice(0.5, 2.5, Boundary::dirichlet);  // 10 sites
    CHECK_THROWS(make_tiny_model(big, weak_p));
  }
  SUBCASE("quadrature needs a real mass") {
    CHECK_THROWS(make_tiny_model(tiny, ModelParams{cdouble(2.0, 0.5), 0.05}));
  }
  SUBCASE("sigma oracle needs at least two samples") {
    CHECK_THROWS(oracle_two_point_sigma(tiny, weak_p, 1, 2, 1, RngStream(1)));
  }
}
