#include <cmath>

#include "doctest.h"
#include "lve/combinatorics.hpp"

using namespace lve;

TEST_CASE("catalan table values and growth") {
  const CatalanTable t = catalan_table(20);
  CHECK(t.at(0) == 1);
  CHECK(t.at(1) == 1);
  CHECK(t.at(2) == 2);
  CHECK(t.at(3) == 5);
  CHECK(t.at(4) == 14);
  CHECK(t.at(5) == 42);
  bigint pow4 = 1;
  for (int n = 0; n <= 20; ++n, pow4 *= 4) CHECK(t.at(n) <= pow4);
  const CatalanTable t0 = catalan_table(0);
  CHECK(t0.n_max() == 0);
  CHECK(t0.at(0) == 1);
}

TEST_CASE("ballot table support and values") {
  const CatalanTable a = catalan_table(14);
  const BallotTable b = ballot_table(14);
  CHECK(b.at(0, 0) == 1);
  CHECK(b.at(1, 1) == 1);
  CHECK(b.at(3, 2) == 2);
  for (int n = 1; n <= 14; ++n) {
    CHECK(b.at(n, 0) == 0);
    CHECK(b.at(n, 1) == a.at(n - 1));
    CHECK(b.at(n, n) == 1);
    for (int m = n + 1; m <= 14; ++m) CHECK(b.at(n, m) == 0);
  }
}

TEST_CASE("ballot fast path equals composition enumeration") {
  const BallotTable fast = ballot_table(10);
  const BallotTable ref = ballot_table_enumerated(10);
  for (int n = 0; n <= 10; ++n)
    for (int m = 0; m <= 10; ++m) CHECK(fast.at(n, m) == ref.at(n, m));
}

TEST_CASE("rising ratio handles negative offsets") {
  CHECK(rising_ratio(0, 5) == 1);
  CHECK(rising_ratio(3, 0) == 6);   // 3!
  CHECK(rising_ratio(2, 2) == 12);  // 4!/2!
  CHECK(rising_ratio(2, -1) == 0);  // product hits zero
}

TEST_CASE("lemma 2 identity spot checks") {
  CHECK(check_lemma2(0, 0, 0));
  CHECK(check_lemma2(0, 3, 5));
  CHECK(check_lemma2(1, 0, 0));  // 1 + 1 = 2!/1!
  CHECK(check_lemma2(2, 1, 0));  // 2+2+2+6 = 4!/2! = 12
  CHECK(check_lemma2(5, 2, 3));
}

TEST_CASE("lemma 3 recursion spot checks") {
  const CatalanTable a = catalan_table(14);
  const BallotTable b = ballot_table(14);
  CHECK(check_lemma3_recursion(1, 1, a, b));
  CHECK(check_lemma3_recursion(2, 1, a, b));
  for (int n = 1; n <= 14; ++n) CHECK(check_lemma3_recursion(n, n, a, b));
}

TEST_CASE("generating function residuals sit under the geometric tail") {
  const CatalanTable a = catalan_table(25);
  const BallotTable b = ballot_table(25);
  CHECK(gf_residual(0.0, a, b, 20, 0) == doctest::Approx(0.0).epsilon(1e-15));
  for (double x : {0.1, 0.2}) {
    for (int m : {0, 1, 2, 3}) {
      const double res = gf_residual(x, a, b, 20, m);
      CHECK(res <= gf_tail_bound(x, 20));
    }
  }
  // closed form for one column by hand: sum_n B[n,1] x^n = x g(x)
  const double closed = (1.0 - std::sqrt(0.6)) / 2.0;
  double head = 0.0;
  for (int n = 0; n <= 20; ++n)
    head += static_cast<double>(b.at(n, 1)) * std::pow(0.1, n);
  CHECK(std::abs(head - closed) <= gf_tail_bound(0.1, 20));
  CHECK_THROWS(gf_residual(0.3, a, b, 20, 0));
}
