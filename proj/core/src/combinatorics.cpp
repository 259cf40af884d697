#include "lve/combinatorics.hpp"

#include <cmath>
#include <stdexcept>

namespace lve {

CatalanTable catalan_table(int n_max) {
  if (n_max < 0) throw std::invalid_argument("catalan_table: n_max must be >= 0");
  CatalanTable t;
  t.values.resize(n_max + 1);
  t.values[0] = 1;
  for (int n = 1; n <= n_max; ++n) {
    bigint s = 0;
    for (int h = 0; h < n; ++h) s += t.values[h] * t.values[n - h - 1];
    t.values[n] = s;
  }
  return t;
}

BallotTable ballot_table(int n_max) {
  if (n_max < 0) throw std::invalid_argument("ballot_table: n_max must be >= 0");
  const CatalanTable a = catalan_table(n_max);
  BallotTable t;
  t.n_max = n_max;
  t.b.assign(static_cast<std::size_t>(n_max + 1) * (n_max + 1), bigint(0));
  t.at(0, 0) = 1;
  // pw holds coefficients of p(x)^m, p(x) = sum_{k>=1} A_{k-1} x^k.
  std::vector<bigint> pw(n_max + 1, bigint(0));
  pw[0] = 1;
  for (int m = 1; m <= n_max; ++m) {
    std::vector<bigint> next(n_max + 1, bigint(0));
    for (int i = 0; i <= n_max; ++i) {
      if (pw[i] == 0) continue;
      for (int k = 1; i + k <= n_max; ++k) next[i + k] += pw[i] * a.at(k - 1);
    }
    pw = std::move(next);
    for (int n = m; n <= n_max; ++n) t.at(n, m) = pw[n];
  }
  return t;
}

namespace {

void enumerate_compositions(int n, int m, int part_min, const CatalanTable& a, bigint prod,
                            bigint& acc) {
  if (m == 1) {
    if (n >= part_min) acc += prod * a.at(n - 1);
    return;
  }
  for (int first = 1; first <= n - (m - 1); ++first)
    enumerate_compositions(n - first, m - 1, 1, a, prod * a.at(first - 1), acc);
}

}  // namespace

BallotTable ballot_table_enumerated(int n_max) {
  if (n_max < 0) throw std::invalid_argument("ballot_table_enumerated: n_max must be >= 0");
  const CatalanTable a = catalan_table(n_max);
  BallotTable t;
  t.n_max = n_max;
  t.b.assign(static_cast<std::size_t>(n_max + 1) * (n_max + 1), bigint(0));
  t.at(0, 0) = 1;
  for (int n = 1; n <= n_max; ++n)
    for (int m = 1; m <= n; ++m) {
      bigint acc = 0;
      enumerate_compositions(n, m, 1, a, bigint(1), acc);
      t.at(n, m) = acc;
    }
  return t;
}

bigint rising_ratio(int P, long long Q) {
  if (P < 0) throw std::invalid_argument("rising_ratio: P must be >= 0");
  bigint r = 1;
  for (int p = 1; p <= P; ++p) r *= bigint(p + Q);
  return r;
}

bool check_lemma2(int N, int n1, int n2) {
  if (N < 0 || n1 < 0 || n2 < 0) throw std::invalid_argument("check_lemma2: arguments must be >= 0");
  bigint lhs = 0;
  const std::uint64_t total = 1ULL << N;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const int k = static_cast<int>(__builtin_popcountll(mask));
    lhs += rising_ratio(k, n1) * rising_ratio(N - k, n2);
  }
  const bigint rhs = rising_ratio(N, n1 + n2 + 1);
  return lhs == rhs;
}

bool check_lemma3_recursion(int n, int m, const CatalanTable& a, const BallotTable& b) {
  if (n < 1 || m < 1 || m > n) throw std::invalid_argument("check_lemma3_recursion: need 1 <= m <= n");
  if (n > a.n_max() || n > b.n_max) throw std::invalid_argument("check_lemma3_recursion: tables too small");
  bigint rhs = 0;
  for (int h = 0; h < n; ++h) {
    const int k = n - h - 1;
    bigint term = bigint(m) * b.at(k, m - 1);
    term += bigint(2 * n - 2 * h - m - 2) * b.at(k, m);
    rhs += a.at(h) * term;
  }
  return bigint(n) * b.at(n, m) == rhs;
}

double gf_residual(double x, const CatalanTable& a, const BallotTable& b, int n_max, int m) {
  if (!(x >= 0.0 && x < 0.25)) throw std::invalid_argument("gf_residual: x must be in [0, 1/4)");
  if (n_max > a.n_max() || (m >= 1 && n_max > b.n_max))
    throw std::invalid_argument("gf_residual: tables too small");
  double head = 0.0;
  double xn = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    const double coeff = (m <= 0) ? static_cast<double>(a.at(n)) : static_cast<double>(b.at(n, m));
    head += coeff * xn;
    xn *= x;
  }
  const double s = std::sqrt(1.0 - 4.0 * x);
  const double closed = (m <= 0) ? 2.0 / (1.0 + s) : std::pow((1.0 - s) / 2.0, m);
  return std::abs(head - closed);
}

double gf_tail_bound(double x, int n_max) {
  const double q = 4.0 * x;
  if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("gf_tail_bound: x must be in [0, 1/4)");
  return std::pow(q, n_max + 1) / (1.0 - q);
}

}  // namespace lve
