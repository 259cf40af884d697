#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace lve {

using bigint = boost::multiprecision::cpp_int;

// Catalan numbers A_0..A_nmax from the convolution recursion, exact.
struct CatalanTable {
  std::vector<bigint> values;
  int n_max() const { return static_cast<int>(values.size()) - 1; }
  const bigint& at(int n) const { return values.at(n); }
};

// B[n][m] for 0 <= n, m <= n_max: composition-weighted products of
// Catalan numbers (B[n][m] = sum over n_1+...+n_m = n, n_i >= 1, of
// A_{n_1-1}...A_{n_m-1}); zero outside its support.
struct BallotTable {
  int n_max = 0;
  std::vector<bigint> b;  // (n_max+1)^2, row-major in n
  const bigint& at(int n, int m) const { return b.at(static_cast<std::size_t>(n) * (n_max + 1) + m); }
  bigint& at(int n, int m) { return b.at(static_cast<std::size_t>(n) * (n_max + 1) + m); }
};

CatalanTable catalan_table(int n_max);

// Fast path: B column m is the coefficient sequence of p(x)^m with
// p(x) = sum_{k>=1} A_{k-1} x^k.
BallotTable ballot_table(int n_max);
// Reference path: literal composition enumeration. Exponential; small n only.
BallotTable ballot_table_enumerated(int n_max);

// (P+Q)!/Q! as the product prod_{p=1}^{P} (p+Q); legal for negative Q.
bigint rising_ratio(int P, long long Q);

// Subset-enumeration check of the binomial-convolution identity:
// sum over K subset of {1..N} of (|K|+n1)!/n1! * (N-|K|+n2)!/n2!
// equals (N+n1+n2+1)!/(n1+n2+1)!. Literal 2^N-term evaluation.
bool check_lemma2(int N, int n1, int n2);

// Exact check of n*B[n,m] = sum_h A_h (m B[n-h-1,m-1] + (2n-2h-m-2) B[n-h-1,m]).
bool check_lemma3_recursion(int n, int m, const CatalanTable& a, const BallotTable& b);

// |series head - closed form| at x in [0, 1/4). With m <= 0 the Catalan
// generating function 2/(1+sqrt(1-4x)) is used; with m >= 1 the column
// generating function ((1-sqrt(1-4x))/2)^m.
double gf_residual(double x, const CatalanTable& a, const BallotTable& b, int n_max, int m = 0);

// Geometric tail sum_{n>n_max} (4x)^n, the certified truncation bound
// for either series above.
double gf_tail_bound(double x, int n_max);

}  // namespace lve
