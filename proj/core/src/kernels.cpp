#include "lve/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lve/quadrature.hpp"

namespace lve {

double covariance_C(double mass, double x, double y) {
  if (!(mass > 0.0)) throw std::invalid_argument("covariance_C: mass must be positive");
  return std::exp(-mass * std::abs(x - y)) / (2.0 * mass);
}

double comparator_Cprime(const ModelParams& params, double x, double y) {
  params.validate();
  return covariance_C(std::sqrt(params.re_m2()), x, y);
}

double kernel_power(const ModelParams& params, int m, double y1, double y2) {
  params.validate();
  if (m < 0) throw std::invalid_argument("kernel_power: m must be >= 0");
  const double mu = std::sqrt(params.re_m2());
  const double r = std::abs(y1 - y2);
  // (C'^{m+1})(r) = e^{-mu r}/(2mu)^{2m+1} * sum_{j=0}^{m} c_j (2 mu r)^j,
  // c_j = (2m-j)!/(m! j! (m-j)!), obtained by repeated d/d(mu^2) of C'.
  double c = 1.0;  // c_0 = binom(2m, m)
  for (int k = 1; k <= m; ++k) c = c * (m + k) / k;
  const double z = 2.0 * mu * r;
  double sum = 0.0, term = c;
  for (int j = 0; j <= m; ++j) {
    sum += term;
    if (j < m) term *= z * (m - j) / ((j + 1.0) * (2.0 * m - j));
  }
  return std::exp(-mu * r) * sum / std::pow(2.0 * mu, 2 * m + 1);
}

double kernel_power_quadrature(const ModelParams& params, int m, double y1, double y2,
                               double* achieved) {
  params.validate();
  if (m < 0) throw std::invalid_argument("kernel_power_quadrature: m must be >= 0");
  const double mu2 = params.re_m2();
  const double r = std::abs(y1 - y2);
  constexpr double kTarget = 1e-12;
  // Truncate the folded integral at P with a certified remainder: the
  // amplitude bound P^{-(2m+1)}/(2m+1), or for r > 0 the oscillation
  // (Abel) bound 2 (P^2+mu^2)^{-(m+1)}/r, whichever allows the smaller P.
  const double budget = 0.3 * kTarget * M_PI;
  double P_amp = std::pow(1.0 / ((2.0 * m + 1.0) * budget), 1.0 / (2.0 * m + 1.0));
  double P = P_amp;
  if (r > 0.0) {
    const double P_osc = std::sqrt(std::max(0.0, std::pow(2.0 / (r * budget), 1.0 / (m + 1.0)) - mu2));
    P = std::min(P, P_osc);
  }
  P = std::max(P, 10.0 * std::sqrt(mu2));
  const double remainder = budget;  // by construction of P
  if (r == 0.0) {
    // no oscillation: fold u = tan(theta) and integrate the smooth image
    const double theta_cap = std::atan(P);
    auto integrand = [&](double theta) {
      const double tn = std::tan(theta);
      const double sec2 = 1.0 + tn * tn;
      return sec2 / std::pow(tn * tn + mu2, m + 1);
    };
    double simpson_err = 0.0;
    const double v = adaptive_simpson(integrand, 0.0, theta_cap, kTarget * M_PI, &simpson_err);
    if (achieved) *achieved = (simpson_err + remainder) / M_PI;
    return v / M_PI;
  }
  // oscillatory case: sum exact-degree panels between consecutive zeros
  // of cos(u r); Gauss-Legendre is exact there up to round-off, so the
  // quadrature error is bounded by round-off on the absolute integral.
  const QuadRule rule = gauss_legendre(16);
  auto f = [&](double u) { return std::cos(u * r) / std::pow(u * u + mu2, m + 1); };
  // panel length is capped by the distance to the poles at +-i mu so
  // the 16-node rule stays in its spectral-convergence regime
  const double half = M_PI / r;
  double v = 0.0, abs_mass = 0.0;
  double lo = 0.0;
  while (lo < P) {
    const double step = std::min(half, 0.5 * std::sqrt(lo * lo + mu2));
    const double hi = std::min(lo + step, P);
    const double mid = 0.5 * (lo + hi), rad = 0.5 * (hi - lo);
    double seg = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      // rule is on [-1, 1]
      seg += rule.weights[k] * f(mid + rad * rule.nodes[k]);
    }
    seg *= rad;
    v += seg;
    abs_mass += std::abs(seg);
    lo = hi;
  }
  if (achieved) *achieved = (1e-14 * abs_mass + remainder) / M_PI;
  return v / M_PI;
}

DecayParams decay_params(const ModelParams& params, double t) {
  params.validate();
  if (!params.admissible(t)) {
    std::ostringstream os;
    os << "decay_params: (lambda*t = " << params.lambda * t
       << ") exceeds the admissibility frontier " << params.frontier();
    throw std::domain_error(os.str());
  }
  DecayParams d;
  const double k = 8.0 * params.lambda * t * std::pow(params.re_m2(), -1.5);
  d.eps_t = 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - k)));
  const double k1 = 8.0 * params.lambda * std::pow(params.re_m2(), -1.5);
  d.c = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - k1)));
  return d;
}

double theorem1_bound(const ModelParams& params, double y1, double y2) {
  const DecayParams d = decay_params(params, 1.0);
  const double rate = std::sqrt(d.c * params.re_m2());
  return std::exp(-rate * std::abs(y1 - y2)) / (2.0 * rate);
}

namespace {

double theorem2_integral(double k) {
  // int_0^1 dt (1 + sqrt(1-kt))^{-2} via u = sqrt(1-kt);
  // antiderivative (2/k)(ln(1+u) + 1/(1+u)).
  if (k < 1e-4) return 0.25 * (1.0 + 0.25 * k + 5.0 / 48.0 * k * k);
  auto f = [](double u) { return std::log(1.0 + u) + 1.0 / (1.0 + u); };
  const double u0 = std::sqrt(std::max(0.0, 1.0 - k));
  return (2.0 / k) * (f(1.0) - f(u0));
}

}  // namespace

double theorem2_bound(const ModelParams& params) {
  params.validate();
  if (!params.admissible(1.0))
    throw std::domain_error("theorem2_bound: inadmissible coupling (8 lambda > (Re m2)^{3/2})");
  if (params.lambda == 0.0) return 0.0;
  const double k = 8.0 * params.lambda * std::pow(params.re_m2(), -1.5);
  return params.lambda / params.re_m2() * (0.5 + theorem2_integral(k));
}

double theorem2_bound_quadrature(const ModelParams& params, double* achieved) {
  params.validate();
  if (!params.admissible(1.0))
    throw std::domain_error("theorem2_bound_quadrature: inadmissible coupling");
  if (params.lambda == 0.0) {
    if (achieved) *achieved = 0.0;
    return 0.0;
  }
  const double k = 8.0 * params.lambda * std::pow(params.re_m2(), -1.5);
  auto integrand = [k](double t) {
    const double u = std::sqrt(std::max(0.0, 1.0 - k * t));
    const double d = 1.0 + u;
    return 1.0 / (d * d);
  };
  const double integral = adaptive_simpson(integrand, 0.0, 1.0, 1e-13, achieved);
  return params.lambda / params.re_m2() * (0.5 + integral);
}

double lemma4_bound(const ModelParams& params, int n, int N, double t, const CatalanTable& a) {
  params.validate();
  if (n < 0 || N < 0) throw std::invalid_argument("lemma4_bound: n, N must be >= 0");
  if (n > a.n_max()) throw std::invalid_argument("lemma4_bound: Catalan table too small");
  const double g = 2.0 * std::sqrt(2.0 * params.lambda);
  return std::pow(t, n) / std::pow(4.0, n + 1) * std::pow(g, N + 2 * n + 1) /
         std::pow(params.re_m2(), N + 1.5 * n + 0.5) *
         static_cast<double>(rising_ratio(N, 2 * n)) * static_cast<double>(a.at(n));
}

double lemma6_bound(const ModelParams& params, int n, int m, int N, int Nprime, double t,
                    double y1, double y2, const BallotTable& b) {
  params.validate();
  if (n < 0 || m < 0 || N < 0 || Nprime < 0)
    throw std::invalid_argument("lemma6_bound: indices must be >= 0");
  if (m > n) return 0.0;
  if (n > b.n_max) throw std::invalid_argument("lemma6_bound: ballot table too small");
  const double g = 2.0 * std::sqrt(2.0 * params.lambda);
  const double bnm = static_cast<double>(b.at(n, m));
  if (bnm == 0.0 && !(n == 0 && m == 0)) return 0.0;
  return std::pow(t, n) / std::pow(4.0, n) * std::pow(g, N + Nprime + 2 * n) /
         std::pow(params.re_m2(), Nprime + 1.5 * n - m) *
         static_cast<double>(rising_ratio(N, m)) *
         static_cast<double>(rising_ratio(Nprime, 2LL * n - m - 1)) * bnm *
         kernel_power(params, N + m, y1, y2);
}

double tail_bound(const ModelParams& params, int n_max, double t, double y1, double y2,
                  const BallotTable& b) {
  params.validate();
  if (n_max < 0) throw std::invalid_argument("tail_bound: n_max must be >= 0");
  if (params.lambda * t == 0.0) return 0.0;
  if (!params.strictly_admissible(t))
    throw std::domain_error(
        "tail_bound: requires 8 lambda t < (Re m2)^{3/2}; the geometric majorant degenerates at "
        "the frontier");
  if (n_max > b.n_max) throw std::invalid_argument("tail_bound: ballot table too small");
  const double rem2 = params.re_m2();
  const double q = 2.0 * params.lambda * t * std::pow(rem2, -1.5);
  // Column resummation: sum_n B_{n,m} q^n = eps^m with eps = eps_t, so the
  // full Lemma-6 majorant sums to the comparator kernel at mass (1-eps) Re m2.
  const double eps = decay_params(params, t).eps_t;
  const double resummed_mass = (1.0 - eps) * rem2;
  const double mu = std::sqrt(resummed_mass);
  const double full = std::exp(-mu * std::abs(y1 - y2)) / (2.0 * mu);
  double head = kernel_power(params, 0, y1, y2);  // n = 0, m = 0 term
  double qn = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    qn *= q;
    for (int m = 1; m <= n; ++m)
      head += qn * std::pow(rem2, m) * static_cast<double>(b.at(n, m)) *
              kernel_power(params, m, y1, y2);
  }
  // Exact remainder of the positive majorant series, padded against round-off.
  const double tail = full - head;
  return std::max(0.0, tail) + 1e-14 * (std::abs(full) + std::abs(head));
}

}  // namespace lve
