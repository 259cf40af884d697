#include "lve/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace lve {

QuadRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton from the Chebyshev-like initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

QuadRule gauss_legendre_on(int n, double t) {
  QuadRule r = gauss_legendre(n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = 0.5 * t * (r.nodes[i] + 1.0);
    r.weights[i] *= 0.5 * t;
  }
  return r;
}

QuadRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be positive");
  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double sqrt_pi = std::sqrt(M_PI);
  double x = 0.0;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    if (i == 0)
      x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      x -= 1.14 * std::pow(n, 0.426) / x;
    else if (i == 2)
      x = 1.86 * x - 0.86 * r.nodes[n - 1];
    else if (i == 3)
      x = 1.91 * x - 0.91 * r.nodes[n - 2];
    else
      x = 2.0 * x - r.nodes[n + 1 - i];
    double pp = 0.0;
    for (int it = 0; it < 200; ++it) {
      // Orthonormal Hermite recurrence.
      double p0 = 1.0 / std::sqrt(sqrt_pi), p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = x * std::sqrt(2.0 / (k + 1.0)) * p1 - std::sqrt(static_cast<double>(k) / (k + 1.0)) * p2;
      }
      pp = std::sqrt(2.0 * n) * p1;
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-14) break;
    }
    r.nodes[n - 1 - i] = x;
    r.nodes[i] = -x;
    const double w = 2.0 / (pp * pp);
    r.weights[n - 1 - i] = w;
    r.weights[i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

namespace {

struct SimpsonState {
  double total_err = 0.0;
  int depth_hits = 0;
};

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth,
                   SimpsonState& st) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = (left + right - whole) / 15.0;
  if (depth <= 0) {
    st.depth_hits++;
    st.total_err += std::abs(err);
    return left + right + err;
  }
  if (std::abs(err) <= tol) {
    st.total_err += std::abs(err);
    return left + right + err;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, st) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, st);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double* achieved) {
  SimpsonState st;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double v = simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, 48, st);
  if (achieved) *achieved = st.total_err;
  return v;
}

}  // namespace lve
