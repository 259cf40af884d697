#pragma once

#include <functional>
#include <vector>

namespace lve {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int n);

// Gauss-Legendre rule mapped to [0, t].
QuadRule gauss_legendre_on(int n, double t);

// Gauss-Hermite rule for weight e^{-x^2} on the real line.
QuadRule gauss_hermite(int n);

// Adaptive Simpson on [a, b] with absolute tolerance. On return
// *achieved holds a per-interval error estimate accumulation; a result
// is reported even when the target was not reached, so callers can
// inspect it.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double* achieved = nullptr);

}  // namespace lve
