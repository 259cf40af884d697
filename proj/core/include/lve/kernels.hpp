#pragma once

#include "lve/combinatorics.hpp"
#include "lve/params.hpp"

namespace lve {

// Free covariance kernel e^{-M|x-y|}/(2M).
double covariance_C(double mass, double x, double y);

// Comparator kernel C' at mass sqrt(Re m2): the entrywise dominating
// kernel of the field-dependent resolvent.
double comparator_Cprime(const ModelParams& params, double x, double y);

// (C'^{m+1})_{y1,y2}: closed form for the inverse Fourier transform of
// (p^2 + Re m2)^{-(m+1)}.
double kernel_power(const ModelParams& params, int m, double y1, double y2);

// Reference path: adaptive quadrature of the folded Fourier integral
// with p = tan(theta). Absolute target 1e-12; the achieved error bound
// is reported through *achieved.
double kernel_power_quadrature(const ModelParams& params, int m, double y1, double y2,
                               double* achieved = nullptr);

// eps_t and c = 1 - eps_1 for the resummed-mass decay rate.
DecayParams decay_params(const ModelParams& params, double t);

// Two-point bound e^{-sqrt(c Re m2)|y1-y2|} / (2 sqrt(c Re m2)).
double theorem1_bound(const ModelParams& params, double y1, double y2);

// Pressure bound (lambda/Re m2)(1/2 + int_0^1 dt (1+sqrt(1-8 lambda t (Re m2)^{-3/2}))^{-2}),
// integral by the analytic antiderivative.
double theorem2_bound(const ModelParams& params);
// Quadrature cross-check of the same integral.
double theorem2_bound_quadrature(const ModelParams& params, double* achieved = nullptr);

// Integrated bound on |W^(n)| with N z-derivatives:
// t^n/4^{n+1} (2 sqrt(2 lambda))^{N+2n+1} (Re m2)^{-(N+3n/2+1/2)} (N+2n)!/(2n)! A_n.
double lemma4_bound(const ModelParams& params, int n, int N, double t, const CatalanTable& a);

// Integrated bound on |W^(n,m)| with N unprimed and Nprime primed derivatives.
// Factorial ratios use the signed product convention.
double lemma6_bound(const ModelParams& params, int n, int m, int N, int Nprime, double t,
                    double y1, double y2, const BallotTable& b);

// Certified upper bound on sum_{n>n_max} sum_m |W^(n,m)_{t,y1,y2}|:
// the exact remainder of the Lemma-6 majorant series, with the m-sums
// resummed through the generating-function column sums. Requires strict
// admissibility (8 lambda t < (Re m2)^{3/2}).
double tail_bound(const ModelParams& params, int n_max, double t, double y1, double y2,
                  const BallotTable& b);

}  // namespace lve
