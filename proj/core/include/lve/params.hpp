#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace lve {

using cdouble = std::complex<double>;

// Model parameters of the sigma-representation of 1D phi^4.
// The mass squared may be complex with Re(m2) > 0; the coupling is
// nonnegative. All decay and bound formulas depend on Re(m2) only.
struct ModelParams {
  cdouble m2{1.0, 0.0};
  double lambda = 0.0;

  double re_m2() const { return m2.real(); }

  void validate() const {
    if (!(m2.real() > 0.0)) throw std::invalid_argument("ModelParams: Re(m2) must be positive");
    if (!(lambda >= 0.0)) throw std::invalid_argument("ModelParams: lambda must be nonnegative");
  }

  // Convergence frontier: 8*lambda*t <= Re(m2)^{3/2}.
  double frontier() const { return std::pow(re_m2(), 1.5) / 8.0; }
  bool admissible(double t) const { return lambda * t <= frontier() * (1.0 + 1e-15); }
  bool strictly_admissible(double t) const { return lambda * t < frontier(); }
};

// eps_t = (1 - sqrt(1 - 8*lambda*t*Re(m2)^{-3/2}))/2, c = 1 - eps_1.
struct DecayParams {
  double eps_t = 0.0;
  double c = 1.0;
};

}  // namespace lve
