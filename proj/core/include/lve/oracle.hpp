#pragma once

#include <cstdint>
#include <vector>

#include "lve/estimate.hpp"
#include "lve/lattice.hpp"
#include "lve/params.hpp"
#include "lve/random.hpp"

namespace lve {

// A lattice small enough for direct integration of the full measure.
// Requires a real mass term.
struct TinyModel {
  LatticeSpec spec;
  ModelParams params;
  std::vector<double> free_cov;  // row-major n x n, (-laplacian + m2)^{-1}/a
};

TinyModel make_tiny_model(const LatticeSpec& spec, const ModelParams& params);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // change at the last node doubling
  int nodes = 0;       // per-axis count of the accepted rule
  bool converged = false;
};

// Two-point function <phi_y1 phi_y2> by tensor Gauss-Hermite quadrature
// in the eigenbasis of the free covariance. Doubles the per-axis node
// count (8, 16, 32, 64) until the value moves by less than rel_tol, or
// the next rule would exceed the leaf cap.
QuadratureResult oracle_two_point_quadrature(const TinyModel& model, int y1, int y2,
                                             double rel_tol = 1e-8);

// Two-point function by direct sampling of the intermediate-field
// representation: sigma drawn from the t = 1 Gaussian, resolvent entry
// reweighted by the square-rooted determinant ratio. Ratio of means,
// jackknife error. Dirichlet lattices up to 256 sites.
Estimate oracle_two_point_sigma(const LatticeSpec& spec, const ModelParams& params, int y1, int y2,
                                std::int64_t n_samples, RngStream rng);

}  // namespace lve
