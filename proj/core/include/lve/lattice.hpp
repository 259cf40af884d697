#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "lve/params.hpp"
#include "lve/random.hpp"

namespace lve {

enum class Boundary : std::uint8_t { dirichlet, periodic };

// 1D box [-L_box, L_box] with spacing a; site i sits at -L_box + (i+1/2)a.
struct LatticeSpec {
  double a = 0.25;
  double L_box = 16.0;
  int n_sites = 128;
  Boundary boundary = Boundary::dirichlet;

  double site(int i) const { return -L_box + (i + 0.5) * a; }
  // Site index closest to coordinate x.
  int site_index(double x) const;
  void validate() const;
};

LatticeSpec make_lattice(double a, double L_box, Boundary boundary = Boundary::dirichlet);

// Real auxiliary-field sample, one value per site.
using SigmaField = std::vector<double>;

// White-noise sample of nu_t: iid centered normals of variance t/a per
// site (the lattice covariance t delta(x-y) -> t delta_ij / a).
SigmaField sample_noise(const LatticeSpec& spec, double t, RngStream rng);

// H = -Laplacian_a + m2 I + 2i sqrt(2 lambda) diag(sigma), dense-free
// representation. Dirichlet: tridiagonal; periodic: plus corners.
struct LatticeOperator {
  std::vector<cdouble> diag;
  double off = 0.0;  // constant off-diagonal -1/a^2
  Boundary boundary = Boundary::dirichlet;
  double a = 0.0;
};

LatticeOperator build_operator(const LatticeSpec& spec, const ModelParams& params,
                               const SigmaField& sigma);

// Dense resolvent g = H^{-1}/a (the 1/a encodes the continuum delta).
struct Resolvent {
  int n = 0;
  std::vector<cdouble> g;  // row-major n*n
  cdouble operator()(int i, int j) const { return g[static_cast<std::size_t>(i) * n + j]; }
  double max_residual = 0.0;  // max |H g - I/a| reported by the solver
};

Resolvent resolvent(const LatticeSpec& spec, const ModelParams& params, const SigmaField& sigma);

struct Lemma1Report {
  double max_violation = 0.0;  // max over entries of |g|/g' - 1 (positive part)
  bool holds = false;
};

// Entrywise |g[sigma]| <= comparator built at mass^2 = Re(m2), with a
// 1e-9 relative round-off allowance.
Lemma1Report check_lemma1(const LatticeSpec& spec, const ModelParams& params,
                          const SigmaField& sigma);

// O(n) factorization machinery for Dirichlet tridiagonal operators.
// The inverse of an irreducible tridiagonal matrix is semiseparable:
// for i <= j, (H^{-1})_{ij} = (H^{-1})_{jj} * prod_{k=i}^{j-1} f_k with
// f_k = -off / r_k, r the forward elimination pivots. All engine
// contractions against the resolvent run in O(n) through this class.
class TridiagResolvent {
 public:
  TridiagResolvent() = default;
  // Factorizes; careful: Dirichlet only.
  TridiagResolvent(const LatticeOperator& H);

  int size() const { return n_; }
  double lattice_a() const { return a_; }
  // False when the cumulative propagation products degenerate (under- or
  // overflow); callers should then fall back to a dense solve.
  bool ok() const { return ok_; }

  // g_ii for all sites (continuum normalization, = (H^{-1})_{ii}/a).
  const std::vector<cdouble>& diagonal() const { return gdiag_; }
  // Column j of g.
  void column(int j, std::vector<cdouble>& out) const;
  // Forward pivots (LU pivots of H); determinant = product of these.
  const std::vector<cdouble>& pivots() const { return r_; }

  // out[x] = sum_{x'} w[x'] * g_{x',x}^2, all x, O(n).
  void contract_square(const std::vector<cdouble>& w, std::vector<cdouble>& out) const;
  // out[x] = sum_{x'} w[x'] * cy1[x'] * g_{x',x}, all x, O(n).
  // (cy1 is any per-site complex weight, typically a resolvent column.)
  void contract_chain(const std::vector<cdouble>& w, const std::vector<cdouble>& cy1,
                      std::vector<cdouble>& out) const;

 private:
  int n_ = 0;
  double a_ = 1.0;
  double off_ = 0.0;
  std::vector<cdouble> r_, l_;      // forward/backward pivots
  std::vector<cdouble> gdiag_;      // inverse diagonal / a
  std::vector<cdouble> fu_, fd_;    // up/down propagation factors
  std::vector<cdouble> phi_, psi_;  // cumulative products of fu_/fd_
  std::vector<cdouble> inv_phi_, inv_psi_;
  bool ok_ = false;
};

}  // namespace lve
