#include "lve/lattice.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lve {

namespace {

constexpr double kResidualBudgetPerA = 1e-10;  // accept when max|Hg - I/a| <= this / a

bool all_finite(const std::vector<cdouble>& v) {
  for (const cdouble& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

}  // namespace

int LatticeSpec::site_index(double x) const {
  int i = static_cast<int>(std::lround((x + L_box) / a - 0.5));
  return std::clamp(i, 0, n_sites - 1);
}

void LatticeSpec::validate() const {
  if (!(a > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
  if (!(L_box > 0.0)) throw std::invalid_argument("box half-length must be positive");
  if (n_sites < 2) throw std::invalid_argument("need at least two lattice sites");
}

LatticeSpec make_lattice(double a, double L_box, Boundary boundary) {
  LatticeSpec spec;
  spec.a = a;
  spec.L_box = L_box;
  spec.n_sites = static_cast<int>(std::lround(2.0 * L_box / a));
  spec.boundary = boundary;
  spec.validate();
  return spec;
}

SigmaField sample_noise(const LatticeSpec& spec, double t, RngStream rng) {
  SigmaField sigma(static_cast<std::size_t>(spec.n_sites), 0.0);
  if (t <= 0.0) return sigma;
  rng.fill_normal(sigma, sigma.size());
  const double scale = std::sqrt(t / spec.a);
  for (double& s : sigma) s *= scale;
  return sigma;
}

LatticeOperator build_operator(const LatticeSpec& spec, const ModelParams& params,
                               const SigmaField& sigma) {
  spec.validate();
  params.validate();
  if (sigma.size() != static_cast<std::size_t>(spec.n_sites))
    throw std::invalid_argument("sigma field size does not match lattice");
  LatticeOperator H;
  H.boundary = spec.boundary;
  H.a = spec.a;
  H.off = -1.0 / (spec.a * spec.a);
  const double inv_a2 = 1.0 / (spec.a * spec.a);
  const double coupling = 2.0 * std::sqrt(2.0 * params.lambda);
  H.diag.resize(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    H.diag[i] = 2.0 * inv_a2 + params.m2 + cdouble(0.0, coupling * sigma[i]);
  }
  return H;
}

namespace {

// q / z without the library's scaled division; magnitudes here are tame
inline cdouble rdiv(double q, cdouble z) {
  const double d = q / std::norm(z);
  return {z.real() * d, -z.imag() * d};
}

}  // namespace

TridiagResolvent::TridiagResolvent(const LatticeOperator& H) {
  if (H.boundary != Boundary::dirichlet)
    throw std::invalid_argument("semiseparable factorization needs Dirichlet boundary");
  n_ = static_cast<int>(H.diag.size());
  a_ = H.a;
  off_ = H.off;
  const double b2 = off_ * off_;
  r_.resize(n_);
  l_.resize(n_);
  r_[0] = H.diag[0];
  for (int i = 1; i < n_; ++i) r_[i] = H.diag[i] - rdiv(b2, r_[i - 1]);
  l_[n_ - 1] = H.diag[n_ - 1];
  for (int i = n_ - 2; i >= 0; --i) l_[i] = H.diag[i] - rdiv(b2, l_[i + 1]);

  gdiag_.resize(n_);
  const double inv_a = 1.0 / a_;
  for (int i = 0; i < n_; ++i) gdiag_[i] = rdiv(inv_a, r_[i] + l_[i] - H.diag[i]);

  fu_.assign(n_, cdouble(0.0));
  fd_.assign(n_, cdouble(0.0));
  for (int k = 0; k + 1 < n_; ++k) fu_[k] = rdiv(-off_, r_[k]);
  for (int k = 1; k < n_; ++k) fd_[k] = rdiv(-off_, l_[k]);

  phi_.resize(n_);
  psi_.resize(n_);
  phi_[0] = 1.0;
  for (int i = 1; i < n_; ++i) phi_[i] = phi_[i - 1] * fu_[i - 1];
  psi_[0] = 1.0;
  for (int i = 1; i < n_; ++i) psi_[i] = psi_[i - 1] * fd_[i];
  inv_phi_.resize(n_);
  inv_psi_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    inv_phi_[i] = rdiv(1.0, phi_[i]);
    inv_psi_[i] = rdiv(1.0, psi_[i]);
  }

  ok_ = all_finite(r_) && all_finite(l_) && all_finite(gdiag_) && all_finite(phi_) &&
        all_finite(psi_);
  if (ok_) {
    for (int i = 0; i < n_; ++i) {
      if (phi_[i] == cdouble(0.0) || psi_[i] == cdouble(0.0)) {
        ok_ = false;
        break;
      }
    }
  }
}

void TridiagResolvent::column(int j, std::vector<cdouble>& out) const {
  out.resize(n_);
  out[j] = gdiag_[j];
  for (int i = j - 1; i >= 0; --i) out[i] = out[i + 1] * fu_[i];
  for (int i = j + 1; i < n_; ++i) out[i] = out[i - 1] * fd_[i];
}

void TridiagResolvent::contract_square(const std::vector<cdouble>& w,
                                       std::vector<cdouble>& out) const {
  // g_{x',x} = g_{xx} phi[x]/phi[x'] for x' <= x and g_{xx} psi[x']/psi[x]
  // for x' >= x, so both halves reduce to prefix/suffix sums.
  out.assign(n_, cdouble(0.0));
  cdouble prefix(0.0);  // sum_{x'<=x} w[x'] / phi[x']^2
  for (int x = 0; x < n_; ++x) {
    prefix += w[x] * (inv_phi_[x] * inv_phi_[x]);
    out[x] = prefix * (phi_[x] * phi_[x]);
  }
  cdouble suffix(0.0);  // sum_{x'>x} w[x'] psi[x']^2
  for (int x = n_ - 1; x >= 0; --x) {
    out[x] += suffix * (inv_psi_[x] * inv_psi_[x]);
    suffix += w[x] * (psi_[x] * psi_[x]);
  }
  for (int x = 0; x < n_; ++x) out[x] *= gdiag_[x] * gdiag_[x];
}

void TridiagResolvent::contract_chain(const std::vector<cdouble>& w,
                                      const std::vector<cdouble>& cy1,
                                      std::vector<cdouble>& out) const {
  out.assign(n_, cdouble(0.0));
  cdouble prefix(0.0);
  for (int x = 0; x < n_; ++x) {
    prefix += w[x] * cy1[x] * inv_phi_[x];
    out[x] = prefix * phi_[x];
  }
  cdouble suffix(0.0);
  for (int x = n_ - 1; x >= 0; --x) {
    out[x] += suffix * inv_psi_[x];
    suffix += w[x] * cy1[x] * psi_[x];
  }
  for (int x = 0; x < n_; ++x) out[x] *= gdiag_[x];
}

namespace {

Eigen::MatrixXcd dense_operator(const LatticeOperator& H) {
  const int n = static_cast<int>(H.diag.size());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    M(i, i) = H.diag[i];
    if (i + 1 < n) {
      M(i, i + 1) = H.off;
      M(i + 1, i) = H.off;
    }
  }
  if (H.boundary == Boundary::periodic && n > 2) {
    M(0, n - 1) += H.off;
    M(n - 1, 0) += H.off;
  }
  return M;
}

double residual_norm(const LatticeOperator& H, const std::vector<cdouble>& g) {
  const int n = static_cast<int>(H.diag.size());
  const double inv_a = 1.0 / H.a;
  const bool per = H.boundary == Boundary::periodic && n > 2;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cdouble acc = H.diag[i] * g[static_cast<std::size_t>(i) * n + j];
      if (i > 0) acc += H.off * g[static_cast<std::size_t>(i - 1) * n + j];
      if (i + 1 < n) acc += H.off * g[static_cast<std::size_t>(i + 1) * n + j];
      if (per && i == 0) acc += H.off * g[static_cast<std::size_t>(n - 1) * n + j];
      if (per && i == n - 1) acc += H.off * g[static_cast<std::size_t>(0) * n + j];
      if (i == j) acc -= inv_a;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

}  // namespace

Resolvent resolvent(const LatticeSpec& spec, const ModelParams& params, const SigmaField& sigma) {
  const LatticeOperator H = build_operator(spec, params, sigma);
  const int n = spec.n_sites;
  Resolvent res;
  res.n = n;
  res.g.assign(static_cast<std::size_t>(n) * n, cdouble(0.0));

  bool filled = false;
  if (spec.boundary == Boundary::dirichlet) {
    TridiagResolvent fast(H);
    if (fast.ok()) {
      std::vector<cdouble> col;
      for (int j = 0; j < n; ++j) {
        fast.column(j, col);
        for (int i = 0; i < n; ++i) res.g[static_cast<std::size_t>(i) * n + j] = col[i];
      }
      res.max_residual = residual_norm(H, res.g);
      filled = res.max_residual <= kResidualBudgetPerA / spec.a;
    }
  }
  if (!filled) {
    const Eigen::MatrixXcd M = dense_operator(H);
    const Eigen::MatrixXcd G =
        M.partialPivLu().solve(Eigen::MatrixXcd::Identity(n, n) / spec.a);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) res.g[static_cast<std::size_t>(i) * n + j] = G(i, j);
    res.max_residual = residual_norm(H, res.g);
    if (res.max_residual > kResidualBudgetPerA / spec.a)
      throw std::runtime_error("resolvent solve failed its residual tolerance");
  }
  return res;
}

Lemma1Report check_lemma1(const LatticeSpec& spec, const ModelParams& params,
                          const SigmaField& sigma) {
  const Resolvent g = resolvent(spec, params, sigma);
  ModelParams comparator = params;
  comparator.m2 = cdouble(params.re_m2(), 0.0);
  const SigmaField zero(static_cast<std::size_t>(spec.n_sites), 0.0);
  const Resolvent gp = resolvent(spec, comparator, zero);

  Lemma1Report report;
  for (std::size_t k = 0; k < g.g.size(); ++k) {
    const double bound = gp.g[k].real();
    const double ratio = std::abs(g.g[k]) / bound - 1.0;
    report.max_violation = std::max(report.max_violation, ratio);
  }
  report.holds = report.max_violation <= 1e-9;
  return report;
}

}  // namespace lve
