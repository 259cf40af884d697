#include "lve/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "lve/quadrature.hpp"

namespace lve {

namespace {

constexpr int kMaxQuadratureSites = 8;
constexpr double kMaxLeaves = 2.5e9;
constexpr int kMaxSigmaSites = 256;

double tensor_ratio(const Eigen::MatrixXd& B, double lam_a, int y1, int y2, int n_nodes) {
  const int n = static_cast<int>(B.rows());
  const QuadRule gh = gauss_hermite(n_nodes);

  std::vector<std::vector<double>> phi(static_cast<std::size_t>(n + 1),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
  double num = 0.0, den = 0.0;

  // odometer over the tensor grid; axis k contributes B.col(k) * y
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  std::vector<double> wpart(static_cast<std::size_t>(n + 1), 1.0);
  int depth = 0;
  for (;;) {
    while (depth < n) {
      const double y = gh.nodes[static_cast<std::size_t>(idx[depth])];
      const double w = gh.weights[static_cast<std::size_t>(idx[depth])];
      for (int x = 0; x < n; ++x) phi[depth + 1][x] = phi[depth][x] + B(x, depth) * y;
      wpart[depth + 1] = wpart[depth] * w;
      ++depth;
    }
    const std::vector<double>& p = phi[static_cast<std::size_t>(n)];
    double s4 = 0.0;
    for (int x = 0; x < n; ++x) {
      const double p2 = p[x] * p[x];
      s4 += p2 * p2;
    }
    const double e = wpart[static_cast<std::size_t>(n)] * std::exp(-lam_a * s4);
    den += e;
    num += e * p[y1] * p[y2];

    --depth;
    while (depth >= 0 && ++idx[depth] == n_nodes) {
      idx[depth] = 0;
      --depth;
    }
    if (depth < 0) break;
  }
  return num / den;
}

}  // namespace

TinyModel make_tiny_model(const LatticeSpec& spec, const ModelParams& params) {
  spec.validate();
  params.validate();
  if (spec.n_sites > kMaxQuadratureSites)
    throw std::invalid_argument("tiny model: at most 8 sites");
  if (params.m2.imag() != 0.0)
    throw std::invalid_argument("tiny model: mass term must be real");

  TinyModel model{spec, params, {}};
  const SigmaField zero(static_cast<std::size_t>(spec.n_sites), 0.0);
  const Resolvent g = resolvent(spec, params, zero);
  model.free_cov.resize(static_cast<std::size_t>(spec.n_sites) * spec.n_sites);
  for (int i = 0; i < spec.n_sites; ++i)
    for (int j = 0; j < spec.n_sites; ++j)
      model.free_cov[static_cast<std::size_t>(i) * spec.n_sites + j] = g(i, j).real();
  return model;
}

QuadratureResult oracle_two_point_quadrature(const TinyModel& model, int y1, int y2,
                                             double rel_tol) {
  const int n = model.spec.n_sites;
  if (y1 < 0 || y1 >= n || y2 < 0 || y2 >= n)
    throw std::invalid_argument("oracle: point off the lattice");

  Eigen::MatrixXd C(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) C(i, j) = model.free_cov[static_cast<std::size_t>(i) * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::runtime_error("oracle: free covariance is not positive");

  // phi = B y maps the e^{-y^2} weight onto the free measure
  Eigen::MatrixXd B = es.eigenvectors();
  for (int k = 0; k < n; ++k) B.col(k) *= std::sqrt(2.0 * es.eigenvalues()(k));

  const double lam_a = model.params.lambda * model.spec.a;
  QuadratureResult res;
  double prev = 0.0;
  bool have_prev = false;
  for (int m = 8; m <= 64; m *= 2) {
    if (std::pow(static_cast<double>(m), n) > kMaxLeaves) break;
    const double v = tensor_ratio(B, lam_a, y1, y2, m);
    res.nodes = m;
    res.value = v;
    if (have_prev) {
      res.error = std::abs(v - prev);
      if (res.error <= rel_tol * std::max(1.0, std::abs(v))) {
        res.converged = true;
        break;
      }
    }
    prev = v;
    have_prev = true;
  }
  return res;
}

Estimate oracle_two_point_sigma(const LatticeSpec& spec, const ModelParams& params, int y1, int y2,
                                std::int64_t n_samples, RngStream rng) {
  spec.validate();
  params.validate();
  if (spec.boundary != Boundary::dirichlet)
    throw std::invalid_argument("sigma oracle: dirichlet boundary only");
  if (spec.n_sites > kMaxSigmaSites) throw std::invalid_argument("sigma oracle: at most 256 sites");
  if (y1 < 0 || y1 >= spec.n_sites || y2 < 0 || y2 >= spec.n_sites)
    throw std::invalid_argument("oracle: point off the lattice");
  if (n_samples < 2) throw std::invalid_argument("sigma oracle: need at least 2 samples");

  auto log_det = [&](const TridiagResolvent& f) {
    cdouble s(0.0, 0.0);
    for (const cdouble& r : f.pivots()) {
      if (r.real() <= 0.0)
        throw std::runtime_error("sigma oracle: pivot left the right half-plane");
      s += std::log(r);
    }
    return s;
  };

  const SigmaField zero(static_cast<std::size_t>(spec.n_sites), 0.0);
  const TridiagResolvent f0(build_operator(spec, params, zero));
  if (!f0.ok()) throw std::runtime_error("sigma oracle: free factorization degenerated");
  const cdouble log_det0 = log_det(f0);

  std::vector<cdouble> num(static_cast<std::size_t>(n_samples));
  std::vector<cdouble> den(static_cast<std::size_t>(n_samples));
  std::vector<cdouble> col;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const SigmaField sigma = sample_noise(spec, 1.0, rng.child(static_cast<std::uint64_t>(i)));
    const TridiagResolvent f(build_operator(spec, params, sigma));
    if (!f.ok()) throw std::runtime_error("sigma oracle: factorization degenerated");
    const cdouble w = std::exp(-0.5 * (log_det(f) - log_det0));
    f.column(y2, col);
    num[static_cast<std::size_t>(i)] = col[static_cast<std::size_t>(y1)] * w;
    den[static_cast<std::size_t>(i)] = w;
  }

  cdouble sn(0.0, 0.0), sd(0.0, 0.0);
  for (std::int64_t i = 0; i < n_samples; ++i) {
    sn += num[static_cast<std::size_t>(i)];
    sd += den[static_cast<std::size_t>(i)];
  }
  const cdouble value = sn / sd;

  double var = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const cdouble vj =
        (sn - num[static_cast<std::size_t>(i)]) / (sd - den[static_cast<std::size_t>(i)]);
    var += std::norm(vj - value);
  }
  const double nn = static_cast<double>(n_samples);
  Estimate est;
  est.mean = value;
  est.std_err = std::sqrt((nn - 1.0) / nn * var);
  est.n_samples = n_samples;
  return est;
}

}  // namespace lve
