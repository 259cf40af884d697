#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace lve {

// Monte-Carlo result: complex mean with a single scalar error number.
// std_err combines the real and imaginary spread in quadrature.
struct Estimate {
  std::complex<double> mean{0.0, 0.0};
  double std_err = 0.0;
  std::int64_t n_samples = 0;

  static Estimate exact(std::complex<double> v) { return Estimate{v, 0.0, 1}; }

  Estimate scaled(std::complex<double> k) const {
    return Estimate{k * mean, std::abs(k) * std_err, n_samples};
  }
};

// Sample mean and standard error of a vector of complex draws.
inline Estimate from_samples(const std::vector<std::complex<double>>& v) {
  Estimate e;
  e.n_samples = static_cast<std::int64_t>(v.size());
  if (v.empty()) return e;
  std::complex<double> sum{0.0, 0.0};
  for (const auto& x : v) sum += x;
  e.mean = sum / static_cast<double>(v.size());
  if (v.size() < 2) return e;
  double s2 = 0.0;
  for (const auto& x : v) {
    const auto d = x - e.mean;
    s2 += d.real() * d.real() + d.imag() * d.imag();
  }
  s2 /= static_cast<double>(v.size() - 1);
  e.std_err = std::sqrt(s2 / static_cast<double>(v.size()));
  return e;
}

// Pooled mean of two estimates from independent streams.
inline Estimate merge(const Estimate& x, const Estimate& y) {
  if (x.n_samples == 0) return y;
  if (y.n_samples == 0) return x;
  const double nx = static_cast<double>(x.n_samples);
  const double ny = static_cast<double>(y.n_samples);
  Estimate e;
  e.n_samples = x.n_samples + y.n_samples;
  const double n = nx + ny;
  e.mean = (nx * x.mean + ny * y.mean) / n;
  e.std_err = std::sqrt(nx * nx * x.std_err * x.std_err + ny * ny * y.std_err * y.std_err) / n;
  return e;
}

// Sum of independent estimates; errors add in quadrature.
inline Estimate add(const Estimate& x, const Estimate& y) {
  Estimate e;
  e.mean = x.mean + y.mean;
  e.std_err = std::hypot(x.std_err, y.std_err);
  e.n_samples = std::max(x.n_samples, y.n_samples);
  return e;
}

// First-order error propagation for a product of independent estimates.
inline Estimate product(const Estimate& x, const Estimate& y) {
  Estimate e;
  e.mean = x.mean * y.mean;
  e.std_err = std::hypot(std::abs(x.mean) * y.std_err, std::abs(y.mean) * x.std_err);
  e.n_samples = std::min(x.n_samples, y.n_samples);
  return e;
}

}  // namespace lve
