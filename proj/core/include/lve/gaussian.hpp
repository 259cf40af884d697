#pragma once

#include <stdexcept>
#include <vector>

#include "lve/estimate.hpp"
#include "lve/lattice.hpp"
#include "lve/parallel.hpp"
#include "lve/random.hpp"

namespace lve {

// Monte-Carlo estimate of (nu_t * f)[base] = E_{sigma~nu_t} f(base+sigma).
// Sample i uses the substream child(i), so the estimate is a pure
// function of (seed, path) and of nothing else; samples land in
// index-addressed slots and are reduced sequentially.
template <typename F>
Estimate mc_convolve(const F& f, const LatticeSpec& spec, double t, const SigmaField& base,
                     std::int64_t n_samples, RngStream rng) {
  if (base.size() != static_cast<std::size_t>(spec.n_sites))
    throw std::invalid_argument("mc_convolve: base field size mismatch");
  if (t <= 0.0) return Estimate::exact(f(base));
  if (n_samples < 2) throw std::invalid_argument("mc_convolve: need at least two samples");

  std::vector<cdouble> slots(static_cast<std::size_t>(n_samples));
  parallel_for(slots.size(), [&](std::size_t i) {
    SigmaField shifted = sample_noise(spec, t, rng.child(i));
    for (std::size_t k = 0; k < shifted.size(); ++k) shifted[k] += base[k];
    slots[i] = f(shifted);
  });
  return from_samples(slots);
}

}  // namespace lve
