#pragma once

#include <cstdint>
#include <vector>

namespace lve {

// Counter-based splittable random stream. A stream is identified by a
// 64-bit key derived from (seed, derivation path); draws hash a counter
// against the key, so sequences are a pure function of (seed, path) and
// are independent of evaluation order and thread count.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : key_(mix(seed ^ kRootSalt)) {}

  // Derive an independent child stream.
  RngStream child(std::uint64_t step) const {
    RngStream s(*this);
    s.key_ = mix(key_ ^ mix(step + kChildSalt));
    s.counter_ = 0;
    return s;
  }

  std::uint64_t next_u64() { return mix(key_ + kGamma * ++counter_); }

  // Uniform on (0,1), never exactly 0 or 1.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via inverse-CDF (Acklam's rational approximation).
  double normal();

  // n iid standard normals.
  void fill_normal(std::vector<double>& out, std::size_t n);

 private:
  static constexpr std::uint64_t kRootSalt = 0x5bf0f2b9a1d3c642ULL;
  static constexpr std::uint64_t kChildSalt = 0x9e6c63d0876a3f35ULL;
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z += kGamma;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace lve
