#pragma once

#include <cstdint>
#include <random>

namespace daic {

// Portable seeded generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the distributions below are written
// out by hand because std::*_distribution output differs between standard
// library implementations. The only platform dependence left is the libm
// used for exp/log/cos.
//
//   uniform01()      (x >> 11) * 2^-53
//   uniform_below(n) rejection sampling on the top of the 64-bit range
//   normal()         Box-Muller, cosine branch only (one normal per two draws)
//   lognormal(m, s)  exp(m + s * normal())
class Rng {
 public:
  using engine_type = std::mt19937_64;
  using result_type = engine_type::result_type;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return engine_type::min(); }
  static constexpr result_type max() { return engine_type::max(); }
  result_type operator()() { return engine_(); }

  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);
  double normal();
  double lognormal(double mu, double sigma);

  engine_type& engine() { return engine_; }

 private:
  engine_type engine_;
};

}  // namespace daic
