#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>

#include "daic/rng.hpp"
#include "daic/types.hpp"
#include "daic/value.hpp"

namespace daic {

// Which way the summed progress metric moves over a correct run. `none` for
// kernels whose progress can move both ways (Jacobi with mixed-sign weights,
// SSSP where a first finite distance adds to a sum that later shrinks).
enum class Direction { increasing, decreasing, none };

template <class V>
struct InitialState {
  V v0;
  V dv1;
};

// One delta-accumulative algorithm. A kernel is bound to the graph it was
// built for: EdgeRef / VertexRef indices refer to that graph. Every function
// must be pure and callable from many threads at once.
template <class V>
struct Kernel {
  std::string name;

  // Edge function g_{i,j}: the message sent along i->j for a delta x at i.
  std::function<V(const EdgeRef&, const V&)> g;
  std::function<V(const V&, const V&)> accumulate;
  V zero{};

  std::function<InitialState<V>(const VertexRef&)> init;
  // c_j of the traditional update v_j = (⊕_i g_{i,j}(v_i)) ⊕ c_j.
  std::function<V(const VertexRef&)> constant;

  std::function<double(const V&)> progress_of;
  // Optional override; empty means priority_default.
  std::function<double(const V&, const V&)> priority_of;
  // Random value drawn from the kernel's domain, for condition sampling.
  std::function<V(Rng&)> sample_value;

  Direction direction = Direction::increasing;
  // x ⊕ x == x (min / max). Lets update skip sends when v did not change.
  bool idempotent = false;

  bool is_zero(const V& x) const { return ValueTraits<V>::equal(x, zero); }
};

template <class V>
double priority_default(const V& v, const V& dv, const Kernel<V>& kernel) {
  const double before = kernel.progress_of(v);
  const double after = kernel.progress_of(kernel.accumulate(v, dv));
  if (before == after) return 0.0;
  return std::abs(after - before);
}

template <class V>
double priority(const V& v, const V& dv, const Kernel<V>& kernel) {
  if (kernel.is_zero(dv)) return 0.0;
  if (kernel.priority_of) return kernel.priority_of(v, dv);
  return priority_default(v, dv, kernel);
}

}  // namespace daic
