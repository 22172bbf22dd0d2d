#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "daic/graph.hpp"
#include "daic/kernel.hpp"
#include "daic/rng.hpp"
#include "daic/value.hpp"

namespace daic {

struct Counterexample {
  std::string condition;  // "distributive", "commutative", ...
  std::string inputs;
  std::string values;     // the two sides that disagreed
};

struct ConditionReport {
  bool distributive_ok = true;
  bool commutative_ok = true;
  bool associative_ok = true;
  bool identity_ok = true;
  bool init_ok = true;
  // One witness per failed condition, in the order the checks ran.
  std::vector<Counterexample> counterexamples;

  bool ok() const {
    return distributive_ok && commutative_ok && associative_ok && identity_ok && init_ok;
  }
};

std::string render(const ConditionReport& report);

namespace detail {

template <class V>
std::string fmt(const V& x) {
  return ValueTraits<V>::format(x);
}

inline EdgeRef edge_ref(const Graph& graph, std::size_t source_index, std::size_t slot) {
  const Edge& e = graph.out_edges_at(source_index)[slot];
  return EdgeRef{graph.vid_at(source_index), e.target, source_index, graph.index_of(e.target),
                 e.weight, graph.out_degree_at(source_index)};
}

}  // namespace detail

// Sampled check of the four sufficient conditions. Deterministic for a given
// seed. The init condition is checked on every vertex when the graph has at
// most `samples` vertices, otherwise on `samples` random ones.
template <class V>
ConditionReport check_conditions(const Kernel<V>& kernel, const Graph& graph, std::size_t samples,
                                 double tol, std::uint64_t seed = 0x5eed) {
  using T = ValueTraits<V>;
  using detail::fmt;
  ConditionReport report;
  Rng rng(seed);
  const auto& acc = kernel.accumulate;

  auto fail = [&](bool& flag, const char* name, std::string inputs, std::string values) {
    if (!flag) return;
    flag = false;
    report.counterexamples.push_back({name, std::move(inputs), std::move(values)});
  };

  for (std::size_t s = 0; s < samples; ++s) {
    const V x = kernel.sample_value(rng);
    const V y = kernel.sample_value(rng);
    const V z = kernel.sample_value(rng);

    if (report.distributive_ok && graph.edge_count() > 0) {
      std::size_t src = 0;
      do {
        src = rng.uniform_below(graph.vertex_count());
      } while (graph.out_degree_at(src) == 0);
      const EdgeRef e = detail::edge_ref(graph, src, rng.uniform_below(graph.out_degree_at(src)));
      const V lhs = kernel.g(e, acc(x, y));
      const V rhs = acc(kernel.g(e, x), kernel.g(e, y));
      if (!T::close(lhs, rhs, tol)) {
        fail(report.distributive_ok, "distributive",
             "edge " + std::to_string(e.source) + "->" + std::to_string(e.target) + ", x=" + fmt(x) +
                 ", y=" + fmt(y),
             "g(x+y)=" + fmt(lhs) + " vs g(x)+g(y)=" + fmt(rhs));
      }
    }

    if (report.commutative_ok) {
      const V xy = acc(x, y);
      const V yx = acc(y, x);
      if (!T::close(xy, yx, tol)) {
        fail(report.commutative_ok, "commutative", "x=" + fmt(x) + ", y=" + fmt(y),
             fmt(xy) + " vs " + fmt(yx));
      }
    }

    if (report.associative_ok) {
      const V left = acc(acc(x, y), z);
      const V right = acc(x, acc(y, z));
      if (!T::close(left, right, tol)) {
        fail(report.associative_ok, "associative",
             "x=" + fmt(x) + ", y=" + fmt(y) + ", z=" + fmt(z), fmt(left) + " vs " + fmt(right));
      }
    }

    if (report.identity_ok) {
      const V with_zero = acc(x, kernel.zero);
      if (!T::close(with_zero, x, tol)) {
        fail(report.identity_ok, "identity", "x=" + fmt(x), fmt(with_zero) + " vs " + fmt(x));
      }
    }
  }

  // v0 ⊕ dv1 must equal one traditional step from v0:
  // f_j(v0) = (⊕ over in-edges i->j of g_{i,j}(v0_i)) ⊕ c_j.
  const std::size_t n = graph.vertex_count();
  std::vector<V> v0;
  v0.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v0.push_back(kernel.init(VertexRef{graph.vid_at(i), i}).v0);
  std::vector<V> step;
  step.reserve(n);
  for (std::size_t j = 0; j < n; ++j) step.push_back(kernel.constant(VertexRef{graph.vid_at(j), j}));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t slot = 0; slot < graph.out_degree_at(i); ++slot) {
      const EdgeRef e = detail::edge_ref(graph, i, slot);
      step[e.target_index] = acc(step[e.target_index], kernel.g(e, v0[i]));
    }
  }
  auto check_vertex = [&](std::size_t j) {
    const auto [a, b] = kernel.init(VertexRef{graph.vid_at(j), j});
    const V lhs = acc(a, b);
    if (!T::close(lhs, step[j], tol)) {
      fail(report.init_ok, "init", "vertex " + std::to_string(graph.vid_at(j)),
           "v0+dv1=" + fmt(lhs) + " vs f(v0)=" + fmt(step[j]));
    }
  };
  if (n <= samples) {
    for (std::size_t j = 0; j < n && report.init_ok; ++j) check_vertex(j);
  } else {
    for (std::size_t s = 0; s < samples && report.init_ok; ++s) check_vertex(rng.uniform_below(n));
  }
  return report;
}

}  // namespace daic
