#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "daic/errors.hpp"
#include "daic/graph.hpp"
#include "daic/kernel.hpp"

namespace daic {

// Deterministic single-threaded reference semantics. All vectors are indexed
// by graph position (ascending vid).

using UpdateSequence = std::vector<std::vector<VertexId>>;

template <class V>
struct SimState {
  std::vector<V> v;
  std::vector<V> dv;
  std::uint64_t updates = 0;   // updates that found dv != zero
  std::uint64_t messages = 0;  // non-zero messages produced
};

template <class V>
SimState<V> initial_state(const Graph& graph, const Kernel<V>& kernel) {
  SimState<V> s;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    auto init = kernel.init(VertexRef{graph.vid_at(i), i});
    s.v.push_back(std::move(init.v0));
    s.dv.push_back(std::move(init.dv1));
  }
  return s;
}

namespace detail {

template <class V>
EdgeRef sim_edge(const Graph& graph, std::size_t i, const Edge& e) {
  return EdgeRef{graph.vid_at(i), e.target, i, graph.index_of(e.target), e.weight, graph.out_degree_at(i)};
}

// Delta update of vertex i; messages are appended as (target index, value).
template <class V>
void sim_update(SimState<V>& s, const Graph& graph, const Kernel<V>& kernel, std::size_t i,
                std::vector<std::pair<std::size_t, V>>& out) {
  if (kernel.is_zero(s.dv[i])) return;
  V snapshot = std::move(s.dv[i]);
  s.dv[i] = kernel.zero;
  V next = kernel.accumulate(s.v[i], snapshot);
  const bool changed = !ValueTraits<V>::equal(next, s.v[i]);
  s.v[i] = std::move(next);
  ++s.updates;
  if (kernel.idempotent && !changed) return;
  for (const Edge& e : graph.out_edges_at(i)) {
    const EdgeRef ref = sim_edge<V>(graph, i, e);
    V m = kernel.g(ref, snapshot);
    if (kernel.is_zero(m)) continue;
    ++s.messages;
    out.emplace_back(ref.target_index, std::move(m));
  }
}

template <class V>
void deliver(SimState<V>& s, const Kernel<V>& kernel, std::vector<std::pair<std::size_t, V>>& messages) {
  for (auto& [target, m] : messages) s.dv[target] = kernel.accumulate(s.dv[target], m);
  messages.clear();
}

}  // namespace detail

// Applies one subset: every listed vertex updates, then all of the subset's
// messages are delivered. Messages are not visible inside the subset that
// produced them.
template <class V>
void apply_subset(SimState<V>& s, const Graph& graph, const Kernel<V>& kernel,
                  const std::vector<VertexId>& subset) {
  std::vector<std::pair<std::size_t, V>> pending;
  for (VertexId vid : subset) detail::sim_update(s, graph, kernel, graph.index_of(vid), pending);
  detail::deliver(s, kernel, pending);
}

template <class V>
SimState<V> run_sequence_state(const Graph& graph, const Kernel<V>& kernel, const UpdateSequence& seq) {
  SimState<V> s = initial_state(graph, kernel);
  for (const auto& subset : seq) apply_subset(s, graph, kernel, subset);
  return s;
}

// v after the sequence.
template <class V>
std::vector<V> run_sequence(const Graph& graph, const Kernel<V>& kernel, const UpdateSequence& seq) {
  return run_sequence_state(graph, kernel, seq).v;
}

inline UpdateSequence synchronous_sequence(const Graph& graph, std::size_t k) {
  std::vector<VertexId> all(graph.vertices().begin(), graph.vertices().end());
  return UpdateSequence(k, all);
}

// One singleton subset per vertex in ascending vid order, repeated `passes` times.
inline UpdateSequence round_robin_sequence(const Graph& graph, std::size_t passes) {
  UpdateSequence seq;
  for (std::size_t p = 0; p < passes; ++p) {
    for (VertexId vid : graph.vertices()) seq.push_back({vid});
  }
  return seq;
}

struct PathSumLimits {
  std::size_t max_vertices = 8;
  std::size_t max_hops = 5;
};

// v⁰_j ⊕ Δv¹_j ⊕ every path i_0 -> ... -> j of 1..k hops contributing
// g_{i_{l-1},j}(... g_{i_0,i_1}(Δv¹_{i_0})). This is v ⊕ dv after k
// synchronous subsets: v holds paths of up to k-1 hops, dv the k-hop ones.
template <class V>
V path_sum(const Graph& graph, const Kernel<V>& kernel, VertexId j, std::size_t k,
           PathSumLimits limits = {}) {
  if (graph.vertex_count() > limits.max_vertices || k > limits.max_hops) {
    throw GuardError("path enumeration limited to " + std::to_string(limits.max_vertices) +
                     " vertices and " + std::to_string(limits.max_hops) + " hops");
  }
  const std::size_t n = graph.vertex_count();
  // In-edges as (source index, edge) so paths can be grown backwards from j.
  std::vector<std::vector<std::pair<std::size_t, Edge>>> in(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Edge& e : graph.out_edges_at(i)) in[graph.index_of(e.target)].emplace_back(i, e);
  }
  std::vector<V> dv1;
  for (std::size_t i = 0; i < n; ++i) dv1.push_back(kernel.init(VertexRef{graph.vid_at(i), i}).dv1);

  const std::size_t target = graph.index_of(j);
  auto [v0, own] = kernel.init(VertexRef{j, target});
  V total = kernel.accumulate(v0, own);

  // path[0] is the origin i_0, the back is j; edges[h] joins path[h] -> path[h+1].
  std::vector<std::size_t> path{target};
  std::vector<std::pair<std::size_t, Edge>> edges;
  std::function<void(std::size_t)> grow = [&](std::size_t hops) {
    if (hops > 0) {
      V value = dv1[path.front()];
      for (std::size_t h = 0; h < edges.size(); ++h) {
        value = kernel.g(detail::sim_edge<V>(graph, edges[h].first, edges[h].second), value);
      }
      total = kernel.accumulate(total, value);
    }
    if (hops == k) return;
    const std::size_t head = path.front();
    for (const auto& [source, edge] : in[head]) {
      path.insert(path.begin(), source);
      edges.insert(edges.begin(), {source, edge});
      grow(hops + 1);
      path.erase(path.begin());
      edges.erase(edges.begin());
    }
  };
  grow(0);
  return total;
}

// Traditional lock-step iteration from v⁰: v_j <- (⊕_{i->j} g_{i,j}(v_i)) ⊕ c_j.
template <class V>
std::vector<V> traditional_iterate(const Graph& graph, const Kernel<V>& kernel, std::size_t k) {
  const std::size_t n = graph.vertex_count();
  std::vector<V> v;
  std::vector<V> c;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(kernel.init(VertexRef{graph.vid_at(i), i}).v0);
    c.push_back(kernel.constant(VertexRef{graph.vid_at(i), i}));
  }
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<V> next = c;
    for (std::size_t i = 0; i < n; ++i) {
      for (const Edge& e : graph.out_edges_at(i)) {
        const EdgeRef ref = detail::sim_edge<V>(graph, i, e);
        next[ref.target_index] = kernel.accumulate(next[ref.target_index], kernel.g(ref, v[i]));
      }
    }
    v = std::move(next);
  }
  return v;
}

// Iterates the traditional update until no component moves by more than tol (relative above
// magnitude 1), or max_steps. Returns the iterate and the steps taken.
template <class V>
std::pair<std::vector<V>, std::size_t> traditional_solve(const Graph& graph, const Kernel<V>& kernel,
                                                         double tol, std::size_t max_steps) {
  const std::size_t n = graph.vertex_count();
  std::vector<V> v;
  std::vector<V> c;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(kernel.init(VertexRef{graph.vid_at(i), i}).v0);
    c.push_back(kernel.constant(VertexRef{graph.vid_at(i), i}));
  }
  for (std::size_t step = 1; step <= max_steps; ++step) {
    std::vector<V> next = c;
    for (std::size_t i = 0; i < n; ++i) {
      for (const Edge& e : graph.out_edges_at(i)) {
        const EdgeRef ref = detail::sim_edge<V>(graph, i, e);
        next[ref.target_index] = kernel.accumulate(next[ref.target_index], kernel.g(ref, v[i]));
      }
    }
    bool settled = true;
    for (std::size_t i = 0; i < n && settled; ++i) settled = ValueTraits<V>::close(next[i], v[i], tol);
    v = std::move(next);
    if (settled) return {std::move(v), step};
  }
  throw Error("traditional iteration did not settle in " + std::to_string(max_steps) + " steps");
}

enum class Policy { synchronous, round_robin, priority };

struct PolicyOptions {
  // Priority policy: batch size as a fraction of |V|; 0 means one vertex at
  // a time (the argmax rule).
  double queue_fraction = 0.0;
  std::uint64_t max_updates = 100'000'000;
};

// Deterministic single-worker execution under a scheduling policy. `stop`
// sees Σ progress_of(v) and the update count, and is consulted after every update (after every
// superstep for the synchronous policy). Runs until stop returns true, no
// dv is left, or max_updates is reached.
template <class V>
SimState<V> run_policy(const Graph& graph, const Kernel<V>& kernel, Policy policy,
                       const std::function<bool(double, std::uint64_t)>& stop, PolicyOptions options = {}) {
  SimState<V> s = initial_state(graph, kernel);
  const std::size_t n = graph.vertex_count();
  double progress = 0.0;
  for (const V& x : s.v) progress += kernel.progress_of(x);
  std::vector<std::pair<std::size_t, V>> pending;

  auto any_active = [&] {
    for (const V& d : s.dv) {
      if (!kernel.is_zero(d)) return true;
    }
    return false;
  };
  auto step = [&](std::size_t i) {
    const double before = kernel.progress_of(s.v[i]);
    detail::sim_update(s, graph, kernel, i, pending);
    progress += kernel.progress_of(s.v[i]) - before;
    detail::deliver(s, kernel, pending);
  };

  if (policy == Policy::synchronous) {
    while (!stop(progress, s.updates) && any_active() && s.updates < options.max_updates) {
      for (std::size_t i = 0; i < n; ++i) {
        const double before = kernel.progress_of(s.v[i]);
        detail::sim_update(s, graph, kernel, i, pending);
        progress += kernel.progress_of(s.v[i]) - before;
      }
      detail::deliver(s, kernel, pending);
    }
    return s;
  }

  if (policy == Policy::round_robin) {
    while (!stop(progress, s.updates) && any_active() && s.updates < options.max_updates) {
      for (std::size_t i = 0; i < n; ++i) {
        if (kernel.is_zero(s.dv[i])) continue;
        step(i);
        if (stop(progress, s.updates) || s.updates >= options.max_updates) return s;
      }
    }
    return s;
  }

  const std::size_t batch = options.queue_fraction > 0.0
                                ? std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(options.queue_fraction * static_cast<double>(n))))
                                : 1;
  std::vector<std::size_t> order;
  std::vector<double> prio(n);
  while (!stop(progress, s.updates) && s.updates < options.max_updates) {
    order.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (kernel.is_zero(s.dv[i])) continue;
      prio[i] = priority(s.v[i], s.dv[i], kernel);
      order.push_back(i);
    }
    if (order.empty()) break;
    auto better = [&](std::size_t a, std::size_t b) {
      if (prio[a] != prio[b]) return prio[a] > prio[b];
      return a < b;
    };
    const std::size_t take = std::min(batch, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(), better);
    for (std::size_t t = 0; t < take; ++t) {
      step(order[t]);
      if (stop(progress, s.updates) || s.updates >= options.max_updates) return s;
    }
  }
  return s;
}

}  // namespace daic
