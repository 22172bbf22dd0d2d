#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "daic/graph.hpp"
#include "daic/kernel.hpp"
#include "daic/transport.hpp"

namespace daic {

// One vertex's record. `index` is the vertex's position in the graph, which
// gives access to its adjacency list and per-vertex kernel constants.
template <class V>
struct StateEntry {
  VertexId vid = 0;
  std::size_t index = 0;
  V v{};
  V dv{};
  double priority = 0.0;
};

// The entries owned by one worker: every vid with partition(vid, shards) == worker.
template <class V>
struct StateTable {
  std::size_t worker = 0;
  std::size_t shards = 1;
  std::vector<StateEntry<V>> entries;
  std::unordered_map<VertexId, std::size_t> slot;
  std::size_t routing_errors = 0;

  std::size_t size() const { return entries.size(); }

  StateEntry<V>* find(VertexId vid) {
    auto it = slot.find(vid);
    return it == slot.end() ? nullptr : &entries[it->second];
  }
  const StateEntry<V>* find(VertexId vid) const {
    auto it = slot.find(vid);
    return it == slot.end() ? nullptr : &entries[it->second];
  }
};

template <class V>
StateTable<V> make_state_table(const Graph& graph, const Kernel<V>& kernel, std::size_t worker,
                               std::size_t shards) {
  StateTable<V> table;
  table.worker = worker;
  table.shards = shards;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    const VertexId vid = graph.vid_at(i);
    if (partition(vid, shards) != worker) continue;
    auto [v0, dv1] = kernel.init(VertexRef{vid, i});
    StateEntry<V> entry{vid, i, std::move(v0), std::move(dv1), 0.0};
    entry.priority = priority(entry.v, entry.dv, kernel);
    table.slot.emplace(vid, table.entries.size());
    table.entries.push_back(std::move(entry));
  }
  return table;
}

// dv ⊕= m.
template <class V>
void receive(StateEntry<V>& entry, const V& m, const Kernel<V>& kernel) {
  if (kernel.is_zero(m)) return;
  entry.dv = kernel.accumulate(entry.dv, m);
  entry.priority = priority(entry.v, entry.dv, kernel);
}

// Routes m to its entry; an unknown vid bumps routing_errors and returns false.
template <class V>
bool receive(StateTable<V>& table, const DeltaMessage<V>& m, const Kernel<V>& kernel) {
  StateEntry<V>* entry = table.find(m.dest);
  if (!entry) {
    ++table.routing_errors;
    return false;
  }
  receive(*entry, m.value, kernel);
  return true;
}

// Snapshot dv and reset it, fold the snapshot into v, and return
// g_{j,h}(snapshot) for every out-neighbour h where that is not zero. For
// idempotent ⊕ nothing is sent when v did not change, since the neighbours
// have already seen an equal or better value.
template <class V>
std::vector<DeltaMessage<V>> update(StateEntry<V>& entry, const Graph& graph, const Kernel<V>& kernel) {
  std::vector<DeltaMessage<V>> out;
  if (kernel.is_zero(entry.dv)) return out;
  V snapshot = std::move(entry.dv);
  entry.dv = kernel.zero;
  V next = kernel.accumulate(entry.v, snapshot);
  const bool changed = !ValueTraits<V>::equal(next, entry.v);
  entry.v = std::move(next);
  entry.priority = 0.0;
  if (kernel.idempotent && !changed) return out;

  const auto edges = graph.out_edges_at(entry.index);
  for (const Edge& e : edges) {
    const EdgeRef ref{entry.vid, e.target, entry.index, graph.index_of(e.target), e.weight, edges.size()};
    V m = kernel.g(ref, snapshot);
    if (kernel.is_zero(m)) continue;
    out.push_back(DeltaMessage<V>{e.target, std::move(m)});
  }
  return out;
}

}  // namespace daic
