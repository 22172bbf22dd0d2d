#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "daic/graph.hpp"

namespace daic {

// G² for SimRank: vertex (a, b) for every ordered pair of base vertices, and
// an edge (a,b) -> (c,d) whenever a->c and b->d are both base edges.
//
// Pairs are numbered through base ranks: if a and b are the r_a-th and r_b-th
// smallest base vids (1-based), the pair vid is (r_a - 1) * n + r_b. For base
// ids 1..n this is (a - 1) * n + b.
struct NodePairGraph {
  Graph graph;
  std::vector<VertexId> base_ids;

  std::size_t base_count() const { return base_ids.size(); }
  VertexId pair_vid(VertexId a, VertexId b) const;
  std::pair<VertexId, VertexId> pair_of(VertexId pair) const;
};

inline constexpr std::size_t kDefaultNodePairLimit = 2000;

// Throws GuardError when the base graph has more than `limit` vertices.
NodePairGraph build_nodepair_graph(const Graph& graph, std::size_t limit = kDefaultNodePairLimit);

// Whether a pair vid of an n-vertex base graph names a diagonal pair (a, a).
inline bool is_diagonal_pair(VertexId pair, std::size_t n) {
  return (pair - 1) / n == (pair - 1) % n;
}

}  // namespace daic
