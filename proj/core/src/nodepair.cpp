#include "daic/nodepair.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "daic/errors.hpp"

namespace daic {

VertexId NodePairGraph::pair_vid(VertexId a, VertexId b) const {
  const auto n = base_ids.size();
  const auto ra = static_cast<VertexId>(std::lower_bound(base_ids.begin(), base_ids.end(), a) - base_ids.begin());
  const auto rb = static_cast<VertexId>(std::lower_bound(base_ids.begin(), base_ids.end(), b) - base_ids.begin());
  if (ra == n || base_ids[ra] != a || rb == n || base_ids[rb] != b) {
    throw std::out_of_range("pair (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") names an unknown base vertex");
  }
  return ra * n + rb + 1;
}

std::pair<VertexId, VertexId> NodePairGraph::pair_of(VertexId pair) const {
  const auto n = base_ids.size();
  if (pair == 0 || pair > n * n) throw std::out_of_range("pair vid " + std::to_string(pair));
  return {base_ids[(pair - 1) / n], base_ids[(pair - 1) % n]};
}

NodePairGraph build_nodepair_graph(const Graph& graph, std::size_t limit) {
  const std::size_t n = graph.vertex_count();
  if (n > limit) {
    throw GuardError("node-pair graph needs " + std::to_string(n) + "^2 vertices; limit is " +
                     std::to_string(limit) + " base vertices");
  }
  NodePairGraph out;
  out.base_ids.assign(graph.vertices().begin(), graph.vertices().end());

  GraphBuilder builder;
  for (std::size_t ra = 0; ra < n; ++ra) {
    for (std::size_t rb = 0; rb < n; ++rb) {
      const VertexId from = ra * n + rb + 1;
      builder.add_vertex(from);
      for (const Edge& ac : graph.out_edges_at(ra)) {
        const std::size_t rc = graph.index_of(ac.target);
        for (const Edge& bd : graph.out_edges_at(rb)) {
          builder.add_edge(from, rc * n + graph.index_of(bd.target) + 1);
        }
      }
    }
  }
  out.graph = std::move(builder).build();
  return out;
}

}  // namespace daic
