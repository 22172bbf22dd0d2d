#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "daic/types.hpp"

namespace daic {

// Immutable directed graph in CSR form. Vertices are kept in ascending vid
// order; dense indices 0..n-1 follow that order. Safe to share across threads.
class Graph {
 public:
  Graph() = default;

  std::size_t vertex_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const VertexId> vertices() const noexcept { return ids_; }
  VertexId vid_at(std::size_t index) const { return ids_[index]; }

  bool contains(VertexId vid) const { return find(vid).has_value(); }
  std::optional<std::size_t> find(VertexId vid) const;
  // Throws std::out_of_range for an unknown vid.
  std::size_t index_of(VertexId vid) const;

  std::span<const Edge> out_edges_at(std::size_t index) const {
    return {edges_.data() + offsets_[index], edges_.data() + offsets_[index + 1]};
  }
  std::span<const Edge> out_edges(VertexId vid) const { return out_edges_at(index_of(vid)); }
  std::size_t out_degree_at(std::size_t index) const {
    return offsets_[index + 1] - offsets_[index];
  }
  std::size_t in_degree_at(std::size_t index) const { return in_degree_[index]; }

  // True when any edge weight differs from 1.0.
  bool weighted() const;
  // True when every edge i->j has a reverse edge j->i of equal weight.
  bool symmetric() const;

  Graph transposed() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.ids_ == b.ids_ && a.offsets_ == b.offsets_ && a.edges_ == b.edges_;
  }

 private:
  friend class GraphBuilder;

  void finish();

  std::vector<VertexId> ids_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Edge> edges_;
  std::vector<std::size_t> in_degree_;
  bool contiguous_ = true;
  std::unordered_map<VertexId, std::size_t> lookup_;
};

// Accumulates vertices and edges in any order. Edge targets that never get
// their own add_vertex call become sink vertices. Per-source out-edge order
// is insertion order.
class GraphBuilder {
 public:
  void add_vertex(VertexId vid);
  // Throws ConfigError for a non-finite weight.
  void add_edge(VertexId source, VertexId target, double weight = 1.0);
  // Throws ConfigError if some (source, target) pair was added twice.
  Graph build() &&;

 private:
  std::unordered_map<VertexId, std::vector<Edge>> adjacency_;
};

struct ParsedLine {
  VertexId vid;
  std::vector<Edge> edges;

  friend bool operator==(const ParsedLine&, const ParsedLine&) = default;
};

// Parses `vid<TAB>t1:w1 t2:w2 ...` or `vid<TAB>t1 t2 ...` (weights default
// to 1.0). Throws ParseError tagged with line_number.
ParsedLine parse_line(std::string_view line, std::size_t line_number = 1);

// Blank lines are skipped. A vid that appears twice, or a repeated target
// within one line, is a ParseError.
Graph read_graph(std::istream& in);
Graph load_graph(const std::filesystem::path& path);

// Canonical writer: ascending vid, one line per vertex, out-edges in stored
// order. Weights are omitted when the whole graph is unweighted; otherwise
// every edge carries `:w` in shortest round-trip form.
void write_graph(std::ostream& out, const Graph& graph);
void save_graph(const std::filesystem::path& path, const Graph& graph);

// Worker that owns `vid`: vid mod shards. Throws ConfigError for shards == 0.
std::size_t partition(VertexId vid, std::size_t shards);

std::string format_real(double value);

}  // namespace daic
