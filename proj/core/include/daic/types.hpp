#pragma once

#include <cstddef>
#include <cstdint>

namespace daic {

using VertexId = std::uint64_t;

struct Edge {
  VertexId target;
  double weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// What a kernel's edge function sees when vertex `source` sends along one out-edge.
// Indices are dense positions in the Graph the kernel was built for.
struct EdgeRef {
  VertexId source;
  VertexId target;
  std::size_t source_index;
  std::size_t target_index;
  double weight;
  std::size_t source_out_degree;
};

struct VertexRef {
  VertexId vid;
  std::size_t index;
};

}  // namespace daic
