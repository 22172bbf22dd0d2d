#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "daic/algorithms.hpp"
#include "daic/graph.hpp"
#include "daic/kernel.hpp"
#include "daic/value.hpp"

namespace daic::testing {

// Each ordered pair (i, j), i != j, is an edge with probability p. Vids 1..n.
// Weighted graphs draw weights uniform in [0.5, 5).
Graph random_graph(std::size_t n, double p, std::uint64_t seed, bool weighted = false);

// Every edge also appears reversed with the same weight.
Graph random_symmetric_graph(std::size_t n, double p, std::uint64_t seed);

// Edges only go from lower to higher vid; every vertex but the first gets at
// least one in-edge from a random earlier vertex, plus `extra` more on average.
Graph random_dag(std::size_t n, double extra, std::uint64_t seed);

// Graph from an edge list, vids taken from the edges plus 1..n.
Graph edges(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& list);

struct Workload {
  AlgorithmSpec spec;
  Graph input;
};

// A small random input for each algorithm. SimRank gets a base graph of
// floor(sqrt(n)) vertices so its node-pair graph has at most n; Jacobi gets
// an n-unknown diagonally dominant system; rooted PageRank uses damping 0.8.
Workload make_workload(Algorithm algorithm, std::size_t n, std::uint64_t seed);

template <class V>
double l1(const std::vector<V>& a, const std::vector<V>& b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += ValueTraits<V>::distance(a[i], b[i]);
  return total;
}

// Unique empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace daic::testing
