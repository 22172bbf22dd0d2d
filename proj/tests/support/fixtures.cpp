#include "fixtures.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <system_error>

#include <cmath>
#include <memory>

#include "daic/linear_system.hpp"
#include "daic/rng.hpp"

namespace daic::testing {

Graph random_graph(std::size_t n, double p, std::uint64_t seed, bool weighted) {
  Rng rng(seed);
  GraphBuilder b;
  for (VertexId i = 1; i <= n; ++i) b.add_vertex(i);
  for (VertexId i = 1; i <= n; ++i) {
    for (VertexId j = 1; j <= n; ++j) {
      if (i == j || rng.uniform01() >= p) continue;
      b.add_edge(i, j, weighted ? rng.uniform(0.5, 5.0) : 1.0);
    }
  }
  return std::move(b).build();
}

Graph random_symmetric_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  GraphBuilder b;
  for (VertexId i = 1; i <= n; ++i) b.add_vertex(i);
  for (VertexId i = 1; i <= n; ++i) {
    for (VertexId j = i + 1; j <= n; ++j) {
      if (rng.uniform01() >= p) continue;
      b.add_edge(i, j);
      b.add_edge(j, i);
    }
  }
  return std::move(b).build();
}

Graph random_dag(std::size_t n, double extra, std::uint64_t seed) {
  Rng rng(seed);
  GraphBuilder b;
  for (VertexId i = 1; i <= n; ++i) b.add_vertex(i);
  for (VertexId j = 2; j <= n; ++j) {
    std::vector<VertexId> sources{1 + rng.uniform_below(j - 1)};
    const double p = std::min(1.0, extra / static_cast<double>(j - 1));
    for (VertexId i = 1; i < j; ++i) {
      if (i != sources.front() && rng.uniform01() < p) sources.push_back(i);
    }
    for (VertexId i : sources) b.add_edge(i, j);
  }
  return std::move(b).build();
}

Graph edges(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& list) {
  GraphBuilder b;
  for (VertexId i = 1; i <= n; ++i) b.add_vertex(i);
  for (auto [s, t] : list) b.add_edge(s, t);
  return std::move(b).build();
}

Workload make_workload(Algorithm algorithm, std::size_t n, std::uint64_t seed) {
  Workload w;
  w.spec.algorithm = algorithm;
  const double p = std::min(1.0, 4.0 / static_cast<double>(n));
  switch (algorithm) {
    case Algorithm::sssp:
      w.input = random_graph(n, p, seed, true);
      w.spec.source = 1;
      break;
    case Algorithm::connected_components:
      w.input = random_symmetric_graph(n, std::min(1.0, 1.5 / static_cast<double>(n)), seed);
      break;
    case Algorithm::adsorption:
      w.input = random_graph(n, p, seed, true);
      break;
    case Algorithm::katz:
      w.input = random_graph(n, p, seed);
      w.spec.source = 1;
      break;
    case Algorithm::rooted_pagerank:
      w.input = random_graph(n, p, seed);
      w.spec.source = 1;
      w.spec.rooted_damping = 0.8;
      break;
    case Algorithm::jacobi: {
      Rng rng(seed);
      w.spec.system = std::make_shared<LinearSystem>(
          random_dominant_system(n, std::min(1.0, 5.0 / static_cast<double>(n)), rng));
      break;
    }
    case Algorithm::simrank: {
      const auto m = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
      w.input = random_graph(m, 0.3, seed);
      break;
    }
    default:
      w.input = random_graph(n, p, seed);
      break;
  }
  return w;
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto base = std::filesystem::temp_directory_path();
  for (;;) {
    path_ = base / ("daic_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    if (std::filesystem::create_directory(path_)) break;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace daic::testing
