#include "daic/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <utility>

#include "daic/errors.hpp"

namespace daic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kDenseLimit = 3000;
constexpr std::size_t kMaxIterations = 200000;

using Triplets = std::vector<Eigen::Triplet<double>>;

// x = M x + c until successive iterates differ by at most 1e-15 (relative
// to max(1, |x|)) in every component.
Eigen::VectorXd fixed_point(std::size_t n, const Triplets& m, const Eigen::VectorXd& c) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  auto converged = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
      if (std::abs(a[i] - b[i]) > 1e-15 * scale) return false;
    }
    return true;
  };
  auto step_loop = [&](auto&& apply) {
    for (std::size_t it = 0; it < kMaxIterations; ++it) {
      Eigen::VectorXd next = apply(x) + c;
      if (!next.allFinite()) throw Error("oracle iteration diverged");
      if (converged(next, x)) return next;
      x = std::move(next);
    }
    throw Error("oracle iteration did not converge");
  };
  const auto size = static_cast<Eigen::Index>(n);
  if (n <= kDenseLimit) {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(size, size);
    for (const auto& t : m) dense(t.row(), t.col()) += t.value();
    return step_loop([&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return dense * v; });
  }
  Eigen::SparseMatrix<double> sparse(size, size);
  sparse.setFromTriplets(m.begin(), m.end());
  return step_loop([&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return sparse * v; });
}

std::vector<double> to_vector(const Eigen::VectorXd& x) { return {x.data(), x.data() + x.size()}; }

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

std::vector<double> dijkstra(const Graph& graph, VertexId source) {
  const std::size_t n = graph.vertex_count();
  std::vector<double> dist(n, kInf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  const std::size_t s = graph.index_of(source);
  dist[s] = 0.0;
  heap.emplace(0.0, s);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const Edge& e : graph.out_edges_at(u)) {
      if (e.weight < 0) throw ConfigError("dijkstra needs non-negative weights");
      const std::size_t t = graph.index_of(e.target);
      if (d + e.weight < dist[t]) {
        dist[t] = d + e.weight;
        heap.emplace(dist[t], t);
      }
    }
  }
  return dist;
}

std::vector<double> bellman_ford(const Graph& graph, VertexId source) {
  const std::size_t n = graph.vertex_count();
  std::vector<double> dist(n, kInf);
  dist[graph.index_of(source)] = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (std::isinf(dist[u])) continue;
      for (const Edge& e : graph.out_edges_at(u)) {
        const std::size_t t = graph.index_of(e.target);
        if (dist[u] + e.weight < dist[t]) {
          dist[t] = dist[u] + e.weight;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return dist;
}

std::vector<double> union_find_components(const Graph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t u = 0; u < n; ++u) {
    for (const Edge& e : graph.out_edges_at(u)) {
      const std::size_t a = find(u);
      const std::size_t b = find(graph.index_of(e.target));
      if (a != b) parent[std::min(a, b)] = std::max(a, b);
    }
  }
  // Roots are always the larger index, and indices follow vid order.
  std::vector<double> out(n);
  for (std::size_t u = 0; u < n; ++u) out[u] = static_cast<double>(graph.vid_at(find(u)));
  return out;
}

std::vector<double> pagerank_power(const Graph& graph, double d) {
  const std::size_t n = graph.vertex_count();
  Triplets m;
  for (std::size_t i = 0; i < n; ++i) {
    const double share = d / static_cast<double>(graph.out_degree_at(i));
    for (const Edge& e : graph.out_edges_at(i)) m.emplace_back(idx(graph.index_of(e.target)), idx(i), share);
  }
  return to_vector(fixed_point(n, m, Eigen::VectorXd::Constant(idx(n), 1.0 - d)));
}

std::vector<double> katz_power(const Graph& graph, double beta, VertexId source) {
  const std::size_t n = graph.vertex_count();
  Triplets m;
  for (std::size_t i = 0; i < n; ++i) {
    for (const Edge& e : graph.out_edges_at(i)) {
      m.emplace_back(idx(graph.index_of(e.target)), idx(i), beta * e.weight);
    }
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(idx(n));
  c[idx(graph.index_of(source))] = 1.0;
  return to_vector(fixed_point(n, m, c));
}

std::vector<double> hits_authority_power(const Graph& graph, double d) {
  const std::size_t n = graph.vertex_count();
  if (n > kDenseLimit) throw GuardError("hits oracle is dense; graph too large");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(idx(n), idx(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (const Edge& e : graph.out_edges_at(k)) w(idx(k), idx(graph.index_of(e.target))) = e.weight;
  }
  const Eigen::MatrixXd a = w.transpose() * w;
  Triplets m;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0.0) m.emplace_back(j, i, d * a(i, j));
    }
  }
  return to_vector(fixed_point(n, m, Eigen::VectorXd::Ones(idx(n))));
}

std::vector<double> rooted_pagerank_power(const Graph& graph, double damping, VertexId source) {
  const std::size_t n = graph.vertex_count();
  Triplets m;
  for (std::size_t j = 0; j < n; ++j) {
    double total = 0.0;
    for (const Edge& e : graph.out_edges_at(j)) total += e.weight;
    // x_j collects damping · P(j, i) · x_i from every out-neighbour i of j.
    for (const Edge& e : graph.out_edges_at(j)) {
      m.emplace_back(idx(j), idx(graph.index_of(e.target)), damping * e.weight / total);
    }
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(idx(n));
  c[idx(graph.index_of(source))] = 1.0;
  return to_vector(fixed_point(n, m, c));
}

std::vector<LabelVector<double>> adsorption_power(const Graph& graph, std::size_t labels, double p_cont,
                                                  double p_inj) {
  const std::size_t n = graph.vertex_count();
  std::vector<double> in_weight(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Edge& e : graph.out_edges_at(i)) in_weight[graph.index_of(e.target)] += e.weight;
  }
  Triplets m;
  for (std::size_t i = 0; i < n; ++i) {
    for (const Edge& e : graph.out_edges_at(i)) {
      const std::size_t j = graph.index_of(e.target);
      m.emplace_back(idx(j), idx(i), p_cont * e.weight / in_weight[j]);
    }
  }
  std::vector<LabelVector<double>> out(n, LabelVector<double>(labels, 0.0));
  for (std::size_t label = 0; label < labels; ++label) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(idx(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (graph.vid_at(j) % labels == label) c[idx(j)] = p_inj;
    }
    const Eigen::VectorXd x = fixed_point(n, m, c);
    for (std::size_t j = 0; j < n; ++j) out[j][label] = x[idx(j)];
  }
  return out;
}

std::vector<double> jacobi_direct(const LinearSystem& sys) {
  if (sys.n > kDenseLimit) throw GuardError("direct solve is dense; system too large");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(idx(sys.n), idx(sys.n));
  for (const auto& e : sys.entries) a(idx(e.row - 1), idx(e.col - 1)) += e.value;
  Eigen::VectorXd b(idx(sys.n));
  for (std::size_t i = 0; i < sys.n; ++i) b[idx(i)] = sys.b[i];
  return to_vector(a.partialPivLu().solve(b));
}

std::vector<double> simrank_naive(const Graph& graph, double c) {
  const std::size_t n = graph.vertex_count();
  if (n > 200) throw GuardError("naive simrank is O(n^4) per sweep; graph too large");
  std::vector<std::vector<std::size_t>> in(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Edge& e : graph.out_edges_at(i)) in[graph.index_of(e.target)].push_back(i);
  }
  std::vector<double> s(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) s[a * n + a] = 1.0;
  for (std::size_t it = 0; it < kMaxIterations; ++it) {
    std::vector<double> next(n * n, 0.0);
    double change = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        double value = 1.0;
        if (a != b) {
          value = 0.0;
          if (!in[a].empty() && !in[b].empty()) {
            double sum = 0.0;
            for (std::size_t i : in[a]) {
              for (std::size_t j : in[b]) sum += s[i * n + j];
            }
            value = c * sum / static_cast<double>(in[a].size() * in[b].size());
          }
        }
        next[a * n + b] = value;
        change = std::max(change, std::abs(value - s[a * n + b]));
      }
    }
    s = std::move(next);
    if (change <= 1e-15) return s;
  }
  throw Error("simrank oracle did not converge");
}

OracleResult oracle_solve(const AlgorithmSpec& spec, const Graph& input) {
  validate(spec, input);
  OracleResult out;
  auto input_vids = [&] { return std::vector<VertexId>(input.vertices().begin(), input.vertices().end()); };
  switch (spec.algorithm) {
    case Algorithm::pagerank:
      out.vids = input_vids();
      out.values = pagerank_power(input, spec.damping);
      break;
    case Algorithm::sssp:
      out.vids = input_vids();
      out.values = dijkstra(input, *spec.source);
      break;
    case Algorithm::connected_components:
      if (!input.symmetric()) throw ConfigError("components oracle needs a symmetric graph");
      out.vids = input_vids();
      out.values = union_find_components(input);
      break;
    case Algorithm::katz:
      out.vids = input_vids();
      out.values = katz_power(input, spec.beta, *spec.source);
      break;
    case Algorithm::hits_authority: {
      out.vids = input_vids();
      const double d = hits_damping(spec, computation_graph(spec, input));
      out.values = hits_authority_power(input, d);
      break;
    }
    case Algorithm::rooted_pagerank:
      out.vids = input_vids();
      out.values = rooted_pagerank_power(input, spec.rooted_damping, *spec.source);
      break;
    case Algorithm::adsorption:
      out.vids = input_vids();
      out.values = adsorption_power(input, spec.labels, spec.p_cont, spec.p_inj);
      break;
    case Algorithm::jacobi:
      for (std::size_t j = 1; j <= spec.system->n; ++j) out.vids.push_back(j);
      out.values = jacobi_direct(*spec.system);
      break;
    case Algorithm::simrank: {
      const std::size_t n = input.vertex_count();
      for (std::size_t p = 1; p <= n * n; ++p) out.vids.push_back(p);
      out.values = simrank_naive(input, spec.simrank_c);
      break;
    }
  }
  return out;
}

}  // namespace daic
