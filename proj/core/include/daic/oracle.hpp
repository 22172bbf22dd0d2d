#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "daic/algorithms.hpp"
#include "daic/graph.hpp"
#include "daic/linear_system.hpp"

namespace daic {

// Ground-truth solvers that share no code with the kernels. Results are
// indexed like the graph they are computed on (ascending vid).

// Unreachable vertices get +inf.
std::vector<double> dijkstra(const Graph& graph, VertexId source);
std::vector<double> bellman_ford(const Graph& graph, VertexId source);

// Largest vid in each vertex's component of the undirected closure.
std::vector<double> union_find_components(const Graph& graph);

// x_j = d · Σ_{i->j} x_i / |N(i)| + (1 - d), by power iteration.
std::vector<double> pagerank_power(const Graph& graph, double d);
std::vector<double> katz_power(const Graph& graph, double beta, VertexId source);
// Authority scores for damping d on WᵀW, built here with a dense product.
std::vector<double> hits_authority_power(const Graph& graph, double d);
std::vector<double> rooted_pagerank_power(const Graph& graph, double damping, VertexId source);
std::vector<LabelVector<double>> adsorption_power(const Graph& graph, std::size_t labels, double p_cont,
                                                  double p_inj);
// Direct solve by LU with partial pivoting.
std::vector<double> jacobi_direct(const LinearSystem& sys);
// Iterates s(a,b) = C / (|I(a)| |I(b)|) Σ s(i,j) with s(a,a) = 1 until the
// largest change is below 1e-15; result is row-major over base ranks, which
// is also ascending pair-vid order.
std::vector<double> simrank_naive(const Graph& graph, double c);

using OracleValues = std::variant<std::vector<double>, std::vector<LabelVector<double>>>;

struct OracleResult {
  std::vector<VertexId> vids;
  OracleValues values;
};

// Dispatches on the algorithm. The vids are those of computation_graph(spec,
// input). Throws GuardError beyond desk scale and Error when an iterative
// solver fails to converge.
OracleResult oracle_solve(const AlgorithmSpec& spec, const Graph& input);

}  // namespace daic
