#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "daic/graph.hpp"
#include "daic/kernel.hpp"
#include "daic/linear_system.hpp"
#include "daic/nodepair.hpp"
#include "daic/rational.hpp"
#include "daic/value.hpp"

namespace daic {

enum class Algorithm {
  pagerank,
  sssp,
  connected_components,
  adsorption,
  hits_authority,
  katz,
  jacobi,
  simrank,
  rooted_pagerank,
};

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::pagerank, Algorithm::sssp,    Algorithm::connected_components,
    Algorithm::adsorption, Algorithm::hits_authority, Algorithm::katz,
    Algorithm::jacobi,   Algorithm::simrank, Algorithm::rooted_pagerank,
};

std::string_view to_string(Algorithm a);
// Accepts the names above plus "cc" and "hits". Throws ConfigError.
Algorithm parse_algorithm(std::string_view name);

// Kernels whose accumulate is min or max.
bool is_selective(Algorithm a);

struct AlgorithmSpec {
  Algorithm algorithm = Algorithm::pagerank;

  double damping = 0.8;                // pagerank d
  std::optional<double> hits_damping;  // absent: 0.5 / (max column sum of WᵀW)
  double beta = 0.05;                  // katz
  double simrank_c = 0.8;
  double rooted_damping = 1.0;         // 1.0 is the plain A(j,i)·x form
  std::optional<VertexId> source;      // sssp, katz, rooted_pagerank
  std::size_t labels = 3;              // adsorption label count
  double p_cont = 0.7;
  double p_inj = 0.3;
  std::shared_ptr<const LinearSystem> system;  // jacobi
  std::size_t nodepair_limit = kDefaultNodePairLimit;
};

// Parameter ranges, required source / system, source present in the input
// graph. Throws ConfigError.
void validate(const AlgorithmSpec& spec, const Graph& input);

// The graph the kernel actually runs on:
//   hits_authority   WᵀW, diagonal included
//   jacobi           jacobi_to_graph(system); the input graph is ignored
//   simrank          node-pair graph G²
//   rooted_pagerank  transpose of the row-normalised input
//   adsorption       input with weights normalised per target column
//   others           the input itself
Graph computation_graph(const AlgorithmSpec& spec, const Graph& input);

// Damping actually used by hits_authority on this computation graph.
double hits_damping(const AlgorithmSpec& spec, const Graph& computation);

// Kernel over scalar S (double or Rational) for every algorithm except
// adsorption. sssp and connected_components are double only. `graph` is the
// computation graph.
template <class S>
Kernel<S> build_scalar_kernel(const AlgorithmSpec& spec, const Graph& graph);

template <class S>
Kernel<LabelVector<S>> build_adsorption_kernel(const AlgorithmSpec& spec, const Graph& graph);

// ⊕ = +, g = identity, v0 = 0, dv1 = 1. Σv at the fixed point counts paths.
template <class S>
Kernel<S> counting_kernel();

extern template Kernel<double> build_scalar_kernel<double>(const AlgorithmSpec&, const Graph&);
extern template Kernel<Rational> build_scalar_kernel<Rational>(const AlgorithmSpec&, const Graph&);
extern template Kernel<LabelVector<double>> build_adsorption_kernel<double>(const AlgorithmSpec&,
                                                                            const Graph&);
extern template Kernel<LabelVector<Rational>> build_adsorption_kernel<Rational>(
    const AlgorithmSpec&, const Graph&);
extern template Kernel<double> counting_kernel<double>();
extern template Kernel<Rational> counting_kernel<Rational>();

using AnyKernel = std::variant<Kernel<double>, Kernel<LabelVector<double>>>;

AnyKernel build_kernel(const AlgorithmSpec& spec, const Graph& computation);

// Parameter rendering used in snapshot metadata and logs.
std::string describe(const AlgorithmSpec& spec);

}  // namespace daic
