#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "daic/graph.hpp"

namespace daic {

// Synthetic graph with log-normal in-degrees. Vertex ids run 1..node_count.
struct GeneratorConfig {
  std::size_t node_count = 1;
  double degree_mu = -0.5;
  double degree_sigma = 2.3;
  std::optional<double> weight_mu;
  std::optional<double> weight_sigma;
  std::uint64_t seed = 1;
};

// Throws ConfigError on node_count == 0, non-positive sigma, or a weight
// distribution given with only one of its two parameters.
void validate(const GeneratorConfig& config);

// For each vertex j in order 1..n: draw its in-degree from
// lognormal(degree_mu, degree_sigma), round half up, clamp to [0, n-1]; pick
// that many distinct sources from V \ {j} uniformly (Floyd's sampling); if a
// weight distribution is configured, draw one lognormal weight per new edge.
// Same config and seed give an identical graph.
Graph generate(const GeneratorConfig& config);

// Rounded and clamped in-degree for one log-normal draw.
std::size_t discretize_degree(double draw, std::size_t node_count);

}  // namespace daic
