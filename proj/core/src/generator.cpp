#include "daic/generator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <vector>

#include "daic/errors.hpp"
#include "daic/rng.hpp"

namespace daic {

void validate(const GeneratorConfig& config) {
  if (config.node_count == 0) throw ConfigError("node_count must be at least 1");
  if (!(config.degree_sigma > 0.0)) throw ConfigError("degree_sigma must be > 0");
  if (config.weight_mu.has_value() != config.weight_sigma.has_value()) {
    throw ConfigError("weight_mu and weight_sigma must be given together");
  }
  if (config.weight_sigma && !(*config.weight_sigma > 0.0)) {
    throw ConfigError("weight_sigma must be > 0");
  }
}

std::size_t discretize_degree(double draw, std::size_t node_count) {
  const double cap = static_cast<double>(node_count - 1);
  const double rounded = std::floor(draw + 0.5);
  if (!(rounded > 0.0)) return 0;
  return static_cast<std::size_t>(std::min(rounded, cap));
}

Graph generate(const GeneratorConfig& config) {
  validate(config);
  const std::size_t n = config.node_count;
  Rng rng(config.seed);

  GraphBuilder builder;
  for (VertexId vid = 1; vid <= n; ++vid) builder.add_vertex(vid);

  std::unordered_set<std::uint64_t> picked;
  std::vector<std::uint64_t> order;
  for (VertexId target = 1; target <= n; ++target) {
    const std::size_t degree = discretize_degree(rng.lognormal(config.degree_mu, config.degree_sigma), n);
    if (degree == 0) continue;

    // Floyd's algorithm over the n-1 candidate sources, encoded as 0..n-2.
    picked.clear();
    order.clear();
    const std::uint64_t pool = n - 1;
    for (std::uint64_t i = pool - degree; i < pool; ++i) {
      const std::uint64_t t = rng.uniform_below(i + 1);
      const std::uint64_t choice = picked.contains(t) ? i : t;
      picked.insert(choice);
      order.push_back(choice);
    }
    for (std::uint64_t code : order) {
      // Skip over the target itself so self-loops never occur.
      const VertexId source = code + 1 >= target ? code + 2 : code + 1;
      const double weight = config.weight_mu ? rng.lognormal(*config.weight_mu, *config.weight_sigma) : 1.0;
      builder.add_edge(source, target, weight);
    }
  }
  return std::move(builder).build();
}

}  // namespace daic
