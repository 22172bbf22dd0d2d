#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "daic/errors.hpp"
#include "daic/generator.hpp"
#include "daic/graph.hpp"
#include "fixtures.hpp"

namespace daic {
namespace {

TEST(ParseLine, WeightedAdjacency) {
  const ParsedLine p = parse_line("3\t1:2.5 7:0.1");
  EXPECT_EQ(p.vid, 3u);
  ASSERT_EQ(p.edges.size(), 2u);
  EXPECT_EQ(p.edges[0], (Edge{1, 2.5}));
  EXPECT_EQ(p.edges[1], (Edge{7, 0.1}));
}

TEST(ParseLine, SinkVertex) {
  const ParsedLine p = parse_line("5\t");
  EXPECT_EQ(p.vid, 5u);
  EXPECT_TRUE(p.edges.empty());
}

TEST(ParseLine, UnweightedDefaultsToOne) {
  const ParsedLine p = parse_line("2\t4 9");
  EXPECT_EQ(p.vid, 2u);
  EXPECT_EQ(p.edges, (std::vector<Edge>{{4, 1.0}, {9, 1.0}}));
}

TEST(ParseLine, MalformedInputNamesTheLine) {
  for (const char* bad : {"x\t1", "3\t1:abc", "3\t-2", "-1\t2", "3\t1:"}) {
    try {
      parse_line(bad, 17);
      FAIL() << bad;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 17u) << bad;
      EXPECT_NE(std::string(e.what()).find("line 17"), std::string::npos);
    }
  }
}

TEST(ReadGraph, RejectsDuplicatesAndKeepsSinks) {
  std::istringstream dup_vid("1\t2\n1\t3\n");
  EXPECT_THROW(read_graph(dup_vid), ParseError);
  std::istringstream dup_edge("1\t2 2\n");
  EXPECT_THROW(read_graph(dup_edge), ParseError);

  std::istringstream ok("1\t2 3\n\n3\t1\n");
  const Graph g = read_graph(ok);
  EXPECT_EQ(g.vertex_count(), 3u);  // 2 appears only as a target
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.out_degree_at(g.index_of(2)), 0u);
  EXPECT_EQ(g.in_degree_at(g.index_of(1)), 1u);
}

TEST(ReadGraph, SelfLoopsAreAccepted) {
  std::istringstream in("4\t4:0.5\n");
  const Graph g = read_graph(in);
  EXPECT_EQ(g.out_edges(4).front(), (Edge{4, 0.5}));
}

TEST(Partition, ModSharding) {
  EXPECT_EQ(partition(7, 4), 3u);
  EXPECT_EQ(partition(8, 4), 0u);
  EXPECT_EQ(partition(0, 1), 0u);
  EXPECT_THROW(partition(3, 0), ConfigError);
  for (VertexId v = 0; v < 100; ++v) EXPECT_EQ(partition(v, 7), partition(v, 7));
}

TEST(GraphBuilder, RejectsNonFiniteWeightAndDuplicates) {
  GraphBuilder b;
  EXPECT_THROW(b.add_edge(1, 2, std::nan("")), ConfigError);
  b.add_edge(1, 2);
  b.add_edge(1, 2);
  EXPECT_THROW(std::move(b).build(), ConfigError);
}

TEST(Graph, TransposeAndSymmetry) {
  const Graph g = testing::edges(3, {{1, 2}, {2, 3}});
  const Graph t = g.transposed();
  EXPECT_EQ(t.out_edges(3).front().target, 2u);
  EXPECT_EQ(t.out_edges(2).front().target, 1u);
  EXPECT_FALSE(g.symmetric());
  EXPECT_TRUE(testing::random_symmetric_graph(12, 0.3, 5).symmetric());
}

TEST(WriteGraph, RoundTrip) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (bool weighted : {false, true}) {
      const Graph g = testing::random_graph(40, 0.1, seed, weighted);
      std::stringstream text;
      write_graph(text, g);
      EXPECT_EQ(read_graph(text), g);
    }
  }
  GeneratorConfig config;
  config.node_count = 500;
  config.weight_mu = 0.0;
  config.weight_sigma = 1.0;
  const Graph g = generate(config);
  std::stringstream text;
  write_graph(text, g);
  EXPECT_EQ(read_graph(text), g);
}

TEST(WriteGraph, CanonicalText) {
  GraphBuilder b;
  b.add_edge(2, 1, 0.5);
  b.add_edge(1, 3, 2.0);
  std::ostringstream out;
  write_graph(out, std::move(b).build());
  EXPECT_EQ(out.str(), "1\t3:2\n2\t1:0.5\n3\t\n");
}

TEST(Generate, SingleVertex) {
  GeneratorConfig config;
  config.node_count = 1;
  config.degree_mu = 5.0;
  const Graph g = generate(config);
  EXPECT_EQ(g.vertex_count(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(Generate, ConfigValidation) {
  GeneratorConfig config;
  config.node_count = 0;
  EXPECT_THROW(generate(config), ConfigError);
  config.node_count = 5;
  config.degree_sigma = 0.0;
  EXPECT_THROW(generate(config), ConfigError);
  config.degree_sigma = 1.0;
  config.weight_mu = 0.0;
  EXPECT_THROW(generate(config), ConfigError);
}

TEST(Generate, DeterministicNoSelfLoopsContiguousIds) {
  GeneratorConfig config;
  config.node_count = 3000;
  config.seed = 99;
  config.weight_mu = 0.4;
  config.weight_sigma = 0.8;
  const Graph a = generate(config);
  const Graph b = generate(config);
  std::ostringstream ta, tb;
  write_graph(ta, a);
  write_graph(tb, b);
  EXPECT_EQ(ta.str(), tb.str());
  EXPECT_TRUE(a.weighted());
  for (std::size_t i = 0; i < a.vertex_count(); ++i) {
    EXPECT_EQ(a.vid_at(i), i + 1);
    for (const Edge& e : a.out_edges_at(i)) {
      EXPECT_NE(e.target, a.vid_at(i));
      EXPECT_GT(e.weight, 0.0);
    }
  }
  config.seed = 100;
  std::ostringstream tc;
  write_graph(tc, generate(config));
  EXPECT_NE(ta.str(), tc.str());
}

TEST(Generate, DiscretizeRoundsHalfUpAndClamps) {
  EXPECT_EQ(discretize_degree(0.49, 10), 0u);
  EXPECT_EQ(discretize_degree(0.5, 10), 1u);
  EXPECT_EQ(discretize_degree(2.5, 10), 3u);
  EXPECT_EQ(discretize_degree(1e9, 10), 9u);
  EXPECT_EQ(discretize_degree(3.0, 1), 0u);
}

// Expected in-degree of round-half-up(lognormal) clamped to [0, n-1],
// summed over the lognormal CDF.
double expected_degree(double mu, double sigma, std::size_t n) {
  auto cdf = [&](double x) { return x <= 0 ? 0.0 : 0.5 * std::erfc(-(std::log(x) - mu) / (sigma * std::sqrt(2.0))); };
  double mean = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    mean += static_cast<double>(k) * (cdf(k + 0.5) - cdf(k - 0.5));
  }
  mean += static_cast<double>(n - 1) * (1.0 - cdf(static_cast<double>(n - 1) - 0.5));
  return mean;
}

TEST(Generate, MeanInDegreeMatchesLogNormal) {
  GeneratorConfig config;
  config.node_count = 100000;
  config.seed = 1;
  const Graph g = generate(config);
  const double mean = static_cast<double>(g.edge_count()) / static_cast<double>(g.vertex_count());
  const double expected = expected_degree(-0.5, 2.3, config.node_count);
  EXPECT_NEAR(expected, std::exp(-0.5 + 2.3 * 2.3 / 2), 0.05 * expected);
  EXPECT_NEAR(mean, expected, 0.10 * expected);
}

}  // namespace
}  // namespace daic
