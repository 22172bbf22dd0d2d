#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "daic/algorithms.hpp"
#include "daic/errors.hpp"
#include "daic/generator.hpp"
#include "daic/oracle.hpp"
#include "daic/rational.hpp"
#include "daic/sim.hpp"
#include "fixtures.hpp"

namespace daic {
namespace {

Kernel<double> pagerank(const Graph& g) { return build_scalar_kernel<double>(AlgorithmSpec{}, g); }

Kernel<double> sssp(const Graph& g) {
  AlgorithmSpec spec;
  spec.algorithm = Algorithm::sssp;
  spec.source = 1;
  return build_scalar_kernel<double>(spec, g);
}

TEST(RunSequence, EmptySubsetLeavesStateUnchanged) {
  const Graph g = testing::random_graph(8, 0.3, 1);
  const auto k = pagerank(g);
  const auto before = run_sequence_state(g, k, synchronous_sequence(g, 2));
  UpdateSequence seq = synchronous_sequence(g, 2);
  seq.push_back({});
  const auto after = run_sequence_state(g, k, seq);
  EXPECT_EQ(before.v, after.v);
  EXPECT_EQ(before.dv, after.dv);
}

TEST(RunSequence, MessagesLandAfterTheSubset) {
  // 1 -> 2: with both in one subset, 2 updates before 1's message arrives.
  const Graph g = testing::edges(2, {{1, 2}});
  const auto k = counting_kernel<double>();
  const auto together = run_sequence(g, k, UpdateSequence{{1, 2}});
  EXPECT_EQ(together, (std::vector<double>{1, 1}));
  const auto apart = run_sequence(g, k, UpdateSequence{{1}, {2}});
  EXPECT_EQ(apart, (std::vector<double>{1, 2}));
}

TEST(PathSum, ZeroHopsIsInitialState) {
  const Graph g = testing::random_graph(5, 0.4, 2);
  const auto k = pagerank(g);
  for (VertexId j : g.vertices()) EXPECT_NEAR(path_sum(g, k, j, 0), 0.2, 1e-15);
}

TEST(PathSum, TwoNodeOneHop) {
  const Graph g = testing::edges(2, {{1, 2}});
  const auto k = build_scalar_kernel<Rational>(AlgorithmSpec{}, g);
  EXPECT_EQ(path_sum(g, k, 2, 1), Rational(9, 25));
  EXPECT_NEAR(path_sum(g, pagerank(g), 2, 1), 0.36, 1e-15);
}

TEST(PathSum, EqualsSynchronousSequenceExactly) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Graph g = testing::random_graph(5, 0.4, seed);
    const auto k = build_scalar_kernel<Rational>(AlgorithmSpec{}, g);
    for (std::size_t steps = 0; steps <= 3; ++steps) {
      const auto s = run_sequence_state(g, k, synchronous_sequence(g, steps));
      for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        EXPECT_EQ(path_sum(g, k, g.vid_at(i), steps), Rational(s.v[i] + s.dv[i])) << seed << "/" << steps;
      }
    }
  }
}

TEST(PathSum, Guard) {
  const Graph big = testing::random_graph(9, 0.2, 1);
  EXPECT_THROW(path_sum(big, pagerank(big), 1, 1), GuardError);
  const Graph small = testing::random_graph(4, 0.2, 1);
  EXPECT_THROW(path_sum(small, pagerank(small), 1, 6), GuardError);
  EXPECT_NO_THROW(path_sum(big, pagerank(big), 1, 1, PathSumLimits{16, 5}));
}

TEST(TraditionalIterate, MatchesTextbookPowerIterationEveryStep) {
  const Graph g = testing::random_graph(30, 0.1, 3);
  const auto k = pagerank(g);
  std::vector<double> x(g.vertex_count(), 0.0);
  for (std::size_t step = 0; step <= 25; ++step) {
    EXPECT_LE(testing::l1(traditional_iterate(g, k, step), x), 1e-12) << step;
    std::vector<double> next(g.vertex_count(), 0.2);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      for (const Edge& e : g.out_edges_at(i)) {
        next[g.index_of(e.target)] += 0.8 * x[i] / static_cast<double>(g.out_degree_at(i));
      }
    }
    x = next;
  }
}

TEST(TraditionalIterate, SsspReachesBellmanFord) {
  const Graph g = testing::random_graph(25, 0.15, 4, true);
  const auto k = sssp(g);
  EXPECT_EQ(traditional_iterate(g, k, g.vertex_count()), bellman_ford(g, 1));
  const auto v0 = traditional_iterate(g, k, 0);
  EXPECT_TRUE(std::all_of(v0.begin(), v0.end(), [](double x) { return std::isinf(x); }));
}

TEST(Theorem2, ImmediateDeliveryIsAtLeastAsClose) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = testing::random_graph(30, 0.1, seed, true);
    for (int which = 0; which < 2; ++which) {
      const auto k = which == 0 ? pagerank(g) : sssp(g);
      const auto fixed = which == 0 ? pagerank_power(g, 0.8) : dijkstra(g, 1);
      for (std::size_t passes = 1; passes <= 8; ++passes) {
        const auto sync = run_sequence(g, k, synchronous_sequence(g, passes));
        const auto rr = run_sequence(g, k, round_robin_sequence(g, passes));
        for (std::size_t j = 0; j < g.vertex_count(); ++j) {
          const double a = ValueTraits<double>::distance(fixed[j], rr[j]);
          const double b = ValueTraits<double>::distance(fixed[j], sync[j]);
          EXPECT_LE(a, b + 1e-12) << "seed " << seed << " pass " << passes << " vertex " << j;
        }
      }
    }
  }
}

TEST(RunPolicy, PriorityArgmaxLeavesNoDeltaBehind) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = testing::random_graph(40, 0.08, seed, true);
    const auto k = sssp(g);
    const auto s = run_policy(g, k, Policy::priority, [](double, std::uint64_t) { return false; });
    for (double d : s.dv) EXPECT_TRUE(k.is_zero(d));
    EXPECT_EQ(s.v, dijkstra(g, 1));
  }
}

TEST(RunPolicy, SingleWorkerUpdateOrdering) {
  std::vector<std::uint64_t> sync, rr, pri;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorConfig gc;
    gc.node_count = 3000;
    gc.seed = seed;
    const Graph g = generate(gc);
    const auto k = pagerank(g);
    const auto exact = pagerank_power(g, 0.8);
    double target = 0.0;
    for (double x : exact) target += x;
    const double threshold = 0.001 * static_cast<double>(g.vertex_count());
    const auto stop = [&](double progress, std::uint64_t) { return std::abs(target - progress) < threshold; };
    PolicyOptions opts;
    opts.queue_fraction = 0.01;
    sync.push_back(run_policy(g, k, Policy::synchronous, stop).updates);
    rr.push_back(run_policy(g, k, Policy::round_robin, stop).updates);
    pri.push_back(run_policy(g, k, Policy::priority, stop, opts).updates);
  }
  auto median = [](std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    return (v[4] + v[5]) / 2;
  };
  EXPECT_LE(median(pri), median(rr));
  EXPECT_LE(median(rr), median(sync));
}

}  // namespace
}  // namespace daic
