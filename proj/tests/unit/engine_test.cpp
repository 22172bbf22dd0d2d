#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "daic/algorithms.hpp"
#include "daic/engine.hpp"
#include "daic/errors.hpp"
#include "daic/generator.hpp"
#include "daic/linear_system.hpp"
#include "daic/oracle.hpp"
#include "daic/rng.hpp"
#include "daic/sim.hpp"
#include "fixtures.hpp"

namespace daic {
namespace {

using namespace std::chrono_literals;

constexpr Mode kModes[] = {Mode::sync, Mode::async_rr, Mode::async_pri};

EngineConfig config_for(Mode mode, std::size_t workers, double threshold = 0.0) {
  EngineConfig c;
  c.mode = mode;
  c.workers = workers;
  c.term_threshold = threshold;
  c.term_check_interval = 2ms;
  c.flush_timeout = 1ms;
  return c;
}

TEST(EngineConfig, Validation) {
  EngineConfig c;
  c.workers = 0;
  EXPECT_THROW(validate(c), ConfigError);
  c.workers = 2;
  c.queue_fraction = 0.0;
  EXPECT_THROW(validate(c), ConfigError);
  c.queue_fraction = 1.5;
  EXPECT_THROW(validate(c), ConfigError);
  c.queue_fraction = 1.0;
  c.term_threshold = -1.0;
  EXPECT_THROW(validate(c), ConfigError);
  c.term_threshold = 0.0;
  c.checkpoint_interval = 10ms;
  EXPECT_THROW(validate(c), ConfigError);  // no directory
  EXPECT_EQ(parse_mode("rr"), Mode::async_rr);
  EXPECT_EQ(parse_mode("async_pri"), Mode::async_pri);
  EXPECT_EQ(parse_mode("sync"), Mode::sync);
  EXPECT_THROW(parse_mode("bsp"), ConfigError);
}

TEST(Engine, PageRankThreeCycleEveryMode) {
  const Graph g = testing::edges(3, {{1, 2}, {2, 3}, {3, 1}});
  const auto k = build_scalar_kernel<double>(AlgorithmSpec{}, g);
  for (Mode mode : kModes) {
    for (std::size_t workers : {1, 2, 3}) {
      auto c = config_for(mode, workers, 1e-10);
      c.min_updates_per_check = 3;
      const auto r = run(g, k, c);
      EXPECT_TRUE(r.stats.converged) << to_string(mode) << " x" << workers;
      for (double x : r.v) EXPECT_NEAR(x, 1.0, 1e-6) << to_string(mode) << " x" << workers;
      EXPECT_EQ(r.stats.routing_errors, 0u);
    }
  }
}

TEST(Engine, SsspChainEveryMode) {
  GraphBuilder b;
  b.add_edge(1, 2, 2.5);
  b.add_edge(2, 3, 1.0);
  const Graph g = std::move(b).build();
  AlgorithmSpec spec;
  spec.algorithm = Algorithm::sssp;
  spec.source = 1;
  const auto k = build_scalar_kernel<double>(spec, g);
  for (Mode mode : kModes) {
    for (std::size_t workers : {1, 2, 4}) {
      const auto r = run(g, k, config_for(mode, workers));
      EXPECT_TRUE(r.stats.converged);
      EXPECT_EQ(r.v, (std::vector<double>{0.0, 2.5, 3.5})) << to_string(mode) << " x" << workers;
    }
  }
}

TEST(Engine, AsyncMatchesSyncOnGeneratedGraph) {
  GeneratorConfig gc;
  gc.node_count = 10000;
  gc.seed = 5;
  const Graph g = generate(gc);
  const auto k = build_scalar_kernel<double>(AlgorithmSpec{}, g);
  auto sync_config = config_for(Mode::sync, 4, 1e-9);
  const auto reference = run(g, k, sync_config);
  ASSERT_TRUE(reference.stats.converged);
  for (Mode mode : {Mode::async_rr, Mode::async_pri}) {
    auto c = config_for(mode, 4, 1e-9);
    c.min_updates_per_check = g.vertex_count();
    const auto r = run(g, k, c);
    EXPECT_TRUE(r.stats.converged);
    EXPECT_LE(testing::l1(r.v, reference.v), 1e-4) << to_string(mode);
  }
}

TEST(Engine, DeltaThresholdStopsNearReferenceStop) {
  GeneratorConfig gc;
  gc.node_count = 100000;
  gc.seed = 1;
  const Graph g = generate(gc);
  const auto k = build_scalar_kernel<double>(AlgorithmSpec{}, g);
  const double threshold = 0.001 * static_cast<double>(g.vertex_count());
  const auto exact = pagerank_power(g, 0.8);
  for (Mode mode : {Mode::sync, Mode::async_rr, Mode::async_pri}) {
    auto by_delta = config_for(mode, 4, threshold);
    auto by_reference = by_delta;
    by_reference.reference_progress = std::accumulate(exact.begin(), exact.end(), 0.0);
    const auto a = run(g, k, by_delta);
    const auto b = run(g, k, by_reference);
    if (mode == Mode::sync) {
      // A superstep delta below the threshold still leaves a geometric tail
      // of about d / (1 - d) times that delta.
      EXPECT_LE(testing::l1(a.v, exact), 0.8 / 0.2 * threshold);
    } else {
      EXPECT_LE(testing::l1(a.v, b.v), 2 * threshold) << to_string(mode);
    }
    EXPECT_LE(testing::l1(b.v, exact), threshold) << to_string(mode);
  }
}

TEST(Engine, DeltaCriterionDoesNotCancelOnSignedValues) {
  Rng rng(12);
  AlgorithmSpec spec;
  spec.algorithm = Algorithm::jacobi;
  spec.system = std::make_shared<LinearSystem>(random_dominant_system(300, 0.02, rng));
  const Graph g = computation_graph(spec, Graph{});
  const auto k = build_scalar_kernel<double>(spec, g);
  const auto exact = jacobi_direct(*spec.system);
  const double threshold = 0.001 * static_cast<double>(g.vertex_count());
  for (Mode mode : kModes) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto c = config_for(mode, 3, threshold);
      c.seed = seed;
      const auto r = run(g, k, c);
      EXPECT_TRUE(r.stats.converged);
      EXPECT_LE(testing::l1(r.v, exact), threshold) << to_string(mode);
    }
  }
}

TEST(Engine, CountingKernelOnDagIsExact) {
  const Graph g = testing::random_dag(300, 1.0, 3);
  std::vector<double> paths(g.vertex_count(), 1.0);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    for (const Edge& e : g.out_edges_at(i)) paths[g.index_of(e.target)] += paths[i];
  }
  const auto k = counting_kernel<double>();
  for (Mode mode : kModes) {
    const auto r = run(g, k, config_for(mode, 4));
    EXPECT_TRUE(r.stats.converged);
    EXPECT_EQ(r.v, paths) << to_string(mode);
  }
}

TEST(Engine, SyncWithOneWorkerMatchesSimulator) {
  const Graph g = testing::random_graph(40, 0.1, 8);
  const auto k = build_scalar_kernel<double>(AlgorithmSpec{}, g);
  auto c = config_for(Mode::sync, 1);
  c.max_updates = 40 * 12;  // guard trips after the superstep that crosses it
  const auto r = run(g, k, c);
  EXPECT_TRUE(r.stats.guard_tripped);
  const auto s = run_sequence_state(g, k, synchronous_sequence(g, r.stats.supersteps));
  EXPECT_EQ(r.v, s.v);
  EXPECT_EQ(r.dv, s.dv);
  EXPECT_EQ(r.stats.updates, s.updates);
  EXPECT_EQ(r.stats.messages, s.messages);
}

TEST(Engine, SyncIsReproducible) {
  const Graph g = testing::random_graph(200, 0.03, 2);
  const auto k = build_scalar_kernel<double>(AlgorithmSpec{}, g);
  const auto a = run(g, k, config_for(Mode::sync, 1, 1e-6));
  const auto b = run(g, k, config_for(Mode::sync, 1, 1e-6));
  EXPECT_EQ(a.v, b.v);
  EXPECT_EQ(a.stats.updates, b.stats.updates);
  // Several workers: same supersteps, sums may associate differently.
  const auto c = run(g, k, config_for(Mode::sync, 3, 1e-6));
  EXPECT_EQ(c.stats.supersteps, a.stats.supersteps);
  EXPECT_LE(testing::l1(c.v, a.v), 1e-9);
}

TEST(Engine, DivergenceIsReported) {
  const Graph g = testing::edges(3, {{1, 2}, {2, 3}, {3, 1}});
  AlgorithmSpec spec;
  spec.algorithm = Algorithm::katz;
  spec.beta = 2.0;
  spec.source = 1;
  const auto k = build_scalar_kernel<double>(spec, g);
  for (Mode mode : kModes) {
    const auto r = run(g, k, config_for(mode, 2));
    EXPECT_FALSE(r.stats.converged) << to_string(mode);
    EXPECT_TRUE(r.stats.diverged || r.stats.guard_tripped) << to_string(mode);
  }
}

TEST(Engine, UpdateGuardTrips) {
  const Graph g = testing::edges(3, {{1, 2}, {2, 3}, {3, 1}});
  const auto k = build_scalar_kernel<double>(AlgorithmSpec{}, g);
  for (Mode mode : kModes) {
    auto c = config_for(mode, 1);
    c.max_updates = 1000;
    const auto r = run(g, k, c);
    EXPECT_FALSE(r.stats.converged);
    EXPECT_TRUE(r.stats.guard_tripped) << to_string(mode);
  }
}

TEST(Engine, ProgressSamplesAreMonotone) {
  GeneratorConfig gc;
  gc.node_count = 5000;
  gc.seed = 2;
  const Graph g = generate(gc);
  const auto k = build_scalar_kernel<double>(AlgorithmSpec{}, g);
  for (Mode mode : kModes) {
    auto c = config_for(mode, 4, 0.001 * 5000);
    c.term_check_interval = 1ms;
    const auto r = run(g, k, c);
    ASSERT_GE(r.stats.samples.size(), 2u);
    EXPECT_TRUE(samples_monotone(r.stats.samples, k.direction, 1e-12)) << to_string(mode);
    for (std::size_t i = 1; i < r.stats.samples.size(); ++i) {
      EXPECT_GE(r.stats.samples[i].updates, r.stats.samples[i - 1].updates);
    }
  }
}

TEST(Engine, AggregationHappensAcrossWorkers) {
  GeneratorConfig gc;
  gc.node_count = 5000;
  const Graph g = generate(gc);
  const auto k = build_scalar_kernel<double>(AlgorithmSpec{}, g);
  for (Mode mode : kModes) {
    const auto r = run(g, k, config_for(mode, 4, 0.001 * 5000));
    EXPECT_GT(r.stats.aggregated_away, 0u) << to_string(mode);
    EXPECT_GT(r.stats.remote_messages, 0u);
    EXPECT_LE(r.stats.remote_messages, r.stats.messages);
  }
}

TEST(Engine, LabelVectorKernelRuns) {
  const auto w = testing::make_workload(Algorithm::adsorption, 60, 4);
  const Graph g = computation_graph(w.spec, w.input);
  const auto k = build_adsorption_kernel<double>(w.spec, g);
  const auto expected = adsorption_power(w.input, w.spec.labels, w.spec.p_cont, w.spec.p_inj);
  for (Mode mode : kModes) {
    auto c = config_for(mode, 3, 1e-10);
    c.reference_progress = total_progress(expected, k);
    const auto r = run(g, k, c);
    EXPECT_TRUE(r.stats.converged);
    EXPECT_LE(testing::l1(r.v, expected), 1e-8) << to_string(mode);
  }
}

TEST(Engine, StartStateMustMatchGraph) {
  const Graph g = testing::edges(3, {{1, 2}});
  const auto k = build_scalar_kernel<double>(AlgorithmSpec{}, g);
  StartState<double> start{{0.0}, {0.0}};
  EXPECT_THROW(run(g, k, EngineConfig{}, &start), ConfigError);
}

}  // namespace
}  // namespace daic
