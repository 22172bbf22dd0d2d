#include <gtest/gtest.h>

#include <cmath>

#include "daic/algorithms.hpp"
#include "daic/conditions.hpp"
#include "daic/kernel.hpp"
#include "daic/rational.hpp"
#include "fixtures.hpp"

namespace daic {
namespace {

Kernel<double> pagerank(const Graph& g) {
  AlgorithmSpec spec;
  return build_scalar_kernel<double>(spec, g);
}

Kernel<double> sssp(const Graph& g) {
  AlgorithmSpec spec;
  spec.algorithm = Algorithm::sssp;
  spec.source = 1;
  return build_scalar_kernel<double>(spec, g);
}

// g(x) = x² over ⊕ = +: violates distributivity.
Kernel<double> squaring(const Graph& g) {
  Kernel<double> k = pagerank(g);
  k.name = "squaring";
  k.g = [](const EdgeRef&, const double& x) { return x * x; };
  return k;
}

TEST(PriorityDefault, Examples) {
  const Graph g = testing::edges(2, {{1, 2}});
  EXPECT_DOUBLE_EQ(priority_default(0.4, 0.3, pagerank(g)), 0.3);
  EXPECT_DOUBLE_EQ(priority_default(5.0, 3.0, sssp(g)), 2.0);
  EXPECT_EQ(priority(0.7, 0.0, pagerank(g)), 0.0);
  EXPECT_EQ(priority(5.0, HUGE_VAL, sssp(g)), 0.0);
}

TEST(PriorityDefault, ZeroExactlyWhenProgressUnchanged) {
  const Graph g = testing::edges(2, {{1, 2}});
  const auto k = sssp(g);
  EXPECT_EQ(priority_default(3.0, 7.0, k), 0.0);  // min(3, 7) = 3
  EXPECT_GT(priority_default(7.0, 3.0, k), 0.0);
}

TEST(CheckConditions, PageRankExhaustiveOnFiveNodesWithRationals) {
  const Graph g = testing::edges(5, {{1, 2}, {2, 3}, {3, 1}, {3, 4}, {4, 5}, {5, 1}, {2, 5}});
  AlgorithmSpec spec;
  const auto k = build_scalar_kernel<Rational>(spec, g);
  const ConditionReport report = check_conditions(k, g, 2000, 0.0);
  EXPECT_TRUE(report.ok()) << render(report);
}

TEST(CheckConditions, SsspAllTrue) {
  const Graph g = testing::random_graph(30, 0.1, 4, true);
  const ConditionReport report = check_conditions(sssp(g), g, 10000, 1e-9);
  EXPECT_TRUE(report.ok()) << render(report);
}

TEST(CheckConditions, BrokenKernelFailsWithWitness) {
  const Graph g = testing::random_graph(20, 0.2, 1);
  const ConditionReport report = check_conditions(squaring(g), g, 100, 1e-9);
  EXPECT_FALSE(report.distributive_ok);
  EXPECT_TRUE(report.commutative_ok);
  EXPECT_TRUE(report.associative_ok);
  EXPECT_TRUE(report.identity_ok);
  ASSERT_FALSE(report.counterexamples.empty());
  EXPECT_EQ(report.counterexamples.front().condition, "distributive");
  EXPECT_FALSE(report.counterexamples.front().inputs.empty());
  EXPECT_NE(render(report).find("distributive FAILED"), std::string::npos);
}

TEST(CheckConditions, WrongInitializationIsCaught) {
  const Graph g = testing::random_graph(20, 0.2, 2);
  Kernel<double> k = pagerank(g);
  k.init = [](const VertexRef&) { return InitialState<double>{0.0, 0.5}; };
  const ConditionReport report = check_conditions(k, g, 100, 1e-9);
  EXPECT_FALSE(report.init_ok);
  EXPECT_TRUE(report.distributive_ok);
}

TEST(CheckConditions, NonCommutativeAccumulateIsCaught) {
  const Graph g = testing::random_graph(10, 0.3, 3);
  Kernel<double> k = pagerank(g);
  k.accumulate = [](const double& a, const double& b) { return a + 2 * b; };
  const ConditionReport report = check_conditions(k, g, 100, 1e-9);
  EXPECT_FALSE(report.commutative_ok);
  EXPECT_TRUE(report.identity_ok);
}

class ShippedKernels : public ::testing::TestWithParam<Algorithm> {};

TEST_P(ShippedKernels, AllConditionsHold) {
  const auto w = testing::make_workload(GetParam(), 50, 11);
  const Graph g = computation_graph(w.spec, w.input);
  const AnyKernel any = build_kernel(w.spec, g);
  const ConditionReport report =
      std::visit([&](const auto& k) { return check_conditions(k, g, 10000, 1e-9); }, any);
  EXPECT_TRUE(report.ok()) << render(report);
}

class RationalForm : public ::testing::TestWithParam<Algorithm> {};

TEST_P(RationalForm, AgreesWithReal) {
  const auto w = testing::make_workload(GetParam(), 16, 5);
  const Graph g = computation_graph(w.spec, w.input);
  const auto kd = build_scalar_kernel<double>(w.spec, g);
  const auto kr = build_scalar_kernel<Rational>(w.spec, g);
  EXPECT_TRUE(check_conditions(kr, g, 200, 0.0).ok());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    const VertexRef v{g.vid_at(i), i};
    EXPECT_NEAR(kd.init(v).dv1, kr.init(v).dv1.convert_to<double>(), 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Additive, RationalForm,
                         ::testing::Values(Algorithm::pagerank, Algorithm::hits_authority, Algorithm::katz,
                                           Algorithm::jacobi, Algorithm::simrank, Algorithm::rooted_pagerank),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(RationalForm, AdsorptionLabelVectors) {
  const auto w = testing::make_workload(Algorithm::adsorption, 16, 5);
  const Graph g = computation_graph(w.spec, w.input);
  const auto kd = build_adsorption_kernel<double>(w.spec, g);
  const auto kr = build_adsorption_kernel<Rational>(w.spec, g);
  EXPECT_TRUE(check_conditions(kr, g, 200, 0.0).ok());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    const VertexRef v{g.vid_at(i), i};
    const auto a = kd.init(v).dv1;
    const auto b = kr.init(v).dv1;
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t c = 0; c < a.size(); ++c) EXPECT_NEAR(a[c], b[c].convert_to<double>(), 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(All, ShippedKernels, ::testing::ValuesIn(kAllAlgorithms),
                         [](const auto& info) { return std::string(to_string(info.param)); });

}  // namespace
}  // namespace daic
