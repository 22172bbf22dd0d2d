#include <benchmark/benchmark.h>

#include "daic/algorithms.hpp"
#include "daic/graph.hpp"
#include "daic/rng.hpp"
#include "daic/transport.hpp"

namespace {

// Buffers messages for `distinct` destinations, then flushes; the ratio of
// messages to destinations sets how much early aggregation happens.
void BM_MsgTableBufferAndFlush(benchmark::State& state) {
  const auto distinct = static_cast<std::uint64_t>(state.range(0));
  constexpr std::size_t kMessages = 1 << 16;
  const daic::Graph g;
  const auto kernel = daic::build_scalar_kernel<double>(daic::AlgorithmSpec{}, g);
  daic::Rng rng(2);
  std::vector<daic::VertexId> dests(kMessages);
  for (auto& d : dests) d = 1 + rng.uniform_below(distinct);
  for (auto _ : state) {
    daic::MsgTable<double> table(kernel);
    for (daic::VertexId d : dests) table.buffer(d, 0.5);
    auto out = table.take_all();
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kMessages));
}
BENCHMARK(BM_MsgTableBufferAndFlush)->Arg(64)->Arg(4096)->Arg(1 << 16);

}  // namespace
