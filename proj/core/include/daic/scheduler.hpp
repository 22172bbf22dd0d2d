#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "daic/rng.hpp"
#include "daic/state.hpp"

namespace daic {

// ⌈fraction · table_size⌉, at least 1 for a non-empty table. Products within
// 1e-9 of an integer are not rounded up, so 1/3 of 3 entries is 1.
std::size_t batch_size(std::size_t table_size, double fraction);

// Sampling-based top-k over a table given as parallel arrays. Draws
// min(1024, n) priorities (all of them when n <= 1024, uniformly with
// replacement otherwise), takes the ⌈fraction · sample⌉-th largest as the
// threshold, and keeps active entries at or above it. If that leaves more
// than k = batch_size(n, fraction) entries, the k best by (priority desc,
// vid asc) are kept; if fewer than k, the batch is topped up exactly from
// the remaining active entries. Returns positions into the arrays, best first.
std::vector<std::size_t> select_priority_batch(std::span<const double> priority,
                                               std::span<const std::uint8_t> active,
                                               std::span<const VertexId> vids, double fraction,
                                               Rng& rng);

// Table form: active means dv != zero.
template <class V>
std::vector<VertexId> extract_priority_batch(const StateTable<V>& table, double fraction, Rng& rng,
                                             const Kernel<V>& kernel) {
  std::vector<double> priority(table.size());
  std::vector<std::uint8_t> active(table.size());
  std::vector<VertexId> vids(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    priority[i] = table.entries[i].priority;
    active[i] = !kernel.is_zero(table.entries[i].dv);
    vids[i] = table.entries[i].vid;
  }
  std::vector<VertexId> out;
  for (std::size_t pos : select_priority_batch(priority, active, vids, fraction, rng)) {
    out.push_back(vids[pos]);
  }
  return out;
}

}  // namespace daic
