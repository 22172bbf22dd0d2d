#include "daic/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "daic/errors.hpp"

namespace daic {

namespace {

constexpr std::size_t kSampleSize = 1024;

std::size_t ceil_count(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-9) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(x));
}

}  // namespace

std::size_t batch_size(std::size_t table_size, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("queue fraction must be in (0, 1]");
  if (table_size == 0) return 0;
  return std::clamp<std::size_t>(ceil_count(fraction * static_cast<double>(table_size)), 1, table_size);
}

std::vector<std::size_t> select_priority_batch(std::span<const double> priority,
                                               std::span<const std::uint8_t> active,
                                               std::span<const VertexId> vids, double fraction,
                                               Rng& rng) {
  const std::size_t n = priority.size();
  const std::size_t k = batch_size(n, fraction);
  if (n == 0) return {};

  std::vector<double> sample;
  if (n <= kSampleSize) {
    sample.assign(priority.begin(), priority.end());
  } else {
    sample.reserve(kSampleSize);
    for (std::size_t s = 0; s < kSampleSize; ++s) sample.push_back(priority[rng.uniform_below(n)]);
  }
  const std::size_t rank = batch_size(sample.size(), fraction);
  std::nth_element(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(rank - 1), sample.end(),
                   std::greater<>());
  const double threshold = sample[rank - 1];

  auto better = [&](std::size_t a, std::size_t b) {
    if (priority[a] != priority[b]) return priority[a] > priority[b];
    return vids[a] < vids[b];
  };
  auto best_k = [&](std::vector<std::size_t>& pool, std::size_t count) {
    if (pool.size() > count) {
      std::nth_element(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count), pool.end(), better);
      pool.resize(count);
    }
    std::sort(pool.begin(), pool.end(), better);
  };

  std::vector<std::size_t> chosen;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    (priority[i] >= threshold ? chosen : rest).push_back(i);
  }
  if (chosen.size() >= k) {
    best_k(chosen, k);
    return chosen;
  }
  std::sort(chosen.begin(), chosen.end(), better);
  best_k(rest, k - chosen.size());
  chosen.insert(chosen.end(), rest.begin(), rest.end());
  return chosen;
}

}  // namespace daic
