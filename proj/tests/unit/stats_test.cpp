#include <gtest/gtest.h>

#include <sstream>

#include "daic/stats.hpp"

namespace daic {
namespace {

TEST(Stats, CsvSchema) {
  RunStats stats;
  stats.samples = {{0.0, 0, 0, 0.0}, {1.5, 10, 25, 3.25}};
  std::ostringstream out;
  write_stats_csv(out, stats);
  EXPECT_EQ(out.str(), "elapsed_ms,updates,messages,progress\n0,0,0,0\n1.5,10,25,3.25\n");
}

TEST(Stats, Monotonicity) {
  std::vector<ProgressSample> up{{0, 0, 0, 1.0}, {1, 1, 1, 2.0}, {2, 2, 2, 2.0}};
  EXPECT_TRUE(samples_monotone(up, Direction::increasing, 0.0));
  EXPECT_FALSE(samples_monotone(up, Direction::decreasing, 0.0));
  up.push_back({3, 3, 3, 2.0 - 1e-13});
  EXPECT_FALSE(samples_monotone(up, Direction::increasing, 0.0));
  EXPECT_TRUE(samples_monotone(up, Direction::increasing, 1e-12));
  EXPECT_TRUE(samples_monotone(up, Direction::none, 0.0));
}

}  // namespace
}  // namespace daic
