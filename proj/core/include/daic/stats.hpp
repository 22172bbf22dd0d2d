#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "daic/kernel.hpp"

namespace daic {

struct ProgressSample {
  double elapsed_ms = 0.0;
  std::uint64_t updates = 0;
  std::uint64_t messages = 0;
  double progress = 0.0;
};

struct RunStats {
  double wall_ms = 0.0;
  // Updates that found dv != zero.
  std::uint64_t updates = 0;
  // Non-zero messages produced by updates, local and remote.
  std::uint64_t messages = 0;
  // Remote messages handed to a channel after msg-table aggregation.
  std::uint64_t remote_messages = 0;
  std::uint64_t aggregated_away = 0;
  std::uint64_t routing_errors = 0;
  std::uint64_t supersteps = 0;
  std::uint64_t checkpoints_written = 0;
  std::uint64_t checkpoint_failures = 0;
  std::vector<ProgressSample> samples;

  bool converged = false;
  bool diverged = false;
  bool guard_tripped = false;
  bool killed = false;
  double final_progress = 0.0;
};

// Header `elapsed_ms,updates,messages,progress`, one row per sample.
void write_stats_csv(std::ostream& out, const RunStats& stats);
void save_stats_csv(const std::filesystem::path& path, const RunStats& stats);

// Whether sample progress never moves against `direction` by more than
// tol * max(1, |progress|). Always true for Direction::none.
bool samples_monotone(const std::vector<ProgressSample>& samples, Direction direction, double tol);

}  // namespace daic
