#include "daic/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "daic/errors.hpp"
#include "daic/graph.hpp"

namespace daic {

void write_stats_csv(std::ostream& out, const RunStats& stats) {
  out << "elapsed_ms,updates,messages,progress\n";
  for (const auto& s : stats.samples) {
    out << format_real(s.elapsed_ms) << ',' << s.updates << ',' << s.messages << ','
        << format_real(s.progress) << '\n';
  }
}

void save_stats_csv(const std::filesystem::path& path, const RunStats& stats) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write stats file " + path.string());
  write_stats_csv(out, stats);
}

bool samples_monotone(const std::vector<ProgressSample>& samples, Direction direction, double tol) {
  if (direction == Direction::none) return true;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double prev = samples[i - 1].progress;
    const double cur = samples[i].progress;
    const double slack = tol * std::max({1.0, std::abs(prev), std::abs(cur)});
    if (direction == Direction::increasing && cur < prev - slack) return false;
    if (direction == Direction::decreasing && cur > prev + slack) return false;
  }
  return true;
}

}  // namespace daic
