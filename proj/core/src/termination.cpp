#include "daic/termination.hpp"

#include <cmath>

namespace daic {

TerminationDecision check_termination(std::span<const double> locals, double previous, double threshold) {
  TerminationDecision d;
  for (double local : locals) d.global += local;
  d.delta = std::abs(d.global - previous);
  d.terminate = std::isfinite(d.global) && d.delta < threshold;
  return d;
}

}  // namespace daic
