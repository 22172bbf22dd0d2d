#pragma once

#include <span>

namespace daic {

struct TerminationDecision {
  bool terminate = false;
  double global = 0.0;
  double delta = 0.0;
};

// global = Σ locals; terminate iff |global - previous| < threshold. A
// non-finite global never terminates (the engine reports divergence instead).
TerminationDecision check_termination(std::span<const double> locals, double previous, double threshold);

}  // namespace daic
