#include "daic/engine.hpp"

namespace daic {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::sync: return "sync";
    case Mode::async_rr: return "async_rr";
    case Mode::async_pri: return "async_pri";
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  if (name == "sync") return Mode::sync;
  if (name == "async_rr" || name == "rr") return Mode::async_rr;
  if (name == "async_pri" || name == "pri") return Mode::async_pri;
  throw ConfigError("unknown mode '" + std::string(name) + "'");
}

void validate(const EngineConfig& config) {
  if (config.workers == 0) throw ConfigError("need at least one worker");
  if (!(config.queue_fraction > 0.0 && config.queue_fraction <= 1.0)) {
    throw ConfigError("queue fraction must be in (0, 1]");
  }
  if (!(config.term_threshold >= 0.0)) throw ConfigError("termination threshold must be >= 0");
  if (config.term_check_interval <= Clock::duration::zero()) {
    throw ConfigError("termination check interval must be positive");
  }
  if (config.checkpoint_interval) {
    if (*config.checkpoint_interval <= Clock::duration::zero()) {
      throw ConfigError("checkpoint interval must be positive");
    }
    if (config.checkpoint_dir.empty()) throw ConfigError("checkpointing needs a directory");
  }
  if (config.flush_cap == 0) throw ConfigError("flush cap must be at least 1");
}

}  // namespace daic
