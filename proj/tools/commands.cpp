#include "commands.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <variant>

#include "daic/conditions.hpp"
#include "daic/engine.hpp"
#include "daic/errors.hpp"
#include "daic/generator.hpp"
#include "daic/linear_system.hpp"
#include "daic/oracle.hpp"
#include "daic/rng.hpp"
#include "daic/sim.hpp"
#include "daic/stats.hpp"

namespace daic::cli {

namespace {

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

std::chrono::nanoseconds millis(double ms) {
  if (!(ms >= 0.0)) throw ConfigError("durations must be non-negative");
  return std::chrono::nanoseconds(static_cast<std::int64_t>(ms * 1e6));
}

template <class V>
void write_dump(std::ostream& out, const std::vector<VertexId>& vids, const std::vector<V>& values) {
  for (std::size_t i = 0; i < vids.size(); ++i) {
    out << vids[i] << '\t' << ValueTraits<V>::format(values[i]) << '\n';
  }
}

void write_to(const std::string& path, const std::function<void(std::ostream&)>& body, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    body(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error("cannot write " + path);
  body(file);
  if (!file) throw Error("write failed: " + path);
}

// Source for kernels that need one when the user gave none: the smallest vid.
void default_source(AlgorithmSpec& spec, const Graph& input) {
  const bool needs = spec.algorithm == Algorithm::sssp || spec.algorithm == Algorithm::katz ||
                     spec.algorithm == Algorithm::rooted_pagerank;
  if (needs && !spec.source && input.vertex_count() > 0) spec.source = input.vid_at(0);
}

double value_distance(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b);
}

double value_distance(const LabelVector<double>& a, const LabelVector<double>& b) {
  if (a.size() != b.size()) return HUGE_VAL;
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += value_distance(a[i], b[i]);
  return total;
}

}  // namespace

AlgorithmSpec make_spec(const AlgoOptions& options) {
  AlgorithmSpec spec;
  spec.algorithm = parse_algorithm(options.algo);
  spec.damping = options.damping;
  spec.hits_damping = options.hits_damping;
  spec.beta = options.beta;
  spec.simrank_c = options.simrank_c;
  spec.rooted_damping = options.rooted_damping;
  spec.source = options.source;
  spec.labels = options.labels;
  spec.p_cont = options.p_cont;
  spec.p_inj = options.p_inj;
  spec.nodepair_limit = options.nodepair_limit;
  if (!options.system.empty() || !options.rhs.empty()) {
    if (options.system.empty() || options.rhs.empty()) throw ConfigError("--system and --rhs go together");
    spec.system = std::make_shared<LinearSystem>(load_system(options.system, options.rhs));
  }
  return spec;
}

Graph load_input(const std::string& path, const AlgorithmSpec& spec) {
  if (path.empty()) {
    if (spec.algorithm == Algorithm::jacobi) return Graph{};
    throw ConfigError("--graph is required for " + std::string(to_string(spec.algorithm)));
  }
  return load_graph(path);
}

double auto_threshold(const AlgorithmSpec& spec, std::size_t vertex_count) {
  return is_selective(spec.algorithm) ? 0.0 : 0.001 * static_cast<double>(vertex_count);
}

double parse_threshold(const std::string& text, const AlgorithmSpec& spec, std::size_t vertex_count) {
  if (text == "auto") return auto_threshold(spec, vertex_count);
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(text, &used);
    if (used != text.size()) throw ConfigError("");
  } catch (const std::exception&) {
    throw ConfigError("threshold must be 'auto' or a number, got '" + text + "'");
  }
  if (!(value >= 0.0) || !std::isfinite(value)) throw ConfigError("threshold must be a finite value >= 0");
  return value;
}

std::vector<DumpRow> read_dump(std::istream& in) {
  std::vector<DumpRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(number, "expected vid<TAB>value");
    DumpRow row{};
    const std::string vid = line.substr(0, tab);
    try {
      std::size_t used = 0;
      row.vid = std::stoull(vid, &used);
      if (used != vid.size() || vid.front() == '-') throw ParseError(number, "");
    } catch (const std::exception&) {
      throw ParseError(number, "bad vid '" + vid + "'");
    }
    row.value = line.substr(tab + 1);
    rows.push_back(std::move(row));
  }
  return rows;
}

int generate(const GenerateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    GeneratorConfig config;
    config.node_count = options.nodes;
    config.degree_mu = options.degree_mu;
    config.degree_sigma = options.degree_sigma;
    config.seed = options.seed;
    if (options.weights == "sssp") {
      config.weight_mu = 0.0;
      config.weight_sigma = 1.0;
    } else if (options.weights == "adsorption") {
      config.weight_mu = 0.4;
      config.weight_sigma = 0.8;
    } else if (options.weights == "custom") {
      config.weight_mu = options.weight_mu;
      config.weight_sigma = options.weight_sigma;
    } else if (options.weights != "none") {
      throw ConfigError("--weights must be none, sssp, adsorption or custom");
    }
    if (options.weights != "custom" && (options.weight_mu || options.weight_sigma)) {
      throw ConfigError("--weight-mu / --weight-sigma need --weights custom");
    }
    validate(config);
    const Graph graph = generate(config);
    spdlog::info("generated {} vertices, {} edges", graph.vertex_count(), graph.edge_count());
    if (options.output.empty() || options.output == "-") {
      write_graph(out, graph);
    } else {
      save_graph(options.output, graph);
      out << "wrote " << graph.vertex_count() << " vertices, " << graph.edge_count() << " edges to "
          << options.output << '\n';
    }
    return kOk;
  });
}

int run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const AlgorithmSpec spec = make_spec(options.algo);
    const Graph input = load_input(options.graph, spec);
    validate(spec, input);
    const Graph graph = computation_graph(spec, input);

    EngineConfig config;
    config.mode = parse_mode(options.mode);
    config.workers = options.workers;
    config.queue_fraction = options.queue_fraction;
    config.flush_timeout = millis(options.flush_timeout_ms);
    config.term_check_interval = millis(options.check_interval_ms);
    config.term_threshold = parse_threshold(options.threshold, spec, graph.vertex_count());
    if (options.checkpoint_interval_ms) {
      if (options.checkpoint_dir.empty()) throw ConfigError("--checkpoint-interval-ms needs --checkpoint-dir");
      config.checkpoint_interval = millis(*options.checkpoint_interval_ms);
    }
    config.checkpoint_dir = options.checkpoint_dir;
    config.halt_after_checkpoints = options.halt_after_checkpoints;
    config.max_updates = options.max_updates;
    config.seed = options.seed;
    config.description = describe(spec);
    validate(config);

    spdlog::info("{} on {} vertices / {} edges, mode {}, {} workers, threshold {}", describe(spec),
                 graph.vertex_count(), graph.edge_count(), to_string(config.mode), config.workers,
                 config.term_threshold);

    const AnyKernel any = build_kernel(spec, graph);
    return std::visit(
        [&](const auto& kernel) {
          using V = std::decay_t<decltype(kernel.zero)>;
          RunResult<V> result = options.recover.empty() ? daic::run(graph, kernel, config)
                                                        : daic::recover(options.recover, graph, kernel, config);
          const RunStats& stats = result.stats;
          if (!options.stats.empty()) save_stats_csv(options.stats, stats);
          if (!options.output.empty()) {
            write_to(options.output, [&](std::ostream& os) { write_dump(os, result.vids, result.v); }, out);
          }
          out << "updates " << stats.updates << " messages " << stats.messages << " remote "
              << stats.remote_messages << " aggregated_away " << stats.aggregated_away << " wall_ms "
              << stats.wall_ms << " progress " << stats.final_progress << '\n';
          if (result.last_snapshot) out << "snapshot " << result.last_snapshot->string() << '\n';
          if (stats.killed) {
            err << "halted after checkpoint\n";
            return static_cast<int>(kHalted);
          }
          if (stats.converged) {
            out << "converged\n";
            return static_cast<int>(kOk);
          }
          if (stats.diverged) {
            err << "diverged: progress is no longer finite\n";
          } else if (stats.guard_tripped) {
            err << "not converged: update guard tripped after " << stats.updates << " updates\n";
          } else {
            err << "not converged\n";
          }
          return static_cast<int>(kFailed);
        },
        any);
  });
}

int verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    AlgorithmSpec spec = make_spec(options.algo);
    const Graph input = load_input(options.graph, spec);
    validate(spec, input);

    std::ifstream file(options.result);
    if (!file) throw Error("cannot read " + options.result);
    const std::vector<DumpRow> rows = read_dump(file);

    const OracleResult oracle = oracle_solve(spec, input);
    if (rows.size() != oracle.vids.size()) {
      err << "dimension mismatch: result has " << rows.size() << " vertices, expected " << oracle.vids.size()
          << '\n';
      return static_cast<int>(kUsage);
    }
    const double tol = parse_threshold(options.tol, spec, oracle.vids.size());

    double l1 = 0.0;
    double worst = -1.0;
    VertexId worst_vid = 0;
    std::visit(
        [&](const auto& expected) {
          using V = typename std::decay_t<decltype(expected)>::value_type;
          for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].vid != oracle.vids[i]) {
              throw Error("result line " + std::to_string(i + 1) + " has vid " + std::to_string(rows[i].vid) +
                          ", expected " + std::to_string(oracle.vids[i]));
            }
            const V got = ValueTraits<V>::parse(rows[i].value);
            const double d = value_distance(got, expected[i]);
            l1 += d;
            if (d > worst) {
              worst = d;
              worst_vid = rows[i].vid;
            }
          }
        },
        oracle.values);

    const bool pass = l1 <= tol;
    out << (pass ? "PASS" : "FAIL") << " l1 " << l1 << " tol " << tol;
    if (worst > 0.0) out << " max_diff " << worst << " at vid " << worst_vid;
    out << '\n';
    return static_cast<int>(pass ? kOk : kFailed);
  });
}

int check_kernel(const CheckKernelOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    AlgorithmSpec spec = make_spec(options.algo);
    Graph input;
    if (!options.graph.empty()) {
      input = load_graph(options.graph);
    } else if (spec.algorithm != Algorithm::jacobi) {
      GeneratorConfig config;
      config.node_count = options.nodes;
      config.degree_mu = 1.0;
      config.degree_sigma = 0.5;
      config.seed = options.seed;
      if (spec.algorithm == Algorithm::sssp) {
        config.weight_mu = 0.0;
        config.weight_sigma = 1.0;
      }
      input = generate(config);
    }
    if (spec.algorithm == Algorithm::jacobi && !spec.system) {
      Rng rng(options.seed);
      spec.system = std::make_shared<LinearSystem>(random_dominant_system(options.nodes, 0.2, rng));
    }
    default_source(spec, input);
    validate(spec, input);
    const Graph graph = computation_graph(spec, input);
    const AnyKernel any = build_kernel(spec, graph);
    const ConditionReport report = std::visit(
        [&](const auto& kernel) { return check_conditions(kernel, graph, options.samples, options.tol, options.seed); },
        any);
    out << render(report);
    return static_cast<int>(report.ok() ? kOk : kFailed);
  });
}

int simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const AlgorithmSpec spec = make_spec(options.algo);
    const Graph input = load_input(options.graph, spec);
    validate(spec, input);
    const Graph graph = computation_graph(spec, input);

    Policy policy;
    if (options.policy == "sync") {
      policy = Policy::synchronous;
    } else if (options.policy == "rr") {
      policy = Policy::round_robin;
    } else if (options.policy == "pri") {
      policy = Policy::priority;
    } else {
      throw ConfigError("--policy must be sync, rr or pri");
    }
    const double threshold = parse_threshold(options.threshold, spec, graph.vertex_count());
    const OracleResult oracle = oracle_solve(spec, input);

    const AnyKernel any = build_kernel(spec, graph);
    return std::visit(
        [&](const auto& kernel) {
          using V = std::decay_t<decltype(kernel.zero)>;
          const auto& expected = std::get<std::vector<V>>(oracle.values);
          double reference = 0.0;
          for (const V& x : expected) reference += kernel.progress_of(x);

          RunStats stats;
          std::uint64_t next_sample = 0;
          const std::uint64_t every = std::max<std::uint64_t>(1, graph.vertex_count() / 100);
          const auto stop = [&](double progress, std::uint64_t updates) {
            if (updates >= next_sample) {
              stats.samples.push_back({0.0, updates, 0, progress});
              next_sample = updates + every;
            }
            return threshold > 0.0 && std::abs(reference - progress) < threshold;
          };
          PolicyOptions policy_options;
          policy_options.queue_fraction = options.queue_fraction;
          const SimState<V> state = run_policy(graph, kernel, policy, stop, policy_options);
          const double progress = total_progress(state.v, kernel);
          stats.samples.push_back({0.0, state.updates, state.messages, progress});
          if (!options.stats.empty()) save_stats_csv(options.stats, stats);
          out << "policy " << options.policy << " updates " << state.updates << " messages " << state.messages
              << " progress " << progress << " reference " << reference << '\n';
          return static_cast<int>(kOk);
        },
        any);
  });
}

void configure_logging() {
  auto logger = spdlog::get("daic");
  if (!logger) logger = spdlog::stderr_color_mt("daic");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("DAIC_LOG")) level = spdlog::level::from_str(env);
  spdlog::set_level(level);
}

}  // namespace daic::cli
