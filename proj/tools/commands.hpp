#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "daic/algorithms.hpp"
#include "daic/graph.hpp"

namespace daic::cli {

enum ExitCode : int {
  kOk = 0,
  // run: not converged (divergence, guard). verify / check-kernel: check failed.
  kFailed = 1,
  kUsage = 2,
  // run stopped on purpose after a checkpoint.
  kHalted = 3,
};

struct AlgoOptions {
  std::string algo = "pagerank";
  double damping = 0.8;
  std::optional<double> hits_damping;
  double beta = 0.05;
  double simrank_c = 0.8;
  double rooted_damping = 1.0;
  std::optional<VertexId> source;
  std::size_t labels = 3;
  double p_cont = 0.7;
  double p_inj = 0.3;
  std::string system;
  std::string rhs;
  std::size_t nodepair_limit = kDefaultNodePairLimit;
};

struct GenerateOptions {
  std::size_t nodes = 1000;
  double degree_mu = -0.5;
  double degree_sigma = 2.3;
  // none | sssp | adsorption | custom (uses weight_mu / weight_sigma)
  std::string weights = "none";
  std::optional<double> weight_mu;
  std::optional<double> weight_sigma;
  std::uint64_t seed = 1;
  std::string output;
};

struct RunOptions {
  std::string graph;
  AlgoOptions algo;
  std::string mode = "async_pri";
  std::size_t workers = 1;
  double queue_fraction = 0.01;
  std::string threshold = "auto";
  double flush_timeout_ms = 5.0;
  double check_interval_ms = 100.0;
  std::string stats;
  std::string output;
  std::string checkpoint_dir;
  std::optional<double> checkpoint_interval_ms;
  std::optional<std::uint64_t> halt_after_checkpoints;
  std::string recover;
  std::optional<std::uint64_t> max_updates;
  std::uint64_t seed = 1;
};

struct VerifyOptions {
  std::string graph;
  AlgoOptions algo;
  std::string result;
  std::string tol = "auto";
};

struct CheckKernelOptions {
  std::string graph;
  AlgoOptions algo;
  // Without --graph: a random graph of this many vertices.
  std::size_t nodes = 50;
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  double tol = 1e-9;
};

struct SimulateOptions {
  std::string graph;
  AlgoOptions algo;
  // sync | rr | pri
  std::string policy = "sync";
  double queue_fraction = 0.0;
  std::string threshold = "auto";
  std::string stats;
};

AlgorithmSpec make_spec(const AlgoOptions& options);

// The input graph for a command. Jacobi takes its graph from the system and
// accepts an empty path.
Graph load_input(const std::string& path, const AlgorithmSpec& spec);

// Additive kernels: 0.001 · N. Selective kernels: 0 (quiescence).
double auto_threshold(const AlgorithmSpec& spec, std::size_t vertex_count);
// "auto" or a non-negative real.
double parse_threshold(const std::string& text, const AlgorithmSpec& spec, std::size_t vertex_count);

// Result dump: `vid<TAB>value` per vertex in ascending vid order.
struct DumpRow {
  VertexId vid;
  std::string value;
};
std::vector<DumpRow> read_dump(std::istream& in);

int generate(const GenerateOptions& options, std::ostream& out, std::ostream& err);
int run(const RunOptions& options, std::ostream& out, std::ostream& err);
int verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int check_kernel(const CheckKernelOptions& options, std::ostream& out, std::ostream& err);
int simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);

// Sets the spdlog level from DAIC_LOG (trace, debug, info, warn, error, off).
void configure_logging();

}  // namespace daic::cli
