#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

namespace {

void add_algo_flags(CLI::App* cmd, daic::cli::AlgoOptions& a) {
  cmd->add_option("--algo", a.algo,
                  "pagerank, sssp, connected_components (cc), adsorption, hits_authority (hits), katz, jacobi, "
                  "simrank, rooted_pagerank")
      ->capture_default_str();
  cmd->add_option("-d,--damping", a.damping, "PageRank damping")->capture_default_str();
  cmd->add_option("--hits-damping", a.hits_damping, "HITS damping (default 0.5 / max column sum)");
  cmd->add_option("--beta", a.beta, "Katz beta")->capture_default_str();
  cmd->add_option("-c,--simrank-c", a.simrank_c, "SimRank decay")->capture_default_str();
  cmd->add_option("--rooted-damping", a.rooted_damping, "Rooted PageRank damping")->capture_default_str();
  cmd->add_option("--source", a.source, "source vertex for sssp, katz, rooted_pagerank");
  cmd->add_option("--labels", a.labels, "Adsorption label count")->capture_default_str();
  cmd->add_option("--p-cont", a.p_cont, "Adsorption continuation probability")->capture_default_str();
  cmd->add_option("--p-inj", a.p_inj, "Adsorption injection probability")->capture_default_str();
  cmd->add_option("--system", a.system, "Jacobi matrix (row col value triples)");
  cmd->add_option("--rhs", a.rhs, "Jacobi right-hand side (one value per line)");
  cmd->add_option("--nodepair-limit", a.nodepair_limit, "SimRank base graph size limit")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  daic::cli::configure_logging();

  CLI::App app{"daic: delta-accumulative iterative graph computation"};
  app.require_subcommand(1);

  daic::cli::GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "write a synthetic log-normal in-degree graph");
  generate->add_option("--nodes", gen.nodes)->capture_default_str();
  generate->add_option("--degree-mu", gen.degree_mu)->capture_default_str();
  generate->add_option("--degree-sigma", gen.degree_sigma)->capture_default_str();
  generate->add_option("--weights", gen.weights, "none, sssp (lognormal 0, 1), adsorption (0.4, 0.8) or custom")
      ->capture_default_str();
  generate->add_option("--weight-mu", gen.weight_mu);
  generate->add_option("--weight-sigma", gen.weight_sigma);
  generate->add_option("--seed", gen.seed)->capture_default_str();
  generate->add_option("-o,--output", gen.output, "output path (stdout if omitted)");

  daic::cli::RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "run an algorithm on the engine");
  run_cmd->add_option("-g,--graph", run.graph, "graph file");
  add_algo_flags(run_cmd, run.algo);
  run_cmd->add_option("--mode", run.mode, "sync, async_rr, async_pri")->capture_default_str();
  run_cmd->add_option("--workers", run.workers)->capture_default_str();
  run_cmd->add_option("--queue-fraction", run.queue_fraction)->capture_default_str();
  run_cmd->add_option("--threshold", run.threshold, "auto or a progress delta")->capture_default_str();
  run_cmd->add_option("--flush-timeout-ms", run.flush_timeout_ms)->capture_default_str();
  run_cmd->add_option("--check-interval-ms", run.check_interval_ms)->capture_default_str();
  run_cmd->add_option("--stats", run.stats, "progress samples CSV");
  run_cmd->add_option("-o,--out", run.output, "final values, vid<TAB>value per line");
  run_cmd->add_option("--checkpoint-dir", run.checkpoint_dir);
  run_cmd->add_option("--checkpoint-interval-ms", run.checkpoint_interval_ms);
  run_cmd->add_option("--halt-after-checkpoints", run.halt_after_checkpoints,
                      "stop abruptly after this many checkpoints");
  run_cmd->add_option("--recover", run.recover, "snapshot directory (or its parent) to resume from");
  run_cmd->add_option("--max-updates", run.max_updates, "update guard (default max(10^7, 10^4 * |V|))");
  run_cmd->add_option("--seed", run.seed)->capture_default_str();

  daic::cli::VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "compare a result dump with an independent solver");
  verify->add_option("-g,--graph", ver.graph, "graph file");
  add_algo_flags(verify, ver.algo);
  verify->add_option("-r,--result", ver.result, "dump written by run --out")->required();
  verify->add_option("--tol", ver.tol, "L1 tolerance or auto")->capture_default_str();

  daic::cli::CheckKernelOptions chk;
  auto* check = app.add_subcommand("check-kernel", "sample the algebraic conditions of a kernel");
  check->add_option("-g,--graph", chk.graph, "graph file (random graph if omitted)");
  add_algo_flags(check, chk.algo);
  check->add_option("--nodes", chk.nodes, "size of the random graph")->capture_default_str();
  check->add_option("--seed", chk.seed)->capture_default_str();
  check->add_option("--samples", chk.samples)->capture_default_str();
  check->add_option("--tol", chk.tol)->capture_default_str();

  daic::cli::SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "single-threaded run under a scheduling policy");
  simulate->add_option("-g,--graph", sim.graph, "graph file");
  add_algo_flags(simulate, sim.algo);
  simulate->add_option("--policy", sim.policy, "sync, rr, pri")->capture_default_str();
  simulate->add_option("--queue-fraction", sim.queue_fraction, "pri batch fraction; 0 picks one vertex at a time")
      ->capture_default_str();
  simulate->add_option("--threshold", sim.threshold, "stop at this distance from the solver's progress")
      ->capture_default_str();
  simulate->add_option("--stats", sim.stats, "progress samples CSV");

  CLI11_PARSE(app, argc, argv);

  if (*generate) return daic::cli::generate(gen, std::cout, std::cerr);
  if (*run_cmd) return daic::cli::run(run, std::cout, std::cerr);
  if (*verify) return daic::cli::verify(ver, std::cout, std::cerr);
  if (*check) return daic::cli::check_kernel(chk, std::cout, std::cerr);
  if (*simulate) return daic::cli::simulate(sim, std::cout, std::cerr);
  return daic::cli::kUsage;
}
