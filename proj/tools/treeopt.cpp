// treeopt: design graphs with many spanning trees.
//
//   treeopt synth    --graph G --candidates C -k 5 --method greedy,convex
//   treeopt sparsify --graph G --removable R -k 2 --method greedy
//   treeopt dual     --graph G --candidates C --delta 1.5
//   treeopt bench    --config sweep.toml --out-csv sweep.csv
//   treeopt oracle   --graph G [--candidates C -k 2]
//
// Exit codes: 0 ok, 1 usage or input error, 2 guard hit or infeasible, 3 numeric failure.

#include "treeopt/certificates.hpp"
#include "treeopt/experiment.hpp"
#include "treeopt/oracle.hpp"
#include "treeopt/treeconn.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace treeopt;

enum ExitCode { kOk = 0, kUsage = 1, kInfeasible = 2, kNumeric = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open `" + path + "`");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write `" + path + "`");
  out << text;
}

struct CommonFlags {
  std::string graph;
  std::vector<std::string> methods{"greedy", "convex"};
  double tol = 1e-6;
  int max_iters = 2000;
  std::uint64_t seed = 1;
  bool repair = false;
  bool no_timing = false;
  std::uint64_t node_limit = 50'000'000;
  std::string out;

  RunOptions run_options() const {
    RunOptions o;
    o.methods = methods;
    o.solver.tol = tol;
    o.solver.max_iters = max_iters;
    o.seed = seed;
    o.repair = repair;
    o.exact_node_limit = node_limit;
    return o;
  }
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--graph", f.graph, "edge-list file of the base graph")->required();
  cmd->add_option("--method", f.methods, "methods, comma separated")->delimiter(',');
  cmd->add_option("--tol", f.tol, "projected-gradient tolerance");
  cmd->add_option("--max-iters", f.max_iters, "solver iteration cap");
  cmd->add_option("--seed", f.seed, "seed for random baselines and rounding");
  cmd->add_flag("--repair", f.repair, "repair randomized rounding to exactly k edges");
  cmd->add_flag("--no-timing", f.no_timing, "write zero wall times for reproducible output");
  cmd->add_option("--exact-node-limit", f.node_limit, "search-node cap for the exact method");
  cmd->add_option("--out", f.out, "output JSON path (default stdout)");
}

int emit(const RunResult& r, const CommonFlags& f) {
  write_output(f.out, to_json(r, !f.no_timing).dump(2) + "\n");
  if (r.outcome != "ok") {
    std::cerr << "treeopt: " << r.command << " is infeasible\n";
    return kInfeasible;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spanning-tree maximizing graph design"};
  app.require_subcommand(1);

  CommonFlags synth_flags;
  std::string candidates_path;
  bool complete_complement = false;
  std::size_t k = 0;
  std::optional<double> lambda;
  auto* synth = app.add_subcommand("synth", "add k edges to maximize tree connectivity");
  add_common(synth, synth_flags);
  synth->add_option("--candidates", candidates_path, "edge-list file of candidate edges");
  synth->add_flag("--complete-complement", complete_complement, "use every absent pair as a unit-weight candidate");
  synth->add_option("-k", k, "number of edges to add")->required();
  synth->add_option("--lambda", lambda, "also solve the l1-penalized relaxation with this weight");

  CommonFlags sparsify_flags;
  std::string removable_path;
  std::size_t k_remove = 0;
  auto* sparsify = app.add_subcommand("sparsify", "remove k edges while keeping tree connectivity high");
  add_common(sparsify, sparsify_flags);
  sparsify->add_option("--removable", removable_path, "edge-list file of removable edges")->required();
  sparsify->add_option("-k", k_remove, "number of edges to remove")->required();

  CommonFlags dual_flags;
  std::string dual_candidates;
  double delta = 0.0;
  bool absolute_delta = false;
  auto* dual = app.add_subcommand("dual", "fewest edges reaching a tree-connectivity gain");
  add_common(dual, dual_flags);
  dual->add_option("--candidates", dual_candidates, "edge-list file of candidate edges")->required();
  dual->add_option("--delta", delta, "required gain in tree connectivity (nats)")->required();
  dual->add_flag("--absolute-delta", absolute_delta, "treat delta as an absolute log-det target");

  std::string config_path, csv_path;
  bool bench_no_timing = false;
  auto* bench = app.add_subcommand("bench", "random-graph sweep to CSV");
  bench->add_option("--config", config_path, "sweep config (key = value)")->required();
  bench->add_option("--out-csv", csv_path, "CSV output path (default stdout)");
  bench->add_flag("--no-timing", bench_no_timing, "write zero wall times for reproducible output");

  std::string oracle_graph, oracle_candidates;
  std::size_t oracle_k = 0;
  auto* oracle = app.add_subcommand("oracle", "brute-force reference values for small instances");
  oracle->add_option("--graph", oracle_graph, "edge-list file")->required();
  oracle->add_option("--candidates", oracle_candidates, "candidate edges for exhaustive search");
  oracle->add_option("-k", oracle_k, "subset size for exhaustive search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*synth) {
      const WeightedGraph g = parse_graph(read_file(synth_flags.graph));
      CandidateSet cands;
      if (complete_complement) {
        cands = complement_candidates(g);
      } else if (!candidates_path.empty()) {
        cands = parse_candidates(read_file(candidates_path), g.vertex_count());
      } else {
        throw std::invalid_argument("synth needs --candidates or --complete-complement");
      }
      RunResult r = run_synth(g, cands, k, synth_flags.run_options());
      if (lambda) {
        RunOptions o = synth_flags.run_options();
        const RelaxationSolution sol = solve_penalized(g, cands, *lambda, o.solver);
        const std::vector<int> top = round_topk(sol.pi_star, k);
        const double tau = tree_connectivity(with_candidates(g, cands, top)).value;
        r.methods.push_back({"penalized", tau, top, 0.0, to_string(sol.status), sol.budget()});
      }
      return emit(r, synth_flags);
    }
    if (*sparsify) {
      const WeightedGraph g = parse_graph(read_file(sparsify_flags.graph));
      const CandidateSet removable = parse_candidates(read_file(removable_path), g.vertex_count());
      return emit(run_sparsify(g, removable, k_remove, sparsify_flags.run_options()), sparsify_flags);
    }
    if (*dual) {
      const WeightedGraph g = parse_graph(read_file(dual_flags.graph));
      const CandidateSet cands = parse_candidates(read_file(dual_candidates), g.vertex_count());
      return emit(run_dual(g, cands, delta, dual_flags.run_options(), absolute_delta), dual_flags);
    }
    if (*bench) {
      const BenchConfig cfg = parse_bench_config(read_file(config_path));
      write_output(csv_path, run_bench(cfg, !bench_no_timing));
      return kOk;
    }
    if (*oracle) {
      const WeightedGraph g = parse_graph(read_file(oracle_graph));
      nlohmann::json out;
      out["tree_connectivity"] = tree_connectivity(g).value;
      out["connected"] = is_connected(g);
      if (g.vertex_count() <= 10 && g.edge_count() <= 20) {
        const SpanningTreeList trees = enumerate_spanning_trees(g);
        out["spanning_trees"] = trees.trees.size();
        out["weighted_tree_count"] = trees.total();
      }
      if (!oracle_candidates.empty()) {
        const CandidateSet cands = parse_candidates(read_file(oracle_candidates), g.vertex_count());
        const EspOptimum opt = exhaustive_esp(g, cands, oracle_k);
        out["opt"] = opt.value;
        out["opt_set"] = opt.set;
      }
      std::cout << out.dump(2) << "\n";
      return kOk;
    }
  } catch (const GuardExceeded& e) {
    std::cerr << "treeopt: guard exceeded: " << e.what() << "\n";
    return kInfeasible;
  } catch (const RunFailure& e) {
    std::cerr << "treeopt: " << e.what() << "\n";
    return kInfeasible;
  } catch (const NotPositiveDefinite& e) {
    std::cerr << "treeopt: numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const InconsistentBounds& e) {
    std::cerr << "treeopt: numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "treeopt: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
