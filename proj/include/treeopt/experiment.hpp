#pragma once

#include "treeopt/certificates.hpp"
#include "treeopt/convex.hpp"
#include "treeopt/graph.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace treeopt {

/// Edge weights for generated instances: "unit" or "lognormal:<sigma>".
struct WeightSpec {
  double lognormal_sigma = 0.0;  // 0 means unit weights

  static WeightSpec parse(std::string_view text);
  double draw(std::mt19937_64& rng) const;
  std::string to_string() const;
};

/// Uniform random labeled tree (random Pruefer sequence) plus m - (n - 1)
/// distinct extra edges sampled uniformly from the remaining pairs.
WeightedGraph random_connected_graph(int n, std::size_t m, std::uint64_t seed,
                                     const WeightSpec& weights = {});

/// Thrown when a run cannot produce a valid design (guard hit, infeasible target).
class RunFailure : public std::runtime_error {
 public:
  explicit RunFailure(const std::string& what) : std::runtime_error(what) {}
};

struct MethodResult {
  std::string method;
  double tau = 0.0;
  std::vector<int> chosen;
  double time_ms = 0.0;
  std::string status = "ok";
  std::optional<double> budget;  // sum of pi* for relaxations

  friend bool operator==(const MethodResult&, const MethodResult&) = default;
};

/// One CLI run. The JSON form is the stable report schema (schema = 1).
struct RunResult {
  int schema = 1;
  std::string command;
  int n = 0;
  std::size_t m = 0;
  std::size_t c = 0;
  std::optional<double> k;
  std::optional<double> delta;
  double tau_init = 0.0;
  std::vector<MethodResult> methods;
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<double> design_value;
  std::optional<double> gap;
  std::optional<double> ratio;
  std::vector<std::string> sources;
  std::string solver_status = "n/a";
  std::string outcome = "ok";  // ok | infeasible

  const MethodResult* find(std::string_view method) const;
  friend bool operator==(const RunResult&, const RunResult&) = default;
};

nlohmann::json to_json(const RunResult& r, bool include_timing = true);
RunResult run_result_from_json(const nlohmann::json& j);

struct RunOptions {
  std::vector<std::string> methods{"greedy", "convex"};
  SolverOptions solver;
  std::uint64_t seed = 1;
  bool repair = false;               // repair randomized rounding to exactly k
  std::uint64_t exact_node_limit = 50'000'000;
};

/// k-edge augmentation: runs the requested methods and assembles a certificate.
/// Methods: greedy, convex, exact, random (seeded random k-subset), rounded
/// (randomized rounding of the relaxation).
RunResult run_synth(const WeightedGraph& base, const CandidateSet& cands, std::size_t k,
                    const RunOptions& opts);

/// k-edge removal through the removal-to-addition rewrite.
RunResult run_sparsify(const WeightedGraph& base, const CandidateSet& removable, std::size_t k,
                       const RunOptions& opts);

/// Minimum number of edges reaching a connectivity gain of delta.
RunResult run_dual(const WeightedGraph& base, const CandidateSet& cands, double delta,
                   const RunOptions& opts, bool absolute_delta = false);

struct BenchConfig {
  std::vector<int> n{20};
  std::vector<std::size_t> m{30};
  std::vector<std::size_t> k{5};
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::vector<std::string> methods{"greedy", "convex"};
  WeightSpec weights;
  SolverOptions solver;
  std::uint64_t exact_node_limit = 50'000'000;
};

/// Reads the flat `key = value` subset of TOML used by bench configs. Values are
/// integers, floats, quoted strings, or one-level arrays of those.
BenchConfig parse_bench_config(std::string_view text);

inline constexpr std::string_view kBenchCsvHeader = "n,m,k,trial,method,tau,lower,upper,time_ms";

/// Sweeps every (n, m, k, trial) combination. Trial t uses seed + t. With
/// include_timing false the time column is written as 0 for reproducible output.
std::string run_bench(const BenchConfig& config, bool include_timing = true);

}  // namespace treeopt
