#include "treeopt/experiment.hpp"

#include "treeopt/greedy.hpp"
#include "treeopt/oracle.hpp"
#include "treeopt/treeconn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <variant>

namespace treeopt {

using nlohmann::json;

WeightSpec WeightSpec::parse(std::string_view text) {
  if (text.empty() || text == "unit") return {};
  constexpr std::string_view prefix = "lognormal:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string sigma(text.substr(prefix.size()));
    std::size_t used = 0;
    double s = 0.0;
    try {
      s = std::stod(sigma, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == sigma.size() && s >= 0.0) return WeightSpec{s};
  }
  throw std::invalid_argument("weights must be `unit` or `lognormal:<sigma>`, got `" + std::string(text) + "`");
}

double WeightSpec::draw(std::mt19937_64& rng) const {
  if (lognormal_sigma <= 0.0) return 1.0;
  std::lognormal_distribution<double> dist(0.0, lognormal_sigma);
  return dist(rng);
}

std::string WeightSpec::to_string() const {
  if (lognormal_sigma <= 0.0) return "unit";
  std::ostringstream out;
  out << "lognormal:" << lognormal_sigma;
  return out.str();
}

WeightedGraph random_connected_graph(int n, std::size_t m, std::uint64_t seed, const WeightSpec& weights) {
  if (n < 2) throw std::invalid_argument("random graph needs n >= 2");
  const std::size_t max_edges = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  if (m + 1 < static_cast<std::size_t>(n) || m > max_edges) {
    throw std::invalid_argument("random graph needs n - 1 <= m <= n(n-1)/2");
  }
  std::mt19937_64 rng(seed);

  std::vector<Edge> edges;
  if (n == 2) {
    edges.emplace_back(0, 1);
  } else {
    std::uniform_int_distribution<int> label(0, n - 1);
    std::vector<int> code(static_cast<std::size_t>(n - 2));
    for (int& x : code) x = label(rng);
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (int x : code) ++degree[x];
    for (int x : code) {
      int leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      edges.emplace_back(leaf, x);
      --degree[leaf];
      --degree[x];
    }
    int a = -1;
    for (int v = 0; v < n; ++v) {
      if (degree[v] != 1) continue;
      if (a < 0) a = v;
      else edges.emplace_back(a, v);
    }
  }

  std::set<std::pair<int, int>> used;
  for (const Edge& e : edges) used.emplace(e.u, e.v);
  std::vector<Edge> pool;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!used.count({a, b})) pool.emplace_back(a, b);
  // Partial Fisher-Yates: the first (m - n + 1) pool slots become the extras.
  const std::size_t extra = m - static_cast<std::size_t>(n - 1);
  for (std::size_t i = 0; i < extra; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
    edges.push_back(pool[i]);
  }
  for (Edge& e : edges) e.weight = weights.draw(rng);
  return WeightedGraph(n, std::move(edges));
}

const MethodResult* RunResult::find(std::string_view method) const {
  for (const MethodResult& r : methods)
    if (r.method == method) return &r;
  return nullptr;
}

namespace {

json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

json optional_number(const std::optional<double>& v) {
  return v ? number_or_null(*v) : json(nullptr);
}

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::optional<double> finite_or_none(double v) {
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> names{"greedy", "convex", "exact", "random", "rounded"};
  return names;
}

std::set<std::string> method_set(const std::vector<std::string>& requested) {
  std::set<std::string> out;
  for (const std::string& m : requested) {
    if (m == "all") {
      out.insert(known_methods().begin(), known_methods().end());
      continue;
    }
    if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end()) {
      throw std::invalid_argument("unknown method `" + m + "`");
    }
    out.insert(m);
  }
  if (out.empty()) throw std::invalid_argument("no methods selected");
  return out;
}

void apply_certificate(RunResult& r, const Certificate& cert) {
  r.lower = finite_or_none(cert.lower);
  r.upper = finite_or_none(cert.upper);
  r.design_value = finite_or_none(cert.design_value);
  r.gap = finite_or_none(cert.additive_gap);
  r.ratio = finite_or_none(cert.ratio_bound);
  r.sources = cert.sources;
}

double tau_of(const WeightedGraph& base, const CandidateSet& cands, const std::vector<int>& chosen) {
  return tree_connectivity(with_candidates(base, cands, chosen)).value;
}

EspOptimum exact_optimum(const WeightedGraph& base, const CandidateSet& cands, std::size_t k,
                         std::uint64_t node_limit) {
  try {
    if (binomial(cands.size(), k) <= 1e6) return exhaustive_esp(base, cands, k);
    return branch_and_bound_esp(base, cands, k, node_limit);
  } catch (const GuardExceeded& e) {
    throw RunFailure(e.what());
  }
}

}  // namespace

json to_json(const RunResult& r, bool include_timing) {
  json methods = json::array();
  for (const MethodResult& m : r.methods) {
    json jm{{"method", m.method}, {"tau", number_or_null(m.tau)}, {"chosen", m.chosen}, {"status", m.status}};
    jm["time_ms"] = include_timing ? m.time_ms : 0.0;
    jm["budget"] = optional_number(m.budget);
    methods.push_back(std::move(jm));
  }
  return json{{"schema", r.schema},
              {"command", r.command},
              {"instance", {{"n", r.n}, {"m", r.m}, {"c", r.c}}},
              {"k", optional_number(r.k)},
              {"delta", optional_number(r.delta)},
              {"tau_init", r.tau_init},
              {"methods", std::move(methods)},
              {"lower", optional_number(r.lower)},
              {"upper", optional_number(r.upper)},
              {"design_value", optional_number(r.design_value)},
              {"gap", optional_number(r.gap)},
              {"ratio", optional_number(r.ratio)},
              {"sources", r.sources},
              {"solver_status", r.solver_status},
              {"outcome", r.outcome}};
}

RunResult run_result_from_json(const json& j) {
  RunResult r;
  r.schema = j.at("schema").get<int>();
  if (r.schema != 1) throw std::invalid_argument("unsupported report schema " + std::to_string(r.schema));
  r.command = j.at("command").get<std::string>();
  r.n = j.at("instance").at("n").get<int>();
  r.m = j.at("instance").at("m").get<std::size_t>();
  r.c = j.at("instance").at("c").get<std::size_t>();
  r.k = read_optional(j, "k");
  r.delta = read_optional(j, "delta");
  r.tau_init = j.at("tau_init").get<double>();
  for (const json& jm : j.at("methods")) {
    MethodResult m;
    m.method = jm.at("method").get<std::string>();
    m.tau = jm.at("tau").is_null() ? std::numeric_limits<double>::quiet_NaN() : jm.at("tau").get<double>();
    m.chosen = jm.at("chosen").get<std::vector<int>>();
    m.time_ms = jm.at("time_ms").get<double>();
    m.status = jm.at("status").get<std::string>();
    m.budget = read_optional(jm, "budget");
    r.methods.push_back(std::move(m));
  }
  r.lower = read_optional(j, "lower");
  r.upper = read_optional(j, "upper");
  r.design_value = read_optional(j, "design_value");
  r.gap = read_optional(j, "gap");
  r.ratio = read_optional(j, "ratio");
  r.sources = j.at("sources").get<std::vector<std::string>>();
  r.solver_status = j.at("solver_status").get<std::string>();
  r.outcome = j.at("outcome").get<std::string>();
  return r;
}

RunResult run_synth(const WeightedGraph& base, const CandidateSet& cands, std::size_t k,
                    const RunOptions& opts) {
  const std::set<std::string> methods = method_set(opts.methods);
  validate_candidates(base, cands);
  if (!is_connected(base)) throw std::invalid_argument("synth: base graph is disconnected");
  if (k > cands.size()) throw std::invalid_argument("synth: k exceeds the number of candidates");

  RunResult r;
  r.command = "synth";
  r.n = base.vertex_count();
  r.m = base.edge_count();
  r.c = cands.size();
  r.k = static_cast<double>(k);
  r.tau_init = tree_connectivity(base).value;

  // Greedy always runs: the certificate needs it.
  Stopwatch greedy_clock;
  const SelectionResult greedy = greedy_esp(base, cands, k);
  const double greedy_ms = greedy_clock.elapsed_ms();
  if (methods.count("greedy")) {
    r.methods.push_back({"greedy", greedy.tau_final, greedy.chosen, greedy_ms, "ok", std::nullopt});
  }

  double tau_cvx = -std::numeric_limits<double>::infinity();
  double cvx_upper = std::numeric_limits<double>::infinity();
  bool cvx_converged = true;
  std::optional<RelaxationSolution> relaxation;
  if (methods.count("convex") || methods.count("rounded")) {
    Stopwatch clock;
    relaxation = solve_relaxation(base, cands, static_cast<double>(k), opts.solver);
    const double solve_ms = clock.elapsed_ms();
    const std::vector<int> top = round_topk(relaxation->pi_star, k);
    tau_cvx = tau_of(base, cands, top);
    cvx_upper = relaxation->upper_envelope();
    cvx_converged = relaxation->status == SolverStatus::converged;
    r.solver_status = to_string(relaxation->status);
    if (methods.count("convex")) {
      r.methods.push_back({"convex", tau_cvx, top, clock.elapsed_ms(), "ok", std::nullopt});
      r.methods.push_back({"relaxation", relaxation->objective, {}, solve_ms, to_string(relaxation->status),
                           relaxation->budget()});
    }
  }

  if (methods.count("exact")) {
    Stopwatch clock;
    const EspOptimum opt = exact_optimum(base, cands, k, opts.exact_node_limit);
    r.methods.push_back({"exact", opt.value, opt.set, clock.elapsed_ms(), "ok", std::nullopt});
  }

  if (methods.count("random")) {
    Stopwatch clock;
    std::mt19937_64 rng(opts.seed);
    std::vector<int> idx(cands.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
      std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    const double tau = tau_of(base, cands, idx);
    r.methods.push_back({"random", tau, idx, clock.elapsed_ms(), "ok", std::nullopt});
  }

  if (methods.count("rounded")) {
    Stopwatch clock;
    std::optional<std::size_t> repair;
    if (opts.repair) repair = k;
    const std::vector<int> picked = round_randomized(relaxation->pi_star, opts.seed, repair);
    const double tau = tau_of(base, cands, picked);
    r.methods.push_back({"rounded", tau, picked, clock.elapsed_ms(), "ok", std::nullopt});
  }

  apply_certificate(r, esp_bounds(r.tau_init, greedy.tau_final, tau_cvx, cvx_upper, cvx_converged));
  return r;
}

RunResult run_sparsify(const WeightedGraph& base, const CandidateSet& removable, std::size_t k,
                       const RunOptions& opts) {
  const std::set<std::string> methods = method_set(opts.methods);
  for (const std::string& m : methods) {
    if (m != "greedy" && m != "convex" && m != "exact") {
      throw std::invalid_argument("sparsify supports greedy, convex and exact");
    }
  }
  if (!is_connected(base)) throw std::invalid_argument("sparsify: input graph is disconnected");
  const AdditionInstance inst = transform_minus_to_plus(base, removable, k);

  RunResult r;
  r.command = "sparsify";
  r.n = base.vertex_count();
  r.m = base.edge_count();
  r.c = removable.size();
  r.k = static_cast<double>(k);
  r.tau_init = tree_connectivity(base).value;

  const bool kept_connected = is_connected(inst.base);
  if (static_cast<std::size_t>(component_count(inst.base) - 1) > inst.budget) {
    // Every choice of kept edges leaves the graph in pieces.
    r.outcome = "infeasible";
    return r;
  }

  // Report removed candidates, not the kept ones.
  auto removed_from_kept = [&](const std::vector<int>& kept) {
    std::vector<int> removed;
    for (int i = 0; i < static_cast<int>(inst.candidates.size()); ++i)
      if (std::find(kept.begin(), kept.end(), i) == kept.end()) removed.push_back(i);
    return removed;
  };

  double best = -std::numeric_limits<double>::infinity();
  double tau_greedy = -std::numeric_limits<double>::infinity();
  double tau_cvx = -std::numeric_limits<double>::infinity();
  double cvx_upper = std::numeric_limits<double>::infinity();
  bool cvx_converged = true;

  if (methods.count("greedy")) {
    Stopwatch clock;
    GreedyOptions gopts;
    if (!kept_connected) {
      double wmax = 0.0;
      for (const Edge& e : base.edges()) wmax = std::max(wmax, e.weight);
      gopts.regularization = 1e-8 * wmax;
    }
    const SelectionResult sel = greedy_esp(inst.base, inst.candidates, inst.budget, gopts);
    const TreeConnectivity tc = tree_connectivity(with_candidates(inst.base, inst.candidates, sel.chosen));
    tau_greedy = tc.is_connected ? tc.value : -std::numeric_limits<double>::infinity();
    r.methods.push_back({"greedy", tc.value, removed_from_kept(sel.chosen), clock.elapsed_ms(),
                         tc.is_connected ? "ok" : "disconnected", std::nullopt});
    best = std::max(best, tau_greedy);
  }
  if (methods.count("convex")) {
    if (!kept_connected) {
      throw std::invalid_argument("sparsify: convex method needs the non-removable edges to stay connected");
    }
    Stopwatch clock;
    const RelaxationSolution sol = solve_relaxation(inst.base, inst.candidates,
                                                    static_cast<double>(inst.budget), opts.solver);
    const std::vector<int> top = round_topk(sol.pi_star, inst.budget);
    tau_cvx = tau_of(inst.base, inst.candidates, top);
    cvx_upper = sol.upper_envelope();
    cvx_converged = sol.status == SolverStatus::converged;
    r.solver_status = to_string(sol.status);
    r.methods.push_back({"convex", tau_cvx, removed_from_kept(top), clock.elapsed_ms(), "ok", std::nullopt});
    r.methods.push_back({"relaxation", sol.objective, {}, clock.elapsed_ms(), to_string(sol.status), sol.budget()});
    best = std::max(best, tau_cvx);
  }
  if (methods.count("exact")) {
    Stopwatch clock;
    EspOptimum opt;
    try {
      opt = exhaustive_esp(inst.base, inst.candidates, inst.budget);
    } catch (const GuardExceeded& e) {
      throw RunFailure(e.what());
    }
    r.methods.push_back({"exact", opt.value, removed_from_kept(opt.set), clock.elapsed_ms(),
                         opt.connected ? "ok" : "disconnected", std::nullopt});
    if (opt.connected) best = std::max(best, opt.value);
  }

  if (!std::isfinite(best)) {
    r.outcome = "infeasible";
    return r;
  }
  if (kept_connected && std::isfinite(tau_greedy)) {
    const double kept_tau = tree_connectivity(inst.base).value;
    Certificate cert = esp_bounds(kept_tau, tau_greedy, tau_cvx, cvx_upper, cvx_converged);
    // Removing edges can only lower the count.
    if (r.tau_init < cert.upper) {
      cert.upper = r.tau_init;
      cert.sources.back() = "upper:input_graph";
    }
    cert.lower = std::max(cert.lower, best);
    cert.design_value = cert.lower;
    cert.additive_gap = cert.upper - cert.design_value;
    cert.ratio_bound = cert.design_value > 0.0 ? cert.upper / cert.design_value
                                               : std::numeric_limits<double>::quiet_NaN();
    apply_certificate(r, cert);
  } else {
    Certificate cert;
    cert.lower = best;
    cert.upper = r.tau_init;
    cert.design_value = best;
    cert.additive_gap = cert.upper - best;
    cert.ratio_bound = best > 0.0 ? cert.upper / best : std::numeric_limits<double>::quiet_NaN();
    cert.sources = {"lower:best_design", "upper:input_graph"};
    apply_certificate(r, cert);
  }
  return r;
}

RunResult run_dual(const WeightedGraph& base, const CandidateSet& cands, double delta,
                   const RunOptions& opts, bool absolute_delta) {
  const std::set<std::string> methods = method_set(opts.methods);
  for (const std::string& m : methods) {
    if (m != "greedy" && m != "convex") throw std::invalid_argument("dual supports greedy and convex");
  }
  if (!is_connected(base)) throw std::invalid_argument("dual: base graph is disconnected");

  RunResult r;
  r.command = "dual";
  r.n = base.vertex_count();
  r.m = base.edge_count();
  r.c = cands.size();
  r.delta = delta;
  r.tau_init = tree_connectivity(base).value;

  Stopwatch greedy_clock;
  const DualSelectionResult dual = greedy_dual_esp(base, cands, delta, DualOptions{absolute_delta});
  const double greedy_ms = greedy_clock.elapsed_ms();
  if (dual.status == DualStatus::infeasible) {
    r.outcome = "infeasible";
    r.methods.push_back({"greedy", dual.selection.tau_final, dual.selection.chosen, greedy_ms, "infeasible",
                         std::nullopt});
    return r;
  }
  const double gain_target = std::max(0.0, dual.target - r.tau_init);
  const std::size_t k_greedy = dual.selection.chosen.size();
  const double gamma = k_greedy == 0 || gain_target <= 0.0 ? 1.0 : wolsey_gamma(gain_target, dual.phi_pre_terminal);
  if (methods.count("greedy")) {
    r.methods.push_back({"greedy", dual.selection.tau_final, dual.selection.chosen, greedy_ms, "ok", std::nullopt});
  }

  std::size_t k_cvx = k_greedy;
  double sum_pi = 0.0;
  if (methods.count("convex")) {
    Stopwatch clock;
    const RelaxationSolution sol = solve_dual_relaxation(base, cands, gain_target, opts.solver);
    r.solver_status = to_string(sol.status);
    if (sol.status == SolverStatus::infeasible) {
      r.outcome = "infeasible";
      return r;
    }
    const DualRounding rounding = round_dual(sol.pi_star, base, cands, gain_target);
    sum_pi = sol.budget();
    k_cvx = rounding.chosen.size();
    r.methods.push_back({"convex", r.tau_init + rounding.gain, rounding.chosen, clock.elapsed_ms(),
                         rounding.status == DualStatus::feasible ? "ok" : "infeasible", std::nullopt});
    r.methods.push_back({"relaxation", sol.objective, {}, clock.elapsed_ms(), to_string(sol.status), sum_pi});
  }
  Certificate cert = dual_bounds(k_greedy, k_cvx, sum_pi, gamma);
  apply_certificate(r, cert);
  return r;
}

namespace {

using ConfigValue = std::variant<double, std::string>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

ConfigValue parse_scalar(const std::string& token, std::size_t line) {
  if (token.size() >= 2 && token.front() == '"' && token.back() == '"') return token.substr(1, token.size() - 2);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size()) throw ParseError(line, "bad value `" + token + "`");
  return v;
}

std::vector<ConfigValue> parse_value(const std::string& raw, std::size_t line) {
  if (raw.empty()) throw ParseError(line, "missing value");
  if (raw.front() != '[') return {parse_scalar(raw, line)};
  if (raw.back() != ']') throw ParseError(line, "unterminated array");
  std::vector<ConfigValue> out;
  std::stringstream items(raw.substr(1, raw.size() - 2));
  std::string item;
  while (std::getline(items, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_scalar(item, line));
  }
  return out;
}

template <typename T>
std::vector<T> as_integers(const std::vector<ConfigValue>& values, const std::string& key) {
  std::vector<T> out;
  for (const ConfigValue& v : values) {
    const double* d = std::get_if<double>(&v);
    if (!d || *d < 0 || std::floor(*d) != *d) throw std::invalid_argument(key + " must be non-negative integers");
    out.push_back(static_cast<T>(*d));
  }
  return out;
}

double as_number(const std::vector<ConfigValue>& values, const std::string& key) {
  if (values.size() != 1 || !std::holds_alternative<double>(values[0])) {
    throw std::invalid_argument(key + " must be a number");
  }
  return std::get<double>(values[0]);
}

std::string as_string(const std::vector<ConfigValue>& values, const std::string& key) {
  if (values.size() != 1 || !std::holds_alternative<std::string>(values[0])) {
    throw std::invalid_argument(key + " must be a quoted string");
  }
  return std::get<std::string>(values[0]);
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

BenchConfig parse_bench_config(std::string_view text) {
  BenchConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty() || body.front() == '[') continue;  // blank lines and table headers
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected `key = value`");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::vector<ConfigValue> values = parse_value(trim(std::string_view(body).substr(eq + 1)), line_no);

    if (key == "n") cfg.n = as_integers<int>(values, key);
    else if (key == "m") cfg.m = as_integers<std::size_t>(values, key);
    else if (key == "k") cfg.k = as_integers<std::size_t>(values, key);
    else if (key == "trials") cfg.trials = static_cast<std::size_t>(as_integers<std::size_t>(values, key).at(0));
    else if (key == "seed") cfg.seed = as_integers<std::uint64_t>(values, key).at(0);
    else if (key == "weights") cfg.weights = WeightSpec::parse(as_string(values, key));
    else if (key == "tol") cfg.solver.tol = as_number(values, key);
    else if (key == "max_iters") cfg.solver.max_iters = static_cast<int>(as_number(values, key));
    else if (key == "exact_node_limit") cfg.exact_node_limit = static_cast<std::uint64_t>(as_number(values, key));
    else if (key == "methods") {
      cfg.methods.clear();
      for (const ConfigValue& v : values) {
        const std::string* s = std::get_if<std::string>(&v);
        if (!s) throw std::invalid_argument("methods must be quoted strings");
        cfg.methods.push_back(*s);
      }
      method_set(cfg.methods);
    } else {
      throw ParseError(line_no, "unknown key `" + key + "`");
    }
  }
  if (cfg.n.empty() || cfg.m.empty() || cfg.k.empty()) throw std::invalid_argument("n, m and k must be nonempty");
  return cfg;
}

std::string run_bench(const BenchConfig& config, bool include_timing) {
  std::ostringstream csv;
  csv << kBenchCsvHeader << "\n";
  RunOptions opts;
  opts.methods = config.methods;
  opts.solver = config.solver;
  opts.exact_node_limit = config.exact_node_limit;
  for (int n : config.n) {
    for (std::size_t m : config.m) {
      for (std::size_t k : config.k) {
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
          const std::uint64_t seed = config.seed + trial;
          const WeightedGraph g = random_connected_graph(n, m, seed, config.weights);
          const CandidateSet cands = complement_candidates(g);
          opts.seed = seed;
          const RunResult r = run_synth(g, cands, k, opts);
          auto row = [&](const std::string& method, double tau, double ms) {
            csv << n << ',' << m << ',' << k << ',' << trial << ',' << method << ',' << csv_number(tau) << ','
                << csv_number(r.lower.value_or(std::nan(""))) << ','
                << csv_number(r.upper.value_or(std::nan(""))) << ','
                << csv_number(include_timing ? ms : 0.0) << "\n";
          };
          row("init", r.tau_init, 0.0);
          for (const MethodResult& mr : r.methods) row(mr.method, mr.tau, mr.time_ms);
        }
      }
    }
  }
  return csv.str();
}

}  // namespace treeopt
