#include "treeopt/convex.hpp"

#include "treeopt/treeconn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

namespace treeopt {

std::string to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::converged: return "converged";
    case SolverStatus::max_iters_reached: return "max_iters_reached";
    case SolverStatus::stalled: return "stalled";
    case SolverStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

namespace {

/// Precomputed pieces of L(pi) for one (base, candidates) pair.
class RelaxationProblem {
 public:
  RelaxationProblem(const WeightedGraph& base, const CandidateSet& cands)
      : cands_(cands), n_(base.vertex_count()), anchor_(default_anchor(base.vertex_count())) {
    validate_candidates(base, cands);
    base_lap_ = reduced_laplacian(base, anchor_).matrix;
    incidence_.resize(n_ - 1, static_cast<Eigen::Index>(cands.size()));
    weights_.resize(static_cast<Eigen::Index>(cands.size()));
    for (std::size_t j = 0; j < cands.size(); ++j) {
      incidence_.col(static_cast<Eigen::Index>(j)) = edge_vector(cands[j], anchor_, n_);
      weights_(static_cast<Eigen::Index>(j)) = cands[j].weight;
    }
  }

  Eigen::Index size() const { return weights_.size(); }

  Eigen::MatrixXd laplacian(const Eigen::VectorXd& pi) const {
    if (pi.size() != size()) throw DimensionMismatch("selector length != candidate count");
    Eigen::MatrixXd lap = base_lap_;
    for (Eigen::Index j = 0; j < size(); ++j)
      if (pi(j) != 0.0) add_edge_term(lap, cands_[static_cast<std::size_t>(j)], anchor_, pi(j));
    return lap;
  }

  ValueGradient evaluate(const Eigen::VectorXd& pi) const {
    const Cholesky f = cholesky(laplacian(pi));
    ValueGradient out;
    out.value = logdet(f);
    const Eigen::MatrixXd x = f.matrix_l().triangularView<Eigen::Lower>().solve(incidence_);
    out.grad = x.colwise().squaredNorm().transpose().cwiseProduct(weights_);
    return out;
  }

 private:
  const CandidateSet& cands_;
  int n_;
  Vertex anchor_;
  Eigen::MatrixXd base_lap_;
  Eigen::MatrixXd incidence_;
  Eigen::VectorXd weights_;
};

using Objective = std::function<ValueGradient(const Eigen::VectorXd&)>;
using Projection = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
// max over the feasible set of g . y
using LinearMax = std::function<double(const Eigen::VectorXd&)>;

ValueGradient safe_evaluate(const Objective& objective, const Eigen::VectorXd& x) {
  try {
    return objective(x);
  } catch (const NotPositiveDefinite&) {
    return {-std::numeric_limits<double>::infinity(), Eigen::VectorXd::Zero(x.size())};
  }
}

RelaxationSolution projected_ascent(const Objective& objective, const Projection& project,
                                    const LinearMax& linear_max, const Eigen::VectorXd& start,
                                    const SolverOptions& opts) {
  RelaxationSolution sol;
  Eigen::VectorXd x = project(start);
  ValueGradient cur = safe_evaluate(objective, x);
  if (!std::isfinite(cur.value)) {
    // Start point sits on a singular L(pi); any feasible interior point works.
    x = project(Eigen::VectorXd::Constant(x.size(), 0.5));
    cur = safe_evaluate(objective, x);
    if (!std::isfinite(cur.value)) {
      throw NotPositiveDefinite("relaxation: L(pi) is singular at the start point");
    }
  }

  double step = opts.initial_step;
  sol.status = SolverStatus::max_iters_reached;
  int it = 0;
  for (; it < opts.max_iters; ++it) {
    sol.stationarity = (x - project(x + cur.grad)).norm();
    if (sol.stationarity <= opts.tol) {
      sol.status = SolverStatus::converged;
      break;
    }
    double t = opts.spectral_steps ? step : opts.initial_step;
    Eigen::VectorXd next;
    ValueGradient trial;
    bool accepted = false;
    while (t > 1e-20) {
      next = project(x + t * cur.grad);
      trial = safe_evaluate(objective, next);
      if (trial.value >= cur.value + opts.armijo * cur.grad.dot(next - x)) {
        accepted = true;
        break;
      }
      t *= opts.shrink;
    }
    if (!accepted) {
      sol.status = SolverStatus::stalled;
      break;
    }
    const Eigen::VectorXd s = next - x;
    const double sy = s.dot(trial.grad - cur.grad);
    // Concave objective: s.y <= 0 along ascent steps.
    step = sy < 0.0 ? std::clamp(s.squaredNorm() / -sy, 1e-10, 1e10) : opts.initial_step;
    x = std::move(next);
    cur = std::move(trial);
  }
  if (sol.status != SolverStatus::converged) sol.stationarity = (x - project(x + cur.grad)).norm();
  sol.iterations = it;
  sol.pi_star = x;
  sol.objective = cur.value;
  sol.duality_gap = std::max(0.0, linear_max(cur.grad) - cur.grad.dot(x));
  return sol;
}

// max g . y over { 0 <= y <= 1, sum y = budget } (or <= budget when only_positive).
double capped_simplex_linear_max(const Eigen::VectorXd& g, double budget, bool only_positive) {
  std::vector<double> vals(g.data(), g.data() + g.size());
  std::sort(vals.begin(), vals.end(), std::greater<>());
  double left = budget, total = 0.0;
  for (double v : vals) {
    if (left <= 0.0) break;
    if (only_positive && v <= 0.0) break;
    const double take = std::min(1.0, left);
    total += take * v;
    left -= take;
  }
  return total;
}

void check_selector(const Eigen::VectorXd& pi, std::size_t c) {
  if (static_cast<std::size_t>(pi.size()) != c) throw DimensionMismatch("selector length != candidate count");
  if ((pi.array() < 0.0).any() || (pi.array() > 1.0).any()) {
    throw std::domain_error("selector entries must lie in [0, 1]");
  }
}

}  // namespace

ReducedLaplacian build_l_pi(const WeightedGraph& base, const CandidateSet& cands,
                            const Eigen::VectorXd& pi) {
  check_selector(pi, cands.size());
  RelaxationProblem problem(base, cands);
  return ReducedLaplacian{default_anchor(base.vertex_count()), problem.laplacian(pi)};
}

ValueGradient objective_gradient(const WeightedGraph& base, const CandidateSet& cands,
                                 const Eigen::VectorXd& pi) {
  check_selector(pi, cands.size());
  return RelaxationProblem(base, cands).evaluate(pi);
}

Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& y, double budget) {
  const auto c = static_cast<double>(y.size());
  if (!(budget >= 0.0 && budget <= c)) throw std::domain_error("capped simplex budget out of range");
  if (budget == 0.0) return Eigen::VectorXd::Zero(y.size());
  if (budget == c) return Eigen::VectorXd::Ones(y.size());

  auto shifted = [&](double lambda) { return (y.array() - lambda).min(1.0).max(0.0).matrix().eval(); };
  double lo = y.minCoeff() - 1.0;  // sum = c
  double hi = y.maxCoeff();        // sum = 0
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (shifted(mid).sum() > budget) lo = mid;
    else hi = mid;
  }
  Eigen::VectorXd x = shifted(0.5 * (lo + hi));

  // Spread the leftover bisection error across the free coordinates.
  const double err = budget - x.sum();
  Eigen::Index free = ((x.array() > 0.0) && (x.array() < 1.0)).count();
  if (free > 0 && err != 0.0) {
    const double shift = err / static_cast<double>(free);
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (x(i) > 0.0 && x(i) < 1.0) x(i) = std::clamp(x(i) + shift, 0.0, 1.0);
  }
  return x;
}

Eigen::VectorXd project_capped_simplex_le(const Eigen::VectorXd& y, double budget) {
  Eigen::VectorXd clipped = y.cwiseMax(0.0).cwiseMin(1.0);
  if (clipped.sum() <= budget) return clipped;
  return project_capped_simplex(y, budget);
}

RelaxationSolution solve_relaxation(const WeightedGraph& base, const CandidateSet& cands, double k,
                                    const SolverOptions& opts,
                                    const std::optional<Eigen::VectorXd>& warm_start) {
  const auto c = static_cast<double>(cands.size());
  if (!(k >= 0.0 && k <= c)) throw std::invalid_argument("solve_relaxation: budget must be in [0, c]");
  if (!is_connected(base)) throw std::invalid_argument("solve_relaxation: base graph is disconnected");
  RelaxationProblem problem(base, cands);
  Eigen::VectorXd start = warm_start.value_or(Eigen::VectorXd::Constant(problem.size(), c > 0 ? k / c : 0.0));
  RelaxationSolution sol = projected_ascent(
      [&](const Eigen::VectorXd& pi) { return problem.evaluate(pi); },
      [k](const Eigen::VectorXd& y) { return project_capped_simplex(y, k); },
      [k](const Eigen::VectorXd& g) { return capped_simplex_linear_max(g, k, false); }, start, opts);
  sol.budget_residual = std::abs(sol.pi_star.sum() - k);
  return sol;
}

RelaxationSolution solve_penalized(const WeightedGraph& base, const CandidateSet& cands,
                                   double lambda, const SolverOptions& opts) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("solve_penalized: lambda must be non-negative");
  if (!is_connected(base)) throw std::invalid_argument("solve_penalized: base graph is disconnected");
  RelaxationProblem problem(base, cands);
  auto objective = [&](const Eigen::VectorXd& pi) {
    ValueGradient vg = problem.evaluate(pi);
    vg.value -= lambda * pi.sum();
    vg.grad.array() -= lambda;
    return vg;
  };
  auto box = [](const Eigen::VectorXd& y) { return y.cwiseMax(0.0).cwiseMin(1.0).eval(); };
  auto box_max = [](const Eigen::VectorXd& g) { return g.cwiseMax(0.0).sum(); };
  return projected_ascent(objective, box, box_max, Eigen::VectorXd::Constant(problem.size(), 0.5), opts);
}

RelaxationSolution solve_relaxation_matroid(const WeightedGraph& base, const CandidateSet& cands,
                                            const PartitionMatroid& matroid,
                                            const SolverOptions& opts) {
  validate_matroid(matroid, cands.size());
  if (!is_connected(base)) throw std::invalid_argument("solve_relaxation_matroid: base graph is disconnected");
  RelaxationProblem problem(base, cands);

  auto gather = [](const Eigen::VectorXd& v, const std::vector<int>& idx) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(idx[i]);
    return out;
  };
  auto project = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd x(y.size());
    for (std::size_t b = 0; b < matroid.blocks.size(); ++b) {
      const auto& idx = matroid.blocks[b];
      if (idx.empty()) continue;
      const Eigen::VectorXd px =
          project_capped_simplex_le(gather(y, idx), static_cast<double>(matroid.budgets[b]));
      for (std::size_t i = 0; i < idx.size(); ++i) x(idx[i]) = px(static_cast<Eigen::Index>(i));
    }
    return x;
  };
  auto linear_max = [&](const Eigen::VectorXd& g) {
    double total = 0.0;
    for (std::size_t b = 0; b < matroid.blocks.size(); ++b)
      total += capped_simplex_linear_max(gather(g, matroid.blocks[b]),
                                         static_cast<double>(matroid.budgets[b]), true);
    return total;
  };
  Eigen::VectorXd start = Eigen::VectorXd::Zero(problem.size());
  for (std::size_t b = 0; b < matroid.blocks.size(); ++b) {
    const auto& idx = matroid.blocks[b];
    for (int i : idx) start(i) = static_cast<double>(matroid.budgets[b]) / static_cast<double>(idx.size());
  }
  RelaxationSolution sol = projected_ascent(
      [&](const Eigen::VectorXd& pi) { return problem.evaluate(pi); }, project, linear_max, start, opts);
  double excess = 0.0;
  for (std::size_t b = 0; b < matroid.blocks.size(); ++b) {
    excess = std::max(excess, gather(sol.pi_star, matroid.blocks[b]).sum() -
                                  static_cast<double>(matroid.budgets[b]));
  }
  sol.budget_residual = excess;
  return sol;
}

RelaxationSolution solve_dual_relaxation(const WeightedGraph& base, const CandidateSet& cands,
                                         double delta, const SolverOptions& opts) {
  if (!(delta >= 0.0)) throw std::invalid_argument("solve_dual_relaxation: delta must be non-negative");
  constexpr double kBudgetTol = 1e-6;
  constexpr double kSlack = 1e-9;
  const auto c = static_cast<double>(cands.size());
  const double tau_init = tree_connectivity(base).value;
  const double target = tau_init + delta;

  RelaxationSolution best;
  if (delta <= 0.0) {
    best = solve_relaxation(base, cands, 0.0, opts);
    return best;
  }
  RelaxationSolution full = solve_relaxation(base, cands, c, opts);
  if (full.objective < target - kSlack) {
    full.status = SolverStatus::infeasible;
    return full;
  }

  best = full;
  double lo = 0.0, hi = c;
  Eigen::VectorXd warm = full.pi_star;
  while (hi - lo > kBudgetTol) {
    const double mid = 0.5 * (lo + hi);
    const Eigen::VectorXd start = project_capped_simplex(warm, mid);
    RelaxationSolution sol = solve_relaxation(base, cands, mid, opts, start);
    if (sol.objective >= target - kSlack) {
      hi = mid;
      best = sol;
      warm = sol.pi_star;
    } else {
      lo = mid;
    }
  }
  return best;
}

std::vector<int> round_topk(const Eigen::VectorXd& pi_star, std::size_t k) {
  if (k > static_cast<std::size_t>(pi_star.size())) throw std::invalid_argument("round_topk: k exceeds c");
  std::vector<int> order(static_cast<std::size_t>(pi_star.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return pi_star(a) > pi_star(b); });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<int> round_randomized(const Eigen::VectorXd& pi_star, std::uint64_t seed,
                                  std::optional<std::size_t> repair_to) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> picked;
  std::vector<char> in(static_cast<std::size_t>(pi_star.size()), 0);
  for (Eigen::Index i = 0; i < pi_star.size(); ++i) {
    if (unit(rng) < pi_star(i)) {
      picked.push_back(static_cast<int>(i));
      in[static_cast<std::size_t>(i)] = 1;
    }
  }
  if (!repair_to) return picked;

  const std::size_t want = std::min(*repair_to, in.size());
  std::vector<int> order(in.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return pi_star(a) > pi_star(b); });
  for (auto it = order.begin(); picked.size() < want && it != order.end(); ++it) {
    if (!in[*it]) {
      in[*it] = 1;
      picked.push_back(*it);
    }
  }
  for (auto it = order.rbegin(); picked.size() > want && it != order.rend(); ++it) {
    if (in[*it]) {
      in[*it] = 0;
      picked.erase(std::find(picked.begin(), picked.end(), *it));
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

DualRounding round_dual(const Eigen::VectorXd& pi_star, const WeightedGraph& base,
                        const CandidateSet& cands, double delta) {
  if (static_cast<std::size_t>(pi_star.size()) != cands.size()) {
    throw DimensionMismatch("round_dual: selector length != candidate count");
  }
  validate_candidates(base, cands);
  if (!is_connected(base)) throw std::invalid_argument("round_dual: base graph is disconnected");
  constexpr double kSlack = 1e-9;
  std::vector<int> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return pi_star(a) > pi_star(b); });

  const int n = base.vertex_count();
  const Vertex anchor = default_anchor(n);
  Cholesky f = laplacian_factor(base);
  DualRounding out;
  for (int i : order) {
    if (out.gain >= delta - kSlack) break;
    const Edge& e = cands[static_cast<std::size_t>(i)];
    const Eigen::VectorXd a = edge_vector(e, anchor, n);
    out.gain += std::log1p(effective_resistance(f, a, e.weight));
    f.rank_one_update(std::sqrt(e.weight) * a);
    out.chosen.push_back(i);
  }
  out.status = out.gain >= delta - kSlack ? DualStatus::feasible : DualStatus::infeasible;
  return out;
}

}  // namespace treeopt
