#pragma once

#include "treeopt/graph.hpp"
#include "treeopt/greedy.hpp"
#include "treeopt/linalg.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace treeopt {

enum class SolverStatus { converged, max_iters_reached, stalled, infeasible };

std::string to_string(SolverStatus status);

struct SolverOptions {
  double tol = 1e-6;
  int max_iters = 2000;
  double armijo = 1e-4;
  double shrink = 0.5;
  double initial_step = 1.0;
  // Barzilai-Borwein trial steps after the first iteration; Armijo still guards every step.
  bool spectral_steps = true;
};

/// Fractional edge selection. pi_star lies in [0, 1]^c.
struct RelaxationSolution {
  Eigen::VectorXd pi_star;
  double objective = 0.0;      // log det L(pi*) (minus the penalty for the l1 variant)
  int iterations = 0;
  double stationarity = 0.0;   // || pi - P(pi + grad) ||
  double budget_residual = 0.0;
  double duality_gap = 0.0;    // max over the feasible set of grad . (y - pi)
  SolverStatus status = SolverStatus::converged;

  double budget() const { return pi_star.sum(); }
  /// objective + duality_gap, a valid upper bound on the relaxation optimum by concavity.
  double upper_envelope() const { return objective + duality_gap; }
};

/// L(pi) = L_base + sum_j pi_j w_j a_j a_j^T at the default anchor.
ReducedLaplacian build_l_pi(const WeightedGraph& base, const CandidateSet& cands,
                            const Eigen::VectorXd& pi);

struct ValueGradient {
  double value = 0.0;
  Eigen::VectorXd grad;
};

/// log det L(pi) and its gradient w_j a_j^T L(pi)^{-1} a_j (one factorization, c solves).
ValueGradient objective_gradient(const WeightedGraph& base, const CandidateSet& cands,
                                 const Eigen::VectorXd& pi);

/// Euclidean projection onto { 0 <= x <= 1, sum x = budget }.
Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& y, double budget);

/// Euclidean projection onto { 0 <= x <= 1, sum x <= budget }.
Eigen::VectorXd project_capped_simplex_le(const Eigen::VectorXd& y, double budget);

/// maximize log det L(pi) s.t. sum pi = k, 0 <= pi <= 1.
RelaxationSolution solve_relaxation(const WeightedGraph& base, const CandidateSet& cands,
                                    double k, const SolverOptions& opts = {},
                                    const std::optional<Eigen::VectorXd>& warm_start = std::nullopt);

/// maximize log det L(pi) - lambda * sum pi over the unit box.
RelaxationSolution solve_penalized(const WeightedGraph& base, const CandidateSet& cands,
                                   double lambda, const SolverOptions& opts = {});

/// maximize log det L(pi) s.t. per-block sums <= budgets, 0 <= pi <= 1.
RelaxationSolution solve_relaxation_matroid(const WeightedGraph& base, const CandidateSet& cands,
                                            const PartitionMatroid& matroid,
                                            const SolverOptions& opts = {});

/// minimize sum pi s.t. log det L(pi) >= tau_init + delta, by bisection on the
/// budget of solve_relaxation (to 1e-6). Infeasible deltas return status infeasible.
RelaxationSolution solve_dual_relaxation(const WeightedGraph& base, const CandidateSet& cands,
                                         double delta, const SolverOptions& opts = {});

/// Indices of the k largest entries, ties to the lower index, returned ascending.
std::vector<int> round_topk(const Eigen::VectorXd& pi_star, std::size_t k);

/// Independent Bernoulli(pi_i) draws. With repair_to set, adds the highest-pi
/// unpicked or drops the lowest-pi picked entries until exactly that many remain.
std::vector<int> round_randomized(const Eigen::VectorXd& pi_star, std::uint64_t seed,
                                  std::optional<std::size_t> repair_to = std::nullopt);

struct DualRounding {
  DualStatus status = DualStatus::feasible;
  std::vector<int> chosen;  // in pick order
  double gain = 0.0;
};

/// Walks candidates by decreasing pi* and stops once the gain reaches delta.
DualRounding round_dual(const Eigen::VectorXd& pi_star, const WeightedGraph& base,
                        const CandidateSet& cands, double delta);

}  // namespace treeopt
