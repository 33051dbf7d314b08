#pragma once

// Exponential-time reference implementations. They trade speed for obviousness
// and are meant for cross-checking the fast paths on small instances.

#include "treeopt/graph.hpp"
#include "treeopt/greedy.hpp"
#include "treeopt/treeconn.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace treeopt {

class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct SpanningTreeList {
  std::vector<std::vector<int>> trees;  // edge indices into the graph's edge list
  std::vector<double> values;           // product of edge weights per tree

  double total() const;
};

/// Deletion-contraction recursion. Requires n <= 10 and m <= 20.
SpanningTreeList enumerate_spanning_trees(const WeightedGraph& g);

/// Filters every (n-1)-subset of edges for acyclicity. Same guard.
SpanningTreeList enumerate_spanning_trees_by_subsets(const WeightedGraph& g);

struct EspOptimum {
  double value = 0.0;  // tree connectivity of base + set
  bool connected = false;
  std::vector<int> set;  // ascending candidate ids
};

/// Scores every k-subset from scratch. Ties keep the lexicographically smallest
/// set. Requires C(c, k) <= 1e6.
EspOptimum exhaustive_esp(const WeightedGraph& base, const CandidateSet& cands, std::size_t k);

/// Exact optimum by depth-first search with the bound tau(S) + sum of the top
/// remaining single-edge gains at S. Needs a connected base. Throws
/// GuardExceeded after node_limit search nodes.
EspOptimum branch_and_bound_esp(const WeightedGraph& base, const CandidateSet& cands,
                                std::size_t k, std::uint64_t node_limit = 50'000'000);

/// Best independent set of a partition matroid by enumerating all 2^c subsets (c <= 20).
EspOptimum exhaustive_matroid_esp(const WeightedGraph& base, const CandidateSet& cands,
                                  const PartitionMatroid& matroid);

struct DualOptimum {
  bool feasible = false;
  std::size_t k_opt = 0;
  std::vector<int> set;
};

/// Smallest set whose gain reaches delta (within 1e-9). Requires c <= 20.
DualOptimum exhaustive_dual_esp(const WeightedGraph& base, const CandidateSet& cands, double delta);

/// Sum over all 2^m edge subsets of P(subset) * t_w(subset). Requires m <= 20.
double expected_tree_count_bruteforce(const WeightedGraph& g0, const std::vector<EdgeProbability>& probs);

struct DetExpectation {
  double lhs = 0.0;  // E[det(sum_i s_i y_i z_i^T)], s_i ~ Bernoulli(p_i)
  double rhs = 0.0;  // det(sum_i p_i y_i z_i^T)
};

/// Requires m <= 12 pairs of dimension <= 4.
DetExpectation expected_det_bruteforce(const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& pairs,
                                       const std::vector<double>& probs);

double binomial(std::size_t n, std::size_t k);

}  // namespace treeopt
