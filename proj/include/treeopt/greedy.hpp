#pragma once

#include "treeopt/graph.hpp"
#include "treeopt/linalg.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace treeopt {

/// Disjoint candidate blocks, each with its own cardinality budget.
struct PartitionMatroid {
  std::vector<std::vector<int>> blocks;
  std::vector<std::size_t> budgets;
};

/// Blocks must partition [0, c) and budgets must fit their blocks.
void validate_matroid(const PartitionMatroid& matroid, std::size_t candidate_count);

struct SelectionResult {
  std::vector<int> chosen;  // pick order
  double tau_init = 0.0;
  double tau_final = 0.0;
  std::vector<double> gain_sequence;
};

struct BestEdge {
  int index = -1;
  double reff = 0.0;  // w * Reff of the winner
  double gain = 0.0;  // log(1 + reff)
};

/// Candidate in `remaining` with the largest w * Reff. Ties go to the lowest index.
BestEdge best_edge(const Cholesky& f, const CandidateSet& cands, std::span<const int> remaining,
                   Vertex anchor);

struct GreedyOptions {
  // Re-evaluate only the stale leader each round. Same result except on exact ties.
  bool lazy = false;
  // Added to the diagonal of the initial Laplacian so disconnected bases can be
  // grown. When nonzero, gains are measured on the shifted matrix and tau values
  // are recomputed from scratch.
  double regularization = 0.0;
};

/// Picks k candidates one at a time by largest effective resistance, keeping
/// the Cholesky factor current with rank-one updates.
SelectionResult greedy_esp(const WeightedGraph& base, const CandidateSet& cands, std::size_t k,
                           const GreedyOptions& opts = {});

SelectionResult greedy_matroid_esp(const WeightedGraph& base, const CandidateSet& cands,
                                   const PartitionMatroid& matroid, const GreedyOptions& opts = {});

/// At most d candidates touching v and at most k - d others.
PartitionMatroid degree_cap_matroid(const CandidateSet& cands, Vertex v, std::size_t d,
                                    std::size_t k);

enum class DualStatus { feasible, infeasible };

struct DualSelectionResult {
  DualStatus status = DualStatus::feasible;
  SelectionResult selection;
  double target = 0.0;            // tree-connectivity the loop tried to reach
  double achieved_gain = 0.0;     // tau_final - tau_init
  double phi_pre_terminal = 0.0;  // gain one step before termination
};

struct DualOptions {
  // Compare the raw log det against delta instead of tau_init + delta.
  bool absolute_delta = false;
};

/// Adds best edges until the gain reaches delta (within 1e-9) or candidates run out.
DualSelectionResult greedy_dual_esp(const WeightedGraph& base, const CandidateSet& cands,
                                    double delta, const DualOptions& opts = {});

}  // namespace treeopt
