#pragma once

#include "treeopt/graph.hpp"
#include "treeopt/linalg.hpp"

#include <vector>

namespace treeopt {

/// Natural log of the weighted spanning-tree count. Disconnected graphs report
/// value 0 with is_connected == false; branch on the flag, not on the value.
struct TreeConnectivity {
  double value = 0.0;
  bool is_connected = false;
};

struct EdgeProbability {
  std::size_t edge_index = 0;
  double p = 1.0;
};

/// Weighted number of spanning trees, det of the reduced Laplacian. Overflows
/// once the log count passes ~700; prefer tree_connectivity for large graphs.
double tree_count(const WeightedGraph& g);

TreeConnectivity tree_connectivity(const WeightedGraph& g);

/// Cholesky factor of the reduced Laplacian at the default anchor.
Cholesky laplacian_factor(const WeightedGraph& g);

/// w * a^T L^{-1} a, via one forward solve against the factor.
double effective_resistance(const Cholesky& f, const Eigen::VectorXd& a, double w);

/// Same as above for an edge, building its incidence vector at the given anchor.
double effective_resistance(const Cholesky& f, const Edge& e, Vertex anchor);

/// Tree connectivity after adding e, using log(1 + w Reff).
double tau_after_add(const WeightedGraph& g, const Cholesky& f, double tau, const Edge& e);

/// Tree connectivity after removing e, using log(1 - w Reff). Bridges
/// (w Reff >= 1 - 1e-9) give is_connected == false.
TreeConnectivity tau_after_remove(const WeightedGraph& g, const Cholesky& f, double tau,
                                  const Edge& e);

/// Expected weighted tree count when edge i is kept independently with probability p_i.
double expected_tree_count(const WeightedGraph& g0, const std::vector<EdgeProbability>& probs);

}  // namespace treeopt
