#include "treeopt/treeconn.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace treeopt {

namespace {
constexpr double kBridgeThreshold = 1.0 - 1e-9;
}

Cholesky laplacian_factor(const WeightedGraph& g) { return cholesky(reduced_laplacian(g).matrix); }

TreeConnectivity tree_connectivity(const WeightedGraph& g) {
  if (!is_connected(g)) return {0.0, false};
  return {logdet(laplacian_factor(g)), true};
}

double tree_count(const WeightedGraph& g) {
  const TreeConnectivity tc = tree_connectivity(g);
  return tc.is_connected ? std::exp(tc.value) : 0.0;
}

double effective_resistance(const Cholesky& f, const Eigen::VectorXd& a, double w) {
  return w * forward_solve(f, a).squaredNorm();
}

double effective_resistance(const Cholesky& f, const Edge& e, Vertex anchor) {
  const int n = static_cast<int>(f.dim()) + 1;
  return effective_resistance(f, edge_vector(e, anchor, n), e.weight);
}

double tau_after_add(const WeightedGraph& g, const Cholesky& f, double tau, const Edge& e) {
  if (g.has_edge(e.u, e.v)) throw std::invalid_argument("tau_after_add: edge already present");
  const double reff = effective_resistance(f, e, default_anchor(g.vertex_count()));
  return tau + std::log1p(reff);
}

TreeConnectivity tau_after_remove(const WeightedGraph& g, const Cholesky& f, double tau,
                                  const Edge& e) {
  auto idx = g.find_edge(e.u, e.v);
  if (!idx) throw std::invalid_argument("tau_after_remove: edge not in graph");
  // The graph's own weight is what leaves the Laplacian.
  const Edge& present = g.edge(*idx);
  const double reff = effective_resistance(f, present, default_anchor(g.vertex_count()));
  if (reff >= kBridgeThreshold) return {0.0, false};
  return {tau + std::log1p(-reff), true};
}

double expected_tree_count(const WeightedGraph& g0, const std::vector<EdgeProbability>& probs) {
  const std::size_t m = g0.edge_count();
  if (probs.size() != m) throw std::invalid_argument("expected_tree_count: need one probability per edge");
  std::vector<double> scale(m, -1.0);
  for (const EdgeProbability& ep : probs) {
    if (ep.edge_index >= m) throw std::out_of_range("expected_tree_count: edge index out of range");
    if (scale[ep.edge_index] >= 0.0) throw std::invalid_argument("expected_tree_count: duplicate edge index");
    if (!(ep.p >= 0.0 && ep.p <= 1.0)) throw std::domain_error("probability outside [0, 1]");
    scale[ep.edge_index] = ep.p;
  }

  // Zero-probability edges carry zero weight, so they do not count for connectivity.
  std::vector<Edge> support;
  for (std::size_t i = 0; i < m; ++i)
    if (scale[i] > 0.0) support.push_back(g0.edge(i));
  const int n = g0.vertex_count();
  if (!is_connected(WeightedGraph(n, support))) return 0.0;

  const Vertex anchor = default_anchor(n);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n - 1, n - 1);
  for (std::size_t i = 0; i < m; ++i)
    if (scale[i] > 0.0) add_edge_term(lap, g0.edge(i), anchor, scale[i]);
  try {
    return std::exp(logdet(cholesky(lap)));
  } catch (const NotPositiveDefinite&) {
    // Connected but with near-zero probabilities; fall back to LU.
    return std::max(0.0, lap.partialPivLu().determinant());
  }
}

}  // namespace treeopt
