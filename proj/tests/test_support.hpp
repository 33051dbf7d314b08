#pragma once

// Random instance generators shared by the unit and acceptance suites.

#include "treeopt/graph.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace treeopt::testing {

inline std::vector<Edge> all_pairs(int n) {
  std::vector<Edge> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) out.emplace_back(a, b);
  return out;
}

inline double random_weight(std::mt19937_64& rng, bool weighted) {
  if (!weighted) return 1.0;
  std::uniform_real_distribution<double> w(0.2, 3.0);
  return w(rng);
}

/// Random spanning tree (each vertex attaches to an earlier one) plus extra
/// random pairs, up to m edges total.
inline WeightedGraph random_connected(std::mt19937_64& rng, int n, std::size_t m, bool weighted = true) {
  std::vector<Edge> edges;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    edges.emplace_back(perm[i], perm[parent(rng)], random_weight(rng, weighted));
  }
  std::vector<Edge> pool;
  for (const Edge& e : all_pairs(n)) {
    bool present = std::any_of(edges.begin(), edges.end(), [&](const Edge& f) { return f.same_pair(e); });
    if (!present) pool.push_back(e);
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  for (std::size_t i = 0; i < pool.size() && edges.size() < m; ++i) {
    pool[i].weight = random_weight(rng, weighted);
    edges.push_back(pool[i]);
  }
  return WeightedGraph(n, std::move(edges));
}

/// Up to c absent pairs as candidates.
inline CandidateSet random_candidates(std::mt19937_64& rng, const WeightedGraph& g, std::size_t c,
                                      bool weighted = true) {
  std::vector<Edge> pool;
  for (const Edge& e : all_pairs(g.vertex_count()))
    if (!g.has_edge(e.u, e.v)) pool.push_back(e);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > c) pool.resize(c);
  for (Edge& e : pool) e.weight = random_weight(rng, weighted);
  return CandidateSet{pool, CandidateOrigin::addition};
}

inline Eigen::MatrixXd random_spd(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = z(rng);
  return a * a.transpose() + n * Eigen::MatrixXd::Identity(n, n);
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = z(rng);
  return v;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace treeopt::testing
