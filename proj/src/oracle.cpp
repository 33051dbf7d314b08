#include "treeopt/oracle.hpp"

#include "treeopt/linalg.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace treeopt {

namespace {

void check_tree_guard(const WeightedGraph& g) {
  if (g.vertex_count() > 10 || g.edge_count() > 20) {
    throw GuardExceeded("spanning tree enumeration limited to n <= 10, m <= 20");
  }
}

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) const {
    while (parent[x] != x) x = parent[x];
    return x;
  }
};

double product_of_weights(const WeightedGraph& g, const std::vector<int>& tree) {
  double v = 1.0;
  for (int i : tree) v *= g.edge(i).weight;
  return v;
}

// Per-subset score: the base graph plus `set`, from scratch.
double score(const WeightedGraph& base, const CandidateSet& cands, const std::vector<int>& set,
             bool* connected) {
  TreeConnectivity tc = tree_connectivity(with_candidates(base, cands, set));
  *connected = tc.is_connected;
  return tc.is_connected ? tc.value : -std::numeric_limits<double>::infinity();
}

// Calls visit(subset) for every k-subset of [0, c) in lexicographic order.
void for_each_combination(std::size_t c, std::size_t k,
                          const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > c) return;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && static_cast<std::size_t>(idx[i - 1]) == c - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

double SpanningTreeList::total() const { return std::accumulate(values.begin(), values.end(), 0.0); }

SpanningTreeList enumerate_spanning_trees(const WeightedGraph& g) {
  check_tree_guard(g);
  SpanningTreeList out;
  const int n = g.vertex_count();
  const int m = static_cast<int>(g.edge_count());
  std::vector<int> chosen;

  // Each edge is either contracted (kept, merging its endpoints) or deleted.
  std::function<void(int, DisjointSets&, int)> recurse = [&](int i, DisjointSets& ds, int components) {
    if (components == 1) {
      out.trees.push_back(chosen);
      out.values.push_back(product_of_weights(g, chosen));
      return;
    }
    if (m - i < components - 1) return;
    const Edge& e = g.edge(static_cast<std::size_t>(i));
    const int a = ds.find(e.u), b = ds.find(e.v);
    if (a != b) {
      ds.parent[a] = b;
      chosen.push_back(i);
      recurse(i + 1, ds, components - 1);
      chosen.pop_back();
      ds.parent[a] = a;
    }
    recurse(i + 1, ds, components);
  };
  DisjointSets ds(n);
  recurse(0, ds, n);
  return out;
}

SpanningTreeList enumerate_spanning_trees_by_subsets(const WeightedGraph& g) {
  check_tree_guard(g);
  SpanningTreeList out;
  const int n = g.vertex_count();
  for_each_combination(g.edge_count(), static_cast<std::size_t>(n - 1), [&](const std::vector<int>& subset) {
    DisjointSets ds(n);
    for (int i : subset) {
      const int a = ds.find(g.edge(i).u), b = ds.find(g.edge(i).v);
      if (a == b) return;
      ds.parent[a] = b;
    }
    out.trees.push_back(subset);
    out.values.push_back(product_of_weights(g, subset));
  });
  return out;
}

EspOptimum exhaustive_esp(const WeightedGraph& base, const CandidateSet& cands, std::size_t k) {
  validate_candidates(base, cands);
  if (k > cands.size()) throw std::invalid_argument("exhaustive_esp: k exceeds candidate count");
  if (binomial(cands.size(), k) > 1e6) throw GuardExceeded("exhaustive_esp: more than 1e6 subsets");
  EspOptimum best;
  double best_value = -std::numeric_limits<double>::infinity();
  bool first = true;
  for_each_combination(cands.size(), k, [&](const std::vector<int>& subset) {
    bool connected = false;
    const double v = score(base, cands, subset, &connected);
    if (first) {
      best.set = subset;
      first = false;
    }
    if (v > best_value + 1e-12) {
      best_value = v;
      best.set = subset;
      best.connected = connected;
    }
  });
  best.value = best.connected ? best_value : 0.0;
  return best;
}

EspOptimum branch_and_bound_esp(const WeightedGraph& base, const CandidateSet& cands, std::size_t k,
                                std::uint64_t node_limit) {
  validate_candidates(base, cands);
  if (k > cands.size()) throw std::invalid_argument("branch_and_bound_esp: k exceeds candidate count");
  if (!is_connected(base)) throw std::invalid_argument("branch_and_bound_esp: base graph is disconnected");
  const int n = base.vertex_count();
  const Vertex anchor = default_anchor(n);
  const std::size_t c = cands.size();

  std::vector<Eigen::VectorXd> scaled(c);
  for (std::size_t j = 0; j < c; ++j) scaled[j] = std::sqrt(cands[j].weight) * edge_vector(cands[j], anchor, n);

  const Cholesky root = laplacian_factor(base);
  const double tau_root = logdet(root);

  // Visit strong candidates first so a good incumbent appears early.
  std::vector<int> order(c);
  std::iota(order.begin(), order.end(), 0);
  {
    std::vector<double> g0(c);
    for (std::size_t j = 0; j < c; ++j) g0[j] = forward_solve(root, scaled[j]).squaredNorm();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g0[a] > g0[b]; });
  }

  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<int> best_set;
  std::vector<int> path;
  std::uint64_t nodes = 0;

  std::function<void(std::size_t, const Cholesky&, double)> dfs = [&](std::size_t pos, const Cholesky& f,
                                                                      double tau) {
    if (++nodes > node_limit) throw GuardExceeded("branch_and_bound_esp: node limit reached");
    const std::size_t left = k - path.size();
    if (left == 0) {
      if (tau > best_value) {
        best_value = tau;
        best_set = path;
      }
      return;
    }
    const std::size_t last = c - left;  // last position that still leaves room
    std::vector<double> gain(c - pos);
    for (std::size_t p = pos; p < c; ++p) gain[p - pos] = std::log1p(forward_solve(f, scaled[order[p]]).squaredNorm());

    // suffix_top[p] = sum of the (left - 1) largest gains strictly after position p.
    std::vector<double> suffix_top(c - pos + 1, 0.0);
    if (left > 1) {
      std::vector<double> heap;  // min-heap of the current top (left - 1)
      double sum = 0.0;
      for (std::size_t p = c; p-- > pos;) {
        suffix_top[p - pos] = sum;
        const double g = gain[p - pos];
        if (heap.size() < left - 1) {
          heap.push_back(g);
          std::push_heap(heap.begin(), heap.end(), std::greater<>());
          sum += g;
        } else if (g > heap.front()) {
          sum += g - heap.front();
          std::pop_heap(heap.begin(), heap.end(), std::greater<>());
          heap.back() = g;
          std::push_heap(heap.begin(), heap.end(), std::greater<>());
        }
      }
    }
    // Child p covers the subsets whose first pick sits at position p, so the
    // children can be visited in any order; most promising first.
    std::vector<std::pair<double, std::size_t>> children;
    for (std::size_t p = pos; p <= last; ++p) children.emplace_back(tau + gain[p - pos] + suffix_top[p - pos], p);
    std::stable_sort(children.begin(), children.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [bound, p] : children) {
      if (bound <= best_value + 1e-12) break;
      const double g = gain[p - pos];
      Cholesky child = f;
      child.rank_one_update(scaled[order[p]]);
      path.push_back(order[p]);
      dfs(p + 1, child, tau + g);
      path.pop_back();
    }
  };
  dfs(0, root, tau_root);

  EspOptimum out;
  out.connected = true;
  out.set = best_set;
  std::sort(out.set.begin(), out.set.end());
  // Report the from-scratch value of the winning set.
  out.value = tree_connectivity(with_candidates(base, cands, out.set)).value;
  return out;
}

EspOptimum exhaustive_matroid_esp(const WeightedGraph& base, const CandidateSet& cands,
                                  const PartitionMatroid& matroid) {
  validate_candidates(base, cands);
  validate_matroid(matroid, cands.size());
  const std::size_t c = cands.size();
  if (c > 20) throw GuardExceeded("exhaustive_matroid_esp: c <= 20 required");
  std::vector<int> block_of(c);
  for (std::size_t b = 0; b < matroid.blocks.size(); ++b)
    for (int i : matroid.blocks[b]) block_of[i] = static_cast<int>(b);

  EspOptimum best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << c); ++mask) {
    std::vector<std::size_t> used(matroid.blocks.size(), 0);
    std::vector<int> subset;
    bool ok = true;
    for (std::size_t i = 0; i < c && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      subset.push_back(static_cast<int>(i));
      ok = ++used[block_of[i]] <= matroid.budgets[block_of[i]];
    }
    if (!ok) continue;
    bool connected = false;
    const double v = score(base, cands, subset, &connected);
    if (v > best_value + 1e-12) {
      best_value = v;
      best.set = subset;
      best.connected = connected;
    }
  }
  best.value = best.connected ? best_value : 0.0;
  return best;
}

DualOptimum exhaustive_dual_esp(const WeightedGraph& base, const CandidateSet& cands, double delta) {
  validate_candidates(base, cands);
  if (cands.size() > 20) throw GuardExceeded("exhaustive_dual_esp: c <= 20 required");
  const TreeConnectivity init = tree_connectivity(base);
  if (!init.is_connected) throw std::invalid_argument("exhaustive_dual_esp: base graph is disconnected");
  DualOptimum out;
  for (std::size_t s = 0; s <= cands.size() && !out.feasible; ++s) {
    for_each_combination(cands.size(), s, [&](const std::vector<int>& subset) {
      if (out.feasible) return;
      bool connected = false;
      const double v = score(base, cands, subset, &connected);
      if (v - init.value >= delta - 1e-9) {
        out.feasible = true;
        out.k_opt = s;
        out.set = subset;
      }
    });
  }
  return out;
}

double expected_tree_count_bruteforce(const WeightedGraph& g0, const std::vector<EdgeProbability>& probs) {
  const std::size_t m = g0.edge_count();
  if (m > 20) throw GuardExceeded("expected_tree_count_bruteforce: m <= 20 required");
  if (probs.size() != m) throw std::invalid_argument("need one probability per edge");
  std::vector<double> p(m, -1.0);
  for (const EdgeProbability& ep : probs) {
    if (ep.edge_index >= m || p[ep.edge_index] >= 0.0) throw std::invalid_argument("bad probability list");
    p[ep.edge_index] = ep.p;
  }
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    double prob = 1.0;
    std::vector<Edge> kept;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1u) {
        prob *= p[i];
        kept.push_back(g0.edge(i));
      } else {
        prob *= 1.0 - p[i];
      }
    }
    if (prob == 0.0) continue;
    total += prob * tree_count(WeightedGraph(g0.vertex_count(), kept));
  }
  return total;
}

DetExpectation expected_det_bruteforce(const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& pairs,
                                       const std::vector<double>& probs) {
  const std::size_t m = pairs.size();
  if (m > 12) throw GuardExceeded("expected_det_bruteforce: m <= 12 required");
  if (probs.size() != m) throw std::invalid_argument("need one probability per pair");
  if (m == 0) return {1.0, 1.0};
  const Eigen::Index d = pairs.front().first.size();
  if (d > 4) throw GuardExceeded("expected_det_bruteforce: dimension <= 4 required");
  for (const auto& [y, z] : pairs)
    if (y.size() != d || z.size() != d) throw DimensionMismatch("pair vectors must share one dimension");

  DetExpectation out;
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < m; ++i) expected += probs[i] * pairs[i].first * pairs[i].second.transpose();
  out.rhs = expected.determinant();

  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    double prob = 1.0;
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1u) {
        prob *= probs[i];
        sum += pairs[i].first * pairs[i].second.transpose();
      } else {
        prob *= 1.0 - probs[i];
      }
    }
    if (prob != 0.0) out.lhs += prob * sum.determinant();
  }
  return out;
}

}  // namespace treeopt
