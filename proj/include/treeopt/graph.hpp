#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treeopt {

using Vertex = int;

/// Undirected weighted edge, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 1.0;

  Edge() = default;
  Edge(Vertex a, Vertex b, double w = 1.0);

  bool same_pair(const Edge& other) const { return u == other.u && v == other.v; }
  bool touches(Vertex x) const { return u == x || v == x; }
};

bool operator<(const Edge& a, const Edge& b);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParseDiagnostics {
  std::size_t loops_dropped = 0;
  std::size_t parallel_merged = 0;
};

/// Simple undirected graph with positive edge weights. Edges are kept in
/// canonical (u, v) ascending order, parallel entries merged by summing.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(int n, std::vector<Edge> edges, ParseDiagnostics* diag = nullptr);

  static WeightedGraph complete(int n, double weight = 1.0);
  static WeightedGraph path(int n, double weight = 1.0);
  static WeightedGraph star(int n, double weight = 1.0);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  std::optional<std::size_t> find_edge(Vertex a, Vertex b) const;
  bool has_edge(Vertex a, Vertex b) const { return find_edge(a, b).has_value(); }

  WeightedGraph with_edges(const std::vector<Edge>& extra) const;
  WeightedGraph without_edges(const std::vector<Edge>& removed) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Parses `n <count>` followed by `u v [w]` lines; `#` starts a comment.
WeightedGraph parse_graph(std::string_view text, ParseDiagnostics* diag = nullptr);

std::string format_graph(const WeightedGraph& g);

bool is_connected(const WeightedGraph& g);
int component_count(const WeightedGraph& g);

inline Vertex default_anchor(int n) { return n - 1; }

/// Laplacian with the anchor's row and column removed.
struct ReducedLaplacian {
  Vertex anchor = 0;
  Eigen::MatrixXd matrix;
};

Eigen::MatrixXd full_laplacian(const WeightedGraph& g);
ReducedLaplacian reduced_laplacian(const WeightedGraph& g, Vertex anchor);
inline ReducedLaplacian reduced_laplacian(const WeightedGraph& g) {
  return reduced_laplacian(g, default_anchor(g.vertex_count()));
}

/// Position of vertex v in the reduced coordinates, or -1 for the anchor.
inline int reduced_index(Vertex v, Vertex anchor) {
  if (v == anchor) return -1;
  return v < anchor ? v : v - 1;
}

/// e_u - e_v with the anchor coordinate dropped. Unweighted.
Eigen::VectorXd edge_vector(const Edge& e, Vertex anchor, int n);

/// Adds w * a a^T for edge e into a reduced matrix without materializing a.
void add_edge_term(Eigen::MatrixXd& m, const Edge& e, Vertex anchor, double scale = 1.0);

enum class CandidateOrigin { addition, deletion_transformed };

/// Ordered candidate edges; positions are the candidate ids.
struct CandidateSet {
  std::vector<Edge> edges;
  CandidateOrigin origin = CandidateOrigin::addition;

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  const Edge& operator[](std::size_t i) const { return edges[i]; }
};

CandidateSet parse_candidates(std::string_view text, int expected_n);

/// Throws std::invalid_argument on duplicates, endpoint overflow, or overlap
/// with the base graph.
void validate_candidates(const WeightedGraph& base, const CandidateSet& cands);

/// E(K_n) minus the base edges, unit weight.
CandidateSet complement_candidates(const WeightedGraph& base, double weight = 1.0);

struct AdditionInstance {
  WeightedGraph base;
  CandidateSet candidates;
  std::size_t budget = 0;
};

/// Rewrites "delete k of m_minus" as "add |m_minus| - k of m_minus back".
AdditionInstance transform_minus_to_plus(const WeightedGraph& base,
                                         const CandidateSet& m_minus, std::size_t k);

WeightedGraph with_candidates(const WeightedGraph& base, const CandidateSet& cands,
                              const std::vector<int>& chosen);

}  // namespace treeopt
