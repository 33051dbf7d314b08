#include "treeopt/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace treeopt {

Edge::Edge(Vertex a, Vertex b, double w) : u(std::min(a, b)), v(std::max(a, b)), weight(w) {}

bool operator<(const Edge& a, const Edge& b) {
  return a.u != b.u ? a.u < b.u : a.v < b.v;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges, ParseDiagnostics* diag) : n_(n) {
  if (n < 2) throw std::invalid_argument("graph needs at least 2 vertices");
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (const Edge& raw : edges) {
    Edge e(raw.u, raw.v, raw.weight);
    if (e.u < 0 || e.v >= n) {
      throw std::out_of_range("edge endpoint out of range: " + std::to_string(e.u) + " " +
                              std::to_string(e.v));
    }
    if (!(e.weight > 0.0)) throw std::domain_error("edge weight must be positive");
    if (e.u == e.v) {
      if (diag) ++diag->loops_dropped;
      continue;
    }
    kept.push_back(e);
  }
  std::stable_sort(kept.begin(), kept.end());
  for (const Edge& e : kept) {
    if (!edges_.empty() && edges_.back().same_pair(e)) {
      edges_.back().weight += e.weight;
      if (diag) ++diag->parallel_merged;
    } else {
      edges_.push_back(e);
    }
  }
}

WeightedGraph WeightedGraph::complete(int n, double weight) {
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b, weight);
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph WeightedGraph::path(int n, double weight) {
  std::vector<Edge> edges;
  for (int a = 0; a + 1 < n; ++a) edges.emplace_back(a, a + 1, weight);
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph WeightedGraph::star(int n, double weight) {
  std::vector<Edge> edges;
  for (int a = 1; a < n; ++a) edges.emplace_back(0, a, weight);
  return WeightedGraph(n, std::move(edges));
}

std::optional<std::size_t> WeightedGraph::find_edge(Vertex a, Vertex b) const {
  const Edge key(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it != edges_.end() && it->same_pair(key)) return static_cast<std::size_t>(it - edges_.begin());
  return std::nullopt;
}

WeightedGraph WeightedGraph::with_edges(const std::vector<Edge>& extra) const {
  std::vector<Edge> all = edges_;
  all.insert(all.end(), extra.begin(), extra.end());
  return WeightedGraph(n_, std::move(all));
}

WeightedGraph WeightedGraph::without_edges(const std::vector<Edge>& removed) const {
  std::vector<Edge> kept;
  for (const Edge& e : edges_) {
    bool drop = std::any_of(removed.begin(), removed.end(),
                            [&](const Edge& r) { return r.same_pair(e); });
    if (!drop) kept.push_back(e);
  }
  return WeightedGraph(n_, std::move(kept));
}

namespace {

std::string strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return std::string(line.substr(0, hash));
}

struct RawEdgeList {
  int n = -1;
  std::vector<Edge> edges;
};

RawEdgeList parse_edge_lines(std::string_view text) {
  RawEdgeList out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::istringstream in(strip_comment(text.substr(pos, end - pos)));
    pos = end + 1;

    std::string first;
    if (!(in >> first)) continue;
    if (out.n < 0) {
      long long count = 0;
      if (first != "n" || !(in >> count)) throw ParseError(line_no, "expected header `n <count>`");
      std::string rest;
      if (in >> rest) throw ParseError(line_no, "trailing tokens after header");
      if (count < 2) throw std::domain_error("vertex count must be at least 2");
      out.n = static_cast<int>(count);
      continue;
    }

    long long a = 0, b = 0;
    double w = 1.0;
    std::istringstream fields(first);
    if (!(fields >> a) || !fields.eof()) throw ParseError(line_no, "malformed vertex id `" + first + "`");
    if (!(in >> b)) throw ParseError(line_no, "expected `u v [w]`");
    std::string wtok;
    if (in >> wtok) {
      std::size_t used = 0;
      try {
        w = std::stod(wtok, &used);
      } catch (const std::exception&) {
        throw ParseError(line_no, "malformed weight `" + wtok + "`");
      }
      if (used != wtok.size()) throw ParseError(line_no, "malformed weight `" + wtok + "`");
      std::string rest;
      if (in >> rest) throw ParseError(line_no, "trailing tokens");
    } else if (!in.eof()) {
      throw ParseError(line_no, "malformed edge line");
    }
    if (a < 0 || b < 0 || a >= out.n || b >= out.n) {
      throw std::out_of_range("line " + std::to_string(line_no) + ": vertex id out of range");
    }
    if (!(w > 0.0)) {
      throw std::domain_error("line " + std::to_string(line_no) + ": weight must be positive");
    }
    out.edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b), w);
  }
  if (out.n < 0) throw ParseError(line_no, "missing header `n <count>`");
  return out;
}

}  // namespace

WeightedGraph parse_graph(std::string_view text, ParseDiagnostics* diag) {
  RawEdgeList raw = parse_edge_lines(text);
  return WeightedGraph(raw.n, std::move(raw.edges), diag);
}

CandidateSet parse_candidates(std::string_view text, int expected_n) {
  // Same canonicalization as graphs, so candidate ids follow (u, v) order.
  WeightedGraph g = parse_graph(text);
  if (g.vertex_count() != expected_n) {
    throw std::invalid_argument("candidate file declares n=" + std::to_string(g.vertex_count()) +
                                " but graph has n=" + std::to_string(expected_n));
  }
  return CandidateSet{g.edges(), CandidateOrigin::addition};
}

std::string format_graph(const WeightedGraph& g) {
  std::ostringstream out;
  out.precision(17);
  out << "n " << g.vertex_count() << "\n";
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.weight << "\n";
  return out.str();
}

int component_count(const WeightedGraph& g) {
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = g.vertex_count();
  for (const Edge& e : g.edges()) {
    int a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

bool is_connected(const WeightedGraph& g) { return component_count(g) == 1; }

Eigen::MatrixXd full_laplacian(const WeightedGraph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    lap(e.u, e.u) += e.weight;
    lap(e.v, e.v) += e.weight;
    lap(e.u, e.v) -= e.weight;
    lap(e.v, e.u) -= e.weight;
  }
  return lap;
}

void add_edge_term(Eigen::MatrixXd& m, const Edge& e, Vertex anchor, double scale) {
  const double w = scale * e.weight;
  const int iu = reduced_index(e.u, anchor);
  const int iv = reduced_index(e.v, anchor);
  if (iu >= 0) m(iu, iu) += w;
  if (iv >= 0) m(iv, iv) += w;
  if (iu >= 0 && iv >= 0) {
    m(iu, iv) -= w;
    m(iv, iu) -= w;
  }
}

ReducedLaplacian reduced_laplacian(const WeightedGraph& g, Vertex anchor) {
  const int n = g.vertex_count();
  if (anchor < 0 || anchor >= n) throw std::out_of_range("anchor out of range");
  ReducedLaplacian out{anchor, Eigen::MatrixXd::Zero(n - 1, n - 1)};
  for (const Edge& e : g.edges()) add_edge_term(out.matrix, e, anchor);
  return out;
}

Eigen::VectorXd edge_vector(const Edge& e, Vertex anchor, int n) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n - 1);
  const int iu = reduced_index(e.u, anchor);
  const int iv = reduced_index(e.v, anchor);
  if (iu >= 0) a(iu) = 1.0;
  if (iv >= 0) a(iv) = -1.0;
  return a;
}

void validate_candidates(const WeightedGraph& base, const CandidateSet& cands) {
  const int n = base.vertex_count();
  std::vector<Edge> sorted = cands.edges;
  for (const Edge& e : sorted) {
    if (e.u < 0 || e.v >= n || e.u == e.v) throw std::invalid_argument("invalid candidate endpoints");
    if (!(e.weight > 0.0)) throw std::domain_error("candidate weight must be positive");
    if (base.has_edge(e.u, e.v)) {
      throw std::invalid_argument("candidate " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                  " already in the base graph");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].same_pair(sorted[i - 1])) throw std::invalid_argument("duplicate candidate edge");
  }
}

CandidateSet complement_candidates(const WeightedGraph& base, double weight) {
  CandidateSet out;
  const int n = base.vertex_count();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!base.has_edge(a, b)) out.edges.emplace_back(a, b, weight);
  return out;
}

AdditionInstance transform_minus_to_plus(const WeightedGraph& base, const CandidateSet& m_minus,
                                         std::size_t k) {
  if (k > m_minus.size()) throw std::invalid_argument("cannot remove more edges than removable");
  CandidateSet cands{{}, CandidateOrigin::deletion_transformed};
  for (const Edge& e : m_minus.edges) {
    auto idx = base.find_edge(e.u, e.v);
    if (!idx) {
      throw std::invalid_argument("removable edge " + std::to_string(e.u) + "-" +
                                  std::to_string(e.v) + " is not in the graph");
    }
    // Base weight wins; the removable list only names edges.
    cands.edges.push_back(base.edge(*idx));
  }
  WeightedGraph pruned = base.without_edges(cands.edges);
  return AdditionInstance{std::move(pruned), std::move(cands), m_minus.size() - k};
}

WeightedGraph with_candidates(const WeightedGraph& base, const CandidateSet& cands,
                              const std::vector<int>& chosen) {
  std::vector<Edge> extra;
  extra.reserve(chosen.size());
  for (int i : chosen) extra.push_back(cands.edges.at(static_cast<std::size_t>(i)));
  return base.with_edges(extra);
}

}  // namespace treeopt
