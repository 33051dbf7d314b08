#include "treeopt/greedy.hpp"

#include "treeopt/treeconn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace treeopt {

void validate_matroid(const PartitionMatroid& matroid, std::size_t candidate_count) {
  if (matroid.blocks.size() != matroid.budgets.size()) {
    throw std::invalid_argument("matroid: one budget per block required");
  }
  std::vector<char> seen(candidate_count, 0);
  for (std::size_t b = 0; b < matroid.blocks.size(); ++b) {
    if (matroid.budgets[b] > matroid.blocks[b].size()) {
      throw std::invalid_argument("matroid: budget exceeds block size");
    }
    for (int i : matroid.blocks[b]) {
      if (i < 0 || static_cast<std::size_t>(i) >= candidate_count) {
        throw std::out_of_range("matroid: candidate index out of range");
      }
      if (seen[i]) throw std::invalid_argument("matroid: blocks overlap");
      seen[i] = 1;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw std::invalid_argument("matroid: blocks do not cover every candidate");
  }
}

BestEdge best_edge(const Cholesky& f, const CandidateSet& cands, std::span<const int> remaining,
                   Vertex anchor) {
  if (remaining.empty()) throw std::invalid_argument("best_edge: no candidates left");
  BestEdge best;
  best.reff = -1.0;
  for (int i : remaining) {
    const double r = effective_resistance(f, cands[static_cast<std::size_t>(i)], anchor);
    if (r > best.reff || (r == best.reff && i < best.index)) {
      best.index = i;
      best.reff = r;
    }
  }
  best.gain = std::log1p(best.reff);
  return best;
}

namespace {

class GreedyRun {
 public:
  GreedyRun(const WeightedGraph& base, const CandidateSet& cands, const GreedyOptions& opts)
      : base_(base), cands_(cands), opts_(opts), anchor_(default_anchor(base.vertex_count())) {
    validate_candidates(base, cands);
    Eigen::MatrixXd lap = reduced_laplacian(base, anchor_).matrix;
    if (opts.regularization > 0.0) {
      lap.diagonal().array() += opts.regularization;
    } else if (!is_connected(base)) {
      throw std::invalid_argument("greedy: base graph is disconnected");
    }
    factor_ = cholesky(lap);
    tau_ = logdet(factor_);
    result_.tau_init = tau_;
    for (std::size_t i = 0; i < cands.size(); ++i) remaining_.push_back(static_cast<int>(i));
    upper_.assign(cands.size(), std::numeric_limits<double>::infinity());
  }

  double tau() const { return tau_; }
  bool exhausted() const { return remaining_.empty(); }

  template <typename Allowed>
  std::optional<int> step(Allowed allowed) {
    std::vector<int> pool;
    for (int i : remaining_)
      if (allowed(i)) pool.push_back(i);
    if (pool.empty()) return std::nullopt;

    const BestEdge best = opts_.lazy ? lazy_best(pool) : best_edge(factor_, cands_, pool, anchor_);
    const Edge& e = cands_[static_cast<std::size_t>(best.index)];
    factor_.rank_one_update(std::sqrt(e.weight) * edge_vector(e, anchor_, base_.vertex_count()));
    tau_ += best.gain;
    result_.chosen.push_back(best.index);
    result_.gain_sequence.push_back(best.gain);
    remaining_.erase(std::find(remaining_.begin(), remaining_.end(), best.index));
    return best.index;
  }

  SelectionResult finish() {
    result_.tau_final = tau_;
    if (opts_.regularization > 0.0) {
      result_.tau_init = tree_connectivity(base_).value;
      result_.tau_final = tree_connectivity(with_candidates(base_, cands_, result_.chosen)).value;
    }
    return result_;
  }

 private:
  // Effective resistances only shrink as edges are added, so a stale value is an
  // upper bound on the fresh one.
  BestEdge lazy_best(const std::vector<int>& pool) {
    while (true) {
      int lead = pool.front();
      for (int i : pool)
        if (upper_[i] > upper_[lead]) lead = i;
      const double fresh = effective_resistance(factor_, cands_[static_cast<std::size_t>(lead)], anchor_);
      upper_[lead] = fresh;
      bool still_best = true;
      for (int i : pool) {
        if (i == lead) continue;
        if (upper_[i] > fresh || (upper_[i] == fresh && i < lead)) {
          still_best = false;
          break;
        }
      }
      if (still_best) return BestEdge{lead, fresh, std::log1p(fresh)};
    }
  }

  const WeightedGraph& base_;
  const CandidateSet& cands_;
  GreedyOptions opts_;
  Vertex anchor_;
  Cholesky factor_;
  double tau_ = 0.0;
  std::vector<int> remaining_;
  std::vector<double> upper_;
  SelectionResult result_;
};

}  // namespace

SelectionResult greedy_esp(const WeightedGraph& base, const CandidateSet& cands, std::size_t k,
                           const GreedyOptions& opts) {
  if (k > cands.size()) throw std::invalid_argument("greedy_esp: k exceeds candidate count");
  GreedyRun run(base, cands, opts);
  for (std::size_t round = 0; round < k; ++round) run.step([](int) { return true; });
  return run.finish();
}

SelectionResult greedy_matroid_esp(const WeightedGraph& base, const CandidateSet& cands,
                                   const PartitionMatroid& matroid, const GreedyOptions& opts) {
  validate_matroid(matroid, cands.size());
  std::vector<int> block_of(cands.size(), 0);
  for (std::size_t b = 0; b < matroid.blocks.size(); ++b)
    for (int i : matroid.blocks[b]) block_of[i] = static_cast<int>(b);
  std::vector<std::size_t> left = matroid.budgets;

  GreedyRun run(base, cands, opts);
  while (true) {
    auto picked = run.step([&](int i) { return left[block_of[i]] > 0; });
    if (!picked) break;
    --left[block_of[*picked]];
  }
  return run.finish();
}

PartitionMatroid degree_cap_matroid(const CandidateSet& cands, Vertex v, std::size_t d,
                                    std::size_t k) {
  if (d > k) throw std::invalid_argument("degree_cap_matroid: d must not exceed k");
  PartitionMatroid m;
  m.blocks.resize(2);
  for (std::size_t i = 0; i < cands.size(); ++i)
    m.blocks[cands[i].touches(v) ? 0 : 1].push_back(static_cast<int>(i));
  // Budgets are clamped to block sizes so that the matroid stays well formed.
  m.budgets = {std::min(d, m.blocks[0].size()), std::min(k - d, m.blocks[1].size())};
  return m;
}

DualSelectionResult greedy_dual_esp(const WeightedGraph& base, const CandidateSet& cands,
                                    double delta, const DualOptions& opts) {
  if (!(delta >= 0.0)) throw std::invalid_argument("greedy_dual_esp: delta must be non-negative");
  constexpr double kSlack = 1e-9;
  GreedyRun run(base, cands, GreedyOptions{});
  DualSelectionResult out;
  const double tau_init = run.tau();
  out.target = opts.absolute_delta ? delta : tau_init + delta;

  double before_last = tau_init;
  while (run.tau() < out.target - kSlack && !run.exhausted()) {
    before_last = run.tau();
    run.step([](int) { return true; });
  }
  out.selection = run.finish();
  out.achieved_gain = out.selection.tau_final - tau_init;
  out.phi_pre_terminal = before_last - tau_init;
  out.status = run.tau() >= out.target - kSlack ? DualStatus::feasible : DualStatus::infeasible;
  return out;
}

}  // namespace treeopt
