#include "test_support.hpp"
#include "treeopt/greedy.hpp"
#include "treeopt/oracle.hpp"
#include "treeopt/treeconn.hpp"

#include <doctest.h>

#include <numeric>

using namespace treeopt;

namespace {

std::vector<int> iota_list(std::size_t c) {
  std::vector<int> v(c);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

double tau_of(const WeightedGraph& base, const CandidateSet& cands, const std::vector<int>& set) {
  return tree_connectivity(with_candidates(base, cands, set)).value;
}

}  // namespace

TEST_CASE("greedy_esp known instances") {
  SUBCASE("single candidate closes a triangle") {
    const SelectionResult r = greedy_esp(WeightedGraph::path(3), CandidateSet{{Edge(0, 2)}}, 1);
    CHECK(r.chosen == std::vector<int>{0});
    CHECK(r.tau_final == doctest::Approx(std::log(3.0)));
    REQUIRE(r.gain_sequence.size() == 1);
    CHECK(r.gain_sequence[0] == doctest::Approx(std::log(3.0)));
  }
  SUBCASE("all chords of a K4 spanning tree give K4") {
    const SelectionResult r = greedy_esp(WeightedGraph::path(4), complement_candidates(WeightedGraph::path(4)), 3);
    CHECK(r.chosen.size() == 3);
    CHECK(r.tau_final == doctest::Approx(std::log(16.0)));
  }
  SUBCASE("longer cycle wins on the four-vertex path") {
    const CandidateSet cands{{Edge(0, 3), Edge(1, 3)}};
    const SelectionResult r = greedy_esp(WeightedGraph::path(4), cands, 1);
    CHECK(r.chosen == std::vector<int>{0});
    CHECK(r.tau_final == doctest::Approx(std::log(4.0)));
    CHECK(tau_of(WeightedGraph::path(4), cands, {1}) == doctest::Approx(std::log(3.0)));
  }
  SUBCASE("k = 0 and k > c") {
    const SelectionResult r = greedy_esp(WeightedGraph::path(3), CandidateSet{{Edge(0, 2)}}, 0);
    CHECK(r.chosen.empty());
    CHECK(r.tau_final == r.tau_init);
    CHECK_THROWS_AS(greedy_esp(WeightedGraph::path(3), CandidateSet{{Edge(0, 2)}}, 2), std::invalid_argument);
  }
  SUBCASE("disconnected base needs regularization") {
    const WeightedGraph split(4, {{0, 1}, {2, 3}});
    const CandidateSet cands{{Edge(1, 2), Edge(0, 3), Edge(0, 2)}};
    CHECK_THROWS_AS(greedy_esp(split, cands, 1), std::invalid_argument);
    GreedyOptions opts;
    opts.regularization = 1e-6;
    const SelectionResult r = greedy_esp(split, cands, 2, opts);
    CHECK(r.chosen.size() == 2);
    CHECK(r.tau_final == doctest::Approx(tau_of(split, cands, r.chosen)));
    CHECK(r.tau_final >= std::log(3.0) - 1e-9);
    CHECK(r.tau_final <= exhaustive_esp(split, cands, 2).value + 1e-9);
  }
}

TEST_CASE("best_edge") {
  const WeightedGraph p4 = WeightedGraph::path(4);
  const Cholesky f = laplacian_factor(p4);
  const CandidateSet single{{Edge(0, 2)}};
  const std::vector<int> only{0};
  CHECK(best_edge(f, single, only, 3).index == 0);

  const CandidateSet sym{{Edge(0, 2), Edge(1, 3)}};
  const std::vector<int> both{0, 1};
  CHECK(best_edge(f, sym, both, 3).index == 0);

  const CandidateSet cands{{Edge(1, 3), Edge(0, 3)}};
  const BestEdge b = best_edge(f, cands, both, 3);
  CHECK(b.index == 1);
  CHECK(b.reff == doctest::Approx(3.0));
  CHECK(b.gain == doctest::Approx(std::log(4.0)));
}

TEST_CASE("lazy and plain greedy agree on random instances") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5 + trial % 5;
    const WeightedGraph g = testing::random_connected(rng, n, static_cast<std::size_t>(n + 1));
    const CandidateSet cands = testing::random_candidates(rng, g, 8);
    const std::size_t k = std::min<std::size_t>(4, cands.size());
    GreedyOptions lazy;
    lazy.lazy = true;
    const SelectionResult a = greedy_esp(g, cands, k);
    const SelectionResult b = greedy_esp(g, cands, k, lazy);
    CHECK(a.tau_final == doctest::Approx(b.tau_final).epsilon(1e-12));
    CHECK(a.chosen == b.chosen);
  }
}

TEST_CASE("greedy bookkeeping matches recomputation and gains shrink") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5 + trial % 6;
    const WeightedGraph g = testing::random_connected(rng, n, static_cast<std::size_t>(n));
    const CandidateSet cands = testing::random_candidates(rng, g, 10);
    const std::size_t k = std::min<std::size_t>(5, cands.size());
    const SelectionResult r = greedy_esp(g, cands, k);
    CHECK(std::abs(r.tau_final - tau_of(g, cands, r.chosen)) <= 1e-9);
    CHECK(std::abs(r.tau_init - tree_connectivity(g).value) <= 1e-12);
    double sum = 0.0;
    for (std::size_t i = 0; i < r.gain_sequence.size(); ++i) {
      sum += r.gain_sequence[i];
      CHECK(r.gain_sequence[i] >= 0.0);
      if (i > 0) CHECK(r.gain_sequence[i] <= r.gain_sequence[i - 1] + 1e-9);
    }
    CHECK(std::abs(r.tau_init + sum - r.tau_final) <= 1e-9);
  }
}

TEST_CASE("greedy stays within the (1 - 1/e) guarantee of the exhaustive optimum") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + trial % 3;
    const WeightedGraph g = testing::random_connected(rng, n, static_cast<std::size_t>(n - 1));
    const CandidateSet cands = testing::random_candidates(rng, g, 8);
    const std::size_t k = 1 + trial % std::min<std::size_t>(4, cands.size());
    const SelectionResult r = greedy_esp(g, cands, k);
    const EspOptimum opt = exhaustive_esp(g, cands, k);
    CHECK(r.tau_final <= opt.value + 1e-9);
    CHECK(r.tau_final - r.tau_init >= (1.0 - std::exp(-1.0)) * (opt.value - r.tau_init) - 1e-9);
  }
}

TEST_CASE("greedy_matroid_esp") {
  std::mt19937_64 rng(24);
  SUBCASE("one block reduces to the cardinality case") {
    for (int trial = 0; trial < 20; ++trial) {
      const WeightedGraph g = testing::random_connected(rng, 7, 8);
      const CandidateSet cands = testing::random_candidates(rng, g, 9);
      const PartitionMatroid one{{iota_list(cands.size())}, {3}};
      const SelectionResult a = greedy_matroid_esp(g, cands, one);
      const SelectionResult b = greedy_esp(g, cands, 3);
      CHECK(a.chosen == b.chosen);
      CHECK(a.tau_final == b.tau_final);
    }
  }
  SUBCASE("a zero-budget block is never used") {
    const WeightedGraph g = testing::random_connected(rng, 6, 6);
    const CandidateSet cands = testing::random_candidates(rng, g, 6);
    const PartitionMatroid two{{{0, 1, 2}, {3, 4, 5}}, {1, 0}};
    const SelectionResult r = greedy_matroid_esp(g, cands, two);
    REQUIRE(r.chosen.size() == 1);
    CHECK(r.chosen[0] <= 2);
  }
  SUBCASE("bad matroids are rejected") {
    const CandidateSet cands{{Edge(0, 2), Edge(0, 3)}};
    CHECK_THROWS(validate_matroid(PartitionMatroid{{{0}}, {1}}, 2));
    CHECK_THROWS(validate_matroid(PartitionMatroid{{{0, 1}}, {3}}, 2));
    CHECK_THROWS(validate_matroid(PartitionMatroid{{{0, 1}, {1}}, {1, 1}}, 2));
    CHECK_NOTHROW(validate_matroid(degree_cap_matroid(cands, 0, 1, 2), 2));
  }
}

TEST_CASE("degree_cap_matroid") {
  const CandidateSet all_touching{{Edge(0, 2), Edge(0, 3), Edge(0, 4)}};
  const PartitionMatroid a = degree_cap_matroid(all_touching, 0, 1, 3);
  CHECK(a.blocks[0].size() == 3);
  CHECK(a.blocks[1].empty());
  CHECK(a.budgets[0] == 1);
  const SelectionResult r = greedy_matroid_esp(WeightedGraph::path(5), all_touching, a);
  CHECK(r.chosen.size() == 1);

  const CandidateSet none_touching{{Edge(1, 3), Edge(2, 4)}};
  const PartitionMatroid b = degree_cap_matroid(none_touching, 0, 1, 2);
  CHECK(b.blocks[0].empty());
  CHECK(b.blocks[1].size() == 2);
  CHECK(b.budgets[1] == 1);
}

TEST_CASE("matroid greedy reaches half of the exhaustive matroid optimum on K5 subgraphs") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const WeightedGraph g = testing::random_connected(rng, 5, 4);
    const CandidateSet cands = complement_candidates(g);
    const Vertex v = trial % 5;
    const PartitionMatroid m = degree_cap_matroid(cands, v, 1, 3);
    const SelectionResult r = greedy_matroid_esp(g, cands, m);
    const EspOptimum opt = exhaustive_matroid_esp(g, cands, m);
    int touching = 0;
    for (int i : r.chosen) touching += cands[i].touches(v) ? 1 : 0;
    CHECK(touching <= 1);
    CHECK(r.tau_final <= opt.value + 1e-9);
    CHECK(r.tau_final - r.tau_init >= 0.5 * (opt.value - r.tau_init) - 1e-9);
  }
}

TEST_CASE("greedy_dual_esp known instances") {
  SUBCASE("one edge is enough") {
    const DualSelectionResult r = greedy_dual_esp(WeightedGraph::path(3), CandidateSet{{Edge(0, 2)}}, 1.0);
    CHECK(r.status == DualStatus::feasible);
    CHECK(r.selection.chosen.size() == 1);
    CHECK(r.achieved_gain == doctest::Approx(std::log(3.0)));
  }
  SUBCASE("zero target needs nothing") {
    const DualSelectionResult r = greedy_dual_esp(WeightedGraph::path(3), CandidateSet{{Edge(0, 2)}}, 0.0);
    CHECK(r.selection.chosen.empty());
    CHECK(r.status == DualStatus::feasible);
  }
  SUBCASE("exact feasibility boundary") {
    const WeightedGraph tree = WeightedGraph::path(4);
    const DualSelectionResult r = greedy_dual_esp(tree, complement_candidates(tree), std::log(16.0));
    CHECK(r.status == DualStatus::feasible);
    CHECK(r.selection.chosen.size() == 3);
  }
  SUBCASE("unreachable target") {
    const DualSelectionResult r = greedy_dual_esp(WeightedGraph::path(3), CandidateSet{{Edge(0, 2)}}, 2.0);
    CHECK(r.status == DualStatus::infeasible);
    CHECK(r.selection.chosen.size() == 1);
  }
  SUBCASE("absolute target compares the raw log det") {
    const WeightedGraph k4_tree = WeightedGraph::star(4);
    DualOptions abs;
    abs.absolute_delta = true;
    const DualSelectionResult r = greedy_dual_esp(k4_tree, complement_candidates(k4_tree), std::log(8.0), abs);
    CHECK(r.target == doctest::Approx(std::log(8.0)));
    CHECK(r.selection.tau_final >= std::log(8.0) - 1e-9);
    CHECK(r.selection.chosen.size() == 2);
  }
  CHECK_THROWS_AS(greedy_dual_esp(WeightedGraph::path(3), CandidateSet{{Edge(0, 2)}}, -1.0), std::invalid_argument);
}

TEST_CASE("greedy dual never beats the exhaustive dual optimum") {
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> frac(0.1, 0.9);
  for (int trial = 0; trial < 30; ++trial) {
    const WeightedGraph g = testing::random_connected(rng, 6, 6);
    const CandidateSet cands = testing::random_candidates(rng, g, 8);
    const double full = tree_connectivity(g.with_edges(cands.edges)).value - tree_connectivity(g).value;
    const double delta = frac(rng) * full;
    const DualSelectionResult r = greedy_dual_esp(g, cands, delta);
    const DualOptimum opt = exhaustive_dual_esp(g, cands, delta);
    REQUIRE(opt.feasible);
    CHECK(r.status == DualStatus::feasible);
    CHECK(r.selection.chosen.size() >= opt.k_opt);
  }
}
