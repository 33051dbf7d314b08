#include "test_support.hpp"
#include "treeopt/certificates.hpp"
#include "treeopt/convex.hpp"
#include "treeopt/greedy.hpp"
#include "treeopt/oracle.hpp"

#include <doctest.h>

#include <limits>

using namespace treeopt;

TEST_CASE("zeta constant") {
  CHECK(kZeta == doctest::Approx(1.0 / (1.0 - std::exp(-1.0))).epsilon(1e-15));
  CHECK(kZeta == doctest::Approx(1.5819767).epsilon(1e-7));
}

TEST_CASE("esp_bounds") {
  SUBCASE("exactly solved triangle") {
    const double l3 = std::log(3.0);
    const Certificate c = esp_bounds(0.0, l3, l3, l3);
    CHECK(c.lower == doctest::Approx(l3));
    CHECK(c.upper == doctest::Approx(l3));
    CHECK(c.additive_gap == doctest::Approx(0.0));
    CHECK(c.ratio_bound == doctest::Approx(1.0));
  }
  SUBCASE("greedy side binds") {
    const Certificate c = esp_bounds(0.0, 1.0, 0.5, 10.0);
    CHECK(c.upper == doctest::Approx(kZeta));
    CHECK(c.lower == 1.0);
    CHECK(c.sources == std::vector<std::string>{"lower:greedy", "upper:greedy_guarantee"});
  }
  SUBCASE("relaxation side binds and rounding wins the lower side") {
    const Certificate c = esp_bounds(1.0, 2.0, 2.5, 2.55, false);
    CHECK(c.lower == 2.5);
    CHECK(c.upper == 2.55);
    CHECK(c.sources == std::vector<std::string>{"lower:convex_rounded", "upper:relaxation_envelope"});
  }
  SUBCASE("no relaxation available") {
    const Certificate c = esp_bounds(0.5, 1.5, -std::numeric_limits<double>::infinity(),
                                     std::numeric_limits<double>::infinity());
    CHECK(c.upper == doctest::Approx(kZeta * 1.5 + (1 - kZeta) * 0.5));
  }
  SUBCASE("inconsistent inputs") {
    CHECK_THROWS_AS(esp_bounds(1.0, 0.5, 0.5, 2.0), InconsistentBounds);
    CHECK_THROWS_AS(esp_bounds(0.0, 2.0, 1.0, 1.5), InconsistentBounds);
  }
}

TEST_CASE("dual_bounds") {
  const Certificate tight = dual_bounds(1, 1, 1.0, 1.0);
  CHECK(tight.lower == 1.0);
  CHECK(tight.upper == 1.0);
  CHECK(tight.additive_gap == 0.0);

  const Certificate ceiling = dual_bounds(4, 5, 2.3, 3.0);
  CHECK(ceiling.lower == 3.0);
  CHECK(ceiling.upper == 4.0);
  CHECK(ceiling.sources[0] == "lower:relaxation");

  const Certificate single_step = dual_bounds(3, 4, 1.2, 1.0);
  CHECK(single_step.lower == 3.0);
  CHECK(single_step.upper == 3.0);

  CHECK(dual_bounds(2, 2, 2.0000004, 1.0).lower == 2.0);
  CHECK_THROWS_AS(dual_bounds(1, 1, 1.0, 0.5), std::domain_error);
}

TEST_CASE("wolsey_gamma") {
  CHECK(wolsey_gamma(1.0, 0.0) == 1.0);
  CHECK(wolsey_gamma(1.0, 0.9) == doctest::Approx(3.302585).epsilon(1e-6));
  CHECK(wolsey_gamma(2.0, 1.0) == doctest::Approx(1.693147).epsilon(1e-6));
  CHECK_THROWS_AS(wolsey_gamma(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(wolsey_gamma(1.0, -0.1), std::domain_error);
}

TEST_CASE("assess_design") {
  const double l3 = std::log(3.0);
  const Certificate exact = esp_bounds(0.0, l3, l3, l3);
  CHECK(assess_design(l3, exact).additive_gap == doctest::Approx(0.0));

  const Certificate c = esp_bounds(0.0, 1.0, 0.8, 1.3);
  CHECK(assess_design(c.lower, c).additive_gap == doctest::Approx(c.upper - c.lower));
  CHECK(assess_design(0.8, c).additive_gap > assess_design(1.0, c).additive_gap);
}

TEST_CASE("certificates built from real runs bracket the exhaustive optimum") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 5 + trial % 2;
    const WeightedGraph g = testing::random_connected(rng, n, static_cast<std::size_t>(n - 1));
    const CandidateSet cands = testing::random_candidates(rng, g, 8);
    const std::size_t k = 1 + trial % 4;
    const SelectionResult greedy = greedy_esp(g, cands, k);
    const RelaxationSolution sol = solve_relaxation(g, cands, static_cast<double>(k));
    const double rounded = tree_connectivity(with_candidates(g, cands, round_topk(sol.pi_star, k))).value;
    const Certificate cert = esp_bounds(greedy.tau_init, greedy.tau_final, rounded, sol.upper_envelope());
    const double opt = exhaustive_esp(g, cands, k).value;
    CHECK(cert.lower <= opt + 1e-9);
    CHECK(opt <= cert.upper + 1e-9);
    CHECK(cert.lower <= cert.upper);
  }
}
