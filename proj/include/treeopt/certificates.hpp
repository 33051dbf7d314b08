#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace treeopt {

class InconsistentBounds : public std::runtime_error {
 public:
  explicit InconsistentBounds(const std::string& what) : std::runtime_error(what) {}
};

/// (1 - 1/e)^{-1}
inline constexpr double kZeta = 1.5819767068693265;

/// Bounds on an unknown optimum, plus where each bound came from.
struct Certificate {
  double lower = 0.0;
  double upper = 0.0;
  double design_value = 0.0;
  double additive_gap = 0.0;  // upper - design_value
  double ratio_bound = 0.0;   // upper / design_value, NaN when design_value <= 0
  std::vector<std::string> sources;
};

/// Tree-connectivity bounds for k-edge augmentation from the greedy run and the
/// relaxation. Pass tau_star_cvx = +inf when no relaxation was solved and
/// cvx_converged = false when it is a safeguarded envelope rather than the optimum.
Certificate esp_bounds(double tau_init, double tau_greedy, double tau_cvx_rounded,
                       double tau_star_cvx, bool cvx_converged = true);

/// Edge-count bounds for the minimum-cardinality problem. Here the design is the
/// smaller integral solution (upper) and the gap is measured down to lower.
Certificate dual_bounds(std::size_t k_greedy, std::size_t k_cvx, double sum_pi_star, double gamma);

/// 1 + ln(delta / (delta - phi_pre_terminal))
double wolsey_gamma(double delta, double phi_pre_terminal);

struct DesignReport {
  double design_value = 0.0;
  double additive_gap = 0.0;
  double ratio = 0.0;
};

DesignReport assess_design(double design_tau, const Certificate& cert);

}  // namespace treeopt
