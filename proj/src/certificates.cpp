#include "treeopt/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace treeopt {

namespace {

double safe_ratio(double upper, double design) {
  return design > 0.0 ? upper / design : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

Certificate esp_bounds(double tau_init, double tau_greedy, double tau_cvx_rounded,
                       double tau_star_cvx, bool cvx_converged) {
  constexpr double kSlack = 1e-6;
  if (tau_greedy < tau_init - kSlack) throw InconsistentBounds("greedy value below the base graph");
  if (tau_star_cvx < std::max(tau_greedy, tau_cvx_rounded) - kSlack) {
    throw InconsistentBounds("relaxation optimum below an integral design; solver failure");
  }
  Certificate cert;
  if (tau_greedy >= tau_cvx_rounded) {
    cert.lower = tau_greedy;
    cert.sources.push_back("lower:greedy");
  } else {
    cert.lower = tau_cvx_rounded;
    cert.sources.push_back("lower:convex_rounded");
  }
  const double greedy_side = kZeta * tau_greedy + (1.0 - kZeta) * tau_init;
  if (greedy_side <= tau_star_cvx) {
    cert.upper = greedy_side;
    cert.sources.push_back("upper:greedy_guarantee");
  } else {
    cert.upper = tau_star_cvx;
    cert.sources.push_back(cvx_converged ? "upper:relaxation" : "upper:relaxation_envelope");
  }
  cert.design_value = cert.lower;
  cert.additive_gap = cert.upper - cert.design_value;
  cert.ratio_bound = safe_ratio(cert.upper, cert.design_value);
  return cert;
}

Certificate dual_bounds(std::size_t k_greedy, std::size_t k_cvx, double sum_pi_star, double gamma) {
  if (!(gamma >= 1.0)) throw std::domain_error("dual_bounds: gamma must be at least 1");
  // Bisection leaves sum_pi_star up to ~1e-6 above its true value.
  constexpr double kRoundTol = 1e-6;
  const double greedy_side = std::ceil(static_cast<double>(k_greedy) / gamma - 1e-9);
  const double cvx_side = std::ceil(sum_pi_star - kRoundTol);

  Certificate cert;
  if (greedy_side >= cvx_side) {
    cert.lower = greedy_side;
    cert.sources.push_back("lower:wolsey");
  } else {
    cert.lower = cvx_side;
    cert.sources.push_back("lower:relaxation");
  }
  if (k_greedy <= k_cvx) {
    cert.upper = static_cast<double>(k_greedy);
    cert.sources.push_back("upper:greedy");
  } else {
    cert.upper = static_cast<double>(k_cvx);
    cert.sources.push_back("upper:convex_rounded");
  }
  if (cert.lower > cert.upper) throw InconsistentBounds("dual lower bound exceeds upper bound");
  cert.design_value = cert.upper;
  cert.additive_gap = cert.upper - cert.lower;
  cert.ratio_bound = safe_ratio(cert.upper, cert.lower);
  return cert;
}

double wolsey_gamma(double delta, double phi_pre_terminal) {
  if (!(phi_pre_terminal >= 0.0 && phi_pre_terminal < delta)) {
    throw std::domain_error("wolsey_gamma: need 0 <= phi < delta");
  }
  return 1.0 + std::log(delta / (delta - phi_pre_terminal));
}

DesignReport assess_design(double design_tau, const Certificate& cert) {
  return DesignReport{design_tau, cert.upper - design_tau, safe_ratio(cert.upper, design_tau)};
}

}  // namespace treeopt
