#pragma once

// Signal manipulation game.
//
// After contracting, the agent may inflate its signals by (d_theta, d_e) at
// quadratic cost k(d) = kappa_theta/2 d_theta^2 + kappa_e/2 d_e^2, facing
// detection probability p(d) = min(1, lambda*(d_theta + d_e)) and a fine F
// charged in expectation.  Effort separates from manipulation, so the best
// response maximizes, per loaded signal,
//     slope*d - kappa/2 d^2 - min(1, lambda d) * F
// which is piecewise concave with a kink where detection saturates.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "asym/contract.hpp"
#include "asym/econ.hpp"

namespace asym {

struct ManipulationPolicy {
  double delta_theta = 0.0;  // >= 0
  double delta_e = 0.0;      // >= 0
};

struct PenaltyScheme {
  double kappa_theta = 1.0;     // > 0
  double kappa_e = 1.0;         // > 0
  double detection_slope = 0.0; // lambda >= 0
  double fine = 0.0;            // F >= 0
};

inline void check_scheme(const PenaltyScheme& s, const char* who) {
  if (!(s.kappa_theta > 0.0) || !(s.kappa_e > 0.0))
    throw std::domain_error(std::string(who) + ": manipulation cost curvature must be > 0");
  if (!(s.detection_slope >= 0.0) || !(s.fine >= 0.0))
    throw std::domain_error(std::string(who) + ": detection slope and fine must be >= 0");
}

inline double detection_probability(const PenaltyScheme& s, const ManipulationPolicy& d) {
  return std::min(1.0, s.detection_slope * (d.delta_theta + d.delta_e));
}

// Net gain from distorting one signal with marginal wage benefit `slope`,
// holding the other distortion at zero.
inline double manip_gain_1d(double slope, double kappa, const PenaltyScheme& s, double d) {
  return slope * d - 0.5 * kappa * d * d -
         std::min(1.0, s.detection_slope * d) * s.fine;
}

// Gains below this are rounding noise: when the fine sits exactly at the
// deterrence point the re-evaluated objective can land an ulp above zero
// even though the true gain is zero.  Indifference resolves to no
// manipulation, so such candidates are discarded.
inline constexpr double kManipTieTolerance = 1e-12;

// Maximizer of manip_gain_1d: best of the two concave pieces (below and
// above the detection kink); indifference resolves to no manipulation.
inline double manip_best_1d(double slope, double kappa, const PenaltyScheme& s) {
  const double lam = s.detection_slope;
  // Piece 1: p = lambda*d, interior candidate (slope - lambda F)/kappa.
  double d1 = (slope - lam * s.fine) / kappa;
  if (d1 < 0.0) d1 = 0.0;
  if (lam > 0.0) d1 = std::min(d1, 1.0 / lam);
  double best_d = 0.0, best_v = kManipTieTolerance;
  const double v1 = manip_gain_1d(slope, kappa, s, d1);
  if (v1 > best_v) { best_v = v1; best_d = d1; }
  // Piece 2: p = 1, interior candidate slope/kappa, only past the kink.
  if (lam > 0.0 && slope / kappa > 1.0 / lam) {
    const double d2 = slope / kappa;
    const double v2 = manip_gain_1d(slope, kappa, s, d2);
    if (v2 > best_v) { best_v = v2; best_d = d2; }
  }
  return best_d;
}

struct ManipBestResponse {
  ManipulationPolicy policy;
  double effort = 0.0;       // unchanged by manipulation (separable)
  double utility_gain = 0.0; // net expected gain from the chosen distortion
};

// Best response to a posted linear contract.  The wage loads only on s_e,
// so distorting the type signal has cost and no benefit: delta_theta* = 0,
// delta_e* solves the one-dimensional kinked problem.  F >= alpha/lambda
// (and past the kink, F >= alpha^2/(2 kappa_e)) deters entirely.
inline ManipBestResponse manip_best_response(const LinearContract& c,
                                             const AgentProfile& p,
                                             const PenaltyScheme& s,
                                             const EffortBounds& b) {
  check_scheme(s, "manip_best_response");
  if (!(c.alpha >= 0.0)) throw std::domain_error("manip_best_response: alpha must be >= 0");
  ManipBestResponse r;
  r.effort = best_response_effort(c, p.gamma, b);
  r.policy.delta_theta = 0.0;
  r.policy.delta_e = manip_best_1d(c.alpha, s.kappa_e, s);
  // Joint detection couples the two signals; with delta_theta = 0 the gain
  // is exactly the one-dimensional objective.
  r.utility_gain = manip_gain_1d(c.alpha, s.kappa_e, s, r.policy.delta_e);
  return r;
}

// Best response when the wage also loads on the agent's type signal
// (multi-agent contracts).  Detection couples the distortions through
// p = min(1, lambda*(d_theta + d_e)); the maximum is found by KKT candidate
// enumeration over both concave regions and the saturation boundary.
inline ManipBestResponse manip_best_response_loadings(double slope_e, double slope_theta,
                                                      const PenaltyScheme& s) {
  check_scheme(s, "manip_best_response_loadings");
  if (!(slope_e >= 0.0) || !(slope_theta >= 0.0))
    throw std::domain_error("manip_best_response_loadings: slopes must be >= 0");
  const double lam = s.detection_slope;
  const double F = s.fine;

  auto value = [&](double dt, double de) {
    return slope_theta * dt + slope_e * de - 0.5 * s.kappa_theta * dt * dt -
           0.5 * s.kappa_e * de * de - std::min(1.0, lam * (dt + de)) * F;
  };
  auto clamp0 = [](double x) { return x < 0.0 ? 0.0 : x; };

  double cand[6][2];
  int n = 0;
  // Region 1 (p linear): unconstrained FOC, projected onto the orthant.
  cand[n][0] = clamp0((slope_theta - lam * F) / s.kappa_theta);
  cand[n][1] = clamp0((slope_e - lam * F) / s.kappa_e);
  ++n;
  // Region 2 (p = 1): plain quadratic optimum.
  cand[n][0] = slope_theta / s.kappa_theta;
  cand[n][1] = slope_e / s.kappa_e;
  ++n;
  // Saturation boundary dt + de = 1/lambda: equalized marginal surplus
  // (KKT multiplier mu), projected onto the orthant.
  if (lam > 0.0) {
    const double budget = 1.0 / lam;
    // Solve: slope_theta - kt*dt = slope_e - ke*de, dt + de = budget.
    const double de = (slope_e - slope_theta + s.kappa_theta * budget) /
                      (s.kappa_theta + s.kappa_e);
    const double de_c = std::min(std::max(de, 0.0), budget);
    cand[n][0] = budget - de_c;
    cand[n][1] = de_c;
    ++n;
    // Boundary with one coordinate pinned at zero.
    cand[n][0] = budget; cand[n][1] = 0.0; ++n;
    cand[n][0] = 0.0; cand[n][1] = budget; ++n;
  }
  cand[n][0] = 0.0; cand[n][1] = 0.0; ++n;

  ManipBestResponse r;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    // Region-1 candidates are only valid below the kink; clip region-2
    // candidates are naturally evaluated by the exact objective.
    const double v = value(cand[i][0], cand[i][1]);
    if (v > best + kManipTieTolerance) {
      best = v;
      r.policy.delta_theta = cand[i][0];
      r.policy.delta_e = cand[i][1];
    }
  }
  r.utility_gain = best;
  return r;
}

// Smallest fine that deters all manipulation against this contract.
// Linear-wage case: alpha/lambda, unless the detection cap makes jumping
// past the kink profitable (alpha*lambda > 2 kappa_e), where the exact
// threshold is alpha^2/(2 kappa_e).  No detection channel means no finite
// fine deters (+infinity sentinel); a flat contract needs none.
inline double deterrence_threshold(const LinearContract& c, const PenaltyScheme& s) {
  check_scheme(s, "deterrence_threshold");
  if (!(c.alpha >= 0.0)) throw std::domain_error("deterrence_threshold: alpha must be >= 0");
  if (c.alpha == 0.0) return 0.0;
  if (s.detection_slope == 0.0) return std::numeric_limits<double>::infinity();
  const double interior = c.alpha / s.detection_slope;
  const double past_kink = c.alpha * c.alpha / (2.0 * s.kappa_e);
  return c.alpha * s.detection_slope > 2.0 * s.kappa_e ? past_kink : interior;
}

}  // namespace asym
