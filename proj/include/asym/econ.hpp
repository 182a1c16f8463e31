#pragma once

// Core principal-agent primitives.
//
// An agent of type theta who exerts effort e produces V = theta * e and
// bears cost c(e) = gamma/2 * e^2.  Utilities are quasi-linear:
//   agent     U_A = wage - c(e)
//   principal U_P = V - wage
// so U_A + U_P = V - c(e) is the per-match surplus, independent of the wage.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace asym {

enum class Ability { High = 0, Medium = 1, Low = 2 };

inline const char* to_string(Ability a) {
  switch (a) {
    case Ability::High: return "high";
    case Ability::Medium: return "medium";
    case Ability::Low: return "low";
  }
  return "?";
}

struct EffortBounds {
  double lo = 0.0;
  double hi = 1.0;
};

struct AgentProfile {
  double theta = 1.0;   // productivity type, > 0
  double gamma = 1.0;   // cost curvature, > 0
  double u0 = 0.0;      // reservation utility
  Ability ability = Ability::High;
};

// Outcome of one contracting episode.
struct Outcome {
  double effort = 0.0;
  double wage = 0.0;
  double agent_utility = 0.0;
  double principal_profit = 0.0;
  double welfare = 0.0;  // production - cost
};

inline double clamp_effort(double e, const EffortBounds& b) {
  if (!(b.lo <= b.hi)) throw std::domain_error("effort bounds: lo > hi");
  return e < b.lo ? b.lo : (e > b.hi ? b.hi : e);
}

// Quadratic effort cost gamma/2 * e^2.
inline double cost(double effort, const AgentProfile& p) {
  if (!(effort >= 0.0) || !std::isfinite(effort))
    throw std::domain_error("cost: effort must be finite and >= 0");
  if (!(p.gamma > 0.0)) throw std::domain_error("cost: gamma must be > 0");
  return 0.5 * p.gamma * effort * effort;
}

inline double production(double effort, double theta) {
  if (!(theta > 0.0)) throw std::domain_error("production: theta must be > 0");
  if (!(effort >= 0.0) || !std::isfinite(effort))
    throw std::domain_error("production: effort must be finite and >= 0");
  return theta * effort;
}

// argmax_e theta*e - gamma/2 e^2 on [lo, hi]; interior solution theta/gamma.
inline double first_best_effort(double theta, double gamma, const EffortBounds& b) {
  if (!(theta > 0.0) || !(gamma > 0.0))
    throw std::domain_error("first_best_effort: theta and gamma must be > 0");
  return clamp_effort(theta / gamma, b);
}

// Surplus V - c at the first-best effort.
inline double first_best_welfare(double theta, double gamma, const EffortBounds& b) {
  const double e = first_best_effort(theta, gamma, b);
  return theta * e - 0.5 * gamma * e * e;
}

// ---------------------------------------------------------------------------
// Calibration: three ability classes anchored at fixed (theta, gamma) pairs.
// Curvature is non-increasing in type; between anchors both curves are
// piecewise-linear in theta and clamped flat outside [0.3, 1.0].

struct ClassAnchor {
  Ability ability;
  double theta;
  double gamma;
};

inline constexpr std::array<ClassAnchor, 3> kClassAnchors{{
    {Ability::High, 1.0, 1.0},
    {Ability::Medium, 0.6, 1.5},
    {Ability::Low, 0.3, 2.5},
}};

inline constexpr ClassAnchor anchor_of(Ability a) {
  return kClassAnchors[static_cast<int>(a)];
}

// Cost curvature at an arbitrary (estimated) type.
inline double gamma_curve(double theta) {
  constexpr double tL = 0.3, tM = 0.6, tH = 1.0;
  constexpr double gL = 2.5, gM = 1.5, gH = 1.0;
  if (theta <= tL) return gL;
  if (theta >= tH) return gH;
  if (theta <= tM) return gL + (theta - tL) / (tM - tL) * (gM - gL);
  return gM + (theta - tM) / (tH - tM) * (gH - gM);
}

// Reservation utility at type theta: a fixed share of first-best surplus.
// Outside options rise with skill; share 0.4 is the default calibration.
inline double u0_curve(double theta, double reservation_share,
                       const EffortBounds& b = {}) {
  if (theta <= 0.0) return 0.0;
  return reservation_share * first_best_welfare(theta, gamma_curve(theta), b);
}

inline AgentProfile profile_for(Ability a, double reservation_share,
                                double theta_offset = 0.0) {
  const ClassAnchor base = anchor_of(a);
  const double theta = base.theta + theta_offset;
  return AgentProfile{theta, gamma_curve(theta),
                      u0_curve(theta, reservation_share), a};
}

}  // namespace asym
