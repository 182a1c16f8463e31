#pragma once

// Linear incentive contracts, screening menus, rents.
//
// A contract pays w(s_e) = alpha * s_e + beta against the observed effort
// signal s_e = e + eps.  With quadratic costs the agent's best response is
// e* = clamp(alpha / gamma), independent of the signal noise (risk-neutral
// agent), and the principal's expected wage bill at e* is alpha*e* + beta.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "asym/bayes.hpp"
#include "asym/econ.hpp"

namespace asym {

struct LinearContract {
  double alpha = 0.0;  // slope on the effort signal, >= 0
  double beta = 0.0;   // unconditional transfer

  double wage(double effort_signal) const { return alpha * effort_signal + beta; }
};

inline double best_response_effort(const LinearContract& c, double gamma,
                                   const EffortBounds& b) {
  if (!(gamma > 0.0)) throw std::domain_error("best_response_effort: gamma must be > 0");
  if (!(c.alpha >= 0.0)) throw std::domain_error("best_response_effort: alpha must be >= 0");
  return clamp_effort(c.alpha / gamma, b);
}

// The agent's certainty-equivalent value of facing slope alpha:
// alpha*e* - c(e*) at the best response.
inline double slope_value(double alpha, double gamma, const EffortBounds& b) {
  const double e = clamp_effort(alpha / gamma, b);
  return alpha * e - 0.5 * gamma * e * e;
}

// Transfer that makes expected utility exactly u0 at the best response.
inline double ir_binding_transfer(double alpha, const AgentProfile& p,
                                  const EffortBounds& b) {
  if (!(alpha >= 0.0)) throw std::domain_error("ir_binding_transfer: alpha must be >= 0");
  return p.u0 - slope_value(alpha, p.gamma, b);
}

// Monopoly-optimal linear contract against a type estimate.
//
// Substituting e = alpha/gamma into expected profit theta_hat*e - c(e) - u0
// gives a concave problem with alpha* = theta_hat, clamped so the induced
// effort stays within bounds.  A non-positive estimate means no gainful
// trade: (alpha = 0, beta = u0) leaves the agent indifferent.
inline LinearContract optimal_contract(const GaussianBelief& belief, double gamma,
                                       double u0, const EffortBounds& b) {
  check_belief(belief, "optimal_contract");
  if (!(gamma > 0.0)) throw std::domain_error("optimal_contract: gamma must be > 0");
  const double theta_hat = belief.mean;
  if (theta_hat <= 0.0) return LinearContract{0.0, u0};
  double alpha = theta_hat;
  alpha = std::min(alpha, gamma * b.hi);
  alpha = std::max(alpha, gamma * b.lo);
  AgentProfile believed{theta_hat, gamma, u0, Ability::Medium};
  return LinearContract{alpha, ir_binding_transfer(alpha, believed, b)};
}

// Principal's expected profit from posting `c` to an agent believed to be
// (theta_hat, gamma): theta_hat*e - (alpha*e + beta) at the believed response.
inline double expected_profit(const LinearContract& c, double theta_hat, double gamma,
                              const EffortBounds& b) {
  const double e = best_response_effort(c, gamma, b);
  return theta_hat * e - (c.alpha * e + c.beta);
}

// ---------------------------------------------------------------------------
// Screening menu.

struct MenuItem {
  double anchor = 0.0;          // type the item is designed for
  double lo = 0.0, hi = 0.0;    // signal interval that selects this item
  LinearContract contract;
  double rent = 0.0;            // cascade transfer above the anchor's u0
};

struct ContractMenu {
  std::vector<MenuItem> items;  // ascending by anchor

  // Item selected by a type signal: the containing interval if any, else
  // the nearest one.  Boundary and distance ties go to the lower item; the
  // distance comparison carries an absolute tolerance because a midpoint
  // signal can sit an ulp closer to the upper interval after rounding.
  std::size_t assign(double signal) const {
    constexpr double kDistanceTie = 1e-12;
    if (items.empty()) throw std::domain_error("ContractMenu::assign: empty menu");
    std::size_t best = 0;
    double best_d = INFINITY;
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (signal >= items[k].lo && signal <= items[k].hi) {
        // Shared boundaries resolve to the lower interval (first hit).
        return k;
      }
      const double d = signal < items[k].lo ? items[k].lo - signal : signal - items[k].hi;
      if (d + kDistanceTie < best_d) { best_d = d; best = k; }
    }
    return best;
  }
};

// Build a screening menu over ascending type anchors.
//
// Intervals: half-width scale * sigma_theta^2 around each anchor, truncated
// at midpoints between neighbors so they never overlap.
//
// Contracts: each item keeps the anchor-optimal slope.  Transfers start IR-
// binding and are raised by the minimal cascade that makes every type weakly
// prefer its own item over any lower one (adjacent constraints bind with
// equality, so self-selection holds weakly and strictly off the ties).  The
// lowest item is exactly optimal_contract for its anchor.
inline ContractMenu design_menu(std::span<const double> anchors, double sigma_theta,
                                double scale,
                                const std::function<double(double)>& gamma_of,
                                const std::function<double(double)>& u0_of,
                                const EffortBounds& b) {
  if (anchors.empty()) throw std::domain_error("design_menu: no anchors");
  for (std::size_t k = 1; k < anchors.size(); ++k)
    if (!(anchors[k] > anchors[k - 1]))
      throw std::domain_error("design_menu: anchors must be strictly increasing");
  if (!(sigma_theta >= 0.0)) throw std::domain_error("design_menu: sigma_theta must be >= 0");
  if (!(scale >= 0.0)) throw std::domain_error("design_menu: scale must be >= 0");

  const double half = scale * sigma_theta * sigma_theta;
  const std::size_t n = anchors.size();

  ContractMenu menu;
  menu.items.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    MenuItem& it = menu.items[k];
    it.anchor = anchors[k];
    it.lo = anchors[k] - half;
    it.hi = anchors[k] + half;
    if (k > 0) it.lo = std::max(it.lo, 0.5 * (anchors[k - 1] + anchors[k]));
    if (k + 1 < n) it.hi = std::min(it.hi, 0.5 * (anchors[k] + anchors[k + 1]));
    const double gamma = gamma_of(anchors[k]);
    const double u0 = u0_of(anchors[k]);
    it.contract = optimal_contract(GaussianBelief{anchors[k], 1.0}, gamma, u0, b);
  }

  // Minimal-rent cascade, ascending: type k must not prefer a lower item.
  for (std::size_t k = 1; k < n; ++k) {
    const double gamma_k = gamma_of(anchors[k]);
    const double own = slope_value(menu.items[k].contract.alpha, gamma_k, b) +
                       menu.items[k].contract.beta;
    double best_lower = own;
    for (std::size_t j = 0; j < k; ++j)
      best_lower = std::max(best_lower,
                            slope_value(menu.items[j].contract.alpha, gamma_k, b) +
                                menu.items[j].contract.beta);
    const double bump = best_lower - own;
    menu.items[k].contract.beta += bump;
    menu.items[k].rent = bump;
  }
  return menu;
}

// ---------------------------------------------------------------------------
// Rents, payment risk, dynamic and multi-agent wages.

struct RentReport {
  double effort = 0.0;
  double expected_wage = 0.0;
  double effort_cost = 0.0;
  double rent = 0.0;  // expected_wage - effort_cost - u0
};

inline RentReport information_rent(const LinearContract& c, const AgentProfile& p,
                                   const EffortBounds& b) {
  RentReport r;
  r.effort = best_response_effort(c, p.gamma, b);
  r.expected_wage = c.alpha * r.effort + c.beta;
  r.effort_cost = cost(r.effort, p);
  r.rent = r.expected_wage - r.effort_cost - p.u0;
  return r;
}

// Var(w) = alpha^2 * Var(s_e); effort is deterministic given the contract.
inline double payment_variance(const LinearContract& c, const SignalChannel& effort_channel) {
  check_channel(effort_channel, "payment_variance");
  return c.alpha * c.alpha * effort_channel.noise_variance;
}

// Per-period wage that pays estimated output minus a fixed extraction:
// w_t = theta_hat * effort_signal - transfer.  With transfer = believed
// surplus net of u0 this binds the period IR, and the agent's marginal
// return to effort is theta_hat, as under the optimal linear contract.
inline double dynamic_wage(double theta_hat, double effort_signal, double transfer) {
  if (!(theta_hat > 0.0)) throw std::domain_error("dynamic_wage: theta_hat must be > 0");
  return theta_hat * effort_signal - transfer;
}

// Wage loading on both the effort signal and the agent's own type signal.
// type_loading is the slope on s_theta -- distinct from LinearContract::beta,
// which is an unconditional transfer.
struct MultiAgentContract {
  double alpha = 0.0;         // slope on s_e
  double type_loading = 0.0;  // slope on s_theta
  double base = 0.0;
};

inline double multi_agent_wage(const MultiAgentContract& c, double effort_signal,
                               double type_signal) {
  return c.alpha * effort_signal + c.type_loading * type_signal + c.base;
}

}  // namespace asym
