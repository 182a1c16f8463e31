#pragma once

// Two-arm labor-market simulation.
//
// Each replication draws one agent population and runs it through both
// information arms: WithAI (precise configured channels) and WithoutAI
// (both channels degraded to a calibrated sigma_control, incentive power
// scaled down to the "basic contract" fraction).  Arms share the same
// standard-normal draws, so equally configured arms produce identical
// records.
//
// Per agent and cycle: the principal updates a Gaussian type belief from
// the arm's type signal, reads cost curvature and reservation level off
// the calibration curves at the posterior mean, posts the structure-
// adjusted contract if believed profit is non-negative, and the agent
// accepts when expected utility clears its (possibly learned) threshold.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "asym/bayes.hpp"
#include "asym/contract.hpp"
#include "asym/econ.hpp"
#include "asym/manipulation.hpp"
#include "asym/rng.hpp"
#include "asym/stats.hpp"

namespace asym {

// Internal consistency failure (accounting identity, impossible state).
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Arm { WithoutAI = 0, WithAI = 1 };

inline const char* to_string(Arm a) {
  return a == Arm::WithAI ? "with_ai" : "without_ai";
}

enum class Structure { Monopoly, Oligopoly, Competitive };

inline const char* to_string(Structure s) {
  switch (s) {
    case Structure::Monopoly: return "monopoly";
    case Structure::Oligopoly: return "oligopoly";
    case Structure::Competitive: return "competitive";
  }
  return "?";
}

enum class ContractMode { Posterior, Menu, Dynamic };

inline const char* to_string(ContractMode m) {
  switch (m) {
    case ContractMode::Posterior: return "posterior";
    case ContractMode::Menu: return "menu";
    case ContractMode::Dynamic: return "dynamic";
  }
  return "?";
}

struct AbilityShares {
  double high = 0.3, medium = 0.2, low = 0.5;  // sum to 1
};

struct MarketConfig {
  int n_agents = 300;
  AbilityShares shares;
  double sigma_theta = 0.05;       // WithAI type-signal noise (sd)
  double sigma_e = 0.05;           // WithAI effort-signal noise (sd)
  double control_accuracy = 0.8;   // WithoutAI MAP accuracy target, (1/3, 1]
  Structure structure = Structure::Monopoly;  // bilateral take-it-or-leave-it
  int oligopoly_firms = 2;         // >= 2 when structure == Oligopoly
  int cycles = 10;
  double discount = 0.95;          // present-value reporting
  int replications = 30;
  std::uint64_t master_seed = 42;
  double correlation_rho = 0.0;    // pairwise type correlation, (-1, 1)
  double theta_jitter = 0.0;       // within-class uniform half-width
  bool learning = true;            // EMA acceptance thresholds across cycles
  double learning_weight = 0.3;
  double reservation_share = 0.4;  // u0 = share * first-best surplus
  std::optional<std::array<double, 3>> u0_override;  // per class H, M, L
  double ai_slope_fraction = 1.0;       // incentive power, WithAI arm
  double control_slope_fraction = 0.75; // "basic contract" power, WithoutAI
  EffortBounds bounds;
  ContractMode contract_mode = ContractMode::Posterior;
  double menu_width_scale = 2.0;
  std::optional<PenaltyScheme> manipulation;
  bool trace_beliefs = false;
  int threads = 0;  // replication fan-out; 0 = hardware concurrency
};

inline void validate_config(const MarketConfig& c) {
  auto fail = [](const std::string& msg) { throw std::domain_error("config: " + msg); };
  if (c.n_agents < 1) fail("n_agents must be >= 1");
  const double share_sum = c.shares.high + c.shares.medium + c.shares.low;
  if (c.shares.high < 0 || c.shares.medium < 0 || c.shares.low < 0 ||
      std::abs(share_sum - 1.0) > 1e-9)
    fail("ability_shares must be non-negative and sum to 1");
  if (!(c.sigma_theta >= 0.0) || !(c.sigma_e >= 0.0)) fail("signal sigmas must be >= 0");
  if (!(c.control_accuracy > 0.36) || !(c.control_accuracy <= 1.0))
    fail("control_accuracy must lie in (0.36, 1]");
  if (c.structure == Structure::Oligopoly && c.oligopoly_firms < 2)
    fail("oligopoly_firms must be >= 2");
  if (c.cycles < 1 || c.cycles > 10000) fail("cycles must lie in [1, 10000]");
  if (!(c.discount > 0.0) || !(c.discount < 1.0)) fail("discount must lie in (0, 1)");
  if (c.replications < 1) fail("replications must be >= 1");
  if (!(c.correlation_rho > -1.0) || !(c.correlation_rho < 1.0))
    fail("correlation_rho must lie in (-1, 1)");
  if (!(c.theta_jitter >= 0.0) || c.theta_jitter >= 0.15)
    fail("theta_jitter must lie in [0, 0.15)");
  if (!(c.learning_weight >= 0.0) || !(c.learning_weight <= 1.0))
    fail("learning_weight must lie in [0, 1]");
  if (!(c.reservation_share >= 0.0) || c.reservation_share > 0.95)
    fail("reservation_share must lie in [0, 0.95]");
  if (!(c.ai_slope_fraction > 0.0) || c.ai_slope_fraction > 2.0 ||
      !(c.control_slope_fraction > 0.0) || c.control_slope_fraction > 2.0)
    fail("slope fractions must lie in (0, 2]");
  if (!(c.bounds.lo >= 0.0) || !(c.bounds.lo < c.bounds.hi))
    fail("effort_bounds must satisfy 0 <= lo < hi");
  if (!(c.menu_width_scale >= 0.0)) fail("menu_width_scale must be >= 0");
  if (c.manipulation) check_scheme(*c.manipulation, "config");
  if (c.threads < 0) fail("threads must be >= 0");
}

// ---------------------------------------------------------------------------
// Structure rules: how competition splits the believed surplus margin.

struct StructureRule {
  int n_principals = 1;      // 0 encodes free entry
  double agent_share = 0.0;  // share of the believed margin handed to the agent
};

inline StructureRule rule_for(const MarketConfig& c) {
  switch (c.structure) {
    case Structure::Monopoly: return {1, 0.0};
    case Structure::Oligopoly: {
      const double k = static_cast<double>(c.oligopoly_firms);
      return {c.oligopoly_firms, (k - 1.0) / k};
    }
    case Structure::Competitive: return {0, 1.0};
  }
  return {1, 0.0};
}

// Bid the transfer up by the agent's share of the believed margin.
inline LinearContract apply_structure(const LinearContract& ir_binding,
                                      double believed_margin,
                                      const StructureRule& rule) {
  LinearContract out = ir_binding;
  if (believed_margin > 0.0) out.beta += rule.agent_share * believed_margin;
  return out;
}

// ---------------------------------------------------------------------------
// WithoutAI channel calibration.
//
// MAP accuracy over the three anchors with uniform weights and midpoint
// decision boundaries, as a function of the channel sd; solved for the
// configured accuracy by bisection.  Monotone decreasing from 1 to 1/3.

inline double anchor_classification_accuracy(double sigma) {
  const double b1 = 0.5 * (anchor_of(Ability::Low).theta + anchor_of(Ability::Medium).theta);
  const double b2 = 0.5 * (anchor_of(Ability::Medium).theta + anchor_of(Ability::High).theta);
  const double tL = anchor_of(Ability::Low).theta;
  const double tM = anchor_of(Ability::Medium).theta;
  const double tH = anchor_of(Ability::High).theta;
  const double pH = 1.0 - normal_cdf((b2 - tH) / sigma);
  const double pM = normal_cdf((b2 - tM) / sigma) - normal_cdf((b1 - tM) / sigma);
  const double pL = normal_cdf((b1 - tL) / sigma);
  return (pH + pM + pL) / 3.0;
}

inline double calibrate_control_sigma(double accuracy) {
  if (!(accuracy > 0.36) || !(accuracy < 1.0))
    throw std::domain_error("calibrate_control_sigma: accuracy must lie in (0.36, 1)");
  double lo = 1e-4, hi = 64.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (anchor_classification_accuracy(mid) > accuracy) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Per-arm channel sds.  control_accuracy == 1 is the calibration boundary:
// the WithoutAI arm gets the WithAI channels.
struct ResolvedChannels {
  double theta_sd[2] = {0.0, 0.0};  // indexed by Arm
  double effort_sd[2] = {0.0, 0.0};
};

inline ResolvedChannels resolve_channels(const MarketConfig& c) {
  ResolvedChannels ch;
  ch.theta_sd[static_cast<int>(Arm::WithAI)] = c.sigma_theta;
  ch.effort_sd[static_cast<int>(Arm::WithAI)] = c.sigma_e;
  if (c.control_accuracy >= 1.0) {
    ch.theta_sd[static_cast<int>(Arm::WithoutAI)] = c.sigma_theta;
    ch.effort_sd[static_cast<int>(Arm::WithoutAI)] = c.sigma_e;
  } else {
    const double s = calibrate_control_sigma(c.control_accuracy);
    ch.theta_sd[static_cast<int>(Arm::WithoutAI)] = s;
    ch.effort_sd[static_cast<int>(Arm::WithoutAI)] = s;
  }
  return ch;
}

// Blur a true value through the arm's channel; z is a pre-drawn standard
// normal shared across arms so that identical channels yield identical
// signals.
inline double degrade_signal(double true_value, Arm arm, const ResolvedChannels& ch,
                             double z, bool effort_channel = false) {
  const int i = static_cast<int>(arm);
  return true_value + (effort_channel ? ch.effort_sd[i] : ch.theta_sd[i]) * z;
}

// ---------------------------------------------------------------------------
// Population.

// Reservation level at an arbitrary (estimated or true) type, honoring a
// per-class override as a piecewise-linear curve through the anchors.
inline double u0_at(double theta, const MarketConfig& c) {
  if (!c.u0_override) return u0_curve(theta, c.reservation_share, c.bounds);
  const auto& u = *c.u0_override;  // H, M, L
  const double tL = anchor_of(Ability::Low).theta;
  const double tM = anchor_of(Ability::Medium).theta;
  const double tH = anchor_of(Ability::High).theta;
  if (theta <= tL) return u[2];
  if (theta >= tH) return u[0];
  if (theta <= tM) return u[2] + (theta - tL) / (tM - tL) * (u[1] - u[2]);
  return u[1] + (theta - tM) / (tH - tM) * (u[0] - u[1]);
}

inline GaussianBelief population_prior(const MarketConfig& c) {
  const double mu = c.shares.high * anchor_of(Ability::High).theta +
                    c.shares.medium * anchor_of(Ability::Medium).theta +
                    c.shares.low * anchor_of(Ability::Low).theta;
  double var = 0.0;
  const double w[3] = {c.shares.high, c.shares.medium, c.shares.low};
  for (int k = 0; k < 3; ++k) {
    const double d = kClassAnchors[k].theta - mu;
    var += w[k] * d * d;
  }
  var += c.theta_jitter * c.theta_jitter / 3.0;  // uniform jitter variance
  return GaussianBelief{mu, std::max(var, 1e-12)};
}

inline std::vector<AgentProfile> draw_population(const MarketConfig& c, Stream& stream) {
  std::vector<AgentProfile> pop;
  pop.reserve(static_cast<std::size_t>(c.n_agents));
  for (int i = 0; i < c.n_agents; ++i) {
    const double u = stream.next_unit();
    Ability a = Ability::Low;
    if (u <= c.shares.high) a = Ability::High;
    else if (u <= c.shares.high + c.shares.medium) a = Ability::Medium;
    const double off = c.theta_jitter > 0.0
                           ? stream.uniform(-c.theta_jitter, c.theta_jitter)
                           : 0.0;
    const double theta = anchor_of(a).theta + off;
    pop.push_back(AgentProfile{theta, gamma_curve(theta), u0_at(theta, c), a});
  }
  return pop;
}

// ---------------------------------------------------------------------------
// Records.

struct CycleRecord {
  std::int32_t replication = 0;
  std::int32_t cycle = 0;
  std::int32_t agent_id = 0;
  Ability ability = Ability::High;
  Arm arm = Arm::WithoutAI;
  bool accepted = false;
  double effort = 0.0;
  double wage = 0.0;
  double agent_utility = 0.0;
  double principal_profit = 0.0;
  double welfare_contribution = 0.0;  // production - cost, 0 if not accepted
  double rent = 0.0;                  // expected wage - cost - u0, 0 if not accepted
  bool manipulated = false;
};

struct BeliefTrace {
  std::int32_t replication = 0;
  std::int32_t cycle = 0;
  std::int32_t agent_id = 0;
  Arm arm = Arm::WithoutAI;
  double mean = 0.0;
  double variance = 0.0;
  std::int32_t map_class = 0;  // index into kClassAnchors
};

struct RunResult {
  std::vector<CycleRecord> records;
  std::vector<BeliefTrace> traces;
  ResolvedChannels channels;
};

namespace detail {

struct AgentState {
  // Per-arm belief and classification statistics.
  GaussianBelief belief[2];
  double signal_sum[2] = {0.0, 0.0};
  int signal_count[2] = {0, 0};
  double ema[2] = {0.0, 0.0};  // learned acceptance aspiration
};

inline constexpr std::uint64_t kPopulationStreamTag = 0xFFFFFFFFull;

// One replication; records appended in (cycle, agent, arm) order.
inline void simulate_replication(const MarketConfig& cfg, const ResolvedChannels& ch,
                                 const StructureRule& rule, int rep, int n_cycles,
                                 std::vector<CycleRecord>& out,
                                 std::vector<BeliefTrace>* traces) {
  Stream pop_stream =
      derive_stream(cfg.master_seed, static_cast<std::uint64_t>(rep),
                    kPopulationStreamTag, 0);
  const std::vector<AgentProfile> pop = draw_population(cfg, pop_stream);
  const GaussianBelief prior = population_prior(cfg);
  const int n = cfg.n_agents;

  std::vector<AgentState> st(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    st[a].belief[0] = st[a].belief[1] = prior;
    st[a].ema[0] = st[a].ema[1] = pop[a].u0;
  }

  // Correlated-pair beliefs (agents 2i and 2i+1) when rho != 0.
  const bool paired = cfg.correlation_rho != 0.0;
  std::vector<PairBelief> pair_beliefs[2];
  if (paired) {
    const int n_pairs = n / 2;
    for (int arm = 0; arm < 2; ++arm) {
      pair_beliefs[arm].assign(static_cast<std::size_t>(n_pairs), PairBelief{});
      for (auto& pb : pair_beliefs[arm]) {
        pb.mean1 = pb.mean2 = prior.mean;
        pb.var1 = pb.var2 = prior.variance;
        pb.cov = cfg.correlation_rho * prior.variance;
      }
    }
  }

  // Menus are static per arm (they depend only on the channel width).
  ContractMenu menu[2];
  if (cfg.contract_mode == ContractMode::Menu) {
    const double anchors[3] = {anchor_of(Ability::Low).theta,
                               anchor_of(Ability::Medium).theta,
                               anchor_of(Ability::High).theta};
    for (int arm = 0; arm < 2; ++arm)
      menu[arm] = design_menu(
          std::span<const double>(anchors, 3), ch.theta_sd[arm], cfg.menu_width_scale,
          [](double t) { return gamma_curve(t); },
          [&cfg](double t) { return u0_at(t, cfg); }, cfg.bounds);
  }

  const double class_priors[3] = {cfg.shares.high, cfg.shares.medium, cfg.shares.low};
  const double class_anchors[3] = {anchor_of(Ability::High).theta,
                                   anchor_of(Ability::Medium).theta,
                                   anchor_of(Ability::Low).theta};

  std::vector<double> z_theta(static_cast<std::size_t>(n));
  std::vector<double> z_e(static_cast<std::size_t>(n));

  for (int cycle = 0; cycle < n_cycles; ++cycle) {
    for (int a = 0; a < n; ++a) {
      Stream s = derive_stream(cfg.master_seed, static_cast<std::uint64_t>(rep),
                               static_cast<std::uint64_t>(a),
                               static_cast<std::uint64_t>(cycle));
      z_theta[a] = s.next_normal();
      z_e[a] = s.next_normal();
    }

    // Belief update phase.
    for (int arm_i = 0; arm_i < 2; ++arm_i) {
      const Arm arm = static_cast<Arm>(arm_i);
      const SignalChannel chan{ch.theta_sd[arm_i] * ch.theta_sd[arm_i]};
      if (paired) {
        const int n_pairs = n / 2;
        for (int p = 0; p < n_pairs; ++p) {
          const int a1 = 2 * p, a2 = 2 * p + 1;
          PairBelief& pb = pair_beliefs[arm_i][p];
          pb = pair_posterior(pb, degrade_signal(pop[a1].theta, arm, ch, z_theta[a1]), chan);
          pb = pair_posterior_agent2(pb, degrade_signal(pop[a2].theta, arm, ch, z_theta[a2]), chan);
          st[a1].belief[arm_i] = GaussianBelief{pb.mean1, pb.var1};
          st[a2].belief[arm_i] = GaussianBelief{pb.mean2, pb.var2};
        }
        if (n % 2 == 1) {
          const int a = n - 1;
          st[a].belief[arm_i] = normal_posterior(
              st[a].belief[arm_i], degrade_signal(pop[a].theta, arm, ch, z_theta[a]), chan);
        }
      } else {
        for (int a = 0; a < n; ++a)
          st[a].belief[arm_i] = normal_posterior(
              st[a].belief[arm_i], degrade_signal(pop[a].theta, arm, ch, z_theta[a]), chan);
      }
      for (int a = 0; a < n; ++a) {
        st[a].signal_sum[arm_i] += degrade_signal(pop[a].theta, arm, ch, z_theta[a]);
        st[a].signal_count[arm_i] += 1;
      }
    }

    // Contracting phase.
    for (int a = 0; a < n; ++a) {
      const AgentProfile& agent = pop[a];
      for (int arm_i = 0; arm_i < 2; ++arm_i) {
        const Arm arm = static_cast<Arm>(arm_i);
        AgentState& state = st[a];

        CycleRecord rec;
        rec.replication = rep;
        rec.cycle = cycle;
        rec.agent_id = a;
        rec.ability = agent.ability;
        rec.arm = arm;

        const GaussianBelief& belief = state.belief[arm_i];
        const double theta_hat = belief.mean;

        if (traces) {
          const double mean_signal =
              state.signal_sum[arm_i] / static_cast<double>(state.signal_count[arm_i]);
          const SignalChannel mean_chan{ch.theta_sd[arm_i] * ch.theta_sd[arm_i] /
                                        static_cast<double>(state.signal_count[arm_i])};
          const TypePosterior tp = classify_type(
              mean_signal, std::span<const double>(class_priors, 3),
              std::span<const double>(class_anchors, 3), mean_chan);
          traces->push_back(BeliefTrace{rec.replication, rec.cycle, rec.agent_id, arm,
                                        belief.mean, belief.variance,
                                        static_cast<std::int32_t>(tp.map_index())});
        }

        const double frac = arm == Arm::WithAI ? cfg.ai_slope_fraction
                                               : cfg.control_slope_fraction;
        const double gamma_hat = gamma_curve(theta_hat);
        const double u0_hat = u0_at(theta_hat, cfg);

        LinearContract posted;
        bool posted_ok = false;
        if (cfg.contract_mode == ContractMode::Menu) {
          const double mean_signal =
              state.signal_sum[arm_i] / static_cast<double>(state.signal_count[arm_i]);
          const MenuItem& item = menu[arm_i].items[menu[arm_i].assign(mean_signal)];
          const double margin = expected_profit(item.contract, item.anchor,
                                                gamma_curve(item.anchor), cfg.bounds);
          if (margin >= 0.0) {
            posted = apply_structure(item.contract, margin, rule);
            posted_ok = true;
          }
        } else if (theta_hat > 0.0) {
          // Posterior and Dynamic modes share the contract algebra; the
          // dynamic wage w_t = theta_hat * s_e - transfer is the same
          // linear schedule with alpha = theta_hat, beta = -transfer.
          const LinearContract base =
              optimal_contract(belief, gamma_hat, u0_hat, cfg.bounds);
          if (base.alpha > 0.0) {
            const double alpha = frac * base.alpha;
            LinearContract scaled{alpha,
                                  u0_hat - slope_value(alpha, gamma_hat, cfg.bounds)};
            const double margin =
                expected_profit(scaled, theta_hat, gamma_hat, cfg.bounds);
            if (margin >= 0.0) {
              posted = apply_structure(scaled, margin, rule);
              posted_ok = true;
            }
          }
        }

        if (!posted_ok) {
          out.push_back(rec);
          if (cfg.learning)
            state.ema[arm_i] = (1.0 - cfg.learning_weight) * state.ema[arm_i] +
                               cfg.learning_weight * agent.u0;
          continue;
        }

        const RentReport rr = information_rent(posted, agent, cfg.bounds);
        const double expected_u = rr.rent + agent.u0;

        double manip_delta = 0.0;
        if (cfg.manipulation) {
          const ManipBestResponse br =
              manip_best_response(posted, agent, *cfg.manipulation, cfg.bounds);
          manip_delta = br.policy.delta_e;
        }

        const double threshold =
            cfg.learning ? std::max(agent.u0, state.ema[arm_i]) : agent.u0;
        const bool accepted = expected_u >= threshold - 1e-12;

        if (!accepted) {
          out.push_back(rec);
          if (cfg.learning)
            state.ema[arm_i] = (1.0 - cfg.learning_weight) * state.ema[arm_i] +
                               cfg.learning_weight * agent.u0;
          continue;
        }

        const double effort = rr.effort;
        const double effort_signal =
            degrade_signal(effort + manip_delta, arm, ch, z_e[a], /*effort_channel=*/true);
        const double wage =
            cfg.contract_mode == ContractMode::Dynamic
                ? dynamic_wage(posted.alpha, effort_signal, -posted.beta)
                : posted.wage(effort_signal);
        const double output = production(effort, agent.theta);
        const double effort_cost = cost(effort, agent);

        rec.accepted = true;
        rec.effort = effort;
        rec.wage = wage;
        rec.agent_utility = wage - effort_cost;
        rec.principal_profit = output - wage;
        rec.welfare_contribution = output - effort_cost;
        rec.rent = rr.rent;
        rec.manipulated = manip_delta > 0.0;
        out.push_back(rec);

        if (cfg.learning)
          state.ema[arm_i] = (1.0 - cfg.learning_weight) * state.ema[arm_i] +
                             cfg.learning_weight * rec.agent_utility;
      }
    }
  }
}

}  // namespace detail

// Run `cfg.replications` independent replications of `n_cycles` cycles.
// Records are ordered by (replication, cycle, agent_id, arm) regardless of
// the thread count.
inline RunResult run_market(const MarketConfig& cfg, int n_cycles) {
  validate_config(cfg);
  RunResult result;
  result.channels = resolve_channels(cfg);
  const StructureRule rule = rule_for(cfg);

  const int reps = cfg.replications;
  std::vector<std::vector<CycleRecord>> rec_slots(static_cast<std::size_t>(reps));
  std::vector<std::vector<BeliefTrace>> trace_slots(static_cast<std::size_t>(reps));

  unsigned n_threads = cfg.threads > 0
                           ? static_cast<unsigned>(cfg.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(reps));

  auto worker = [&](int rep) {
    detail::simulate_replication(cfg, result.channels, rule, rep, n_cycles,
                                 rec_slots[rep],
                                 cfg.trace_beliefs ? &trace_slots[rep] : nullptr);
  };

  if (n_threads <= 1) {
    for (int rep = 0; rep < reps; ++rep) worker(rep);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    std::atomic<int> next{0};
    for (unsigned t = 0; t < n_threads; ++t)
      pool.emplace_back([&] {
        for (int rep = next.fetch_add(1); rep < reps; rep = next.fetch_add(1))
          worker(rep);
      });
    for (auto& th : pool) th.join();
  }

  std::size_t total = 0;
  for (const auto& v : rec_slots) total += v.size();
  result.records.reserve(total);
  for (auto& v : rec_slots)
    result.records.insert(result.records.end(), v.begin(), v.end());
  if (cfg.trace_beliefs)
    for (auto& v : trace_slots)
      result.traces.insert(result.traces.end(), v.begin(), v.end());

  // Accounting identity: agent utility + principal profit = surplus.
  for (const CycleRecord& r : result.records) {
    if (!r.accepted) continue;
    if (std::abs(r.agent_utility + r.principal_profit - r.welfare_contribution) > 1e-9)
      throw InvariantError("welfare accounting identity violated");
  }
  return result;
}

// One hiring round: cycles are ignored (forced to 1).
inline RunResult run_single_period(const MarketConfig& cfg) { return run_market(cfg, 1); }

// Repeated interaction with belief carry-over and learned acceptance.
inline RunResult run_cycles(const MarketConfig& cfg) { return run_market(cfg, cfg.cycles); }

}  // namespace asym
