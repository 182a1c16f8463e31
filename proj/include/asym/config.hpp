#pragma once

// Strict JSON experiment configuration.  Unknown keys, malformed values,
// and constraint violations are distinct error kinds so the CLI can map
// them to distinct exit codes.

#include <array>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "asym/market.hpp"

namespace asym {

enum class ConfigErrorKind { MissingFile, UnknownKey, BadValue };

struct ConfigError : std::runtime_error {
  ConfigErrorKind kind;
  ConfigError(ConfigErrorKind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}
};

struct ExperimentSpec {
  MarketConfig market;
  std::string mode = "cycles";  // "single_period" | "cycles"
  std::string out_dir = "out";
};

namespace detail {

using json = nlohmann::ordered_json;

inline void ensure_keys(const json& obj, std::initializer_list<const char*> allowed,
                        const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) { ok = true; break; }
    if (!ok)
      throw ConfigError(ConfigErrorKind::UnknownKey,
                        "unknown config key '" + where + it.key() + "'");
  }
}

inline double req_number(const json& v, const std::string& key) {
  if (!v.is_number())
    throw ConfigError(ConfigErrorKind::BadValue, "'" + key + "' must be a number");
  return v.get<double>();
}

inline void opt_number(const json& obj, const char* key, double& out) {
  if (obj.contains(key)) out = req_number(obj.at(key), key);
}

inline void opt_int(const json& obj, const char* key, int& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number_integer())
    throw ConfigError(ConfigErrorKind::BadValue,
                      std::string("'") + key + "' must be an integer");
  out = v.get<int>();
}

inline void opt_bool(const json& obj, const char* key, bool& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_boolean())
    throw ConfigError(ConfigErrorKind::BadValue,
                      std::string("'") + key + "' must be a boolean");
  out = v.get<bool>();
}

inline void opt_string(const json& obj, const char* key, std::string& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_string())
    throw ConfigError(ConfigErrorKind::BadValue,
                      std::string("'") + key + "' must be a string");
  out = v.get<std::string>();
}

}  // namespace detail

inline Structure parse_structure(const std::string& s) {
  if (s == "monopoly") return Structure::Monopoly;
  if (s == "oligopoly") return Structure::Oligopoly;
  if (s == "competitive") return Structure::Competitive;
  throw ConfigError(ConfigErrorKind::BadValue,
                    "'structure' must be monopoly|oligopoly|competitive, got '" + s + "'");
}

inline ContractMode parse_contract_mode(const std::string& s) {
  if (s == "posterior") return ContractMode::Posterior;
  if (s == "menu") return ContractMode::Menu;
  if (s == "dynamic") return ContractMode::Dynamic;
  throw ConfigError(ConfigErrorKind::BadValue,
                    "'contract_mode' must be posterior|menu|dynamic, got '" + s + "'");
}

inline ExperimentSpec parse_config_json(const nlohmann::ordered_json& j) {
  using detail::ensure_keys;
  if (!j.is_object())
    throw ConfigError(ConfigErrorKind::BadValue, "config root must be a JSON object");
  ensure_keys(j,
              {"mode", "out_dir", "n_agents", "ability_shares", "sigma_theta",
               "sigma_e", "control_accuracy", "structure", "oligopoly_firms",
               "cycles", "discount", "replications", "master_seed",
               "correlation_rho", "theta_jitter", "learning_enabled",
               "learning_weight", "reservation_share", "u0", "ai_slope_fraction",
               "control_slope_fraction", "effort_bounds", "contract_mode",
               "menu_width_scale", "manipulation", "trace_beliefs", "threads"},
              "");

  ExperimentSpec spec;
  MarketConfig& m = spec.market;

  detail::opt_string(j, "mode", spec.mode);
  if (spec.mode != "single_period" && spec.mode != "cycles")
    throw ConfigError(ConfigErrorKind::BadValue,
                      "'mode' must be single_period|cycles, got '" + spec.mode + "'");
  detail::opt_string(j, "out_dir", spec.out_dir);

  detail::opt_int(j, "n_agents", m.n_agents);
  if (j.contains("ability_shares")) {
    const auto& s = j.at("ability_shares");
    if (!s.is_object())
      throw ConfigError(ConfigErrorKind::BadValue, "'ability_shares' must be an object");
    ensure_keys(s, {"high", "medium", "low"}, "ability_shares.");
    detail::opt_number(s, "high", m.shares.high);
    detail::opt_number(s, "medium", m.shares.medium);
    detail::opt_number(s, "low", m.shares.low);
  }
  detail::opt_number(j, "sigma_theta", m.sigma_theta);
  detail::opt_number(j, "sigma_e", m.sigma_e);
  detail::opt_number(j, "control_accuracy", m.control_accuracy);
  if (j.contains("structure")) {
    std::string s;
    detail::opt_string(j, "structure", s);
    m.structure = parse_structure(s);
  }
  detail::opt_int(j, "oligopoly_firms", m.oligopoly_firms);
  detail::opt_int(j, "cycles", m.cycles);
  detail::opt_number(j, "discount", m.discount);
  detail::opt_int(j, "replications", m.replications);
  if (j.contains("master_seed")) {
    const auto& v = j.at("master_seed");
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                   v.get<long long>() < 0))
      throw ConfigError(ConfigErrorKind::BadValue,
                        "'master_seed' must be a non-negative integer");
    m.master_seed = v.get<std::uint64_t>();
  }
  detail::opt_number(j, "correlation_rho", m.correlation_rho);
  detail::opt_number(j, "theta_jitter", m.theta_jitter);
  detail::opt_bool(j, "learning_enabled", m.learning);
  detail::opt_number(j, "learning_weight", m.learning_weight);
  detail::opt_number(j, "reservation_share", m.reservation_share);
  if (j.contains("u0")) {
    const auto& u = j.at("u0");
    if (!u.is_object())
      throw ConfigError(ConfigErrorKind::BadValue, "'u0' must be an object");
    ensure_keys(u, {"high", "medium", "low"}, "u0.");
    std::array<double, 3> vals = {0.0, 0.0, 0.0};
    detail::opt_number(u, "high", vals[0]);
    detail::opt_number(u, "medium", vals[1]);
    detail::opt_number(u, "low", vals[2]);
    for (double v : vals)
      if (!(v >= 0.0))
        throw ConfigError(ConfigErrorKind::BadValue, "'u0' entries must be >= 0");
    m.u0_override = vals;
  }
  detail::opt_number(j, "ai_slope_fraction", m.ai_slope_fraction);
  detail::opt_number(j, "control_slope_fraction", m.control_slope_fraction);
  if (j.contains("effort_bounds")) {
    const auto& b = j.at("effort_bounds");
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
      throw ConfigError(ConfigErrorKind::BadValue,
                        "'effort_bounds' must be an array [lo, hi] of two numbers");
    m.bounds.lo = b[0].get<double>();
    m.bounds.hi = b[1].get<double>();
  }
  if (j.contains("contract_mode")) {
    std::string s;
    detail::opt_string(j, "contract_mode", s);
    m.contract_mode = parse_contract_mode(s);
  }
  detail::opt_number(j, "menu_width_scale", m.menu_width_scale);
  if (j.contains("manipulation")) {
    const auto& p = j.at("manipulation");
    if (p.is_null()) {
      m.manipulation.reset();
    } else {
      if (!p.is_object())
        throw ConfigError(ConfigErrorKind::BadValue, "'manipulation' must be an object");
      ensure_keys(p, {"kappa_theta", "kappa_e", "detection_slope", "fine"},
                  "manipulation.");
      PenaltyScheme scheme;
      detail::opt_number(p, "kappa_theta", scheme.kappa_theta);
      detail::opt_number(p, "kappa_e", scheme.kappa_e);
      detail::opt_number(p, "detection_slope", scheme.detection_slope);
      detail::opt_number(p, "fine", scheme.fine);
      m.manipulation = scheme;
    }
  }
  detail::opt_bool(j, "trace_beliefs", m.trace_beliefs);
  detail::opt_int(j, "threads", m.threads);

  try {
    validate_config(m);
  } catch (const std::domain_error& e) {
    throw ConfigError(ConfigErrorKind::BadValue, e.what());
  }
  return spec;
}

inline ExperimentSpec parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError(ConfigErrorKind::MissingFile,
                      "cannot open config file: " + path.string());
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(ConfigErrorKind::BadValue,
                      "malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_config_json(j);
}

// Effective configuration echo, including derived channel noise, written
// beside the results so every run is self-describing.
inline nlohmann::ordered_json resolved_config_json(const ExperimentSpec& spec,
                                                   const ResolvedChannels& ch) {
  using json = nlohmann::ordered_json;
  const MarketConfig& m = spec.market;
  json j;
  j["format"] = "asymsim-config-v1";
  j["mode"] = spec.mode;
  j["out_dir"] = spec.out_dir;
  j["n_agents"] = m.n_agents;
  j["ability_shares"] = {{"high", m.shares.high},
                         {"medium", m.shares.medium},
                         {"low", m.shares.low}};
  j["sigma_theta"] = m.sigma_theta;
  j["sigma_e"] = m.sigma_e;
  j["control_accuracy"] = m.control_accuracy;
  j["structure"] = to_string(m.structure);
  j["oligopoly_firms"] = m.oligopoly_firms;
  j["cycles"] = m.cycles;
  j["discount"] = m.discount;
  j["replications"] = m.replications;
  j["master_seed"] = m.master_seed;
  j["correlation_rho"] = m.correlation_rho;
  j["theta_jitter"] = m.theta_jitter;
  j["learning_enabled"] = m.learning;
  j["learning_weight"] = m.learning_weight;
  j["reservation_share"] = m.reservation_share;
  if (m.u0_override)
    j["u0"] = {{"high", (*m.u0_override)[0]},
               {"medium", (*m.u0_override)[1]},
               {"low", (*m.u0_override)[2]}};
  j["ai_slope_fraction"] = m.ai_slope_fraction;
  j["control_slope_fraction"] = m.control_slope_fraction;
  j["effort_bounds"] = {m.bounds.lo, m.bounds.hi};
  j["contract_mode"] = to_string(m.contract_mode);
  j["menu_width_scale"] = m.menu_width_scale;
  if (m.manipulation)
    j["manipulation"] = {{"kappa_theta", m.manipulation->kappa_theta},
                         {"kappa_e", m.manipulation->kappa_e},
                         {"detection_slope", m.manipulation->detection_slope},
                         {"fine", m.manipulation->fine}};
  j["trace_beliefs"] = m.trace_beliefs;
  j["threads"] = m.threads;
  j["resolved"] = {
      {"sigma_theta_without_ai", ch.theta_sd[static_cast<int>(Arm::WithoutAI)]},
      {"sigma_e_without_ai", ch.effort_sd[static_cast<int>(Arm::WithoutAI)]},
      {"sigma_theta_with_ai", ch.theta_sd[static_cast<int>(Arm::WithAI)]},
      {"sigma_e_with_ai", ch.effort_sd[static_cast<int>(Arm::WithAI)]}};
  return j;
}

}  // namespace asym
