#pragma once

// Experiment orchestration: run a configured experiment into an output
// directory, sweep one numeric parameter across values, or rebuild a
// summary from an existing records file.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asym/config.hpp"
#include "asym/io.hpp"
#include "asym/market.hpp"
#include "asym/metrics.hpp"

namespace asym {

// Seed precedence: explicit CLI value > ASYM_SEED environment > config file.
inline std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("ASYM_SEED");
  if (!v || !*v) return std::nullopt;
  std::uint64_t out = 0;
  const char* end = v + std::string_view(v).size();
  const auto res = std::from_chars(v, end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ConfigError(ConfigErrorKind::BadValue,
                      "ASYM_SEED must be a non-negative integer, got '" +
                          std::string(v) + "'");
  return out;
}

inline void apply_seed_overrides(ExperimentSpec& spec,
                                 std::optional<std::uint64_t> cli_seed) {
  if (cli_seed) spec.market.master_seed = *cli_seed;
  else if (const auto e = env_seed()) spec.market.master_seed = *e;
}

inline RunResult execute(const ExperimentSpec& spec) {
  return spec.mode == "single_period" ? run_single_period(spec.market)
                                      : run_cycles(spec.market);
}

struct RunOutputs {
  std::filesystem::path dir;
  SummaryTable summary;
  ResolvedChannels channels;
  std::size_t n_records = 0;
};

inline RunOutputs run_experiment(const ExperimentSpec& spec,
                                 const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  const auto t0 = std::chrono::steady_clock::now();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir.string());

  const RunResult res = execute(spec);
  const SummaryTable table = summarize(res.records, spec.market.discount);

  write_records_csv(out_dir / "records.csv", res.records);
  write_summary_csv(out_dir / "summary.csv", table);
  write_text_file(out_dir / "summary.json", summary_to_json(table).dump(2) + "\n");
  write_text_file(out_dir / "resolved_config.json",
                  resolved_config_json(spec, res.channels).dump(2) + "\n");
  if (spec.market.trace_beliefs) write_beliefs_csv(out_dir / "beliefs.csv", res.traces);

  // The metadata file is the only output carrying a timestamp; everything
  // else is byte-deterministic for a fixed seed.
  const auto t1 = std::chrono::steady_clock::now();
  const std::time_t now = std::time(nullptr);
  char stamp[32] = {0};
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  nlohmann::ordered_json meta;
  meta["format"] = "asymsim-run-v1";
  meta["created_utc"] = stamp;
  meta["elapsed_seconds"] =
      std::chrono::duration<double>(t1 - t0).count();
  meta["records"] = res.records.size();
  meta["traces"] = res.traces.size();
  write_text_file(out_dir / "run_metadata.json", meta.dump(2) + "\n");

  return RunOutputs{out_dir, table, res.channels, res.records.size()};
}

// ---------------------------------------------------------------------------
// Parameter sweep.

namespace detail {

inline int sweep_int(double v, const std::string& param) {
  if (v != std::floor(v))
    throw ConfigError(ConfigErrorKind::BadValue,
                      "sweep parameter '" + param + "' requires integer values");
  return static_cast<int>(v);
}

}  // namespace detail

inline ExperimentSpec with_param(const ExperimentSpec& base, const std::string& param,
                                 double value) {
  ExperimentSpec spec = base;
  MarketConfig& m = spec.market;
  if (param == "sigma_theta") m.sigma_theta = value;
  else if (param == "sigma_e") m.sigma_e = value;
  else if (param == "control_accuracy") m.control_accuracy = value;
  else if (param == "discount") m.discount = value;
  else if (param == "correlation_rho") m.correlation_rho = value;
  else if (param == "theta_jitter") m.theta_jitter = value;
  else if (param == "learning_weight") m.learning_weight = value;
  else if (param == "reservation_share") m.reservation_share = value;
  else if (param == "ai_slope_fraction") m.ai_slope_fraction = value;
  else if (param == "control_slope_fraction") m.control_slope_fraction = value;
  else if (param == "menu_width_scale") m.menu_width_scale = value;
  else if (param == "n_agents") m.n_agents = detail::sweep_int(value, param);
  else if (param == "cycles") m.cycles = detail::sweep_int(value, param);
  else if (param == "replications") m.replications = detail::sweep_int(value, param);
  else if (param == "oligopoly_firms") m.oligopoly_firms = detail::sweep_int(value, param);
  else if (param == "master_seed") {
    const int s = detail::sweep_int(value, param);
    if (s < 0)
      throw ConfigError(ConfigErrorKind::BadValue, "'master_seed' must be >= 0");
    m.master_seed = static_cast<std::uint64_t>(s);
  }
  else if (param == "manipulation.fine" || param == "manipulation.detection_slope" ||
           param == "manipulation.kappa_e" || param == "manipulation.kappa_theta") {
    if (!m.manipulation)
      throw ConfigError(ConfigErrorKind::BadValue,
                        "sweeping '" + param + "' requires a manipulation block");
    if (param == "manipulation.fine") m.manipulation->fine = value;
    else if (param == "manipulation.detection_slope") m.manipulation->detection_slope = value;
    else if (param == "manipulation.kappa_e") m.manipulation->kappa_e = value;
    else m.manipulation->kappa_theta = value;
  } else {
    throw ConfigError(ConfigErrorKind::UnknownKey,
                      "unknown sweep parameter '" + param + "'");
  }
  try {
    validate_config(m);
  } catch (const std::domain_error& e) {
    throw ConfigError(ConfigErrorKind::BadValue, e.what());
  }
  return spec;
}

struct SweepPoint {
  double value = 0.0;
  std::filesystem::path dir;
  SummaryTable summary;
};

inline std::vector<SweepPoint> run_sweep(const ExperimentSpec& base,
                                         const std::string& param,
                                         std::span<const double> values,
                                         const std::filesystem::path& out_dir) {
  if (values.empty())
    throw ConfigError(ConfigErrorKind::BadValue, "sweep needs at least one value");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir.string());

  std::vector<SweepPoint> points;
  nlohmann::ordered_json combined;
  combined["format"] = "asymsim-sweep-v1";
  combined["param"] = param;
  combined["points"] = nlohmann::ordered_json::array();

  std::ostringstream csv;
  csv << "# asymsim-sweep-v1\n"
      << "param,value,out_dir,welfare_without_ai,welfare_with_ai,welfare_gain,"
         "rent_with_ai_high,rent_with_ai_medium,rent_with_ai_low\n";

  for (const double v : values) {
    const ExperimentSpec spec = with_param(base, param, v);
    const fs::path sub = out_dir / (param + "=" + detail::fmt_double(v));
    const RunOutputs out = run_experiment(spec, sub);
    const SummaryTable& t = out.summary;

    nlohmann::ordered_json pt;
    pt["value"] = v;
    pt["dir"] = sub.filename().string();
    pt["summary"] = summary_to_json(t);
    combined["points"].push_back(pt);

    // Rent means of the WithAI arm in class order High, Medium, Low.
    double rents[3] = {0.0, 0.0, 0.0};
    for (const GroupRow& g : t.groups)
      if (g.arm == Arm::WithAI) rents[static_cast<int>(g.ability)] = g.rent_mean;
    csv << param << ',' << detail::fmt_double(v) << ',' << sub.filename().string()
        << ',' << detail::fmt_double(t.welfare_without_ai) << ','
        << detail::fmt_double(t.welfare_with_ai) << ','
        << detail::fmt_double(t.welfare_with_ai - t.welfare_without_ai) << ','
        << detail::fmt_double(rents[0]) << ',' << detail::fmt_double(rents[1]) << ','
        << detail::fmt_double(rents[2]) << '\n';

    points.push_back(SweepPoint{v, sub, t});
  }

  write_text_file(out_dir / "sweep_summary.json", combined.dump(2) + "\n");
  write_text_file(out_dir / "sweep_summary.csv", csv.str());
  return points;
}

// Rebuild a summary from an existing records file.  Returns the path of the
// emitted report.
inline std::filesystem::path write_report(const std::filesystem::path& in_dir,
                                          const std::string& format) {
  namespace fs = std::filesystem;
  const fs::path records_path = in_dir / "records.csv";
  if (!fs::exists(records_path))
    throw ConfigError(ConfigErrorKind::MissingFile,
                      "no records.csv in " + in_dir.string());
  const std::vector<CycleRecord> recs = read_records_csv(records_path);

  double discount = MarketConfig{}.discount;
  const fs::path cfg_path = in_dir / "resolved_config.json";
  if (fs::exists(cfg_path)) {
    std::ifstream in(cfg_path);
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(in);
      if (j.contains("discount") && j["discount"].is_number())
        discount = j["discount"].get<double>();
    } catch (const nlohmann::json::parse_error&) {
      // Fall back to the default discount; the report remains usable.
    }
  }

  const SummaryTable table = summarize(recs, discount);
  fs::path out_path;
  if (format == "csv") {
    out_path = in_dir / "report.csv";
    write_summary_csv(out_path, table);
  } else if (format == "json") {
    out_path = in_dir / "report.json";
    write_text_file(out_path, summary_to_json(table).dump(2) + "\n");
  } else if (format == "md") {
    out_path = in_dir / "report.md";
    write_text_file(out_path, summary_to_markdown(table));
  } else {
    throw ConfigError(ConfigErrorKind::BadValue,
                      "report format must be csv|json|md, got '" + format + "'");
  }
  return out_path;
}

}  // namespace asym
