// asymsim command-line front end.
//
// Exit codes:
//   0  success
//   2  output location not writable
//   3  internal error (invariant violation)
//   4  config file missing
//   5  unknown config key / sweep parameter
//   6  invalid config value (malformed JSON, bad type, constraint violation)

#include <charconv>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asym/asym.hpp"

namespace {

std::vector<double> parse_values_csv(const std::string& csv) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t pos = csv.find(',', start);
    if (pos == std::string::npos) pos = csv.size();
    const std::string_view tok(csv.data() + start, pos - start);
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
      throw asym::ConfigError(asym::ConfigErrorKind::BadValue,
                              "--values entries must be numbers, got '" +
                                  std::string(tok) + "'");
    out.push_back(v);
    if (pos == csv.size()) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-arm labor-market simulator with asymmetric information"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success, 2 output not writable, 3 internal error,\n"
      "            4 missing config file, 5 unknown key, 6 invalid value.\n"
      "The master seed resolves as --seed > ASYM_SEED > config file.");

  std::string config_path, out_override, param, values_csv, in_dir;
  std::string format = "md";
  std::uint64_t seed = 0;

  CLI::App* sim = app.add_subcommand("simulate", "Run the configured experiment");
  sim->add_option("--config", config_path, "JSON config file")->required();
  CLI::Option* sim_seed = sim->add_option("--seed", seed, "Master seed override");
  sim->add_option("--out", out_override, "Output directory override");

  CLI::App* sw = app.add_subcommand("sweep", "Run a one-parameter sweep");
  sw->add_option("--config", config_path, "JSON config file")->required();
  sw->add_option("--param", param, "Config parameter to vary")->required();
  sw->add_option("--values", values_csv, "Comma-separated values")->required();
  CLI::Option* sw_seed = sw->add_option("--seed", seed, "Master seed override");
  sw->add_option("--out", out_override, "Output directory override");

  CLI::App* rep = app.add_subcommand("report", "Rebuild a summary from records.csv");
  rep->add_option("--in", in_dir, "Directory holding records.csv")->required();
  rep->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"csv", "json", "md"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      asym::ExperimentSpec spec = asym::parse_config(config_path);
      asym::apply_seed_overrides(
          spec, sim_seed->count() ? std::optional<std::uint64_t>(seed) : std::nullopt);
      const std::string out_dir = out_override.empty() ? spec.out_dir : out_override;
      const asym::RunOutputs outs = asym::run_experiment(spec, out_dir);
      std::cout << "wrote " << outs.n_records << " records to " << outs.dir.string()
                << "\n"
                << "welfare: without_ai="
                << outs.summary.welfare_without_ai
                << " with_ai=" << outs.summary.welfare_with_ai << "\n";
    } else if (sw->parsed()) {
      asym::ExperimentSpec spec = asym::parse_config(config_path);
      asym::apply_seed_overrides(
          spec, sw_seed->count() ? std::optional<std::uint64_t>(seed) : std::nullopt);
      const std::vector<double> values = parse_values_csv(values_csv);
      const std::string out_dir = out_override.empty() ? spec.out_dir : out_override;
      const auto points = asym::run_sweep(spec, param, values, out_dir);
      std::cout << "swept " << param << " over " << points.size() << " values into "
                << out_dir << "\n";
    } else if (rep->parsed()) {
      const std::filesystem::path out = asym::write_report(in_dir, format);
      std::cout << "wrote " << out.string() << "\n";
    }
    return 0;
  } catch (const asym::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind) {
      case asym::ConfigErrorKind::MissingFile: return 4;
      case asym::ConfigErrorKind::UnknownKey: return 5;
      case asym::ConfigErrorKind::BadValue: return 6;
    }
    return 6;
  } catch (const asym::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const asym::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
