#pragma once

// Versioned CSV / JSON serialization for records and summaries.
// Doubles are written with the shortest representation that round-trips,
// so read(write(x)) is bit-identical.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "asym/market.hpp"
#include "asym/metrics.hpp"

namespace asym {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kRecordsFormat = "asymsim-records-v1";
inline constexpr const char* kSummaryFormat = "asymsim-summary-v1";
inline constexpr const char* kBeliefsFormat = "asymsim-beliefs-v1";

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, const std::string& what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw IoError("bad numeric field '" + std::string(s) + "' in " + what);
  return v;
}

inline long long parse_int(std::string_view s, const std::string& what) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw IoError("bad integer field '" + std::string(s) + "' in " + what);
  return v;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

inline Ability parse_ability(std::string_view s, const std::string& what) {
  if (s == "high") return Ability::High;
  if (s == "medium") return Ability::Medium;
  if (s == "low") return Ability::Low;
  throw IoError("bad ability '" + std::string(s) + "' in " + what);
}

inline Arm parse_arm(std::string_view s, const std::string& what) {
  if (s == "without_ai") return Arm::WithoutAI;
  if (s == "with_ai") return Arm::WithAI;
  throw IoError("bad arm '" + std::string(s) + "' in " + what);
}

inline bool parse_bool01(std::string_view s, const std::string& what) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw IoError("bad boolean '" + std::string(s) + "' in " + what);
}

}  // namespace detail

inline constexpr const char* kRecordsHeader =
    "replication,cycle,agent_id,ability,arm,accepted,effort,wage,agent_utility,"
    "principal_profit,welfare_contribution,rent,manipulated";

// Streaming writer: header once, then per-replication batches.
class RecordsWriter {
 public:
  explicit RecordsWriter(const std::filesystem::path& path) : out_(path) {
    if (!out_) throw IoError("cannot open for writing: " + path.string());
    out_ << "# " << kRecordsFormat << "\n" << kRecordsHeader << "\n";
  }

  void append(std::span<const CycleRecord> recs) {
    for (const CycleRecord& r : recs) {
      if (r.accepted &&
          std::abs(r.agent_utility + r.principal_profit - r.welfare_contribution) > 1e-9)
        throw InvariantError("record violates welfare accounting identity");
      out_ << r.replication << ',' << r.cycle << ',' << r.agent_id << ','
           << to_string(r.ability) << ',' << to_string(r.arm) << ','
           << (r.accepted ? '1' : '0') << ',' << detail::fmt_double(r.effort) << ','
           << detail::fmt_double(r.wage) << ',' << detail::fmt_double(r.agent_utility)
           << ',' << detail::fmt_double(r.principal_profit) << ','
           << detail::fmt_double(r.welfare_contribution) << ','
           << detail::fmt_double(r.rent) << ',' << (r.manipulated ? '1' : '0') << '\n';
    }
    if (!out_) throw IoError("write failed (records)");
  }

  void close() {
    out_.flush();
    if (!out_) throw IoError("write failed (records)");
    out_.close();
  }

 private:
  std::ofstream out_;
};

inline void write_records_csv(const std::filesystem::path& path,
                              std::span<const CycleRecord> recs) {
  RecordsWriter w(path);
  w.append(recs);
  w.close();
}

inline std::vector<CycleRecord> read_records_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  const std::string what = path.string();
  std::string line;
  if (!std::getline(in, line) || line != std::string("# ") + kRecordsFormat)
    throw IoError("missing format line in " + what);
  if (!std::getline(in, line) || line != kRecordsHeader)
    throw IoError("unexpected header in " + what);
  std::vector<CycleRecord> recs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 13) throw IoError("bad field count in " + what);
    CycleRecord r;
    r.replication = static_cast<std::int32_t>(detail::parse_int(f[0], what));
    r.cycle = static_cast<std::int32_t>(detail::parse_int(f[1], what));
    r.agent_id = static_cast<std::int32_t>(detail::parse_int(f[2], what));
    r.ability = detail::parse_ability(f[3], what);
    r.arm = detail::parse_arm(f[4], what);
    r.accepted = detail::parse_bool01(f[5], what);
    r.effort = detail::parse_double(f[6], what);
    r.wage = detail::parse_double(f[7], what);
    r.agent_utility = detail::parse_double(f[8], what);
    r.principal_profit = detail::parse_double(f[9], what);
    r.welfare_contribution = detail::parse_double(f[10], what);
    r.rent = detail::parse_double(f[11], what);
    r.manipulated = detail::parse_bool01(f[12], what);
    recs.push_back(r);
  }
  return recs;
}

inline void write_beliefs_csv(const std::filesystem::path& path,
                              std::span<const BeliefTrace> traces) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << "# " << kBeliefsFormat << "\n"
      << "replication,cycle,agent_id,arm,mean,variance,map_class\n";
  for (const BeliefTrace& t : traces)
    out << t.replication << ',' << t.cycle << ',' << t.agent_id << ','
        << to_string(t.arm) << ',' << detail::fmt_double(t.mean) << ','
        << detail::fmt_double(t.variance) << ',' << t.map_class << '\n';
  if (!out) throw IoError("write failed (beliefs)");
}

// ---------------------------------------------------------------------------
// Summary table.  One CSV with a `kind` discriminator column; group rows,
// improvement rows, and two welfare totals share the header, with fields
// that do not apply left empty.

inline constexpr const char* kSummaryHeader =
    "kind,arm,ability,n_records,n_accepted,acceptance_share,"
    "effort_mean,effort_std,wage_mean,wage_std,utility_mean,utility_std,"
    "profit_mean,profit_std,welfare_mean,welfare_std,rent_mean,rent_std,"
    "utility_per_record,welfare_per_record,pv_utility_mean,"
    "defined,selection_change,effort_defined,effort_change,effort_change_pct,"
    "utility_gain,welfare_gain,test_defined,welch_t,welch_df,welch_p,value";

inline constexpr std::size_t kSummaryFieldCount = 33;

inline void write_summary_csv(const std::filesystem::path& path,
                              const SummaryTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << "# " << kSummaryFormat << "\n" << kSummaryHeader << "\n";
  using detail::fmt_double;
  auto emit = [&out](const std::vector<std::string>& f) {
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
    out << '\n';
  };
  for (const GroupRow& g : table.groups) {
    std::vector<std::string> f(kSummaryFieldCount);
    f[0] = "group";
    f[1] = to_string(g.arm);
    f[2] = to_string(g.ability);
    f[3] = std::to_string(g.n_records);
    f[4] = std::to_string(g.n_accepted);
    f[5] = fmt_double(g.acceptance_share);
    f[6] = fmt_double(g.effort_mean);
    f[7] = fmt_double(g.effort_std);
    f[8] = fmt_double(g.wage_mean);
    f[9] = fmt_double(g.wage_std);
    f[10] = fmt_double(g.utility_mean);
    f[11] = fmt_double(g.utility_std);
    f[12] = fmt_double(g.profit_mean);
    f[13] = fmt_double(g.profit_std);
    f[14] = fmt_double(g.welfare_mean);
    f[15] = fmt_double(g.welfare_std);
    f[16] = fmt_double(g.rent_mean);
    f[17] = fmt_double(g.rent_std);
    f[18] = fmt_double(g.utility_per_record);
    f[19] = fmt_double(g.welfare_per_record);
    f[20] = fmt_double(g.pv_utility_mean);
    emit(f);
  }
  for (const ImprovementRow& i : table.improvements) {
    std::vector<std::string> f(kSummaryFieldCount);
    f[0] = "improvement";
    f[2] = to_string(i.ability);
    f[21] = i.defined ? "1" : "0";
    f[22] = fmt_double(i.selection_change);
    f[23] = i.effort_defined ? "1" : "0";
    f[24] = fmt_double(i.effort_change);
    f[25] = fmt_double(i.effort_change_pct);
    f[26] = fmt_double(i.utility_gain);
    f[27] = fmt_double(i.welfare_gain);
    f[28] = i.test_defined ? "1" : "0";
    f[29] = fmt_double(i.welch_t);
    f[30] = fmt_double(i.welch_df);
    f[31] = fmt_double(i.welch_p);
    emit(f);
  }
  for (int arm = 0; arm < 2; ++arm) {
    std::vector<std::string> f(kSummaryFieldCount);
    f[0] = "welfare_total";
    f[1] = to_string(static_cast<Arm>(arm));
    f[32] = fmt_double(arm == 0 ? table.welfare_without_ai : table.welfare_with_ai);
    emit(f);
  }
  if (!out) throw IoError("write failed (summary)");
}

inline SummaryTable read_summary_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  const std::string what = path.string();
  std::string line;
  if (!std::getline(in, line) || line != std::string("# ") + kSummaryFormat)
    throw IoError("missing format line in " + what);
  if (!std::getline(in, line) || line != kSummaryHeader)
    throw IoError("unexpected header in " + what);
  SummaryTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != kSummaryFieldCount) throw IoError("bad field count in " + what);
    const std::string_view kind = f[0];
    if (kind == "group") {
      GroupRow g;
      g.arm = detail::parse_arm(f[1], what);
      g.ability = detail::parse_ability(f[2], what);
      g.n_records = detail::parse_int(f[3], what);
      g.n_accepted = detail::parse_int(f[4], what);
      g.acceptance_share = detail::parse_double(f[5], what);
      g.effort_mean = detail::parse_double(f[6], what);
      g.effort_std = detail::parse_double(f[7], what);
      g.wage_mean = detail::parse_double(f[8], what);
      g.wage_std = detail::parse_double(f[9], what);
      g.utility_mean = detail::parse_double(f[10], what);
      g.utility_std = detail::parse_double(f[11], what);
      g.profit_mean = detail::parse_double(f[12], what);
      g.profit_std = detail::parse_double(f[13], what);
      g.welfare_mean = detail::parse_double(f[14], what);
      g.welfare_std = detail::parse_double(f[15], what);
      g.rent_mean = detail::parse_double(f[16], what);
      g.rent_std = detail::parse_double(f[17], what);
      g.utility_per_record = detail::parse_double(f[18], what);
      g.welfare_per_record = detail::parse_double(f[19], what);
      g.pv_utility_mean = detail::parse_double(f[20], what);
      table.groups.push_back(g);
    } else if (kind == "improvement") {
      ImprovementRow i;
      i.ability = detail::parse_ability(f[2], what);
      i.defined = detail::parse_bool01(f[21], what);
      i.selection_change = detail::parse_double(f[22], what);
      i.effort_defined = detail::parse_bool01(f[23], what);
      i.effort_change = detail::parse_double(f[24], what);
      i.effort_change_pct = detail::parse_double(f[25], what);
      i.utility_gain = detail::parse_double(f[26], what);
      i.welfare_gain = detail::parse_double(f[27], what);
      i.test_defined = detail::parse_bool01(f[28], what);
      i.welch_t = detail::parse_double(f[29], what);
      i.welch_df = detail::parse_double(f[30], what);
      i.welch_p = detail::parse_double(f[31], what);
      table.improvements.push_back(i);
    } else if (kind == "welfare_total") {
      const double v = detail::parse_double(f[32], what);
      if (detail::parse_arm(f[1], what) == Arm::WithoutAI) table.welfare_without_ai = v;
      else table.welfare_with_ai = v;
    } else {
      throw IoError("unknown row kind '" + std::string(kind) + "' in " + what);
    }
  }
  return table;
}

inline nlohmann::ordered_json summary_to_json(const SummaryTable& table) {
  using json = nlohmann::ordered_json;
  json j;
  j["format"] = kSummaryFormat;
  j["welfare"] = {{"without_ai", table.welfare_without_ai},
                  {"with_ai", table.welfare_with_ai},
                  {"gain", table.welfare_with_ai - table.welfare_without_ai}};
  j["groups"] = json::array();
  for (const GroupRow& g : table.groups) {
    json row;
    row["arm"] = to_string(g.arm);
    row["ability"] = to_string(g.ability);
    row["n_records"] = g.n_records;
    row["n_accepted"] = g.n_accepted;
    row["acceptance_share"] = g.acceptance_share;
    row["effort_mean"] = g.effort_mean;
    row["effort_std"] = g.effort_std;
    row["wage_mean"] = g.wage_mean;
    row["wage_std"] = g.wage_std;
    row["utility_mean"] = g.utility_mean;
    row["utility_std"] = g.utility_std;
    row["profit_mean"] = g.profit_mean;
    row["profit_std"] = g.profit_std;
    row["welfare_mean"] = g.welfare_mean;
    row["welfare_std"] = g.welfare_std;
    row["rent_mean"] = g.rent_mean;
    row["rent_std"] = g.rent_std;
    row["utility_per_record"] = g.utility_per_record;
    row["welfare_per_record"] = g.welfare_per_record;
    row["pv_utility_mean"] = g.pv_utility_mean;
    j["groups"].push_back(row);
  }
  j["improvements"] = json::array();
  for (const ImprovementRow& i : table.improvements) {
    json row;
    row["ability"] = to_string(i.ability);
    row["defined"] = i.defined;
    row["selection_change"] = i.selection_change;
    row["effort_defined"] = i.effort_defined;
    row["effort_change"] = i.effort_change;
    row["effort_change_pct"] = i.effort_change_pct;
    row["utility_gain"] = i.utility_gain;
    row["welfare_gain"] = i.welfare_gain;
    row["test_defined"] = i.test_defined;
    row["welch_t"] = i.welch_t;
    row["welch_df"] = i.welch_df;
    row["welch_p"] = i.welch_p;
    j["improvements"].push_back(row);
  }
  return j;
}

inline std::string summary_to_markdown(const SummaryTable& table) {
  std::ostringstream md;
  md << "# Simulation summary\n\n";
  md << "Total welfare: without AI " << detail::fmt_double(table.welfare_without_ai)
     << ", with AI " << detail::fmt_double(table.welfare_with_ai) << " (gain "
     << detail::fmt_double(table.welfare_with_ai - table.welfare_without_ai)
     << ").\n\n";
  md << "| arm | ability | n | accepted | share | effort | wage | utility | profit "
        "| welfare | rent |\n";
  md << "| --- | --- | --- | --- | --- | --- | --- | --- | --- | --- | --- |\n";
  for (const GroupRow& g : table.groups)
    md << "| " << to_string(g.arm) << " | " << to_string(g.ability) << " | "
       << g.n_records << " | " << g.n_accepted << " | "
       << detail::fmt_double(g.acceptance_share) << " | "
       << detail::fmt_double(g.effort_mean) << " | " << detail::fmt_double(g.wage_mean)
       << " | " << detail::fmt_double(g.utility_mean) << " | "
       << detail::fmt_double(g.profit_mean) << " | "
       << detail::fmt_double(g.welfare_mean) << " | " << detail::fmt_double(g.rent_mean)
       << " |\n";
  md << "\n| ability | selection change | effort change | effort change % | utility "
        "gain | welfare gain | t | df | p |\n";
  md << "| --- | --- | --- | --- | --- | --- | --- | --- | --- |\n";
  for (const ImprovementRow& i : table.improvements) {
    if (!i.defined) {
      md << "| " << to_string(i.ability) << " | (class absent) | | | | | | | |\n";
      continue;
    }
    md << "| " << to_string(i.ability) << " | " << detail::fmt_double(i.selection_change)
       << " | " << (i.effort_defined ? detail::fmt_double(i.effort_change) : "n/a")
       << " | "
       << (i.effort_defined ? detail::fmt_double(i.effort_change_pct) : "n/a") << " | "
       << detail::fmt_double(i.utility_gain) << " | "
       << detail::fmt_double(i.welfare_gain) << " | "
       << (i.test_defined ? detail::fmt_double(i.welch_t) : "n/a") << " | "
       << (i.test_defined ? detail::fmt_double(i.welch_df) : "n/a") << " | "
       << (i.test_defined ? detail::fmt_double(i.welch_p) : "n/a") << " |\n";
  }
  return md.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace asym
