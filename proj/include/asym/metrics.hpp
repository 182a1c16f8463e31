#pragma once

// Aggregation of simulation records into per-arm/per-class summary rows,
// treatment-effect deltas, and significance tests.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "asym/market.hpp"
#include "asym/stats.hpp"

namespace asym {

// Total realized surplus (production minus effort cost) across records.
inline double welfare(std::span<const CycleRecord> recs) {
  double total = 0.0;
  for (const auto& r : recs) total += r.welfare_contribution;
  return total;
}

// Per-class delta of a statistic between arms; defined[k] is false when a
// class is absent on either side (empty class, nothing to compare).
struct ClassDelta {
  std::array<double, 3> value = {0.0, 0.0, 0.0};  // indexed by Ability
  std::array<bool, 3> defined = {false, false, false};
};

// Change in the hired pool's composition per class, WithAI - WithoutAI.
// Selection share = accepted-of-class / accepted-total within the arm.
inline ClassDelta selection_improvement(std::span<const CycleRecord> recs) {
  long long n[2][3] = {};
  long long acc[2][3] = {};
  long long tot[2] = {0, 0};
  for (const auto& r : recs) {
    const int a = static_cast<int>(r.arm), k = static_cast<int>(r.ability);
    ++n[a][k];
    if (r.accepted) {
      ++acc[a][k];
      ++tot[a];
    }
  }
  ClassDelta d;
  if (tot[0] == 0 || tot[1] == 0) return d;  // an empty hired pool has no shares
  for (int k = 0; k < 3; ++k) {
    if (n[0][k] == 0 || n[1][k] == 0) continue;
    d.defined[k] = true;
    d.value[k] = static_cast<double>(acc[1][k]) / static_cast<double>(tot[1]) -
                 static_cast<double>(acc[0][k]) / static_cast<double>(tot[0]);
  }
  return d;
}

// Change in mean accepted effort per class, WithAI - WithoutAI.
inline ClassDelta effort_improvement(std::span<const CycleRecord> recs) {
  double sum[2][3] = {};
  long long cnt[2][3] = {};
  for (const auto& r : recs) {
    if (!r.accepted) continue;
    const int a = static_cast<int>(r.arm), k = static_cast<int>(r.ability);
    sum[a][k] += r.effort;
    ++cnt[a][k];
  }
  ClassDelta d;
  for (int k = 0; k < 3; ++k) {
    if (cnt[0][k] == 0 || cnt[1][k] == 0) continue;  // absent class: flagged, excluded
    d.defined[k] = true;
    d.value[k] = sum[1][k] / static_cast<double>(cnt[1][k]) -
                 sum[0][k] / static_cast<double>(cnt[0][k]);
  }
  return d;
}

struct GroupRow {
  Arm arm = Arm::WithoutAI;
  Ability ability = Ability::High;
  long long n_records = 0;
  long long n_accepted = 0;
  double acceptance_share = 0.0;
  // Moments over accepted records.
  double effort_mean = 0.0, effort_std = 0.0;
  double wage_mean = 0.0, wage_std = 0.0;
  double utility_mean = 0.0, utility_std = 0.0;
  double profit_mean = 0.0, profit_std = 0.0;
  double welfare_mean = 0.0, welfare_std = 0.0;
  double rent_mean = 0.0, rent_std = 0.0;
  // Means over all records of the group (zeros for non-hires retained).
  double utility_per_record = 0.0;
  double welfare_per_record = 0.0;
  // Mean discounted utility stream per (replication, agent) member.
  double pv_utility_mean = 0.0;
};

struct ImprovementRow {
  Ability ability = Ability::High;
  bool defined = false;       // class populated in both arms
  double selection_change = 0.0;
  bool effort_defined = false;  // accepted records in both arms
  double effort_change = 0.0;
  double effort_change_pct = 0.0;  // relative to the WithoutAI mean
  double utility_gain = 0.0;       // per-record means, zeros retained
  double welfare_gain = 0.0;
  bool test_defined = false;  // >= 2 accepted efforts on each side
  double welch_t = 0.0;
  double welch_df = 0.0;
  double welch_p = 1.0;
};

struct SummaryTable {
  std::vector<GroupRow> groups;            // 2 arms x 3 classes, fixed order
  std::vector<ImprovementRow> improvements;  // High, Medium, Low
  double welfare_without_ai = 0.0;
  double welfare_with_ai = 0.0;
};

namespace detail {

inline void moments(const std::vector<double>& xs, double& mean, double& sd) {
  mean = 0.0;
  sd = 0.0;
  if (xs.empty()) return;
  mean = mean_of(xs);
  if (xs.size() >= 2) sd = std::sqrt(variance_of(xs));
}

}  // namespace detail

inline SummaryTable summarize(std::span<const CycleRecord> recs, double discount) {
  struct Acc {
    long long n = 0, accepted = 0;
    std::vector<double> effort, wage, utility, profit, wf, rent;
    double utility_all = 0.0, welfare_all = 0.0;
  };
  Acc acc[2][3];
  // Discounted per-member utility streams keyed by (replication, agent).
  std::unordered_map<std::uint64_t, double> pv[2][3];

  for (const auto& r : recs) {
    const int a = static_cast<int>(r.arm), k = static_cast<int>(r.ability);
    Acc& g = acc[a][k];
    ++g.n;
    g.utility_all += r.agent_utility;
    g.welfare_all += r.welfare_contribution;
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(r.replication)) << 32) |
        static_cast<std::uint32_t>(r.agent_id);
    pv[a][k][key] += std::pow(discount, r.cycle) * r.agent_utility;
    if (!r.accepted) continue;
    ++g.accepted;
    g.effort.push_back(r.effort);
    g.wage.push_back(r.wage);
    g.utility.push_back(r.agent_utility);
    g.profit.push_back(r.principal_profit);
    g.wf.push_back(r.welfare_contribution);
    g.rent.push_back(r.rent);
  }

  SummaryTable out;
  for (int a = 0; a < 2; ++a) {
    for (int k = 0; k < 3; ++k) {
      const Acc& g = acc[a][k];
      GroupRow row;
      row.arm = static_cast<Arm>(a);
      row.ability = static_cast<Ability>(k);
      row.n_records = g.n;
      row.n_accepted = g.accepted;
      row.acceptance_share =
          g.n > 0 ? static_cast<double>(g.accepted) / static_cast<double>(g.n) : 0.0;
      detail::moments(g.effort, row.effort_mean, row.effort_std);
      detail::moments(g.wage, row.wage_mean, row.wage_std);
      detail::moments(g.utility, row.utility_mean, row.utility_std);
      detail::moments(g.profit, row.profit_mean, row.profit_std);
      detail::moments(g.wf, row.welfare_mean, row.welfare_std);
      detail::moments(g.rent, row.rent_mean, row.rent_std);
      if (g.n > 0) {
        row.utility_per_record = g.utility_all / static_cast<double>(g.n);
        row.welfare_per_record = g.welfare_all / static_cast<double>(g.n);
      }
      if (!pv[a][k].empty()) {
        double s = 0.0;
        for (const auto& [_, v] : pv[a][k]) s += v;
        row.pv_utility_mean = s / static_cast<double>(pv[a][k].size());
      }
      out.groups.push_back(row);
      if (a == 0) out.welfare_without_ai += g.welfare_all;
      else out.welfare_with_ai += g.welfare_all;
    }
  }

  const ClassDelta sel = selection_improvement(recs);
  for (int k = 0; k < 3; ++k) {
    ImprovementRow imp;
    imp.ability = static_cast<Ability>(k);
    const Acc& g0 = acc[0][k];
    const Acc& g1 = acc[1][k];
    if (g0.n > 0 && g1.n > 0) {
      imp.defined = true;
      const GroupRow& r0 = out.groups[static_cast<std::size_t>(k)];
      const GroupRow& r1 = out.groups[static_cast<std::size_t>(3 + k)];
      imp.selection_change = sel.defined[k] ? sel.value[k] : 0.0;
      imp.utility_gain = r1.utility_per_record - r0.utility_per_record;
      imp.welfare_gain = r1.welfare_per_record - r0.welfare_per_record;
      if (g0.accepted > 0 && g1.accepted > 0) {
        imp.effort_defined = true;
        imp.effort_change = r1.effort_mean - r0.effort_mean;
        imp.effort_change_pct =
            r0.effort_mean != 0.0 ? 100.0 * imp.effort_change / r0.effort_mean : 0.0;
      }
      if (g0.effort.size() >= 2 && g1.effort.size() >= 2) {
        imp.test_defined = true;
        const WelchResult w = welch_t(g1.effort, g0.effort);
        imp.welch_t = w.t;
        imp.welch_df = w.df;
        imp.welch_p = w.p;
      }
    }
    out.improvements.push_back(imp);
  }
  return out;
}

}  // namespace asym
