// Seeded random instances for the competition / cost / capacity scenarios.
//
// Draw order (fixed, so a seed pins the instance): one start period per job,
// then per company the bids job by job, then per company the capacities
// period by period.
#ifndef FAIRALLOC_SCENARIO_HPP
#define FAIRALLOC_SCENARIO_HPP

#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fairalloc/model.hpp"

namespace fairalloc {

enum class Competition { kLow, kHigh, kMixed };
enum class CostModel { kHomogeneous, kHeterogeneous };

struct ScenarioConfig {
  Competition competition = Competition::kMixed;
  CostModel costs = CostModel::kHeterogeneous;
  int capacity_pct = 10;
  int jobs = 250;
  int companies = 50;
  int periods = 10;
  int window = 3;
  std::uint64_t seed = 0;
  /// One coin per (company, job, period) instead of one per (company, job).
  bool per_period_bids = false;
  /// floor() instead of round() when turning the capacity share into trucks.
  bool floor_capacity = false;

  std::string name() const {
    std::string s = competition == Competition::kLow    ? "low"
                    : competition == Competition::kHigh ? "high"
                                                        : "mix";
    return s + (costs == CostModel::kHomogeneous ? "/hom" : "/het");
  }

  void validate() const {
    if (jobs < 1 || companies < 1 || periods < 1 || window < 1)
      throw InvalidInput("jobs, companies, periods and window must be positive");
    if (window > periods) throw InvalidInput("window longer than the horizon");
    if (capacity_pct < 1 || capacity_pct > 100)
      throw InvalidInput("capacity percentage must be in 1..100");
  }
};

/// Parses "low/hom", "high-het", "mix/het", "mixed_hom", ...
inline bool parse_scenario_name(std::string_view name, ScenarioConfig& cfg) {
  const auto sep = name.find_first_of("/-_");
  if (sep == std::string_view::npos) return false;
  const auto comp = name.substr(0, sep), cost = name.substr(sep + 1);
  if (comp == "low") cfg.competition = Competition::kLow;
  else if (comp == "high") cfg.competition = Competition::kHigh;
  else if (comp == "mix" || comp == "mixed") cfg.competition = Competition::kMixed;
  else return false;
  if (cost == "hom" || cost == "homogeneous") cfg.costs = CostModel::kHomogeneous;
  else if (cost == "het" || cost == "heterogeneous") cfg.costs = CostModel::kHeterogeneous;
  else return false;
  return true;
}

/// Companies in the first half (by index) are the low-competition ones in
/// the mixed scenario.
inline bool is_low_competition(const ScenarioConfig& cfg, int company_index) {
  switch (cfg.competition) {
    case Competition::kLow: return true;
    case Competition::kHigh: return false;
    case Competition::kMixed: return company_index < cfg.companies / 2;
  }
  return false;
}

inline double bid_probability(const ScenarioConfig& cfg, int company_index) {
  return is_low_competition(cfg, company_index) ? 0.25 : 0.75;
}

/// Inclusive integer cost range of a company's bids. Heterogeneous costs put
/// the first half of the companies at 40..60 and the second half at 30..50;
/// in the mixed scenario that is exactly low competition bidding high.
inline std::pair<Cost, Cost> cost_range(const ScenarioConfig& cfg,
                                        int company_index) {
  if (cfg.costs == CostModel::kHomogeneous) return {30, 60};
  return company_index < cfg.companies / 2 ? std::pair<Cost, Cost>{40, 60}
                                           : std::pair<Cost, Cost>{30, 50};
}

/// Start period: 25% at period 2, 25% at period 6, otherwise uniform over
/// every start whose window fits the horizon. Peaks beyond the last feasible
/// start are clamped to it.
template <typename Rng>
int draw_start_period(const ScenarioConfig& cfg, Rng& rng) {
  const int last_start = cfg.periods - cfg.window + 1;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const double r = coin(rng);
  if (r < 0.25) return std::min(2, last_start);
  if (r < 0.50) return std::min(6, last_start);
  return std::uniform_int_distribution<int>(1, last_start)(rng);
}

inline Instance generate(const ScenarioConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);

  std::vector<Job> jobs(cfg.jobs);
  for (int i = 0; i < cfg.jobs; ++i) {
    jobs[i].id = i + 1;
    const int start = draw_start_period(cfg, rng);
    for (int t = start; t < start + cfg.window; ++t)
      jobs[i].admissible_periods.push_back(t);
  }

  std::vector<Company> companies(cfg.companies);
  std::vector<std::vector<int>> bids_at(cfg.companies,
                                        std::vector<int>(cfg.periods + 1, 0));
  for (int k = 0; k < cfg.companies; ++k) {
    Company& c = companies[k];
    c.id = k + 1;
    std::bernoulli_distribution bids(bid_probability(cfg, k));
    const auto [lo, hi] = cost_range(cfg, k);
    std::uniform_int_distribution<Cost> cost(lo, hi);
    for (const Job& j : jobs) {
      const bool whole_job = !cfg.per_period_bids && bids(rng);
      for (Period t : j.admissible_periods) {
        if (cfg.per_period_bids ? bids(rng) : whole_job) {
          c.bids[{j.id, t}] = cost(rng);
          ++bids_at[k][t];
        }
      }
    }
  }

  const double share = cfg.capacity_pct / 100.0;
  for (int k = 0; k < cfg.companies; ++k) {
    std::uniform_real_distribution<double> u(0.0, share);
    for (Period t = 1; t <= cfg.periods; ++t) {
      const double trucks = u(rng) * bids_at[k][t];
      if (bids_at[k][t] == 0) continue;
      companies[k].capacity_per_period[t] = static_cast<int>(
          cfg.floor_capacity ? std::floor(trucks) : std::round(trucks));
    }
  }
  return Instance(cfg.periods, std::move(jobs), std::move(companies));
}

/// Comment lines echoing the configuration, for the head of instance files.
inline void write_config_header(std::ostream& out, const ScenarioConfig& cfg) {
  out << "# scenario " << cfg.name() << '\n'
      << "# capacity_pct " << cfg.capacity_pct << '\n'
      << "# jobs " << cfg.jobs << " companies " << cfg.companies << " periods "
      << cfg.periods << " window " << cfg.window << '\n'
      << "# seed " << cfg.seed << '\n'
      << "# bids " << (cfg.per_period_bids ? "per-period" : "per-job")
      << " capacity " << (cfg.floor_capacity ? "floor" : "round") << '\n';
}

}  // namespace fairalloc

#endif  // FAIRALLOC_SCENARIO_HPP
