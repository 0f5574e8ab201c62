// Exhaustive ground truth for small instances: depth-first enumeration of
// every feasible allocation, job by job, each job either unassigned or placed
// on one of its bids with spare (company, period) capacity.
#ifndef FAIRALLOC_ORACLE_HPP
#define FAIRALLOC_ORACLE_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "fairalloc/model.hpp"

namespace fairalloc {

struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  /// Refuse instances whose product of per-job branching factors exceeds
  /// this bound.
  double max_candidates = 1e7;
};

struct OracleReport {
  int max_jobs = 0;
  FairnessVector best_fairness;
  Cost min_fair_cost = 0;
  Cost min_cost = 0;
  Allocation fair_witness;      // best fairness, least cost
  Allocation min_cost_witness;  // max_jobs jobs, least cost
  std::uint64_t feasible_allocations = 0;
  std::uint64_t maximal_allocations = 0;  // those assigning max_jobs jobs
  /// Sorted count vectors of the maximal allocations, with multiplicity.
  std::map<std::vector<int>, std::uint64_t> maximal_vectors;
};

/// Product over jobs of (1 + number of bids on the job).
inline double oracle_search_space(const Instance& inst) {
  std::vector<double> options(inst.jobs().size(), 1.0);
  for (const auto& c : inst.companies())
    for (const auto& [key, cost] : c.bids) options[inst.job_index(key.first)] += 1;
  double product = 1;
  for (double o : options) product *= o;
  return product;
}

inline OracleReport enumerate(const Instance& inst, const OracleLimits& limits = {}) {
  const double space = oracle_search_space(inst);
  if (space > limits.max_candidates)
    throw TooLarge("oracle search space " + std::to_string(space) +
                   " exceeds limit " + std::to_string(limits.max_candidates));

  struct Option {
    std::size_t company;
    Period period;
    Cost cost;
  };
  const auto jobs = inst.jobs();
  const auto companies = inst.companies();
  std::vector<std::vector<Option>> options(jobs.size());
  for (std::size_t k = 0; k < companies.size(); ++k)
    for (const auto& [key, cost] : companies[k].bids)
      options[inst.job_index(key.first)].push_back({k, key.second, cost});

  std::vector<std::vector<int>> spare(companies.size(),
                                      std::vector<int>(inst.periods() + 1, 0));
  for (std::size_t k = 0; k < companies.size(); ++k)
    for (const auto& [t, n] : companies[k].capacity_per_period) spare[k][t] = n;

  std::vector<int> counts(companies.size(), 0);
  std::vector<int> choice(jobs.size(), -1);  // option index or -1
  OracleReport r;
  int best_z = -1;
  std::vector<int> best_vec;
  bool have_fair = false;
  Cost cost = 0;
  int assigned = 0;

  auto snapshot = [&] {
    std::map<JobId, std::pair<CompanyId, Period>> picks;
    for (std::size_t i = 0; i < jobs.size(); ++i)
      if (choice[i] >= 0) {
        const Option& o = options[i][choice[i]];
        picks[jobs[i].id] = {companies[o.company].id, o.period};
      }
    return Allocation::from_choices(inst, picks);
  };

  auto leaf = [&] {
    ++r.feasible_allocations;
    if (assigned < best_z) return;
    if (assigned > best_z) {
      best_z = assigned;
      r.maximal_allocations = 0;
      r.maximal_vectors.clear();
      have_fair = false;
      r.min_cost = std::numeric_limits<Cost>::max();
    }
    ++r.maximal_allocations;
    std::vector<int> sorted = counts;
    std::ranges::sort(sorted);
    ++r.maximal_vectors[sorted];
    if (cost < r.min_cost) {
      r.min_cost = cost;
      r.min_cost_witness = snapshot();
    }
    const bool fairer = !have_fair || sorted > best_vec;
    if (fairer || (sorted == best_vec && cost < r.min_fair_cost)) {
      best_vec = sorted;
      have_fair = true;
      r.min_fair_cost = cost;
      r.fair_witness = snapshot();
    }
  };

  // Explicit recursion over jobs in instance order.
  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (i == jobs.size()) {
      leaf();
      return;
    }
    choice[i] = -1;
    self(self, i + 1);
    for (int o = 0; o < static_cast<int>(options[i].size()); ++o) {
      const Option& opt = options[i][o];
      int& room = spare[opt.company][opt.period];
      if (room == 0) continue;
      --room;
      ++counts[opt.company];
      cost += opt.cost;
      ++assigned;
      choice[i] = o;
      self(self, i + 1);
      choice[i] = -1;
      --assigned;
      cost -= opt.cost;
      --counts[opt.company];
      ++room;
    }
  };
  dfs(dfs, 0);

  r.max_jobs = best_z;
  r.best_fairness = FairnessVector(best_vec);
  return r;
}

}  // namespace fairalloc

#endif  // FAIRALLOC_ORACLE_HPP
