// Batch harness: seeded instances through both solvers, price of fairness,
// summary statistics and CSV output.
//
// Records CSV:
//   scenario,capacity_pct,jobs,seed,max_jobs,min_cost,fair_cost,pof_percent
//   one row per record, ordered by seed, then
//   #summary,statistic,min_cost,fair_cost,pof_percent
//   #summary,mean|std|min|max,...
// Distribution CSV:  company_rank,min_cost_jobs,fair_jobs
// Timings CSV:       seed,fairness_ms,fair_flow_ms,min_cost_ms
// Sweep CSV:         jobs,<scenario>   (mean POF per job count)
//
// Timings are the only nondeterministic output and live in their own file.
#ifndef FAIRALLOC_EXPERIMENTS_HPP
#define FAIRALLOC_EXPERIMENTS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fairalloc/mfmca.hpp"
#include "fairalloc/scenario.hpp"

namespace fairalloc {

struct ExperimentRecord {
  std::string scenario;
  int capacity_pct = 0;
  int jobs = 0;
  std::uint64_t seed = 0;
  int max_jobs = 0;
  Cost min_cost = 0;
  Cost fair_cost = 0;
  double pof_percent = 0;
  FairnessVector min_cost_distribution;
  FairnessVector fair_distribution;
  double fairness_ms = 0;
  double fair_flow_ms = 0;
  double min_cost_ms = 0;
};

/// The batch stopped on an invariant violation; seed reproduces it.
struct BatchFailure : InvariantViolation {
  BatchFailure(std::uint64_t s, const std::string& what)
      : InvariantViolation("seed " + std::to_string(s) + ": " + what), seed(s) {}
  std::uint64_t seed;
};

inline double price_of_fairness(Cost min_cost, Cost fair_cost) {
  if (min_cost == 0) {
    if (fair_cost != 0)
      throw InvariantViolation("fair cost positive while min cost is zero");
    return 0;
  }
  return 100.0 * static_cast<double>(fair_cost - min_cost) /
         static_cast<double>(min_cost);
}

/// One instance through both solvers with the cross-solver checks.
inline ExperimentRecord run_one(const ScenarioConfig& cfg,
                                CycleFinder finder = CycleFinder::kHoward) {
  const Instance inst = generate(cfg);
  const MinCostSolution mc = solve_min_cost_detailed(inst, finder);
  const FairSolution fair = solve_mfmca_detailed(inst, {}, finder);

  ExperimentRecord r;
  r.scenario = cfg.name();
  r.capacity_pct = cfg.capacity_pct;
  r.jobs = cfg.jobs;
  r.seed = cfg.seed;
  r.max_jobs = fair.mlmf.max_jobs;
  r.min_cost = mc.allocation.total_cost;
  r.fair_cost = fair.allocation.total_cost;
  r.min_cost_distribution = sorted_counts(mc.allocation, inst);
  r.fair_distribution = sorted_counts(fair.allocation, inst);
  r.fairness_ms = fair.times.fairness_ms;
  r.fair_flow_ms = fair.times.min_cost_flow_ms;
  r.min_cost_ms = mc.elapsed_ms;

  if (r.min_cost_distribution.sum() != r.fair_distribution.sum())
    throw InvariantViolation("solvers assign different numbers of jobs");
  if (r.fair_cost < r.min_cost)
    throw InvariantViolation("fair allocation cheaper than the minimum cost");
  if (leximin_compare(r.fair_distribution, r.min_cost_distribution) < 0)
    throw InvariantViolation("fair distribution is leximin-worse than min cost");
  r.pof_percent = price_of_fairness(r.min_cost, r.fair_cost);
  return r;
}

/// FAIRALLOC_WORKERS, else the hardware concurrency, at least 1.
inline int default_workers() {
  if (const char* env = std::getenv("FAIRALLOC_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Record i uses seed base_seed + i. Output order is by seed regardless of
/// the number of workers. The first failing seed (lowest) is rethrown as a
/// BatchFailure.
inline std::vector<ExperimentRecord> run_batch(
    ScenarioConfig cfg, int runs, std::uint64_t base_seed, int workers = 0,
    CycleFinder finder = CycleFinder::kHoward) {
  if (runs < 1) throw InvalidInput("runs must be at least 1");
  cfg.validate();
  if (workers <= 0) workers = default_workers();
  workers = std::min(workers, runs);

  std::vector<ExperimentRecord> out(runs);
  std::vector<std::string> errors(runs);
  std::vector<char> failed(runs, 0);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < runs; i = next++) {
      ScenarioConfig c = cfg;
      c.seed = base_seed + static_cast<std::uint64_t>(i);
      try {
        out[i] = run_one(c, finder);
      } catch (const std::exception& e) {
        failed[i] = 1;
        errors[i] = e.what();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (int i = 0; i < runs; ++i)
    if (failed[i]) throw BatchFailure(base_seed + static_cast<std::uint64_t>(i), errors[i]);
  return out;
}

struct Summary {
  double mean = 0, std = 0, min = 0, max = 0;
};

inline Summary summarize(const std::vector<double>& xs) {
  if (xs.empty()) throw InvalidInput("no values to summarize");
  Summary s;
  s.min = *std::ranges::min_element(xs);
  s.max = *std::ranges::max_element(xs);
  double sum = 0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

struct BatchStats {
  std::size_t count = 0;
  Summary min_cost, fair_cost, pof;
};

inline BatchStats aggregate(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw InvalidInput("aggregate of an empty batch");
  std::vector<double> mc, fc, pof;
  for (const auto& r : records) {
    mc.push_back(static_cast<double>(r.min_cost));
    fc.push_back(static_cast<double>(r.fair_cost));
    pof.push_back(r.pof_percent);
  }
  return {records.size(), summarize(mc), summarize(fc), summarize(pof)};
}

namespace detail {
inline std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}
}  // namespace detail

inline void write_records_csv(std::ostream& out,
                              const std::vector<ExperimentRecord>& records) {
  out << "scenario,capacity_pct,jobs,seed,max_jobs,min_cost,fair_cost,pof_percent\n";
  for (const auto& r : records)
    out << r.scenario << ',' << r.capacity_pct << ',' << r.jobs << ',' << r.seed
        << ',' << r.max_jobs << ',' << r.min_cost << ',' << r.fair_cost << ','
        << detail::fixed(r.pof_percent) << '\n';
  const BatchStats s = aggregate(records);
  out << "#summary,statistic,min_cost,fair_cost,pof_percent\n";
  auto row = [&](const char* name, double Summary::*field) {
    out << "#summary," << name << ',' << detail::fixed(s.min_cost.*field) << ','
        << detail::fixed(s.fair_cost.*field) << ',' << detail::fixed(s.pof.*field)
        << '\n';
  };
  row("mean", &Summary::mean);
  row("std", &Summary::std);
  row("min", &Summary::min);
  row("max", &Summary::max);
}

/// Sorted per-company job counts of one record, smallest first.
inline void write_distribution_csv(std::ostream& out, const ExperimentRecord& r) {
  out << "company_rank,min_cost_jobs,fair_jobs\n";
  const auto& a = r.min_cost_distribution.values();
  const auto& b = r.fair_distribution.values();
  for (std::size_t i = 0; i < a.size(); ++i)
    out << i + 1 << ',' << a[i] << ',' << b[i] << '\n';
}

inline void write_timings_csv(std::ostream& out,
                              const std::vector<ExperimentRecord>& records) {
  out << "seed,fairness_ms,fair_flow_ms,min_cost_ms\n";
  for (const auto& r : records)
    out << r.seed << ',' << detail::fixed(r.fairness_ms, 3) << ','
        << detail::fixed(r.fair_flow_ms, 3) << ',' << detail::fixed(r.min_cost_ms, 3)
        << '\n';
}

/// The record with the largest POF (lowest seed on ties); used for the
/// distribution file.
inline const ExperimentRecord& representative(
    const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw InvalidInput("no records");
  const ExperimentRecord* best = &records.front();
  for (const auto& r : records)
    if (r.pof_percent > best->pof_percent) best = &r;
  return *best;
}

struct SweepPoint {
  int jobs = 0;
  double mean_pof = 0;
  std::vector<ExperimentRecord> records;
};

inline std::vector<SweepPoint> jobs_sweep(const ScenarioConfig& cfg,
                                          const std::vector<int>& jobs_list,
                                          int runs, std::uint64_t base_seed,
                                          int workers = 0,
                                          CycleFinder finder = CycleFinder::kHoward) {
  if (jobs_list.empty()) throw InvalidInput("empty jobs list");
  std::vector<SweepPoint> out;
  for (int n : jobs_list) {
    ScenarioConfig c = cfg;
    c.jobs = n;
    SweepPoint p;
    p.jobs = n;
    p.records = run_batch(c, runs, base_seed, workers, finder);
    p.mean_pof = aggregate(p.records).pof.mean;
    out.push_back(std::move(p));
  }
  return out;
}

inline void write_sweep_csv(std::ostream& out, const std::string& scenario,
                            const std::vector<SweepPoint>& points) {
  out << "jobs," << scenario << '\n';
  for (const auto& p : points) out << p.jobs << ',' << detail::fixed(p.mean_pof) << '\n';
}

/// "50:500:50" -> 50,100,...,500; a bare "250" -> 250.
inline std::vector<int> parse_jobs_range(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoi(item, &used));
      if (used != item.size()) throw InvalidInput("");
    } catch (const std::exception&) {
      throw InvalidInput("bad jobs range '" + text + "'");
    }
  }
  if (parts.size() == 1) parts = {parts[0], parts[0], 1};
  if (parts.size() != 3 || parts[0] < 1 || parts[2] < 1 || parts[1] < parts[0])
    throw InvalidInput("jobs range must be start:stop:step with 1 <= start <= stop");
  std::vector<int> out;
  for (int n = parts[0]; n <= parts[1]; n += parts[2]) out.push_back(n);
  return out;
}

}  // namespace fairalloc

#endif  // FAIRALLOC_EXPERIMENTS_HPP
