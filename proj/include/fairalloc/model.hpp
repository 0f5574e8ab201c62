// Domain model for fair task allocation: jobs with admissible start periods,
// companies with per-period capacities and sealed per-(job, period) bids,
// allocations and the leximin order used to compare their fairness.
#ifndef FAIRALLOC_MODEL_HPP
#define FAIRALLOC_MODEL_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fairalloc {

using JobId = int;
using CompanyId = int;
using Period = int;
using Cost = std::int64_t;

// Error taxonomy. Everything derives from std::runtime_error or
// std::invalid_argument so callers can catch broadly.
struct InvalidReference : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct Job {
  JobId id = 0;
  std::vector<Period> admissible_periods;  // sorted, unique

  bool admits(Period t) const {
    return std::binary_search(admissible_periods.begin(),
                              admissible_periods.end(), t);
  }
  friend bool operator==(const Job&, const Job&) = default;
};

struct Company {
  CompanyId id = 0;
  std::map<Period, int> capacity_per_period;
  std::map<std::pair<JobId, Period>, Cost> bids;

  int capacity_at(Period t) const {
    auto it = capacity_per_period.find(t);
    return it == capacity_per_period.end() ? 0 : it->second;
  }
  // N_k: capacity summed over all periods.
  int total_capacity() const {
    int total = 0;
    for (const auto& [t, n] : capacity_per_period) total += n;
    return total;
  }
  friend bool operator==(const Company&, const Company&) = default;
};

/// A validated problem instance. Construction checks every structural
/// invariant and throws InvalidInput / InvalidReference on violation; after
/// that the object is immutable.
class Instance {
 public:
  Instance() = default;
  Instance(int periods, std::vector<Job> jobs, std::vector<Company> companies)
      : periods_(periods), jobs_(std::move(jobs)),
        companies_(std::move(companies)) {
    validate_and_index();
  }

  int periods() const { return periods_; }
  std::span<const Job> jobs() const { return jobs_; }
  std::span<const Company> companies() const { return companies_; }

  bool has_job(JobId id) const { return job_index_.contains(id); }
  bool has_company(CompanyId id) const { return company_index_.contains(id); }

  std::size_t job_index(JobId id) const {
    auto it = job_index_.find(id);
    if (it == job_index_.end())
      throw InvalidReference("unknown job id " + std::to_string(id));
    return it->second;
  }
  std::size_t company_index(CompanyId id) const {
    auto it = company_index_.find(id);
    if (it == company_index_.end())
      throw InvalidReference("unknown company id " + std::to_string(id));
    return it->second;
  }
  const Job& job(JobId id) const { return jobs_[job_index(id)]; }
  const Company& company(CompanyId id) const {
    return companies_[company_index(id)];
  }

  std::size_t bid_count() const {
    std::size_t n = 0;
    for (const auto& c : companies_) n += c.bids.size();
    return n;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.periods_ == b.periods_ && a.jobs_ == b.jobs_ &&
           a.companies_ == b.companies_;
  }

 private:
  void validate_and_index() {
    if (periods_ < 0) throw InvalidInput("periods must be nonnegative");
    for (std::size_t i = 0; i < jobs_.size(); ++i) {
      Job& j = jobs_[i];
      if (!job_index_.emplace(j.id, i).second)
        throw InvalidInput("duplicate job id " + std::to_string(j.id));
      std::ranges::sort(j.admissible_periods);
      auto dup = std::ranges::unique(j.admissible_periods);
      j.admissible_periods.erase(dup.begin(), dup.end());
      if (j.admissible_periods.empty())
        throw InvalidInput("job " + std::to_string(j.id) +
                           " has no admissible period");
      if (j.admissible_periods.front() < 1 ||
          j.admissible_periods.back() > periods_)
        throw InvalidInput("job " + std::to_string(j.id) +
                           " admits a period outside 1.." +
                           std::to_string(periods_));
    }
    for (std::size_t i = 0; i < companies_.size(); ++i) {
      const Company& c = companies_[i];
      if (!company_index_.emplace(c.id, i).second)
        throw InvalidInput("duplicate company id " + std::to_string(c.id));
      for (const auto& [t, n] : c.capacity_per_period) {
        if (t < 1 || t > periods_)
          throw InvalidInput("company " + std::to_string(c.id) +
                             " has capacity at invalid period " +
                             std::to_string(t));
        if (n < 0) throw InvalidInput("negative capacity");
      }
      for (const auto& [key, cost] : c.bids) {
        const auto& [job, t] = key;
        auto it = job_index_.find(job);
        if (it == job_index_.end())
          throw InvalidReference("company " + std::to_string(c.id) +
                                 " bids on unknown job " +
                                 std::to_string(job));
        if (!jobs_[it->second].admits(t))
          throw InvalidInput("company " + std::to_string(c.id) +
                             " bids on job " + std::to_string(job) +
                             " at non-admissible period " +
                             std::to_string(t));
        if (cost < 0) throw InvalidInput("negative bid cost");
      }
    }
  }

  int periods_ = 0;
  std::vector<Job> jobs_;
  std::vector<Company> companies_;
  std::unordered_map<JobId, std::size_t> job_index_;
  std::unordered_map<CompanyId, std::size_t> company_index_;
};

/// Sorted (nondecreasing) per-company job counts.
class FairnessVector {
 public:
  FairnessVector() = default;
  explicit FairnessVector(std::vector<int> counts) : values_(std::move(counts)) {
    std::ranges::sort(values_);
  }

  std::span<const int> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  int operator[](std::size_t i) const { return values_[i]; }
  int front() const { return values_.front(); }
  int back() const { return values_.back(); }
  bool empty() const { return values_.empty(); }
  int sum() const { return std::accumulate(values_.begin(), values_.end(), 0); }

  friend bool operator==(const FairnessVector&, const FairnessVector&) = default;

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(values_[i]);
    }
    return s;
  }

 private:
  std::vector<int> values_;
};

/// Leximin comparison: `greater` means `a` is fairer than `b`.
inline std::strong_ordering leximin_compare(const FairnessVector& a,
                                            const FairnessVector& b) {
  if (a.size() != b.size())
    throw DimensionError("fairness vectors differ in length (" +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

struct Assignment {
  CompanyId company = 0;
  Period period = 0;
  Cost cost = 0;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Job -> (company, period) mapping with derived total cost and counts.
/// Unassigned jobs are simply absent.
struct Allocation {
  std::map<JobId, Assignment> assignments;
  Cost total_cost = 0;
  std::map<CompanyId, int> counts;

  std::size_t assigned_jobs() const { return assignments.size(); }

  /// Builds an allocation from (job -> company, period) choices, looking up
  /// the bid costs. Throws InvalidReference if an id is unknown or a choice
  /// has no backing bid.
  static Allocation from_choices(
      const Instance& inst,
      const std::map<JobId, std::pair<CompanyId, Period>>& choices) {
    Allocation a;
    for (const auto& c : inst.companies()) a.counts[c.id] = 0;
    for (const auto& [job, kt] : choices) {
      const auto& [company, period] = kt;
      inst.job_index(job);
      const Company& k = inst.company(company);
      auto bid = k.bids.find({job, period});
      if (bid == k.bids.end())
        throw InvalidReference("no bid from company " +
                               std::to_string(company) + " on job " +
                               std::to_string(job) + " at period " +
                               std::to_string(period));
      a.assignments[job] = {company, period, bid->second};
      a.total_cost += bid->second;
      ++a.counts[company];
    }
    return a;
  }

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// True iff every job is used at most once, no (company, period) exceeds its
/// capacity, every assignment is backed by a bid with the recorded cost, and
/// the derived totals agree with the assignments.
inline bool check_feasible(const Instance& inst, const Allocation& alloc) {
  for (const auto& [job, as] : alloc.assignments) {
    inst.job_index(job);
    inst.company_index(as.company);
  }
  for (const auto& [company, n] : alloc.counts) inst.company_index(company);

  std::map<std::pair<CompanyId, Period>, int> load;
  std::map<CompanyId, int> counts;
  Cost total = 0;
  for (const auto& [job, as] : alloc.assignments) {
    const Company& k = inst.company(as.company);
    auto bid = k.bids.find({job, as.period});
    if (bid == k.bids.end() || bid->second != as.cost) return false;
    if (++load[{as.company, as.period}] > k.capacity_at(as.period))
      return false;
    ++counts[as.company];
    total += as.cost;
  }
  if (total != alloc.total_cost) return false;
  for (const auto& c : inst.companies()) {
    auto want = counts.contains(c.id) ? counts.at(c.id) : 0;
    auto it = alloc.counts.find(c.id);
    auto have = it == alloc.counts.end() ? 0 : it->second;
    if (want != have) return false;
  }
  return true;
}

/// Per-company counts (zeros included) sorted nondecreasing.
inline FairnessVector sorted_counts(const Allocation& alloc,
                                    const Instance& inst) {
  std::vector<int> counts;
  counts.reserve(inst.companies().size());
  for (const auto& c : inst.companies()) {
    auto it = alloc.counts.find(c.id);
    counts.push_back(it == alloc.counts.end() ? 0 : it->second);
  }
  return FairnessVector(std::move(counts));
}

}  // namespace fairalloc

#endif  // FAIRALLOC_MODEL_HPP
