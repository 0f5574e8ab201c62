// Layered allocation network and the iterative max-flow procedure that
// computes the maximum job count together with its leximin-optimal
// distribution over companies.
#ifndef FAIRALLOC_MLMF_HPP
#define FAIRALLOC_MLMF_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "fairalloc/flow_network.hpp"
#include "fairalloc/max_flow.hpp"
#include "fairalloc/model.hpp"

namespace fairalloc {

/// source -> job -> job-time -> company-time -> company -> sink, plus the
/// bookkeeping needed to read an allocation back out of a flow.
struct AllocationNetwork {
  FlowNetwork net;
  std::vector<int> company_node;      // by instance company index
  std::vector<int> company_sink_arc;  // by instance company index
  std::vector<int> bid_arcs;          // job-time -> company-time arcs
  std::vector<int> dummy_source_arcs; // source -> dummy job arcs
};

/// Arcs: source->job (cap 1), job->job-time (cap 1 per admissible period),
/// job-time->company-time (cap 1, bid cost), company-time->company (cap
/// n_k^t), company->sink (cap N_k). A company-time node exists for every
/// (k, t) with a bid or a positive capacity.
inline AllocationNetwork build_mlmf_network(const Instance& inst) {
  AllocationNetwork g;
  FlowNetwork& net = g.net;
  const int source = net.add_node({NodeKind::kSource});
  net.set_source(source);

  const auto jobs = inst.jobs();
  const auto companies = inst.companies();
  const int periods = inst.periods();

  std::vector<int> job_node(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i)
    job_node[i] = net.add_node({NodeKind::kJob, jobs[i].id});

  // (job index, period) -> job-time node
  std::map<std::pair<std::size_t, Period>, int> job_time;
  for (std::size_t i = 0; i < jobs.size(); ++i)
    for (Period t : jobs[i].admissible_periods)
      job_time[{i, t}] = net.add_node({NodeKind::kJobTime, jobs[i].id, t});

  // (company index, period) -> company-time node
  std::map<std::pair<std::size_t, Period>, int> company_time;
  for (std::size_t k = 0; k < companies.size(); ++k) {
    std::vector<char> active(periods + 1, 0);
    for (const auto& [key, cost] : companies[k].bids) active[key.second] = 1;
    for (const auto& [t, n] : companies[k].capacity_per_period)
      if (n > 0) active[t] = 1;
    for (Period t = 1; t <= periods; ++t)
      if (active[t])
        company_time[{k, t}] =
            net.add_node({NodeKind::kCompanyTime, companies[k].id, t});
  }

  g.company_node.resize(companies.size());
  for (std::size_t k = 0; k < companies.size(); ++k)
    g.company_node[k] = net.add_node({NodeKind::kCompany, companies[k].id});

  const int sink = net.add_node({NodeKind::kSink});
  net.set_sink(sink);

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    net.add_arc(source, job_node[i], 1);
    for (Period t : jobs[i].admissible_periods)
      net.add_arc(job_node[i], job_time.at({i, t}), 1);
  }
  for (std::size_t k = 0; k < companies.size(); ++k)
    for (const auto& [key, cost] : companies[k].bids) {
      const auto& [job, t] = key;
      g.bid_arcs.push_back(net.add_arc(job_time.at({inst.job_index(job), t}),
                                       company_time.at({k, t}), 1, cost));
    }
  for (const auto& [kt, node] : company_time)
    net.add_arc(node, g.company_node[kt.first],
                companies[kt.first].capacity_at(kt.second));
  g.company_sink_arc.resize(companies.size());
  for (std::size_t k = 0; k < companies.size(); ++k)
    g.company_sink_arc[k] = net.add_arc(g.company_node[k], sink,
                                        companies[k].total_capacity());
  return g;
}

/// Reads the real-job allocation carried by the current flow.
inline Allocation extract_allocation(const Instance& inst,
                                     const AllocationNetwork& g) {
  std::map<JobId, std::pair<CompanyId, Period>> choices;
  for (int a : g.bid_arcs) {
    const Arc& arc = g.net.arc(a);
    if (arc.flow == 0) continue;
    const NodeTag& jt = g.net.tag(arc.from);
    const NodeTag& kt = g.net.tag(arc.to);
    if (!choices.emplace(jt.owner, std::pair{kt.owner, kt.period}).second)
      throw InvariantViolation("job " + std::to_string(jt.owner) +
                               " carries flow on two bids");
  }
  return Allocation::from_choices(inst, choices);
}

struct MlmfOptions {
  /// When set, the company processing order is a seeded permutation of the
  /// instance order; otherwise companies are taken in instance order.
  std::optional<std::uint64_t> order_seed;
  /// Keep the flow between steps and augment by one unit after each
  /// capacity increase. When false, every step recomputes the maximum flow
  /// from zero.
  bool warm_start = true;
};

struct MlmfResult {
  int max_jobs = 0;
  std::map<CompanyId, int> fixed_caps;
  FairnessVector fairness;
  std::vector<int> flow_trace;  // flow value after every capacity increase
};

/// Raises company->sink capacities one unit at a time, round-robin over the
/// still-active companies, and retires a company as soon as its extra unit
/// does not raise the maximum flow or its capacity reached N_k.
inline MlmfResult imaxflow(const Instance& inst, const MlmfOptions& opt = {}) {
  AllocationNetwork g = build_mlmf_network(inst);
  FlowNetwork& net = g.net;
  const auto companies = inst.companies();
  const std::size_t nk = companies.size();

  std::vector<std::size_t> active(nk);
  std::iota(active.begin(), active.end(), std::size_t{0});
  if (opt.order_seed) {
    std::mt19937_64 rng(*opt.order_seed);
    std::ranges::shuffle(active, rng);
  }

  std::vector<int> cap(nk, 0), fixed(nk, 0), limit(nk);
  for (std::size_t k = 0; k < nk; ++k) {
    limit[k] = companies[k].total_capacity();
    net.set_capacity(g.company_sink_arc[k], 0);
  }

  auto set_cap = [&](std::size_t k, int c) {
    if (!opt.warm_start) net.clear_flow();
    net.set_capacity(g.company_sink_arc[k], c);
  };

  MlmfResult r;
  FlowValue current = 0;
  while (!active.empty()) {
    std::vector<std::size_t> still;
    for (std::size_t k : active) {
      const FlowValue previous = current;
      if (cap[k] < limit[k]) {
        set_cap(k, ++cap[k]);
        if (opt.warm_start) {
          if (augment_once(net) == AugmentResult::kAugmented) ++current;
        } else {
          current = max_flow(net);
        }
        r.flow_trace.push_back(static_cast<int>(current));
        if (current < previous || current > previous + 1)
          throw InvariantViolation("flow changed by more than one unit");
        if (current <= previous) {
          set_cap(k, --cap[k]);
          if (!opt.warm_start) current = max_flow(net);
          fixed[k] = cap[k];
          continue;
        }
        still.push_back(k);
      } else {
        fixed[k] = cap[k];
      }
    }
    active = std::move(still);
  }

  r.max_jobs = static_cast<int>(current);
  std::vector<int> counts;
  for (std::size_t k = 0; k < nk; ++k) {
    r.fixed_caps[companies[k].id] = fixed[k];
    counts.push_back(fixed[k]);
    if (fixed[k] > limit[k])
      throw InvariantViolation("fixed capacity exceeds company capacity");
  }
  r.fairness = FairnessVector(std::move(counts));
  if (r.fairness.sum() != r.max_jobs)
    throw InvariantViolation("fixed capacities do not sum to the flow value");
  return r;
}

}  // namespace fairalloc

#endif  // FAIRALLOC_MLMF_HPP
