// Fair minimum-cost allocation: the allocation network is extended with
// zero-cost dummy layers sized from the fairness vector so that a single
// min-cost max-flow run reproduces that vector at least cost, without fixing
// in advance which company receives which count. Also provides the
// unconstrained min-cost baseline.
#ifndef FAIRALLOC_MFMCA_HPP
#define FAIRALLOC_MFMCA_HPP

#include <chrono>
#include <vector>

#include "fairalloc/min_cost_flow.hpp"
#include "fairalloc/mlmf.hpp"

namespace fairalloc {

struct DummyLayer {
  int dummy_jobs = 0;
  Period period = 0;
};

struct DummyPlan {
  std::vector<DummyLayer> layers;  // layer l (1-based) at index l - 1
  int sink_capacity = 0;

  int layer_count() const { return static_cast<int>(layers.size()); }
  int total_dummy_jobs() const {
    int n = 0;
    for (const auto& l : layers) n += l.dummy_jobs;
    return n;
  }
};

/// One layer per unit between the smallest and largest fair count; layer l
/// holds one dummy job per company whose fair count is below min + l and
/// uses the private period `periods + l`.
inline DummyPlan make_dummy_plan(const FairnessVector& fairness, int periods) {
  DummyPlan plan;
  if (fairness.empty()) return plan;
  const int lo = fairness.front(), hi = fairness.back();
  plan.sink_capacity = hi;
  for (int l = 1; l <= hi - lo; ++l) {
    const auto below = std::ranges::count_if(fairness.values(),
                                             [&](int v) { return v < lo + l; });
    plan.layers.push_back({static_cast<int>(below), periods + l});
  }
  return plan;
}

/// The allocation network with dummy layers added and every company->sink
/// capacity set to the largest fair count.
inline AllocationNetwork build_dummy_network(const Instance& inst,
                                             const MlmfResult& res) {
  if (res.fairness.size() != inst.companies().size() ||
      res.fairness.sum() != res.max_jobs ||
      res.fixed_caps.size() != inst.companies().size())
    throw InvalidInput("fairness result is inconsistent with the instance");
  {
    std::vector<int> caps;
    for (const auto& c : inst.companies()) {
      auto it = res.fixed_caps.find(c.id);
      if (it == res.fixed_caps.end())
        throw InvalidInput("fairness result lacks company " + std::to_string(c.id));
      caps.push_back(it->second);
    }
    if (FairnessVector(caps) != res.fairness)
      throw InvalidInput("fixed capacities do not match the fairness vector");
  }

  AllocationNetwork g = build_mlmf_network(inst);
  FlowNetwork& net = g.net;
  const DummyPlan plan = make_dummy_plan(res.fairness, inst.periods());
  const auto companies = inst.companies();

  for (const DummyLayer& layer : plan.layers) {
    std::vector<int> job_times;
    for (int i = 0; i < layer.dummy_jobs; ++i) {
      const int d = net.add_node({NodeKind::kDummyJob, i, layer.period});
      const int dt = net.add_node({NodeKind::kDummyJobTime, i, layer.period});
      g.dummy_source_arcs.push_back(net.add_arc(net.source(), d, 1));
      net.add_arc(d, dt, 1);
      job_times.push_back(dt);
    }
    for (std::size_t k = 0; k < companies.size(); ++k) {
      const int kt =
          net.add_node({NodeKind::kDummyCompanyTime, companies[k].id, layer.period});
      for (int dt : job_times) net.add_arc(dt, kt, 1);
      net.add_arc(kt, g.company_node[k], 1);
    }
  }
  for (int a : g.company_sink_arc) net.set_capacity(a, plan.sink_capacity);
  return g;
}

struct StageTimes {
  double fairness_ms = 0;
  double min_cost_flow_ms = 0;
};

struct FairSolution {
  Allocation allocation;
  MlmfResult mlmf;
  DummyPlan plan;
  int cancelled_cycles = 0;
  StageTimes times;
};

namespace detail {
inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0).count();
}
}  // namespace detail

/// Fairness vector first, then min-cost max-flow on the dummy network, then
/// the dummy jobs are dropped. Throws InvariantViolation if the result does
/// not reproduce the fairness vector with every dummy job placed.
inline FairSolution solve_mfmca_detailed(
    const Instance& inst, const MlmfOptions& opt = {},
    CycleFinder finder = CycleFinder::kHoward) {
  FairSolution s;
  auto t0 = std::chrono::steady_clock::now();
  s.mlmf = imaxflow(inst, opt);
  s.times.fairness_ms = detail::ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  AllocationNetwork g = build_dummy_network(inst, s.mlmf);
  s.plan = make_dummy_plan(s.mlmf.fairness, inst.periods());
  const auto mcf = min_cost_max_flow(g.net, finder);
  s.cancelled_cycles = mcf.cancelled_cycles;
  s.times.min_cost_flow_ms = detail::ms_since(t0);

  FlowValue dummy_flow = 0;
  for (int a : g.dummy_source_arcs) dummy_flow += g.net.arc(a).flow;
  if (dummy_flow != s.plan.total_dummy_jobs())
    throw InvariantViolation("not every dummy job was placed");

  s.allocation = extract_allocation(inst, g);
  if (static_cast<int>(s.allocation.assigned_jobs()) != s.mlmf.max_jobs)
    throw InvariantViolation("fair allocation does not assign max_jobs jobs");
  if (sorted_counts(s.allocation, inst) != s.mlmf.fairness)
    throw InvariantViolation("fair allocation does not match fairness vector");
  if (!check_feasible(inst, s.allocation))
    throw InvariantViolation("fair allocation is infeasible");
  return s;
}

inline Allocation solve_mfmca(const Instance& inst, const MlmfOptions& opt = {},
                              CycleFinder finder = CycleFinder::kHoward) {
  return solve_mfmca_detailed(inst, opt, finder).allocation;
}

struct MinCostSolution {
  Allocation allocation;
  int cancelled_cycles = 0;
  double elapsed_ms = 0;
};

/// Baseline: min-cost maximum flow on the plain allocation network.
inline MinCostSolution solve_min_cost_detailed(
    const Instance& inst, CycleFinder finder = CycleFinder::kHoward) {
  MinCostSolution s;
  auto t0 = std::chrono::steady_clock::now();
  AllocationNetwork g = build_mlmf_network(inst);
  const auto mcf = min_cost_max_flow(g.net, finder);
  s.cancelled_cycles = mcf.cancelled_cycles;
  s.elapsed_ms = detail::ms_since(t0);
  s.allocation = extract_allocation(inst, g);
  if (static_cast<FlowValue>(s.allocation.assigned_jobs()) != mcf.value)
    throw InvariantViolation("min-cost allocation size differs from flow value");
  if (!check_feasible(inst, s.allocation))
    throw InvariantViolation("min-cost allocation is infeasible");
  return s;
}

inline Allocation solve_min_cost(const Instance& inst,
                                 CycleFinder finder = CycleFinder::kHoward) {
  return solve_min_cost_detailed(inst, finder).allocation;
}

}  // namespace fairalloc

#endif  // FAIRALLOC_MFMCA_HPP
