// Minimum-cost maximum flow by minimum-mean cycle cancelling.
#ifndef FAIRALLOC_MIN_COST_FLOW_HPP
#define FAIRALLOC_MIN_COST_FLOW_HPP

#include <limits>

#include "fairalloc/max_flow.hpp"
#include "fairalloc/min_mean_cycle.hpp"

namespace fairalloc {

struct MinCostFlowResult {
  FlowValue value = 0;
  FlowValue cost = 0;
  int cancelled_cycles = 0;
};

/// Cancels minimum-mean negative cycles until none remains. The flow value
/// is unchanged; every iteration strictly lowers the cost.
inline int cancel_negative_cycles(FlowNetwork& net,
                                  CycleFinder finder = CycleFinder::kHoward) {
  int cancelled = 0;
  FlowValue cost = net.total_cost();
  const FlowValue value = net.flow_value();
  HowardWarmStart warm;
  while (true) {
    ResidualGraph res(net);
    auto cycle = min_mean_cycle(res, finder, &warm);
    if (!cycle || cycle->mean >= Rational(0)) break;
    FlowValue delta = std::numeric_limits<FlowValue>::max();
    for (int i : cycle->edges) delta = std::min(delta, res.edges()[i].residual);
    for (int i : cycle->edges) net.push(res.edges()[i].edge, delta);
    const FlowValue next = net.total_cost();
    if (next >= cost)
      throw InvariantViolation("cycle cancellation did not lower the cost");
    cost = next;
    ++cancelled;
  }
  if (net.flow_value() != value)
    throw InvariantViolation("cycle cancellation changed the flow value");
  return cancelled;
}

/// Maximum flow followed by minimum-mean cycle cancelling.
inline MinCostFlowResult min_cost_max_flow(
    FlowNetwork& net, CycleFinder finder = CycleFinder::kHoward) {
  MinCostFlowResult r;
  r.value = max_flow(net);
  r.cancelled_cycles = cancel_negative_cycles(net, finder);
  r.cost = net.total_cost();
  return r;
}

/// Optimality certificate: no cycle of negative mean in the residual graph.
inline bool has_negative_cycle(const FlowNetwork& net) {
  auto c = karp_min_mean_cycle(ResidualGraph(net));
  return c && c->mean < Rational(0);
}

}  // namespace fairalloc

#endif  // FAIRALLOC_MIN_COST_FLOW_HPP
