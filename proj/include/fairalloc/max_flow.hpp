// Shortest-augmenting-path (Edmonds-Karp) maximum flow.
//
// Paths are found by BFS that scans residual edges in ascending head-node
// order, so among equal-length paths the one discovered first is the one
// through lower node ids. Runs are fully deterministic.
#ifndef FAIRALLOC_MAX_FLOW_HPP
#define FAIRALLOC_MAX_FLOW_HPP

#include <algorithm>
#include <limits>
#include <vector>

#include "fairalloc/flow_network.hpp"

namespace fairalloc {

namespace detail {

// Returns the residual edges of a shortest source->sink path (in order), or
// an empty vector when the sink is unreachable.
inline std::vector<int> shortest_augmenting_path(const FlowNetwork& net) {
  const int s = net.source(), t = net.sink();
  if (s == t || s < 0 || t < 0) return {};
  std::vector<int> via(net.node_count(), -1);
  std::vector<int> queue;
  queue.reserve(net.node_count());
  std::vector<char> seen(net.node_count(), 0);
  seen[s] = 1;
  queue.push_back(s);
  for (std::size_t qi = 0; qi < queue.size() && !seen[t]; ++qi) {
    const int u = queue[qi];
    for (int e : net.out_edges(u)) {
      const int v = net.edge_head(e);
      if (seen[v] || net.edge_residual(e) <= 0) continue;
      seen[v] = 1;
      via[v] = e;
      if (v == t) break;
      queue.push_back(v);
    }
  }
  if (!seen[t]) return {};
  std::vector<int> path;
  for (int v = t; v != s; v = net.edge_tail(via[v])) path.push_back(via[v]);
  std::ranges::reverse(path);
  return path;
}

}  // namespace detail

/// True iff the sink is reachable from the source in the residual graph.
inline bool has_augmenting_path(const FlowNetwork& net) {
  return !detail::shortest_augmenting_path(net).empty();
}

enum class AugmentResult { kAugmented, kNone };

/// Pushes exactly one unit along a shortest augmenting path, if any.
inline AugmentResult augment_once(FlowNetwork& net) {
  auto path = detail::shortest_augmenting_path(net);
  if (path.empty()) return AugmentResult::kNone;
  for (int e : path) net.push(e, 1);
  return AugmentResult::kAugmented;
}

/// Completes the existing (valid) flow to a maximum flow and returns its
/// value. Warm starts are allowed.
inline FlowValue max_flow(FlowNetwork& net) {
  while (true) {
    auto path = detail::shortest_augmenting_path(net);
    if (path.empty()) break;
    FlowValue bottleneck = std::numeric_limits<FlowValue>::max();
    for (int e : path) bottleneck = std::min(bottleneck, net.edge_residual(e));
    for (int e : path) net.push(e, bottleneck);
  }
  return net.flow_value();
}

}  // namespace fairalloc

#endif  // FAIRALLOC_MAX_FLOW_HPP
