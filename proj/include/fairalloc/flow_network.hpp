// Integer flow network with tagged nodes and an implicit residual graph.
//
// Residual edge ids: 2*arc is the forward edge (residual capacity
// capacity - flow, cost +c); 2*arc + 1 is the backward edge (residual
// capacity flow, cost -c).
#ifndef FAIRALLOC_FLOW_NETWORK_HPP
#define FAIRALLOC_FLOW_NETWORK_HPP

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fairalloc {

using FlowValue = std::int64_t;

enum class NodeKind : std::uint8_t {
  kSource,
  kSink,
  kJob,
  kJobTime,
  kCompanyTime,
  kCompany,
  kDummyJob,
  kDummyJobTime,
  kDummyCompanyTime,
};

inline std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::kSource: return "source";
    case NodeKind::kSink: return "sink";
    case NodeKind::kJob: return "job";
    case NodeKind::kJobTime: return "job-time";
    case NodeKind::kCompanyTime: return "company-time";
    case NodeKind::kCompany: return "company";
    case NodeKind::kDummyJob: return "dummy-job";
    case NodeKind::kDummyJobTime: return "dummy-job-time";
    case NodeKind::kDummyCompanyTime: return "dummy-company-time";
  }
  return "?";
}

// `owner` is the job or company id (dummy jobs: layer-local index),
// `period` the period (dummy nodes: the dummy period of their layer).
struct NodeTag {
  NodeKind kind = NodeKind::kSource;
  int owner = -1;
  int period = -1;
};

struct Arc {
  int from = 0;
  int to = 0;
  FlowValue capacity = 0;
  FlowValue cost = 0;
  FlowValue flow = 0;
};

class FlowNetwork {
 public:
  int add_node(NodeTag tag = {}) {
    tags_.push_back(tag);
    adjacency_.emplace_back();
    return static_cast<int>(tags_.size()) - 1;
  }

  int add_arc(int from, int to, FlowValue capacity, FlowValue cost = 0) {
    check_node(from);
    check_node(to);
    if (capacity < 0) throw std::invalid_argument("negative arc capacity");
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({from, to, capacity, cost, 0});
    insert_edge(from, 2 * id);
    insert_edge(to, 2 * id + 1);
    return id;
  }

  void set_source(int v) { check_node(v); source_ = v; }
  void set_sink(int v) { check_node(v); sink_ = v; }
  int source() const { return source_; }
  int sink() const { return sink_; }

  int node_count() const { return static_cast<int>(tags_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const NodeTag& tag(int v) const { return tags_[v]; }
  const Arc& arc(int a) const { return arcs_[a]; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  /// Changes an arc's capacity. The current flow must still fit.
  void set_capacity(int a, FlowValue capacity) {
    if (capacity < arcs_[a].flow || capacity < 0)
      throw std::invalid_argument("capacity below current arc flow");
    arcs_[a].capacity = capacity;
  }

  void clear_flow() {
    for (auto& a : arcs_) a.flow = 0;
  }

  // --- residual view -----------------------------------------------------
  int edge_tail(int e) const {
    const Arc& a = arcs_[e >> 1];
    return (e & 1) ? a.to : a.from;
  }
  int edge_head(int e) const {
    const Arc& a = arcs_[e >> 1];
    return (e & 1) ? a.from : a.to;
  }
  FlowValue edge_residual(int e) const {
    const Arc& a = arcs_[e >> 1];
    return (e & 1) ? a.flow : a.capacity - a.flow;
  }
  FlowValue edge_cost(int e) const {
    const Arc& a = arcs_[e >> 1];
    return (e & 1) ? -a.cost : a.cost;
  }
  void push(int e, FlowValue amount) {
    Arc& a = arcs_[e >> 1];
    if (e & 1) a.flow -= amount; else a.flow += amount;
  }
  /// Residual edges leaving `v`, ordered by head node id, then edge id.
  const std::vector<int>& out_edges(int v) const { return adjacency_[v]; }

  // --- flow summaries ----------------------------------------------------
  FlowValue flow_value() const {
    FlowValue value = 0;
    for (const auto& a : arcs_) {
      if (a.from == source_) value += a.flow;
      if (a.to == source_) value -= a.flow;
    }
    return value;
  }

  FlowValue total_cost() const {
    FlowValue c = 0;
    for (const auto& a : arcs_) c += a.cost * a.flow;
    return c;
  }

  /// Capacity bounds on every arc and conservation at every node other than
  /// source and sink.
  bool is_valid_flow() const {
    std::vector<FlowValue> balance(tags_.size(), 0);
    for (const auto& a : arcs_) {
      if (a.flow < 0 || a.flow > a.capacity) return false;
      balance[a.from] -= a.flow;
      balance[a.to] += a.flow;
    }
    for (int v = 0; v < node_count(); ++v)
      if (v != source_ && v != sink_ && balance[v] != 0) return false;
    return true;
  }

  /// Plain-text arc list, one `from to capacity cost flow` line per arc.
  void dump(std::ostream& out) const {
    for (const auto& a : arcs_)
      out << a.from << ' ' << a.to << ' ' << a.capacity << ' ' << a.cost << ' '
          << a.flow << '\n';
  }
  std::string dump() const {
    std::ostringstream s;
    dump(s);
    return s.str();
  }

 private:
  void check_node(int v) const {
    if (v < 0 || v >= node_count())
      throw std::out_of_range("node " + std::to_string(v) + " out of range");
  }

  void insert_edge(int v, int e) {
    auto& adj = adjacency_[v];
    const int head = edge_head(e);
    auto pos = std::upper_bound(adj.begin(), adj.end(), e, [&](int x, int y) {
      const int hx = x == e ? head : edge_head(x);
      const int hy = y == e ? head : edge_head(y);
      return hx != hy ? hx < hy : x < y;
    });
    adj.insert(pos, e);
  }

  std::vector<NodeTag> tags_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adjacency_;
  int source_ = -1;
  int sink_ = -1;
};

}  // namespace fairalloc

#endif  // FAIRALLOC_FLOW_NETWORK_HPP
