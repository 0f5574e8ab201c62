// Karp's minimum mean cycle on the residual graph of a FlowNetwork, with the
// mean kept as an exact rational.
#ifndef FAIRALLOC_MIN_MEAN_CYCLE_HPP
#define FAIRALLOC_MIN_MEAN_CYCLE_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairalloc/flow_network.hpp"
#include "fairalloc/model.hpp"

namespace fairalloc {

/// Exact fraction with positive denominator, kept in lowest terms.
class Rational {
 public:
  constexpr Rational(std::int64_t num = 0, std::int64_t den = 1)
      : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    const auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }
  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / den_; }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;
  friend constexpr std::strong_ordering operator<=>(const Rational& a,
                                                    const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=>
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend std::ostream& operator<<(std::ostream& o, const Rational& r) {
    o << r.num_;
    if (r.den_ != 1) o << '/' << r.den_;
    return o;
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

struct ResidualEdge {
  int tail;
  int head;
  FlowValue cost;
  FlowValue residual;
  int edge;  // residual edge id in the underlying network
};

/// Snapshot of the residual edges with positive residual capacity, sorted by
/// (tail, head, edge id).
class ResidualGraph {
 public:
  explicit ResidualGraph(const FlowNetwork& net) : nodes_(net.node_count()) {
    for (int v = 0; v < net.node_count(); ++v)
      for (int e : net.out_edges(v))
        if (net.edge_residual(e) > 0)
          edges_.push_back({v, net.edge_head(e), net.edge_cost(e),
                            net.edge_residual(e), e});
  }

  int node_count() const { return nodes_; }
  const std::vector<ResidualEdge>& edges() const { return edges_; }

 private:
  int nodes_;
  std::vector<ResidualEdge> edges_;
};

struct MeanCycle {
  std::vector<int> edges;  // indices into ResidualGraph::edges(), in order
  Rational mean;
};

namespace detail {

// Iterative Tarjan. Returns component id per node; components are numbered
// in order of their smallest node id.
inline std::vector<int> strongly_connected_components(
    int n, const std::vector<ResidualEdge>& edges) {
  std::vector<int> first(n + 1, 0);
  for (const auto& e : edges) ++first[e.tail + 1];
  for (int v = 0; v < n; ++v) first[v + 1] += first[v];
  std::vector<int> succ(edges.size());
  {
    auto pos = first;
    for (const auto& e : edges) succ[pos[e.tail]++] = e.head;
  }
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack, call;
  std::vector<int> next_child(n, 0);
  std::vector<char> on_stack(n, 0);
  int counter = 0, ncomp = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.push_back(root);
    index[root] = low[root] = counter++;
    next_child[root] = first[root];
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      const int v = call.back();
      if (next_child[v] < first[v + 1]) {
        const int w = succ[next_child[v]++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          next_child[w] = first[w];
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back(w);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      call.pop_back();
      if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
    }
  }
  // Renumber by smallest member.
  std::vector<int> smallest(ncomp, n);
  for (int v = 0; v < n; ++v) smallest[comp[v]] = std::min(smallest[comp[v]], v);
  std::vector<int> order(ncomp);
  std::iota(order.begin(), order.end(), 0);
  std::ranges::sort(order, {}, [&](int c) { return smallest[c]; });
  std::vector<int> rank(ncomp);
  for (int i = 0; i < ncomp; ++i) rank[order[i]] = i;
  for (int v = 0; v < n; ++v) comp[v] = rank[comp[v]];
  return comp;
}

// Karp on one strongly connected component. `members` is sorted ascending;
// `local_edges` index into `edges` and are sorted by (tail, head, edge id).
inline std::optional<MeanCycle> karp_on_component(
    const std::vector<ResidualEdge>& edges, const std::vector<int>& members,
    const std::vector<int>& local_of, const std::vector<int>& local_edges) {
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  const int m = static_cast<int>(members.size());
  const std::size_t width = static_cast<std::size_t>(m);
  thread_local std::vector<std::int64_t> dist;
  thread_local std::vector<int> pred;
  dist.assign((width + 1) * width, kInf);
  pred.assign((width + 1) * width, -1);

  std::vector<int> tails, heads;
  std::vector<std::int64_t> costs;
  tails.reserve(local_edges.size());
  heads.reserve(local_edges.size());
  costs.reserve(local_edges.size());
  for (int i : local_edges) {
    tails.push_back(local_of[edges[i].tail]);
    heads.push_back(local_of[edges[i].head]);
    costs.push_back(edges[i].cost);
  }

  dist[0] = 0;  // level 0: source is the smallest member
  for (int k = 1; k <= m; ++k) {
    const std::int64_t* prev = &dist[(k - 1) * width];
    std::int64_t* cur = &dist[k * width];
    int* cur_pred = &pred[k * width];
    for (std::size_t i = 0; i < tails.size(); ++i) {
      const std::int64_t du = prev[tails[i]];
      if (du == kInf) continue;
      const std::int64_t cand = du + costs[i];
      if (cand < cur[heads[i]]) {
        cur[heads[i]] = cand;
        cur_pred[heads[i]] = static_cast<int>(i);
      }
    }
  }

  // min over v of max over k of (D_m(v) - D_k(v)) / (m - k).
  std::optional<Rational> best;
  int best_v = -1;
  const std::int64_t* last = &dist[m * width];
  for (int v = 0; v < m; ++v) {
    if (last[v] == kInf) continue;
    std::optional<Rational> worst;
    for (int k = 0; k < m; ++k) {
      const std::int64_t dk = dist[k * width + v];
      if (dk == kInf) continue;
      Rational r(last[v] - dk, m - k);
      if (!worst || r > *worst) worst = r;
    }
    if (worst && (!best || *worst < *best)) {
      best = worst;
      best_v = v;
    }
  }
  if (!best) return std::nullopt;

  // Walk the predecessor chain from level m; the first repeated node closes
  // a cycle whose mean is the optimum.
  std::vector<int> seen_at(m, -1);
  std::vector<int> walk;  // local edge positions, from level m downward
  int v = best_v;
  for (int k = m; k >= 1; --k) {
    if (seen_at[v] != -1) break;
    seen_at[v] = k;
    const int e = pred[k * width + v];
    walk.push_back(e);
    v = tails[e];
  }
  if (seen_at[v] == -1)
    throw InvariantViolation("Karp walk did not close a cycle");
  // walk[j] is the edge entering the node at level m - j. The cycle runs
  // from the first visit of v (level seen_at[v]) back to v.
  const int start = m - seen_at[v];
  std::vector<int> cyc;
  for (int j = static_cast<int>(walk.size()) - 1; j >= start; --j)
    cyc.push_back(local_edges[walk[j]]);

  std::int64_t total = 0;
  for (int i : cyc) total += edges[i].cost;
  Rational mean(total, static_cast<std::int64_t>(cyc.size()));
  if (mean != *best)
    throw InvariantViolation("extracted cycle mean differs from Karp optimum");
  return MeanCycle{std::move(cyc), mean};
}

}  // namespace detail

namespace detail {

// Howard policy iteration on one strongly connected component, exact. A
// policy picks one successor edge per node; each node is valued by the mean
// of the policy cycle it reaches (lambda = W / L) and a potential kept scaled
// by L so that everything stays integral.
inline std::optional<MeanCycle> howard_on_component(
    const std::vector<ResidualEdge>& edges, const std::vector<int>& members,
    const std::vector<int>& local_of, const std::vector<int>& local_edges,
    std::vector<int>* warm_policy) {
  const int m = static_cast<int>(members.size());
  // Local CSR by tail; local_edges is already sorted by tail.
  std::vector<int> first(m + 1, 0), head, eidx;
  std::vector<std::int64_t> cost;
  for (int i : local_edges) ++first[local_of[edges[i].tail] + 1];
  for (int v = 0; v < m; ++v) first[v + 1] += first[v];
  head.resize(local_edges.size());
  cost.resize(local_edges.size());
  eidx.resize(local_edges.size());
  {
    auto pos = first;
    for (int i : local_edges) {
      const int p = pos[local_of[edges[i].tail]]++;
      head[p] = local_of[edges[i].head];
      cost[p] = edges[i].cost;
      eidx[p] = i;
    }
  }

  // Initial policy: the previous call's choice when that edge survives,
  // else the cheapest out-edge.
  std::vector<int> policy(m);
  for (int v = 0; v < m; ++v) {
    int best = first[v];
    for (int p = first[v] + 1; p < first[v + 1]; ++p)
      if (cost[p] < cost[best]) best = p;
    if (warm_policy) {
      const int hint = (*warm_policy)[members[v]];
      for (int p = first[v]; p < first[v + 1]; ++p)
        if (edges[eidx[p]].edge == hint) { best = p; break; }
    }
    policy[v] = best;
  }

  std::vector<std::int64_t> cyc_w(m), cyc_l(m), pot(m);
  std::vector<int> cyc_id(m), state(m), order;
  std::vector<std::vector<int>> preds(m);
  std::vector<int> cycle_root;  // one node per policy cycle

  auto evaluate = [&] {
    std::ranges::fill(state, 0);
    cycle_root.clear();
    // Find the cycles of the functional graph.
    for (int s = 0; s < m; ++s) {
      if (state[s]) continue;
      int v = s;
      while (!state[v]) {
        state[v] = 1;
        v = head[policy[v]];
      }
      if (state[v] == 1) {  // new cycle through v
        std::int64_t w = 0, l = 0;
        int u = v, root = v;
        do {
          w += cost[policy[u]];
          ++l;
          u = head[policy[u]];
          root = std::min(root, u);
        } while (u != v);
        const int id = static_cast<int>(cycle_root.size());
        cycle_root.push_back(root);
        // Anchor at the smallest node so an unchanged cycle keeps its
        // potentials between iterations.
        u = v;
        do {
          cyc_w[u] = w;
          cyc_l[u] = l;
          cyc_id[u] = id;
          u = head[policy[u]];
        } while (u != v);
      }
      for (v = s; state[v] == 1; v = head[policy[v]]) state[v] = 2;
    }
    // Potentials: pot(u) = L*c(u) - W + pot(next(u)), computed from the
    // cycle roots outward over reversed policy edges.
    for (auto& p : preds) p.clear();
    for (int v = 0; v < m; ++v) preds[head[policy[v]]].push_back(v);
    order.clear();
    std::vector<char> done(m, 0);
    for (int root : cycle_root) {
      pot[root] = 0;
      done[root] = 1;
      order.push_back(root);
    }
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
      const int x = order[qi];
      for (int u : preds[x]) {
        if (done[u]) continue;
        done[u] = 1;
        cyc_w[u] = cyc_w[x];
        cyc_l[u] = cyc_l[x];
        cyc_id[u] = cyc_id[x];
        pot[u] = cyc_l[x] * cost[policy[u]] - cyc_w[x] + pot[x];
        order.push_back(u);
      }
    }
  };

  // Compare the cycle means W1/L1 and W2/L2 (L > 0) without reducing.
  auto mean_cmp = [&](int a, int b) {
    return static_cast<__int128>(cyc_w[a]) * cyc_l[b] <=>
           static_cast<__int128>(cyc_w[b]) * cyc_l[a];
  };

  while (true) {
    evaluate();
    bool changed = false;
    // First try to reach a cycle of smaller mean.
    for (int v = 0; v < m; ++v) {
      for (int p = first[v]; p < first[v + 1]; ++p) {
        const int u = head[p];
        const int cur = head[policy[v]];
        if (mean_cmp(u, cur) < 0) {
          policy[v] = p;
          changed = true;
        }
      }
    }
    if (changed) continue;
    // Same mean: improve potentials. x(v) = pot(v) / L(v).
    for (int v = 0; v < m; ++v) {
      const __int128 lv = cyc_l[v];
      for (int p = first[v]; p < first[v + 1]; ++p) {
        const int u = head[p];
        if (mean_cmp(u, v) != 0) continue;
        const __int128 lu = cyc_l[u];
        // c - W/L + pot(u)/L(u) < pot(v)/L, times L*L(u)
        const __int128 lhs = (static_cast<__int128>(cost[p]) * lv - cyc_w[v]) * lu +
                             static_cast<__int128>(pot[u]) * lv;
        const __int128 rhs = static_cast<__int128>(pot[v]) * lu;
        if (lhs < rhs) {
          policy[v] = p;
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
  }

  // Best cycle of the final policy; ties go to the lowest root node.
  int best_root = -1;
  for (int root : cycle_root)
    if (best_root == -1 || mean_cmp(root, best_root) < 0 ||
        (mean_cmp(root, best_root) == 0 && root < best_root))
      best_root = root;
  if (warm_policy)
    for (int v = 0; v < m; ++v) (*warm_policy)[members[v]] = edges[eidx[policy[v]]].edge;
  if (best_root == -1) return std::nullopt;
  // Start the cycle at its smallest node for a canonical edge order.
  int start = best_root;
  for (int u = head[policy[best_root]]; u != best_root; u = head[policy[u]])
    start = std::min(start, u);
  MeanCycle out{{}, Rational(cyc_w[best_root], cyc_l[best_root])};
  int u = start;
  do {
    out.edges.push_back(eidx[policy[u]]);
    u = head[policy[u]];
  } while (u != start);
  return out;
}

template <typename Solver>
std::optional<MeanCycle> min_mean_cycle_by_component(const ResidualGraph& res,
                                                     Solver solve) {
  const int n = res.node_count();
  const auto& edges = res.edges();
  const auto comp = strongly_connected_components(n, edges);
  const int ncomp = comp.empty() ? 0 : *std::ranges::max_element(comp) + 1;

  std::vector<std::vector<int>> members(ncomp), internal(ncomp);
  for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    if (comp[edges[i].tail] == comp[edges[i].head])
      internal[comp[edges[i].tail]].push_back(i);

  std::vector<int> local_of(n, -1);
  std::optional<MeanCycle> best;
  for (int c = 0; c < ncomp; ++c) {
    if (internal[c].empty()) continue;
    for (int i = 0; i < static_cast<int>(members[c].size()); ++i)
      local_of[members[c][i]] = i;
    auto cyc = solve(edges, members[c], local_of, internal[c]);
    if (cyc && (!best || cyc->mean < best->mean)) best = std::move(cyc);
  }
  return best;
}

}  // namespace detail

/// Policy kept between successive Howard calls on a slowly changing
/// residual graph: one residual edge id per node.
struct HowardWarmStart {
  std::vector<int> policy_edge;
};

/// Same contract as karp_min_mean_cycle, computed by Howard's policy
/// iteration. The returned mean is identical; on ties the cycle may differ.
inline std::optional<MeanCycle> howard_min_mean_cycle(
    const ResidualGraph& res, HowardWarmStart* warm = nullptr) {
  std::vector<int>* policy = nullptr;
  if (warm) {
    warm->policy_edge.resize(res.node_count(), -1);
    policy = &warm->policy_edge;
  }
  return detail::min_mean_cycle_by_component(
      res, [policy](const auto& edges, const auto& members, const auto& local_of,
                    const auto& local_edges) {
        return detail::howard_on_component(edges, members, local_of, local_edges,
                                           policy);
      });
}

/// Minimum mean cycle over all directed cycles of positive residual
/// capacity, or nullopt when the residual graph is acyclic. Karp's dynamic
/// program runs separately on every nontrivial strongly connected component,
/// from the component's smallest node. Ties between components go to the
/// one with the smallest node id.
inline std::optional<MeanCycle> karp_min_mean_cycle(const ResidualGraph& res) {
  return detail::min_mean_cycle_by_component(res, detail::karp_on_component);
}

enum class CycleFinder { kKarp, kHoward };

inline std::optional<MeanCycle> min_mean_cycle(const ResidualGraph& res,
                                               CycleFinder finder,
                                               HowardWarmStart* warm = nullptr) {
  return finder == CycleFinder::kKarp ? karp_min_mean_cycle(res)
                                      : howard_min_mean_cycle(res, warm);
}

}  // namespace fairalloc

#endif  // FAIRALLOC_MIN_MEAN_CYCLE_HPP
