// Shared fixtures and brute-force references for the tests and the
// acceptance binary.
#ifndef FAIRALLOC_TESTS_SUPPORT_HPP
#define FAIRALLOC_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fairalloc/fairalloc.hpp"

#ifndef FAIRALLOC_DATA_DIR
#define FAIRALLOC_DATA_DIR "data"
#endif

namespace fairalloc::test_support {

inline Instance example1() {
  return read_instance_file(std::string(FAIRALLOC_DATA_DIR) + "/example1.txt");
}

/// The unique fair optimum of example1.txt (cost 105).
inline std::map<JobId, std::pair<CompanyId, Period>> example1_pi5() {
  return {{1, {1, 1}}, {3, {2, 2}}, {2, {3, 2}}, {4, {3, 4}}, {5, {3, 5}}};
}

struct SmallShape {
  int max_jobs = 6;
  int max_companies = 4;
  int max_periods = 5;
  int max_window = 3;
  int max_capacity = 2;
  Cost max_cost = 20;
  double bid_rate = 0.5;
};

/// Random oracle-sized instance. Jobs get a contiguous window; every
/// company bids on each (job, admissible period) with probability bid_rate.
inline Instance random_small_instance(std::uint64_t seed, const SmallShape& s = {}) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int periods = uni(1, s.max_periods);
  const int n_jobs = uni(0, s.max_jobs);
  const int n_companies = uni(1, s.max_companies);
  std::vector<Job> jobs(n_jobs);
  for (int i = 0; i < n_jobs; ++i) {
    jobs[i].id = i + 1;
    const int w = uni(1, std::min(s.max_window, periods));
    const int start = uni(1, periods - w + 1);
    for (int t = start; t < start + w; ++t) jobs[i].admissible_periods.push_back(t);
  }
  std::bernoulli_distribution coin(s.bid_rate);
  std::vector<Company> companies(n_companies);
  for (int k = 0; k < n_companies; ++k) {
    companies[k].id = k + 1;
    for (const Job& j : jobs)
      for (Period t : j.admissible_periods)
        if (coin(rng)) companies[k].bids[{j.id, t}] = uni(0, static_cast<int>(s.max_cost));
    for (Period t = 1; t <= periods; ++t) {
      const int n = uni(0, s.max_capacity);
      if (n > 0) companies[k].capacity_per_period[t] = n;
    }
  }
  return Instance(periods, std::move(jobs), std::move(companies));
}

/// Same instance with job and company ids relabelled and listed in a
/// shuffled order.
inline Instance relabel(const Instance& inst, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<JobId> job_ids;
  for (const auto& j : inst.jobs()) job_ids.push_back(j.id);
  std::vector<JobId> new_job = job_ids;
  std::ranges::shuffle(new_job, rng);
  std::map<JobId, JobId> jmap;
  for (std::size_t i = 0; i < job_ids.size(); ++i) jmap[job_ids[i]] = new_job[i] + 100;

  std::vector<Job> jobs;
  for (const auto& j : inst.jobs()) jobs.push_back({jmap[j.id], j.admissible_periods});
  std::ranges::shuffle(jobs, rng);
  std::vector<Company> companies;
  int next = 500;
  for (const auto& c : inst.companies()) {
    Company d{next--, c.capacity_per_period, {}};
    for (const auto& [key, cost] : c.bids) d.bids[{jmap[key.first], key.second}] = cost;
    companies.push_back(std::move(d));
  }
  std::ranges::shuffle(companies, rng);
  return Instance(inst.periods(), std::move(jobs), std::move(companies));
}

struct BruteFlow {
  FlowValue max_value = 0;
  FlowValue min_cost = 0;  // over flows of value max_value
};

/// Enumerates every integral arc flow within the capacities, keeping those
/// that conserve flow at every node but source and sink. Exponential; meant
/// for a dozen arcs.
inline BruteFlow brute_force_flow(const FlowNetwork& net) {
  const int n = net.node_count(), m = net.arc_count();
  const int s = net.source(), t = net.sink();
  std::vector<int> last(n, -1);
  for (int a = 0; a < m; ++a) {
    last[net.arc(a).from] = std::max(last[net.arc(a).from], a);
    last[net.arc(a).to] = std::max(last[net.arc(a).to], a);
  }
  std::vector<FlowValue> balance(n, 0);
  BruteFlow best{-1, 0};
  FlowValue cost = 0;
  auto rec = [&](auto&& self, int a) -> void {
    if (a == m) {
      const FlowValue value = -balance[s];
      if (value > best.max_value || (value == best.max_value && cost < best.min_cost))
        best = {value, cost};
      return;
    }
    const Arc& arc = net.arc(a);
    for (FlowValue f = 0; f <= arc.capacity; ++f) {
      balance[arc.from] -= f;
      balance[arc.to] += f;
      cost += f * arc.cost;
      bool ok = true;
      for (int v : {arc.from, arc.to})
        if (v != s && v != t && last[v] == a && balance[v] != 0) ok = false;
      if (ok) self(self, a + 1);
      cost -= f * arc.cost;
      balance[arc.from] += f;
      balance[arc.to] -= f;
    }
  };
  rec(rec, 0);
  if (best.max_value < 0) best = {0, 0};
  return best;
}

/// Random network: node 0 is the source, node n-1 the sink.
inline FlowNetwork random_network(std::uint64_t seed, int max_nodes, int max_arcs,
                                  int max_capacity, int min_cost, int max_cost) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = uni(2, max_nodes);
  const int m = uni(1, max_arcs);
  FlowNetwork net;
  for (int v = 0; v < n; ++v) net.add_node();
  net.set_source(0);
  net.set_sink(n - 1);
  for (int i = 0; i < m; ++i) {
    const int u = uni(0, n - 1);
    int v = uni(0, n - 2);
    if (v >= u) ++v;
    net.add_arc(u, v, uni(0, max_capacity), uni(min_cost, max_cost));
  }
  return net;
}

/// Minimum mean over all simple directed cycles of the residual graph, by
/// exhaustive depth-first enumeration (each cycle rooted at its smallest
/// node). Parallel edges count as distinct cycles.
inline std::optional<Rational> brute_force_min_mean(const ResidualGraph& res) {
  const int n = res.node_count();
  std::vector<std::vector<const ResidualEdge*>> out(n);
  for (const auto& e : res.edges()) out[e.tail].push_back(&e);
  std::optional<Rational> best;
  std::vector<char> on_path(n, 0);
  for (int root = 0; root < n; ++root) {
    auto dfs = [&](auto&& self, int v, FlowValue cost, int len) -> void {
      for (const ResidualEdge* e : out[v]) {
        if (e->head == root) {
          const Rational mean(cost + e->cost, len + 1);
          if (!best || mean < *best) best = mean;
        } else if (e->head > root && !on_path[e->head]) {
          on_path[e->head] = 1;
          self(self, e->head, cost + e->cost, len + 1);
          on_path[e->head] = 0;
        }
      }
    };
    on_path[root] = 1;
    dfs(dfs, root, 0, 0);
    on_path[root] = 0;
  }
  return best;
}

/// Plain digraph as a zero-flow network with unit capacities: its residual
/// graph is the digraph itself.
inline FlowNetwork random_digraph(std::uint64_t seed, int max_nodes, int max_arcs,
                                  int min_cost, int max_cost) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = uni(1, max_nodes);
  const int m = uni(0, max_arcs);
  FlowNetwork net;
  for (int v = 0; v < n; ++v) net.add_node();
  for (int i = 0; i < m && n > 1; ++i) {
    const int u = uni(0, n - 1);
    int v = uni(0, n - 2);
    if (v >= u) ++v;
    net.add_arc(u, v, 1, uni(min_cost, max_cost));
  }
  return net;
}

/// Sum of costs over the cycle divided by its length, checking that the
/// edges chain head to tail and close up.
inline std::optional<Rational> cycle_mean_if_closed(const ResidualGraph& res,
                                                    const MeanCycle& c) {
  if (c.edges.empty()) return std::nullopt;
  FlowValue cost = 0;
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const auto& e = res.edges()[c.edges[i]];
    const auto& next = res.edges()[c.edges[(i + 1) % c.edges.size()]];
    if (e.head != next.tail || e.residual <= 0) return std::nullopt;
    cost += e.cost;
  }
  return Rational(cost, static_cast<std::int64_t>(c.edges.size()));
}

}  // namespace fairalloc::test_support

#endif  // FAIRALLOC_TESTS_SUPPORT_HPP
