// fairalloc: generate / solve / verify / experiment.
//
// Exit codes: 0 success, 1 usage error, 2 input parse error, 3 solver
// invariant violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fairalloc/fairalloc.hpp"

namespace fs = std::filesystem;
using namespace fairalloc;

namespace {

constexpr int kOk = 0, kUsage = 1, kParse = 2, kInvariant = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CycleFinder finder_from(const std::string& s) {
  return s == "karp" ? CycleFinder::kKarp : CycleFinder::kHoward;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw UsageError("cannot write " + p.string());
  return f;
}

/// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) file_ = open_out(path);
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::optional<std::ofstream> file_;
};

Instance load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return parse_instance(in);
}

struct GenerateArgs {
  std::string scenario = "mix/het";
  ScenarioConfig cfg;
  std::string out;
};

struct SolveArgs {
  std::string input, out, mode = "fair", finder = "howard";
  std::optional<std::uint64_t> order_seed;
  bool literal = false;
  bool verbose = false;
};

struct VerifyArgs {
  std::string input;
  double limit = 1e7;
};

struct ExperimentArgs {
  std::string scenario = "mix/het";
  ScenarioConfig cfg;
  int runs = 100;
  std::uint64_t seed = 1;
  std::string jobs_sweep;
  std::string out;
  std::string finder = "howard";
};

void add_scenario_options(CLI::App* cmd, std::string& scenario, ScenarioConfig& cfg) {
  cmd->add_option("--scenario", scenario,
                  "competition/costs: low|high|mix and hom|het, e.g. high/het")
      ->capture_default_str();
  cmd->add_option("--capacity-pct", cfg.capacity_pct,
                  "capacity share of the bids per period, percent")
      ->check(CLI::Range(1, 100))
      ->capture_default_str();
  cmd->add_option("--companies", cfg.companies, "number of companies")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--periods", cfg.periods, "number of periods")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--window", cfg.window, "admissible window length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--per-period-bids", cfg.per_period_bids,
                "draw a bid coin per (company, job, period)");
  cmd->add_flag("--floor-capacity", cfg.floor_capacity,
                "floor the capacity share instead of rounding");
}

void resolve_scenario(const std::string& name, ScenarioConfig& cfg) {
  if (!parse_scenario_name(name, cfg)) throw UsageError("unknown scenario '" + name + "'");
  try {
    cfg.validate();
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
}

int run_generate(GenerateArgs& a) {
  resolve_scenario(a.scenario, a.cfg);
  const Instance inst = generate(a.cfg);
  Sink sink(a.out);
  write_config_header(sink.os(), a.cfg);
  write_instance(sink.os(), inst);
  return kOk;
}

int run_solve(SolveArgs& a) {
  const Instance inst = load(a.input);
  Sink sink(a.out);
  MlmfOptions opt;
  opt.order_seed = a.order_seed;
  opt.warm_start = !a.literal;
  const CycleFinder finder = finder_from(a.finder);
  if (a.mode == "fairness-vector") {
    const MlmfResult r = imaxflow(inst, opt);
    for (const auto& [k, n] : r.fixed_caps) sink.os() << "cap " << k << ' ' << n << '\n';
    sink.os() << "max_jobs " << r.max_jobs << '\n'
              << "fairness_vector " << r.fairness.to_string() << '\n';
  } else if (a.mode == "mincost") {
    const MinCostSolution s = solve_min_cost_detailed(inst, finder);
    if (a.verbose)
      std::cerr << "cancelled_cycles " << s.cancelled_cycles << "\nelapsed_ms "
                << s.elapsed_ms << '\n';
    write_allocation(sink.os(), inst, s.allocation);
  } else {
    const FairSolution s = solve_mfmca_detailed(inst, opt, finder);
    if (a.verbose)
      std::cerr << "dummy_layers " << s.plan.layer_count() << "\ndummy_jobs "
                << s.plan.total_dummy_jobs() << "\ncancelled_cycles "
                << s.cancelled_cycles << "\nfairness_ms " << s.times.fairness_ms
                << "\nmin_cost_flow_ms " << s.times.min_cost_flow_ms << '\n';
    write_allocation(sink.os(), inst, s.allocation);
  }
  return kOk;
}

int run_verify(VerifyArgs& a) {
  const Instance inst = load(a.input);
  OracleReport oracle;
  try {
    oracle = enumerate(inst, {a.limit});
  } catch (const TooLarge& e) {
    throw UsageError(std::string(e.what()) + " (raise --limit)");
  }
  const MlmfResult mlmf = imaxflow(inst);
  const Allocation fair = solve_mfmca(inst);
  const Allocation mc = solve_min_cost(inst);

  bool ok = true;
  auto line = [&](const char* what, const std::string& got, const std::string& want) {
    const bool pass = got == want;
    ok = ok && pass;
    std::cout << (pass ? "PASS " : "FAIL ") << what << " solver=" << got
              << " oracle=" << want << '\n';
  };
  line("max_jobs", std::to_string(mlmf.max_jobs), std::to_string(oracle.max_jobs));
  line("fairness", mlmf.fairness.to_string(), oracle.best_fairness.to_string());
  line("fair_cost", std::to_string(fair.total_cost), std::to_string(oracle.min_fair_cost));
  line("min_cost", std::to_string(mc.total_cost), std::to_string(oracle.min_cost));
  std::cout << "feasible_allocations " << oracle.feasible_allocations << '\n'
            << "maximal_allocations " << oracle.maximal_allocations << '\n';
  return ok ? kOk : kInvariant;
}

std::string slug(const ScenarioConfig& cfg) {
  std::string s = cfg.name();
  std::ranges::replace(s, '/', '-');
  return s + "_cap" + std::to_string(cfg.capacity_pct);
}

void print_stats(std::ostream& os, const std::string& label, const BatchStats& s) {
  auto row = [&](const char* name, const Summary& x) {
    os << label << ' ' << name << " mean " << detail::fixed(x.mean, 2) << " std "
       << detail::fixed(x.std, 2) << " min " << detail::fixed(x.min, 2) << " max "
       << detail::fixed(x.max, 2) << '\n';
  };
  row("min_cost", s.min_cost);
  row("fair_cost", s.fair_cost);
  row("pof_percent", s.pof);
}

int run_experiment(ExperimentArgs& a) {
  resolve_scenario(a.scenario, a.cfg);
  const CycleFinder finder = finder_from(a.finder);
  std::vector<int> jobs_list;
  if (!a.jobs_sweep.empty()) {
    try {
      jobs_list = parse_jobs_range(a.jobs_sweep);
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
  }
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw UsageError("cannot create " + a.out + ": " + ec.message());
  const fs::path dir(a.out);
  const std::string base = slug(a.cfg);

  if (jobs_list.empty()) {
    const std::string stem = base + "_n" + std::to_string(a.cfg.jobs);
    auto records_f = open_out(dir / (stem + "_records.csv"));
    auto dist_f = open_out(dir / (stem + "_distribution.csv"));
    auto timing_f = open_out(dir / (stem + "_timings.csv"));
    const auto records = run_batch(a.cfg, a.runs, a.seed, 0, finder);
    write_records_csv(records_f, records);
    write_distribution_csv(dist_f, representative(records));
    write_timings_csv(timing_f, records);
    print_stats(std::cout, stem, aggregate(records));
    return kOk;
  }

  auto sweep_f = open_out(dir / (base + "_sweep.csv"));
  const auto points = jobs_sweep(a.cfg, jobs_list, a.runs, a.seed, 0, finder);
  write_sweep_csv(sweep_f, a.cfg.name(), points);
  for (const auto& p : points) {
    const std::string stem = base + "_n" + std::to_string(p.jobs);
    auto records_f = open_out(dir / (stem + "_records.csv"));
    auto timing_f = open_out(dir / (stem + "_timings.csv"));
    write_records_csv(records_f, p.records);
    write_timings_csv(timing_f, p.records);
    std::cout << "jobs " << p.jobs << " mean_pof " << detail::fixed(p.mean_pof, 2)
              << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-lexmin fair minimum-cost allocation"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write a seeded random instance");
  add_scenario_options(g, gen.scenario, gen.cfg);
  g->add_option("--jobs", gen.cfg.jobs, "number of jobs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  g->add_option("--seed", gen.cfg.seed, "random seed")->capture_default_str();
  g->add_option("--out", gen.out, "output file (default stdout)");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "solve an instance file");
  s->add_option("--input", solve.input, "instance file")->required();
  s->add_option("--mode", solve.mode, "fair | mincost | fairness-vector")
      ->check(CLI::IsMember({"fair", "mincost", "fairness-vector"}))
      ->capture_default_str();
  s->add_option("--seed,--order-seed", solve.order_seed,
                "permute the company processing order with this seed");
  s->add_flag("--literal", solve.literal,
              "recompute the maximum flow from zero after every capacity step");
  s->add_option("--cycle-finder", solve.finder, "howard | karp")
      ->check(CLI::IsMember({"howard", "karp"}))
      ->capture_default_str();
  s->add_option("--out", solve.out, "output file (default stdout)");
  s->add_flag("-v,--verbose", solve.verbose, "stage statistics on stderr");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "compare the solvers with exhaustive search");
  v->add_option("--input", verify.input, "instance file")->required();
  v->add_option("--limit", verify.limit, "largest search space to enumerate")
      ->capture_default_str();

  ExperimentArgs exp;
  auto* e = app.add_subcommand("experiment", "seeded batch with POF statistics");
  add_scenario_options(e, exp.scenario, exp.cfg);
  e->add_option("--runs", exp.runs, "instances per batch")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  e->add_option("--seed", exp.seed, "seed of the first run; run i uses seed+i")
      ->capture_default_str();
  auto* jobs_opt = e->add_option("--jobs", exp.cfg.jobs, "number of jobs")
                       ->check(CLI::PositiveNumber)
                       ->capture_default_str();
  e->add_option("--jobs-sweep", exp.jobs_sweep, "start:stop:step job counts")
      ->excludes(jobs_opt);
  e->add_option("--out", exp.out, "output directory")->required();
  e->add_option("--cycle-finder", exp.finder, "howard | karp")
      ->check(CLI::IsMember({"howard", "karp"}))
      ->capture_default_str();
  e->footer("Worker threads: FAIRALLOC_WORKERS (default: hardware concurrency).");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return run_generate(gen);
    if (*s) return run_solve(solve);
    if (*v) return run_verify(verify);
    return run_experiment(exp);
  } catch (const UsageError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const ParseError& err) {
    std::cerr << "parse error: " << err.what() << '\n';
    return kParse;
  } catch (const std::invalid_argument& err) {
    std::cerr << "invalid input: " << err.what() << '\n';
    return kParse;
  } catch (const std::logic_error& err) {
    std::cerr << "invariant violation: " << err.what() << '\n';
    return kInvariant;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  }
}
