// Line-oriented text formats for instances and allocations.
//
// Instance grammar (one directive per line, `#` starts a comment line):
//
//   periods <T>                         exactly once, before any job line
//   job <id> <period> [<period> ...]    admissible start periods
//   company <id>                        opens a company block
//   cap <period> <n>                    capacity of the open company at period
//   bid <job-id> <period> <cost>        bid of the open company
//
// `cap` and `bid` lines belong to the most recent `company` line. Bids may
// reference jobs declared later in the file. Duplicate `cap` lines for the
// same period and duplicate `bid` lines for the same (company, job, period)
// are rejected.
#ifndef FAIRALLOC_INSTANCE_IO_HPP
#define FAIRALLOC_INSTANCE_IO_HPP

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fairalloc/model.hpp"

namespace fairalloc {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_number(line) {}
  std::size_t line_number;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view tok, std::size_t line) {
  Int v{};
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace detail

inline Instance parse_instance(std::istream& in) {
  int periods = -1;
  std::vector<Job> jobs;
  std::vector<Company> companies;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto toks = detail::split_ws(raw);
    if (toks.empty() || toks[0].front() == '#') continue;
    const auto kw = toks[0];
    auto arity = [&](std::size_t n, bool at_least = false) {
      if (at_least ? toks.size() < n : toks.size() != n)
        throw ParseError(line, "wrong number of fields for '" +
                                   std::string(kw) + "'");
    };
    if (kw == "periods") {
      arity(2);
      if (periods >= 0) throw ParseError(line, "duplicate 'periods' line");
      periods = detail::parse_int<int>(toks[1], line);
      if (periods < 1) throw ParseError(line, "periods must be positive");
    } else if (kw == "job") {
      arity(3, true);
      if (periods < 0) throw ParseError(line, "'job' before 'periods'");
      Job j;
      j.id = detail::parse_int<JobId>(toks[1], line);
      for (std::size_t i = 2; i < toks.size(); ++i)
        j.admissible_periods.push_back(detail::parse_int<Period>(toks[i], line));
      jobs.push_back(std::move(j));
    } else if (kw == "company") {
      arity(2);
      companies.push_back(Company{detail::parse_int<CompanyId>(toks[1], line), {}, {}});
    } else if (kw == "cap") {
      arity(3);
      if (companies.empty()) throw ParseError(line, "'cap' outside a company");
      auto t = detail::parse_int<Period>(toks[1], line);
      auto n = detail::parse_int<int>(toks[2], line);
      if (!companies.back().capacity_per_period.emplace(t, n).second)
        throw ParseError(line, "duplicate capacity for period " + std::to_string(t));
    } else if (kw == "bid") {
      arity(4);
      if (companies.empty()) throw ParseError(line, "'bid' outside a company");
      auto job = detail::parse_int<JobId>(toks[1], line);
      auto t = detail::parse_int<Period>(toks[2], line);
      auto c = detail::parse_int<Cost>(toks[3], line);
      if (!companies.back().bids.emplace(std::pair{job, t}, c).second)
        throw ParseError(line, "duplicate bid from company " +
                                   std::to_string(companies.back().id) +
                                   " on job " + std::to_string(job) +
                                   " at period " + std::to_string(t));
    } else {
      throw ParseError(line, "unknown directive '" + std::string(kw) + "'");
    }
  }
  if (periods < 0) throw ParseError(line, "missing 'periods' line");
  try {
    return Instance(periods, std::move(jobs), std::move(companies));
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

inline Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

inline Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_instance(in);
}

inline void write_instance(std::ostream& out, const Instance& inst) {
  out << "periods " << inst.periods() << '\n';
  for (const auto& j : inst.jobs()) {
    out << "job " << j.id;
    for (auto t : j.admissible_periods) out << ' ' << t;
    out << '\n';
  }
  for (const auto& c : inst.companies()) {
    out << "company " << c.id << '\n';
    for (const auto& [t, n] : c.capacity_per_period)
      out << "cap " << t << ' ' << n << '\n';
    for (const auto& [key, cost] : c.bids)
      out << "bid " << key.first << ' ' << key.second << ' ' << cost << '\n';
  }
}

inline std::string to_text(const Instance& inst) {
  std::ostringstream s;
  write_instance(s, inst);
  return s.str();
}

/// `assign <job> <company> <period> <cost>` per assigned job (ascending job
/// id), then `total_cost` and `fairness_vector` summary lines.
inline void write_allocation(std::ostream& out, const Instance& inst,
                             const Allocation& alloc) {
  for (const auto& [job, a] : alloc.assignments)
    out << "assign " << job << ' ' << a.company << ' ' << a.period << ' '
        << a.cost << '\n';
  out << "assigned_jobs " << alloc.assigned_jobs() << '\n';
  out << "total_cost " << alloc.total_cost << '\n';
  out << "fairness_vector " << sorted_counts(alloc, inst).to_string() << '\n';
}

}  // namespace fairalloc

#endif  // FAIRALLOC_INSTANCE_IO_HPP
