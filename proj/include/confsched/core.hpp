#ifndef CONFSCHED_CORE_HPP
#define CONFSCHED_CORE_HPP

// Problem and solution data model: jobs on identical parallel machines with a
// common deadline and a conflict graph, plus schedule validation and the
// total on-time weight objective.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

// Boost 1.74 mixed rational/integer equality recurses forever under C++20
// rewritten comparisons. Exact non-template overloads take precedence.
namespace boost {
inline constexpr bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline constexpr bool operator==(const rational<std::int64_t>& a, int b) {
  return a == static_cast<std::int64_t>(b);
}
}  // namespace boost

namespace confsched {

/// Exact job weight. Objective comparisons in search never round.
using Weight = boost::rational<std::int64_t>;
/// Integral time unit.
using Time = std::int64_t;
/// Zero-based job index. Files and CLI output use 1-based numbering.
using JobId = int;

/// A method's precondition does not hold for the given input.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input refers to jobs, machines or nodes that do not exist, or repeats them.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_weight(const Weight& w) {
  std::string s = std::to_string(w.numerator());
  if (w.denominator() != 1) s += "/" + std::to_string(w.denominator());
  return s;
}

/// Parses "7" or "7/3". Throws std::invalid_argument on anything else.
inline Weight parse_weight(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw std::invalid_argument("empty number in weight '" + std::string(text) + "'");
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(std::string(s), &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad weight '" + std::string(text) + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("bad weight '" + std::string(text) + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Weight(parse_int(text));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in weight '" + std::string(text) + "'");
  return Weight(parse_int(text.substr(0, slash)), den);
}

inline double to_double(const Weight& w) {
  return boost::rational_cast<double>(w);
}

class Instance {
 public:
  Instance(int machines, Time deadline, std::vector<Time> processing,
           std::vector<Weight> weights,
           std::vector<std::pair<JobId, JobId>> conflicts)
      : m_(machines),
        deadline_(deadline),
        p_(std::move(processing)),
        w_(std::move(weights)) {
    const int n = static_cast<int>(p_.size());
    if (n < 1) throw PreconditionError("instance needs at least one job");
    if (m_ < 2) throw PreconditionError("instance needs at least two machines");
    if (deadline_ < 0) throw PreconditionError("deadline must be non-negative");
    if (w_.size() != p_.size())
      throw PreconditionError("processing time and weight counts differ");
    for (int j = 0; j < n; ++j) {
      if (p_[j] < 1)
        throw PreconditionError("processing time of job " + std::to_string(j + 1) + " must be >= 1");
      if (w_[j] <= 0)
        throw PreconditionError("weight of job " + std::to_string(j + 1) + " must be > 0");
    }
    adjacent_.assign(static_cast<std::size_t>(n) * n, 0);
    neighbours_.assign(n, {});
    for (auto [a, b] : conflicts) {
      if (a < 0 || b < 0 || a >= n || b >= n)
        throw PreconditionError("conflict references unknown job");
      if (a == b)
        throw PreconditionError("conflict self-loop on job " + std::to_string(a + 1));
      if (a > b) std::swap(a, b);
      if (adjacent_[index(a, b)])
        throw PreconditionError("duplicate conflict {" + std::to_string(a + 1) + "," +
                                std::to_string(b + 1) + "}");
      adjacent_[index(a, b)] = adjacent_[index(b, a)] = 1;
      conflicts_.emplace_back(a, b);
      neighbours_[a].push_back(b);
      neighbours_[b].push_back(a);
    }
    std::sort(conflicts_.begin(), conflicts_.end());
    for (auto& nb : neighbours_) std::sort(nb.begin(), nb.end());
  }

  int num_jobs() const { return static_cast<int>(p_.size()); }
  int num_machines() const { return m_; }
  Time deadline() const { return deadline_; }
  Time processing(JobId j) const { return p_[j]; }
  const Weight& weight(JobId j) const { return w_[j]; }
  std::span<const Time> processing_times() const { return p_; }
  std::span<const Weight> weights() const { return w_; }

  /// Conflict edges as (a, b) with a < b, sorted.
  const std::vector<std::pair<JobId, JobId>>& conflicts() const { return conflicts_; }
  int num_conflicts() const { return static_cast<int>(conflicts_.size()); }
  bool in_conflict(JobId a, JobId b) const { return adjacent_[index(a, b)] != 0; }
  const std::vector<JobId>& conflicting(JobId j) const { return neighbours_[j]; }

  bool is_uet() const {
    return std::all_of(p_.begin(), p_.end(), [](Time p) { return p == 1; });
  }
  Weight total_weight() const {
    return std::accumulate(w_.begin(), w_.end(), Weight(0));
  }
  Time min_processing() const { return *std::min_element(p_.begin(), p_.end()); }

  /// Same jobs and conflicts on a different number of machines.
  Instance with_machines(int machines) const {
    return Instance(machines, deadline_, p_, w_, conflicts_);
  }

  bool operator==(const Instance& o) const {
    return m_ == o.m_ && deadline_ == o.deadline_ && p_ == o.p_ && w_ == o.w_ &&
           conflicts_ == o.conflicts_;
  }

 private:
  std::size_t index(JobId a, JobId b) const {
    return static_cast<std::size_t>(a) * p_.size() + static_cast<std::size_t>(b);
  }

  int m_;
  Time deadline_;
  std::vector<Time> p_;
  std::vector<Weight> w_;
  std::vector<std::pair<JobId, JobId>> conflicts_;
  std::vector<char> adjacent_;
  std::vector<std::vector<JobId>> neighbours_;
};

struct Placement {
  JobId job;
  Time start;
  bool operator==(const Placement&) const = default;
};

/// Per-machine job sequences with start times; unscheduled jobs are tardy and
/// carry no start time.
struct Schedule {
  std::vector<std::vector<Placement>> machines;
  std::vector<JobId> tardy;

  bool operator==(const Schedule&) const = default;

  static Schedule all_tardy(const Instance& inst) {
    Schedule s;
    s.machines.resize(inst.num_machines());
    for (JobId j = 0; j < inst.num_jobs(); ++j) s.tardy.push_back(j);
    return s;
  }

  /// Jobs on some machine, ascending.
  std::vector<JobId> on_time_jobs() const {
    std::vector<JobId> out;
    for (const auto& seq : machines)
      for (const auto& pl : seq) out.push_back(pl.job);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t num_on_time() const {
    std::size_t c = 0;
    for (const auto& seq : machines) c += seq.size();
    return c;
  }
};

/// First violated schedule invariant.
struct Violation {
  std::string kind;
  std::vector<JobId> jobs;
  std::optional<int> machine;
  std::string message;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(Violation v)
      : std::runtime_error(v.kind + ": " + v.message), violation_(std::move(v)) {}
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

namespace detail {

inline std::string job_name(JobId j) { return std::to_string(j + 1); }

inline bool intervals_overlap(Time s1, Time p1, Time s2, Time p2) {
  return s1 < s2 + p2 && s2 < s1 + p1;
}

}  // namespace detail

/// Checks every schedule invariant against the instance. Returns the first
/// violation found, or nullopt when the schedule is valid.
///
/// Kinds: duplicate-job, missing-job, negative-start, deadline, machine-order,
/// machine-overlap, conflict-overlap. Unknown job indices and a machine count
/// that differs from the instance throw StructuralError instead.
inline std::optional<Violation> validate_schedule(const Instance& inst, const Schedule& s) {
  const int n = inst.num_jobs();
  if (static_cast<int>(s.machines.size()) != inst.num_machines())
    throw StructuralError("schedule has " + std::to_string(s.machines.size()) +
                          " machines, instance has " + std::to_string(inst.num_machines()));
  auto check_range = [&](JobId j) {
    if (j < 0 || j >= n)
      throw StructuralError("schedule references unknown job " + std::to_string(j + 1));
  };

  std::vector<int> seen(n, 0);
  std::vector<Time> start(n, -1);
  std::vector<int> machine_of(n, -1);
  for (int l = 0; l < static_cast<int>(s.machines.size()); ++l) {
    for (const auto& pl : s.machines[l]) {
      check_range(pl.job);
      if (seen[pl.job]++)
        return Violation{"duplicate-job", {pl.job}, l, "job " + detail::job_name(pl.job) + " appears more than once"};
      start[pl.job] = pl.start;
      machine_of[pl.job] = l;
    }
  }
  for (JobId j : s.tardy) {
    check_range(j);
    if (seen[j]++)
      return Violation{"duplicate-job", {j}, std::nullopt, "job " + detail::job_name(j) + " appears more than once"};
  }
  for (JobId j = 0; j < n; ++j)
    if (!seen[j])
      return Violation{"missing-job", {j}, std::nullopt, "job " + detail::job_name(j) + " is neither scheduled nor tardy"};

  for (int l = 0; l < static_cast<int>(s.machines.size()); ++l) {
    const auto& seq = s.machines[l];
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto& pl = seq[i];
      if (pl.start < 0)
        return Violation{"negative-start", {pl.job}, l, "job " + detail::job_name(pl.job) + " starts before 0"};
      if (pl.start + inst.processing(pl.job) > inst.deadline())
        return Violation{"deadline", {pl.job}, l,
                         "job " + detail::job_name(pl.job) + " completes at " +
                             std::to_string(pl.start + inst.processing(pl.job)) + " after deadline " +
                             std::to_string(inst.deadline())};
      if (i == 0) continue;
      const auto& prev = seq[i - 1];
      if (pl.start < prev.start)
        return Violation{"machine-order", {prev.job, pl.job}, l,
                         "jobs " + detail::job_name(prev.job) + " and " + detail::job_name(pl.job) +
                             " are not listed in increasing start order"};
      if (prev.start + inst.processing(prev.job) > pl.start)
        return Violation{"machine-overlap", {prev.job, pl.job}, l,
                         "jobs " + detail::job_name(prev.job) + " and " + detail::job_name(pl.job) +
                             " overlap on machine " + std::to_string(l + 1)};
    }
  }

  for (auto [a, b] : inst.conflicts()) {
    if (machine_of[a] < 0 || machine_of[b] < 0) continue;
    if (detail::intervals_overlap(start[a], inst.processing(a), start[b], inst.processing(b)))
      return Violation{"conflict-overlap", {a, b}, std::nullopt,
                       "conflicting jobs " + detail::job_name(a) + " and " + detail::job_name(b) +
                           " overlap in time"};
  }
  return std::nullopt;
}

/// Total weight of scheduled jobs, without validation. Hot path for search.
inline Weight on_time_weight(const Instance& inst, const Schedule& s) {
  Weight f(0);
  for (const auto& seq : s.machines)
    for (const auto& pl : seq) f += inst.weight(pl.job);
  return f;
}

/// Total weight of on-time jobs. Throws ValidationError for an invalid schedule.
inline Weight objective_value(const Instance& inst, const Schedule& s) {
  if (auto v = validate_schedule(inst, s)) throw ValidationError(std::move(*v));
  return on_time_weight(inst, s);
}

/// Occupancy of the unit slots [t-1, t], t = 1..D, of a UET schedule.
struct SlotProfile {
  /// Number of jobs completing at t, indexed by t-1.
  std::vector<int> count;
  /// Weights of those jobs, non-increasing, indexed by t-1.
  std::vector<std::vector<Weight>> slot_weights;
  /// Third-largest weight of slot t, or 0 when at most two jobs share it.
  std::vector<Weight> third;
};

inline SlotProfile slot_profile(const Instance& inst, const Schedule& s) {
  if (!inst.is_uet()) throw PreconditionError("slot profile needs unit processing times");
  const auto d = static_cast<std::size_t>(inst.deadline());
  SlotProfile prof;
  prof.count.assign(d, 0);
  prof.slot_weights.assign(d, {});
  prof.third.assign(d, Weight(0));
  for (const auto& seq : s.machines) {
    for (const auto& pl : seq) {
      const Time completion = pl.start + 1;
      if (completion < 1 || completion > inst.deadline())
        throw PreconditionError("job " + detail::job_name(pl.job) + " is outside slots 1..D");
      const auto t = static_cast<std::size_t>(completion - 1);
      ++prof.count[t];
      prof.slot_weights[t].push_back(inst.weight(pl.job));
    }
  }
  for (std::size_t t = 0; t < d; ++t) {
    auto& ws = prof.slot_weights[t];
    std::sort(ws.begin(), ws.end(), [](const Weight& a, const Weight& b) { return a > b; });
    if (prof.count[t] > 2) prof.third[t] = ws[2];
  }
  return prof;
}

/// Jobs by non-decreasing p_j / w_j, ties by index.
inline std::vector<JobId> wspt_order(const Instance& inst) {
  std::vector<JobId> order(inst.num_jobs());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](JobId a, JobId b) {
    return Weight(inst.processing(a)) / inst.weight(a) < Weight(inst.processing(b)) / inst.weight(b);
  });
  return order;
}

}  // namespace confsched

#endif  // CONFSCHED_CORE_HPP
