#ifndef CONFSCHED_BNB_HPP
#define CONFSCHED_BNB_HPP

// Exact depth-first branch-and-bound over machine assignments.
//
// Jobs are decided one at a time in WSPT order: each goes to one machine or
// is tardy. A node is feasible when its on-time jobs admit a timetable that
// keeps each machine sequential, every job within the deadline and
// conflicting jobs disjoint in time. The node keeps a witness timetable;
// adding a job first tries to slot it into the witness and falls back to an
// exact timetable search only when that fails.
//
// Bound at a node: placed weight plus the best 0-1 knapsack over the
// undecided jobs with capacity equal to the total residual machine time.
// The knapsack values come from one table built per solve. Instances too
// large for the table use the fractional knapsack instead.
//
// Empty machines are interchangeable, and so are machines with equal load
// whose jobs have no conflicts outside their own machine except tardy jobs;
// only the first of each such group is branched on.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "confsched/core.hpp"
#include "confsched/heuristics.hpp"

namespace confsched {

enum class BnbStatus { optimal, bound_only, infeasible_model };

inline std::string status_name(BnbStatus s) {
  switch (s) {
    case BnbStatus::optimal: return "optimal";
    case BnbStatus::bound_only: return "bound-only";
    case BnbStatus::infeasible_model: return "infeasible-model";
  }
  return "unknown";
}

struct BnbLimits {
  /// Seconds; non-positive means unlimited.
  double time_limit = 0.0;
  /// Nodes; 0 means unlimited.
  std::uint64_t node_limit = 0;
};

struct BnbResult {
  std::optional<Schedule> incumbent;
  Weight value{0};
  /// Proven upper bound on the maximum on-time weight.
  Weight upper_bound{0};
  BnbStatus status = BnbStatus::optimal;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

namespace detail {

/// Exact timetable search for on-time jobs with fixed machines. Jobs are
/// started in non-decreasing start order (ties by index), each at its
/// earliest feasible start; every feasible timetable left-shifts into one
/// such sequence.
class TimetableSearch {
 public:
  TimetableSearch(const Instance& inst, const std::vector<int>& machine_of, std::vector<Time>& start)
      : inst_(inst), machine_of_(machine_of), start_(start) {}

  bool run() {
    const int m = inst_.num_machines();
    jobs_.clear();
    for (JobId j = 0; j < inst_.num_jobs(); ++j)
      if (machine_of_[j] >= 0) jobs_.push_back(j);
    free_.assign(m, 0);
    remaining_.assign(m, 0);
    for (JobId j : jobs_) {
      remaining_[machine_of_[j]] += inst_.processing(j);
      start_[j] = -1;
    }
    return search(0, -1, jobs_.size());
  }

 private:
  Time earliest(JobId j, Time lower) const {
    const Time p = inst_.processing(j);
    Time t = std::max(lower, free_[machine_of_[j]]);
    for (bool moved = true; moved;) {
      moved = false;
      for (JobId g : inst_.conflicting(j)) {
        if (machine_of_[g] < 0 || start_[g] < 0) continue;
        const Time end = start_[g] + inst_.processing(g);
        if (t < end && start_[g] < t + p) {
          t = end;
          moved = true;
        }
      }
    }
    return t;
  }

  bool search(Time last_start, JobId last_job, std::size_t left) {
    if (left == 0) return true;
    const Time d = inst_.deadline();
    for (std::size_t l = 0; l < free_.size(); ++l)
      if (remaining_[l] > 0 && std::max(free_[l], last_start) + remaining_[l] > d) return false;
    for (JobId j : jobs_) {
      if (start_[j] >= 0) continue;
      const Time t = earliest(j, last_start);
      if (t + inst_.processing(j) > d) continue;
      if (t == last_start && j < last_job) continue;
      const int l = machine_of_[j];
      const Time saved = free_[l];
      start_[j] = t;
      free_[l] = t + inst_.processing(j);
      remaining_[l] -= inst_.processing(j);
      if (search(t, j, left - 1)) return true;
      remaining_[l] += inst_.processing(j);
      free_[l] = saved;
      start_[j] = -1;
    }
    return false;
  }

  const Instance& inst_;
  const std::vector<int>& machine_of_;
  std::vector<Time>& start_;
  std::vector<JobId> jobs_;
  std::vector<Time> free_;
  std::vector<Time> remaining_;
};

class BranchAndBound {
 public:
  /// Largest knapsack table, in entries, built per solve.
  static constexpr std::size_t kMaxTable = std::size_t{1} << 25;

  BranchAndBound(const Instance& inst, BnbLimits limits)
      : inst_(inst),
        limits_(limits),
        n_(inst.num_jobs()),
        m_(inst.num_machines()),
        d_(inst.deadline()),
        machine_of_(n_, -1),
        decided_(n_, 0),
        start_(n_, -1),
        load_(m_, 0),
        on_machine_(m_) {
    std::int64_t den = 1;
    for (JobId j = 0; j < n_; ++j) den = std::lcm(den, inst.weight(j).denominator());
    granularity_ = Weight(1, den);
    for (JobId j : wspt_order(inst))
      if (inst.processing(j) <= d_) order_.push_back(j);
    scaled_.resize(n_);
    for (JobId j = 0; j < n_; ++j) scaled_[j] = (inst.weight(j) * den).numerator();
    build_knapsack_table();
  }

  BnbResult run(const std::optional<Schedule>& warm_start) {
    t0_ = std::chrono::steady_clock::now();
    incumbent_ = wspt_list_schedule(inst_);
    incumbent_value_ = on_time_weight(inst_, incumbent_);
    if (warm_start && !validate_schedule(inst_, *warm_start)) {
      const Weight f = on_time_weight(inst_, *warm_start);
      if (f > incumbent_value_) {
        incumbent_ = *warm_start;
        incumbent_value_ = f;
      }
    }
    open_bound_ = incumbent_value_;

    search(0, 0, bound(0));

    BnbResult r;
    r.incumbent = incumbent_;
    r.value = incumbent_value_;
    r.nodes = nodes_;
    r.upper_bound = stopped_ ? std::max(open_bound_, incumbent_value_) : incumbent_value_;
    r.status = r.upper_bound == r.value ? BnbStatus::optimal : BnbStatus::bound_only;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    return r;
  }

 private:
  void build_knapsack_table() {
    const std::size_t k = order_.size();
    const auto cap = static_cast<std::size_t>(std::max<Time>(0, d_)) * static_cast<std::size_t>(m_);
    if (d_ > std::numeric_limits<Time>::max() / m_ || (k + 1) * (cap + 1) > kMaxTable) return;
    capacity_ = cap;
    table_.assign((k + 1) * (cap + 1), 0);
    // table_[i][c]: best scaled weight from order_[i..] within capacity c.
    for (std::size_t i = k; i-- > 0;) {
      const JobId j = order_[i];
      const auto p = static_cast<std::size_t>(inst_.processing(j));
      const std::int64_t* next = &table_[(i + 1) * (cap + 1)];
      std::int64_t* row = &table_[i * (cap + 1)];
      for (std::size_t c = 0; c <= cap; ++c) {
        row[c] = next[c];
        if (c >= p) row[c] = std::max(row[c], next[c - p] + scaled_[j]);
      }
    }
  }

  /// Upper bound on the weight the undecided jobs order_[depth..] can add.
  Weight bound(std::size_t depth) const {
    Time min_p = std::numeric_limits<Time>::max();
    for (std::size_t i = depth; i < order_.size(); ++i) min_p = std::min(min_p, inst_.processing(order_[i]));
    Time residual = 0;
    for (int l = 0; l < m_; ++l)
      if (d_ - load_[l] >= min_p) residual += d_ - load_[l];
    if (!table_.empty())
      return Weight(table_[depth * (capacity_ + 1) + static_cast<std::size_t>(residual)]) * granularity_;
    Weight b(0);
    for (std::size_t i = depth; i < order_.size() && residual > 0; ++i) {
      const JobId j = order_[i];
      const Time p = inst_.processing(j);
      if (p <= residual) {
        b += inst_.weight(j);
        residual -= p;
      } else {
        b += inst_.weight(j) * Weight(residual, p);
        residual = 0;
      }
    }
    // Objective values are multiples of the weight granularity.
    const Weight steps = b / granularity_;
    return Weight(steps.numerator() / steps.denominator()) * granularity_;
  }

  bool out_of_budget() {
    if (stopped_) return true;
    if (limits_.node_limit > 0 && nodes_ >= limits_.node_limit) stopped_ = true;
    if (limits_.time_limit > 0 && (nodes_ & 255) == 0) {
      const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
      if (elapsed >= limits_.time_limit) stopped_ = true;
    }
    return stopped_;
  }

  void record_incumbent(const Weight& value) {
    if (value <= incumbent_value_) return;
    incumbent_value_ = value;
    Schedule s;
    s.machines.resize(m_);
    for (int l = 0; l < m_; ++l) {
      for (JobId j : on_machine_[l]) s.machines[l].push_back({j, start_[j]});
      std::sort(s.machines[l].begin(), s.machines[l].end(),
                [](const Placement& a, const Placement& b) { return a.start < b.start; });
    }
    for (JobId j = 0; j < n_; ++j)
      if (machine_of_[j] < 0) s.tardy.push_back(j);
    incumbent_ = std::move(s);
  }

  bool overlaps_conflict(JobId j, int l, Time t) const {
    const Time end = t + inst_.processing(j);
    for (JobId g : inst_.conflicting(j)) {
      const int lg = machine_of_[g];
      if (lg < 0 || lg == l) continue;
      if (t < start_[g] + inst_.processing(g) && start_[g] < end) return true;
    }
    return false;
  }

  /// Earliest idle gap on machine l for j that avoids conflicting jobs, or -1.
  Time slot_into_witness(JobId j, int l) const {
    const Time p = inst_.processing(j);
    std::vector<std::pair<Time, Time>> busy;
    for (JobId g : on_machine_[l]) busy.emplace_back(start_[g], start_[g] + inst_.processing(g));
    std::vector<Time> candidates = {0};
    for (auto [s, e] : busy) candidates.push_back(e);
    for (JobId g : inst_.conflicting(j))
      if (machine_of_[g] >= 0 && machine_of_[g] != l) candidates.push_back(start_[g] + inst_.processing(g));
    std::sort(candidates.begin(), candidates.end());
    for (Time t : candidates) {
      if (t + p > d_) break;
      bool clear = true;
      for (auto [s, e] : busy)
        if (t < e && s < t + p) {
          clear = false;
          break;
        }
      if (clear && !overlaps_conflict(j, l, t)) return t;
    }
    return -1;
  }

  /// Adds j to machine l if the on-time set stays schedulable.
  bool try_place(JobId j, int l) {
    if (load_[l] + inst_.processing(j) > d_) return false;
    machine_of_[j] = l;
    on_machine_[l].push_back(j);
    load_[l] += inst_.processing(j);
    const Time t = slot_into_witness(j, l);
    if (t >= 0) {
      start_[j] = t;
      return true;
    }
    const std::vector<Time> saved = start_;
    if (TimetableSearch(inst_, machine_of_, start_).run()) return true;
    start_ = saved;
    unplace(j, l);
    return false;
  }

  void unplace(JobId j, int l) {
    machine_of_[j] = -1;
    start_[j] = -1;
    on_machine_[l].pop_back();
    load_[l] -= inst_.processing(j);
  }

  /// Machine l's jobs conflict only with jobs on l or jobs already tardy.
  bool isolated(int l) const {
    for (JobId j : on_machine_[l])
      for (JobId g : inst_.conflicting(j))
        if (machine_of_[g] != l && !(decided_[g] && machine_of_[g] < 0)) return false;
    return true;
  }

  /// Machines worth branching on for the next job, by index.
  std::vector<int> distinct_machines() const {
    std::vector<int> out;
    std::vector<char> iso(m_);
    for (int l = 0; l < m_; ++l) {
      iso[l] = isolated(l);
      bool duplicate = false;
      for (int k : out)
        if (iso[k] && iso[l] && load_[k] == load_[l]) {
          duplicate = true;
          break;
        }
      if (!duplicate) out.push_back(l);
    }
    return out;
  }

  void search(std::size_t depth, const Weight& placed_weight, const Weight& rest_bound) {
    ++nodes_;
    record_incumbent(placed_weight);
    const Weight node_bound = placed_weight + rest_bound;
    if (node_bound <= incumbent_value_ || depth == order_.size()) return;
    if (out_of_budget()) {
      open_bound_ = std::max(open_bound_, node_bound);
      return;
    }
    const JobId j = order_[depth];
    const std::vector<int> machines = distinct_machines();
    decided_[j] = 1;
    auto descend = [&](const Weight& w) {
      const Weight child_rest = std::min(bound(depth + 1), node_bound - w);
      if (w + child_rest > incumbent_value_) {
        search(depth + 1, w, child_rest);
      } else {
        ++nodes_;
        record_incumbent(w);
      }
    };
    for (int l : machines) {
      if (stopped_ || node_bound <= incumbent_value_) break;
      if (!try_place(j, l)) continue;
      descend(placed_weight + inst_.weight(j));
      unplace(j, l);
    }
    if (!stopped_ && node_bound > incumbent_value_) descend(placed_weight);
    decided_[j] = 0;
    if (stopped_) open_bound_ = std::max(open_bound_, node_bound);
  }

  const Instance& inst_;
  BnbLimits limits_;
  int n_;
  int m_;
  Time d_;
  std::vector<JobId> order_;
  std::vector<std::int64_t> scaled_;
  std::vector<int> machine_of_;
  std::vector<char> decided_;
  std::vector<Time> start_;
  std::vector<Time> load_;
  std::vector<std::vector<JobId>> on_machine_;
  std::size_t capacity_ = 0;
  std::vector<std::int64_t> table_;
  Weight granularity_{1};
  Schedule incumbent_;
  Weight incumbent_value_{0};
  Weight open_bound_{0};
  std::uint64_t nodes_ = 0;
  bool stopped_ = false;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace detail

/// Exact maximum on-time weight within the given limits. When a limit stops
/// the search the result carries the incumbent and a proven upper bound.
/// warm_start, if valid, seeds the incumbent.
inline BnbResult solve_bnb(const Instance& inst, BnbLimits limits = {},
                           const std::optional<Schedule>& warm_start = std::nullopt) {
  return detail::BranchAndBound(inst, limits).run(warm_start);
}

}  // namespace confsched

#endif  // CONFSCHED_BNB_HPP
