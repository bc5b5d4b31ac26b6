#ifndef CONFSCHED_HEURISTICS_HPP
#define CONFSCHED_HEURISTICS_HPP

// List scheduling, variable neighbourhood descent and its iterated variant for
// arbitrary processing times.
//
// Search works on machine sequences. After every change start times are
// rebuilt by recompute_start_times, which also evicts jobs that can no longer
// finish by the deadline and refills machines from the tardy list.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "confsched/core.hpp"
#include "confsched/rng.hpp"

namespace confsched {

enum class Neighborhood {
  swap_on_machine = 1,    // N1
  move_on_machine = 2,    // N2
  swap_across = 3,        // N3
  move_across = 4,        // N4
  replace_with_tardy = 5, // N5
  insert_tardy = 6,       // N6
};

inline constexpr std::array<Neighborhood, 6> kDefaultNeighborhoodOrder = {
    Neighborhood::swap_on_machine, Neighborhood::move_on_machine, Neighborhood::swap_across,
    Neighborhood::move_across,     Neighborhood::replace_with_tardy, Neighborhood::insert_tardy};

struct SearchConfig {
  std::array<Neighborhood, 6> order = kDefaultNeighborhoodOrder;
  /// Random moves per shake; 0 means ceil(shake_fraction * n).
  int shake_moves = 0;
  double shake_fraction = 0.05;
  /// Number of VNS runs in the iterated search, the first included.
  int restarts = 10;
  std::uint64_t seed = 1;

  int resolved_shake_moves(int n) const {
    if (shake_moves > 0) return shake_moves;
    const int k = static_cast<int>(std::ceil(shake_fraction * n - 1e-9));
    return std::max(1, k);
  }
};

/// Job order on each machine.
using Sequences = std::vector<std::vector<JobId>>;

inline Sequences sequences_of(const Schedule& s) {
  Sequences seqs(s.machines.size());
  for (std::size_t l = 0; l < s.machines.size(); ++l)
    for (const auto& pl : s.machines[l]) seqs[l].push_back(pl.job);
  return seqs;
}

namespace detail {

/// Partial schedule under construction: placed start times and machine
/// completion times.
class Timeline {
 public:
  explicit Timeline(const Instance& inst)
      : inst_(inst), start_(inst.num_jobs(), -1), free_(inst.num_machines(), 0) {
    sched_.machines.resize(inst.num_machines());
  }

  bool placed(JobId j) const { return start_[j] >= 0; }
  Time machine_free(int l) const { return free_[l]; }

  /// Earliest t >= lower at which j overlaps no placed conflicting job.
  Time earliest_start(JobId j, Time lower) const {
    const Time p = inst_.processing(j);
    Time t = lower;
    for (bool moved = true; moved;) {
      moved = false;
      for (JobId g : inst_.conflicting(j)) {
        if (start_[g] < 0) continue;
        const Time end = start_[g] + inst_.processing(g);
        if (t < end && start_[g] < t + p) {
          t = end;
          moved = true;
        }
      }
    }
    return t;
  }

  void place(JobId j, int l, Time t) {
    start_[j] = t;
    free_[l] = t + inst_.processing(j);
    sched_.machines[l].push_back({j, t});
  }

  /// Tardy jobs in WSPT order go to the machine with the earliest completion
  /// time (ties by index) on which they still finish by the deadline.
  void refill(const std::vector<JobId>& wspt) {
    const int m = inst_.num_machines();
    std::vector<int> machines(m);
    for (JobId j : wspt) {
      if (placed(j)) continue;
      std::iota(machines.begin(), machines.end(), 0);
      std::stable_sort(machines.begin(), machines.end(),
                       [&](int a, int b) { return free_[a] < free_[b]; });
      for (int l : machines) {
        const Time t = earliest_start(j, free_[l]);
        if (t + inst_.processing(j) <= inst_.deadline()) {
          place(j, l, t);
          break;
        }
      }
    }
  }

  Schedule finish() && {
    for (JobId j = 0; j < inst_.num_jobs(); ++j)
      if (!placed(j)) sched_.tardy.push_back(j);
    return std::move(sched_);
  }

 private:
  const Instance& inst_;
  std::vector<Time> start_;
  std::vector<Time> free_;
  Schedule sched_;
};

}  // namespace detail

/// List scheduling in WSPT order: each job goes to the machine that finishes
/// first, at the earliest start clear of conflicting jobs, or to the tardy
/// list if it would complete after the deadline.
inline Schedule wspt_list_schedule(const Instance& inst) {
  detail::Timeline tl(inst);
  const int m = inst.num_machines();
  for (JobId j : wspt_order(inst)) {
    int l = 0;
    for (int k = 1; k < m; ++k)
      if (tl.machine_free(k) < tl.machine_free(l)) l = k;
    const Time t = tl.earliest_start(j, tl.machine_free(l));
    if (t + inst.processing(j) <= inst.deadline()) tl.place(j, l, t);
  }
  return std::move(tl).finish();
}

/// Rebuilds start times for the given machine sequences. Repeatedly places,
/// among the first unplaced job of every machine, the one with the smallest
/// feasible start (ties by machine index); a job that would finish after the
/// deadline is dropped to the tardy list. Tardy jobs are then offered to the
/// machines once more in WSPT order.
inline Schedule recompute_start_times(const Instance& inst, const Sequences& seqs,
                                      const std::vector<JobId>& wspt) {
  const int m = inst.num_machines();
  if (static_cast<int>(seqs.size()) != m)
    throw StructuralError("assignment has " + std::to_string(seqs.size()) + " machines, expected " +
                          std::to_string(m));
  std::vector<char> seen(inst.num_jobs(), 0);
  for (const auto& seq : seqs)
    for (JobId j : seq) {
      if (j < 0 || j >= inst.num_jobs()) throw StructuralError("assignment references unknown job");
      if (seen[j]++) throw StructuralError("job " + std::to_string(j + 1) + " assigned twice");
    }

  detail::Timeline tl(inst);
  std::vector<std::size_t> front(m, 0);
  while (true) {
    int best_l = -1;
    Time best_t = 0;
    for (int l = 0; l < m; ++l) {
      while (front[l] < seqs[l].size()) {
        const JobId j = seqs[l][front[l]];
        const Time t = tl.earliest_start(j, tl.machine_free(l));
        if (t + inst.processing(j) > inst.deadline()) {
          ++front[l];  // evicted
          continue;
        }
        if (best_l < 0 || t < best_t) {
          best_l = l;
          best_t = t;
        }
        break;
      }
    }
    if (best_l < 0) break;
    tl.place(seqs[best_l][front[best_l]], best_l, best_t);
    ++front[best_l];
  }
  tl.refill(wspt);
  return std::move(tl).finish();
}

inline Schedule recompute_start_times(const Instance& inst, const Sequences& seqs) {
  return recompute_start_times(inst, seqs, wspt_order(inst));
}

/// Calls visit(sequences) for every neighbour of s in the given
/// neighbourhood, in enumeration order (machines ascending, then positions
/// ascending). Returns the neighbourhood size.
template <class Visit>
std::size_t for_each_neighbor(Neighborhood kind, const Schedule& s, Visit&& visit) {
  const Sequences base = sequences_of(s);
  const int m = static_cast<int>(base.size());
  std::size_t count = 0;
  auto emit = [&](const Sequences& seqs) {
    ++count;
    visit(seqs);
  };
  Sequences work = base;
  switch (kind) {
    case Neighborhood::swap_on_machine:
      for (int l = 0; l < m; ++l)
        for (std::size_t i = 0; i < base[l].size(); ++i)
          for (std::size_t k = i + 1; k < base[l].size(); ++k) {
            std::swap(work[l][i], work[l][k]);
            emit(work);
            std::swap(work[l][i], work[l][k]);
          }
      break;
    case Neighborhood::move_on_machine:
      for (int l = 0; l < m; ++l)
        for (std::size_t i = 0; i < base[l].size(); ++i)
          for (std::size_t k = 0; k < base[l].size(); ++k) {
            if (k == i) continue;
            auto& seq = work[l];
            const JobId j = seq[i];
            seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(i));
            seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(k), j);
            emit(work);
            seq = base[l];
          }
      break;
    case Neighborhood::swap_across:
      for (int l1 = 0; l1 < m; ++l1)
        for (int l2 = l1 + 1; l2 < m; ++l2)
          for (std::size_t i = 0; i < base[l1].size(); ++i)
            for (std::size_t k = 0; k < base[l2].size(); ++k) {
              std::swap(work[l1][i], work[l2][k]);
              emit(work);
              std::swap(work[l1][i], work[l2][k]);
            }
      break;
    case Neighborhood::move_across:
      for (int l1 = 0; l1 < m; ++l1)
        for (std::size_t i = 0; i < base[l1].size(); ++i)
          for (int l2 = 0; l2 < m; ++l2) {
            if (l2 == l1) continue;
            for (std::size_t k = 0; k <= base[l2].size(); ++k) {
              const JobId j = base[l1][i];
              work[l1].erase(work[l1].begin() + static_cast<std::ptrdiff_t>(i));
              work[l2].insert(work[l2].begin() + static_cast<std::ptrdiff_t>(k), j);
              emit(work);
              work[l1] = base[l1];
              work[l2] = base[l2];
            }
          }
      break;
    case Neighborhood::replace_with_tardy:
      for (int l = 0; l < m; ++l)
        for (std::size_t i = 0; i < base[l].size(); ++i)
          for (JobId t : s.tardy) {
            work[l][i] = t;
            emit(work);
            work[l][i] = base[l][i];
          }
      break;
    case Neighborhood::insert_tardy:
      for (JobId t : s.tardy)
        for (int l = 0; l < m; ++l)
          for (std::size_t k = 0; k <= base[l].size(); ++k) {
            work[l].insert(work[l].begin() + static_cast<std::ptrdiff_t>(k), t);
            emit(work);
            work[l] = base[l];
          }
      break;
  }
  return count;
}

inline std::size_t neighborhood_size(Neighborhood kind, const Schedule& s) {
  return for_each_neighbor(kind, s, [](const Sequences&) {});
}

using ScheduleObserver = std::function<void(const Schedule&)>;

/// Variable neighbourhood descent from a valid schedule. Each step takes the
/// best strictly improving neighbour of the current neighbourhood (first one
/// on ties) and restarts from the first neighbourhood; otherwise it moves on.
/// Stops when the last neighbourhood brings no improvement.
inline Schedule vns(const Instance& inst, const Schedule& start, const SearchConfig& cfg,
                    const ScheduleObserver& on_accept = {}) {
  const auto wspt = wspt_order(inst);
  Schedule current = start;
  Weight current_value = on_time_weight(inst, current);
  std::size_t k = 0;
  while (k < cfg.order.size()) {
    Schedule best;
    Weight best_value = current_value;
    bool improved = false;
    for_each_neighbor(cfg.order[k], current, [&](const Sequences& seqs) {
      Schedule cand = recompute_start_times(inst, seqs, wspt);
      const Weight f = on_time_weight(inst, cand);
      if (f > best_value) {
        best_value = f;
        best = std::move(cand);
        improved = true;
      }
    });
    if (improved) {
      current = std::move(best);
      current_value = best_value;
      if (on_accept) on_accept(current);
      k = 0;
    } else {
      ++k;
    }
  }
  return current;
}

/// Random moves of random (scheduled or tardy) jobs to random positions on
/// random machines, followed by a rebuild of start times.
inline Schedule shake(const Instance& inst, const Schedule& s, int moves, Rng& rng,
                      const std::vector<JobId>& wspt) {
  Sequences seqs = sequences_of(s);
  const int m = inst.num_machines();
  for (int i = 0; i < moves; ++i) {
    const auto j = static_cast<JobId>(rng.below(static_cast<std::uint64_t>(inst.num_jobs())));
    for (auto& seq : seqs) {
      auto it = std::find(seq.begin(), seq.end(), j);
      if (it != seq.end()) {
        seq.erase(it);
        break;
      }
    }
    const auto l = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(m)));
    const auto pos = static_cast<std::ptrdiff_t>(rng.below(seqs[l].size() + 1));
    seqs[l].insert(seqs[l].begin() + pos, j);
  }
  return recompute_start_times(inst, seqs, wspt);
}

/// Iterated VNS: one descent from the WSPT schedule, then restarts-1 rounds of
/// shaking the incumbent and descending again. Deterministic for a seed.
inline Schedule ivns(const Instance& inst, const SearchConfig& cfg,
                     const ScheduleObserver& on_accept = {}) {
  const auto wspt = wspt_order(inst);
  Rng rng(cfg.seed);
  Schedule best = vns(inst, wspt_list_schedule(inst), cfg, on_accept);
  Weight best_value = on_time_weight(inst, best);
  const int moves = cfg.resolved_shake_moves(inst.num_jobs());
  for (int r = 1; r < cfg.restarts; ++r) {
    Schedule cand = vns(inst, shake(inst, best, moves, rng, wspt), cfg, on_accept);
    const Weight f = on_time_weight(inst, cand);
    if (f > best_value) {
      best_value = f;
      best = std::move(cand);
    }
  }
  return best;
}

}  // namespace confsched

#endif  // CONFSCHED_HEURISTICS_HPP
