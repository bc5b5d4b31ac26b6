#ifndef CONFSCHED_UET_HPP
#define CONFSCHED_UET_HPP

// Unit execution time solvers: the exact two-machine algorithm, a greedy
// member of the family of algorithms anchored on an optimal two-machine
// schedule, and the instances on which that family's m/2 guarantee is tight.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "confsched/core.hpp"
#include "confsched/matching.hpp"

namespace confsched {

/// Optimal schedule for unit jobs on two machines.
inline Schedule solve_uet_two_machines(const Instance& inst) {
  if (!inst.is_uet()) throw PreconditionError("uet2 needs unit processing times");
  if (inst.num_machines() != 2) throw PreconditionError("uet2 needs exactly two machines");
  const int n = inst.num_jobs();
  if (inst.deadline() == 0) return Schedule::all_tardy(inst);
  if (n <= inst.deadline()) {
    // Every job fits in a slot of its own.
    Schedule s;
    s.machines.resize(2);
    for (JobId j = 0; j < n; ++j) s.machines[0].push_back({j, static_cast<Time>(j)});
    return s;
  }
  const WeightedGraph g = build_transformed_graph(inst);
  return matching_to_schedule(inst, max_weight_perfect_matching(g));
}

/// Greedy completion of an optimal two-machine schedule on all m machines.
/// Jobs of the two-machine schedule keep their slots; the rest are scanned by
/// non-increasing weight (ties by index) and put into the earliest slot with
/// a free machine and no conflicting job.
inline Schedule solve_uet_family_a(const Instance& inst) {
  if (!inst.is_uet()) throw PreconditionError("familyA needs unit processing times");
  const int m = inst.num_machines();
  const int n = inst.num_jobs();
  const Time d = inst.deadline();
  const Schedule base = solve_uet_two_machines(inst.with_machines(2));

  std::vector<std::vector<JobId>> slot(d);
  std::vector<bool> placed(n, false);
  for (const auto& seq : base.machines)
    for (const auto& pl : seq) {
      slot[pl.start].push_back(pl.job);
      placed[pl.job] = true;
    }

  std::vector<JobId> rest;
  for (JobId j = 0; j < n; ++j)
    if (!placed[j]) rest.push_back(j);
  std::stable_sort(rest.begin(), rest.end(),
                   [&](JobId a, JobId b) { return inst.weight(a) > inst.weight(b); });
  for (JobId j : rest) {
    for (Time t = 0; t < d; ++t) {
      auto& jobs = slot[t];
      if (static_cast<int>(jobs.size()) >= m) continue;
      if (std::any_of(jobs.begin(), jobs.end(), [&](JobId h) { return inst.in_conflict(j, h); }))
        continue;
      jobs.push_back(j);
      placed[j] = true;
      break;
    }
  }

  Schedule s;
  s.machines.resize(m);
  for (Time t = 0; t < d; ++t)
    for (std::size_t i = 0; i < slot[t].size(); ++i)
      s.machines[i].push_back({slot[t][i], t});
  for (JobId j = 0; j < n; ++j)
    if (!placed[j]) s.tardy.push_back(j);
  return s;
}

/// Instance on which every two-machine-anchored algorithm loses a factor
/// approaching m/2: the agreement graph is a clique of mD jobs of weight w
/// plus D disjoint pairs of jobs of weight w + delta.
struct TightnessInstance {
  int m;
  Time deadline;
  Weight w;
  Weight delta;
  Weight epsilon;
  Instance instance;
  /// m w D, reached by filling every slot with clique jobs.
  Weight optimum;
  /// 2 D (w + delta), the optimal two-machine value.
  Weight anchored;
};

/// Tightness instance with an explicit perturbation; epsilon is left 0.
inline TightnessInstance tightness_instance_with_delta(int m, Time d, Weight w, Weight delta) {
  if (m < 3) throw PreconditionError("tightness instance needs m >= 3");
  if (d < 1) throw PreconditionError("tightness instance needs D >= 1");
  if (w <= 0 || delta <= 0) throw PreconditionError("tightness instance needs w > 0 and delta > 0");
  if (!(Weight(m) * w > 2 * (w + delta)))
    throw PreconditionError("tightness instance needs m w > 2 (w + delta)");
  const int clique = static_cast<int>(m * d);
  const int n = clique + static_cast<int>(2 * d);
  std::vector<Time> p(n, 1);
  std::vector<Weight> weights(n, w);
  for (int j = clique; j < n; ++j) weights[j] = w + delta;
  std::vector<std::pair<JobId, JobId>> conflicts;
  for (JobId a = 0; a < n; ++a) {
    for (JobId b = a + 1; b < n; ++b) {
      const bool a_in_clique = a < clique;
      const bool b_in_clique = b < clique;
      if (a_in_clique && b_in_clique) continue;
      if (!a_in_clique && !b_in_clique && (a - clique) / 2 == (b - clique) / 2) continue;
      conflicts.emplace_back(a, b);
    }
  }
  Instance inst(m, d, std::move(p), std::move(weights), std::move(conflicts));
  return TightnessInstance{m,     d, w, delta, Weight(0), std::move(inst), Weight(m) * w * Weight(d),
                           Weight(2) * Weight(d) * (w + delta)};
}

/// Tightness instance with delta = epsilon w / (m - 2 epsilon), half of the
/// admissible upper bound 2 epsilon w / (m - 2 epsilon).
inline TightnessInstance make_tightness_instance(int m, Weight epsilon, Time d, Weight w) {
  if (epsilon <= 0 || epsilon > Weight(1, 2)) throw PreconditionError("epsilon must be in (0, 1/2]");
  const Weight delta = epsilon * w / (Weight(m) - 2 * epsilon);
  auto t = tightness_instance_with_delta(m, d, w, delta);
  t.epsilon = epsilon;
  return t;
}

inline Weight tightness_delta_bound(int m, Weight epsilon, Weight w) {
  return 2 * epsilon * w / (Weight(m) - 2 * epsilon);
}

struct RatioReport {
  Weight optimum;
  Weight achieved;
  /// optimum / achieved; empty when achieved is 0.
  std::optional<Weight> ratio;
  Weight bound;  // m / 2
  bool pass = false;
};

/// Compares an exact optimum with the value of a family-A schedule against
/// the m/2 guarantee. A zero-valued schedule with a positive optimum fails.
inline RatioReport verify_ratio_bound(const Instance& inst, const Schedule& sched_a, const Weight& opt) {
  RatioReport r;
  r.optimum = opt;
  r.achieved = objective_value(inst, sched_a);
  r.bound = Weight(inst.num_machines(), 2);
  if (r.achieved == 0) {
    r.pass = opt == 0;
    if (r.pass) r.ratio = Weight(1);
    return r;
  }
  r.ratio = opt / r.achieved;
  r.pass = *r.ratio <= r.bound;
  return r;
}

}  // namespace confsched

#endif  // CONFSCHED_UET_HPP
