#include <gtest/gtest.h>

#include <random>

#include "confsched/heuristics.hpp"
#include "oracles.hpp"

using namespace confsched;

namespace {

Sequences random_assignment(std::mt19937_64& rng, const Instance& inst) {
  Sequences seqs(inst.num_machines());
  std::uniform_int_distribution<int> where(-1, inst.num_machines() - 1);
  std::vector<JobId> jobs(inst.num_jobs());
  std::iota(jobs.begin(), jobs.end(), 0);
  std::shuffle(jobs.begin(), jobs.end(), rng);
  for (JobId j : jobs) {
    const int l = where(rng);
    if (l >= 0) seqs[l].push_back(j);
  }
  return seqs;
}

}  // namespace

TEST(Wspt, ConflictFreeExample) {
  Instance inst(2, 2, {1, 2, 2}, {Weight(2), Weight(2), Weight(1)}, {});
  const Schedule s = wspt_list_schedule(inst);
  EXPECT_EQ(s.machines[0], (std::vector<Placement>{{0, 0}}));
  EXPECT_EQ(s.machines[1], (std::vector<Placement>{{1, 0}}));
  EXPECT_EQ(s.tardy, std::vector<JobId>{2});
  EXPECT_EQ(objective_value(inst, s), Weight(4));
  EXPECT_EQ(oracle::general_optimum(inst), Weight(4));
}

TEST(Wspt, SingleJobAndAllTooLong) {
  Instance one(2, 5, {3}, {Weight(1)}, {});
  EXPECT_EQ(wspt_list_schedule(one).machines[0], (std::vector<Placement>{{0, 0}}));
  Instance long_jobs(2, 2, {3, 4}, {Weight(1), Weight(1)}, {});
  EXPECT_EQ(objective_value(long_jobs, wspt_list_schedule(long_jobs)), Weight(0));
}

TEST(Wspt, ConflictsDelayStart) {
  Instance inst(2, 10, {3, 2}, {Weight(3), Weight(1)}, {{0, 1}});
  const Schedule s = wspt_list_schedule(inst);
  EXPECT_EQ(s.machines[0], (std::vector<Placement>{{0, 0}}));
  EXPECT_EQ(s.machines[1], (std::vector<Placement>{{1, 3}}));
}

TEST(Repair, ValidScheduleIsFixpoint) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = oracle::scaled_instance(rng, 3, 8, 0.7, 0.0);
    const Schedule s = wspt_list_schedule(inst);
    EXPECT_EQ(recompute_start_times(inst, sequences_of(s)), s);
  }
}

TEST(Repair, ConflictingFrontJobsSerialise) {
  Instance inst(2, 10, {2, 2}, {Weight(1), Weight(1)}, {{0, 1}});
  const Schedule s = recompute_start_times(inst, {{0}, {1}});
  EXPECT_EQ(s.machines[0], (std::vector<Placement>{{0, 0}}));
  EXPECT_EQ(s.machines[1], (std::vector<Placement>{{1, 2}}));
}

TEST(Repair, EvictsLateJobsAndRefills) {
  // Job 1 cannot follow job 0 on machine 0 but fits on the idle machine.
  Instance inst(2, 3, {2, 2, 1}, {Weight(1), Weight(1), Weight(1)}, {});
  const Schedule s = recompute_start_times(inst, {{0, 1}, {}});
  EXPECT_FALSE(validate_schedule(inst, s));
  EXPECT_EQ(s.num_on_time(), 3u);
}

TEST(Repair, RejectsMalformedAssignments) {
  Instance inst(2, 3, {1, 1}, {Weight(1), Weight(1)}, {});
  EXPECT_THROW(recompute_start_times(inst, {{0, 0}, {}}), StructuralError);
  EXPECT_THROW(recompute_start_times(inst, {{0}, {0}}), StructuralError);
  EXPECT_THROW(recompute_start_times(inst, {{0}}), StructuralError);
  EXPECT_THROW(recompute_start_times(inst, {{5}, {}}), StructuralError);
}

TEST(Repair, RandomAssignmentsAlwaysValid) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<int> md(2, 4), nd(1, 10);
    const Instance inst = oracle::scaled_instance(rng, md(rng), nd(rng), 0.5, 0.3);
    const Schedule s = recompute_start_times(inst, random_assignment(rng, inst));
    EXPECT_FALSE(validate_schedule(inst, s)) << "trial " << trial;
  }
}

TEST(Neighborhoods, SizesMatchFormulas) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = oracle::scaled_instance(rng, 3, 9, 0.4, 0.2);
    const Schedule s = wspt_list_schedule(inst);
    std::vector<std::size_t> a;
    std::size_t total = 0;
    for (const auto& seq : s.machines) {
      a.push_back(seq.size());
      total += seq.size();
    }
    const std::size_t b = s.tardy.size();
    const std::size_t m = a.size();
    std::size_t n1 = 0, n2 = 0, n3 = 0, n4 = 0;
    for (std::size_t l = 0; l < m; ++l) {
      n1 += a[l] * (a[l] - (a[l] > 0)) / 2;
      n2 += a[l] * (a[l] - (a[l] > 0));
      for (std::size_t k = l + 1; k < m; ++k) n3 += a[l] * a[k];
      for (std::size_t k = 0; k < m; ++k)
        if (k != l) n4 += a[l] * (a[k] + 1);
    }
    EXPECT_EQ(neighborhood_size(Neighborhood::swap_on_machine, s), n1);
    EXPECT_EQ(neighborhood_size(Neighborhood::move_on_machine, s), n2);
    EXPECT_EQ(neighborhood_size(Neighborhood::swap_across, s), n3);
    EXPECT_EQ(neighborhood_size(Neighborhood::move_across, s), n4);
    EXPECT_EQ(neighborhood_size(Neighborhood::replace_with_tardy, s), total * b);
    EXPECT_EQ(neighborhood_size(Neighborhood::insert_tardy, s), b * (total + m));
  }
}

TEST(Neighborhoods, NeighboursArePermutationsOfTheJobs) {
  Instance inst(2, 4, {1, 1, 1, 1, 1}, std::vector<Weight>(5, Weight(1)), {});
  Schedule s;
  s.machines = {{{0, 0}, {1, 1}}, {{2, 0}}};
  s.tardy = {3, 4};
  for (auto kind : kDefaultNeighborhoodOrder) {
    for_each_neighbor(kind, s, [&](const Sequences& seqs) {
      std::vector<int> seen(5, 0);
      for (const auto& seq : seqs)
        for (JobId j : seq) ++seen[j];
      for (int c : seen) EXPECT_LE(c, 1);
      EXPECT_NO_THROW(recompute_start_times(inst, seqs));
    });
  }
}

TEST(ShakeMoves, DefaultIsFivePercentRoundedUp) {
  SearchConfig cfg;
  EXPECT_EQ(cfg.resolved_shake_moves(1), 1);
  EXPECT_EQ(cfg.resolved_shake_moves(20), 1);
  EXPECT_EQ(cfg.resolved_shake_moves(21), 2);
  EXPECT_EQ(cfg.resolved_shake_moves(100), 5);
  cfg.shake_moves = 3;
  EXPECT_EQ(cfg.resolved_shake_moves(100), 3);
}

TEST(Vns, ImprovesOnWsptWhenPossible) {
  // WSPT takes job 0 (ratio 1) first and blocks the heavy pair 1, 2.
  Instance inst(2, 4, {2, 4, 4}, {Weight(2), Weight(3), Weight(3)}, {});
  const Schedule start = wspt_list_schedule(inst);
  EXPECT_EQ(objective_value(inst, start), Weight(5));
  const Schedule best = vns(inst, start, SearchConfig{});
  EXPECT_EQ(objective_value(inst, best), Weight(6));
  EXPECT_EQ(oracle::general_optimum(inst), Weight(6));
}

TEST(Vns, OptimalStartUnchanged) {
  Instance inst(2, 4, {2, 2}, {Weight(1), Weight(2)}, {});
  const Schedule start = wspt_list_schedule(inst);
  EXPECT_EQ(vns(inst, start, SearchConfig{}), start);
}

TEST(Vns, AcceptedSchedulesAreValidAndMonotone) {
  std::mt19937_64 rng(53);
  int strict = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = oracle::scaled_instance(rng, 2 + trial % 3, 8, 0.5, 0.2);
    const Schedule start = wspt_list_schedule(inst);
    Weight last = objective_value(inst, start);
    const Schedule out = vns(inst, start, SearchConfig{}, [&](const Schedule& s) {
      EXPECT_FALSE(validate_schedule(inst, s));
      const Weight f = objective_value(inst, s);
      EXPECT_GT(f, last);
      last = f;
    });
    EXPECT_EQ(objective_value(inst, out), last);
    if (last > objective_value(inst, start)) ++strict;
  }
  EXPECT_GT(strict, 0);
}

TEST(Ivns, SingleRunEqualsVns) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = oracle::scaled_instance(rng, 3, 9, 0.5, 0.2);
    SearchConfig cfg;
    cfg.restarts = 1;
    EXPECT_EQ(ivns(inst, cfg), vns(inst, wspt_list_schedule(inst), cfg));
  }
}

TEST(Ivns, DeterministicForSeed) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = oracle::scaled_instance(rng, 3, 10, 0.6, 0.1);
    SearchConfig cfg;
    cfg.seed = 7;
    EXPECT_EQ(ivns(inst, cfg), ivns(inst, cfg));
  }
}

TEST(Ivns, MonotonePipelineAndMostlyOptimal) {
  std::mt19937_64 rng(67);
  int optimal = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    std::uniform_int_distribution<int> md(2, 3), nd(4, 10);
    const Instance inst = oracle::scaled_instance(rng, md(rng), nd(rng), trial % 2 ? 0.3 : 0.7, 0.1);
    const Schedule w = wspt_list_schedule(inst);
    const Schedule v = vns(inst, w, SearchConfig{});
    const Schedule i = ivns(inst, SearchConfig{});
    ASSERT_FALSE(validate_schedule(inst, i));
    EXPECT_LE(objective_value(inst, w), objective_value(inst, v));
    EXPECT_LE(objective_value(inst, v), objective_value(inst, i));
    const Weight opt = oracle::general_optimum(inst);
    EXPECT_LE(objective_value(inst, i), opt);
    if (objective_value(inst, i) == opt) ++optimal;
  }
  EXPECT_GE(optimal * 10, trials * 9) << optimal << " of " << trials;
}

TEST(Rng, KnownStream) {
  Rng a(1), b(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  // First output of mt19937_64 seeded with 1.
  EXPECT_EQ(Rng(1).next(), 2469588189546311528ULL);
  Rng r(5);
  for (int i = 0; i < 1000; ++i) {
    const auto x = r.between(-2, 3);
    EXPECT_GE(x, -2);
    EXPECT_LE(x, 3);
  }
}
