#include <gtest/gtest.h>

#include <random>

#include "confsched/uet.hpp"
#include "oracles.hpp"

using namespace confsched;

namespace {

std::vector<JobId> on_time(const Schedule& s) { return s.on_time_jobs(); }

}  // namespace

TEST(TwoMachines, TwoFreeJobsShareTheSlot) {
  Instance inst(2, 1, {1, 1}, {Weight(1), Weight(1)}, {});
  const Schedule s = solve_uet_two_machines(inst);
  EXPECT_EQ(objective_value(inst, s), Weight(2));
}

TEST(TwoMachines, TriangleKeepsHeaviest) {
  Instance inst(2, 1, {1, 1, 1}, {Weight(5), Weight(4), Weight(3)}, {{0, 1}, {0, 2}, {1, 2}});
  const Schedule s = solve_uet_two_machines(inst);
  EXPECT_EQ(objective_value(inst, s), Weight(5));
  EXPECT_EQ(on_time(s), std::vector<JobId>{0});
}

TEST(TwoMachines, FewJobsGetOwnSlots) {
  Instance inst(2, 4, {1, 1, 1}, {Weight(1), Weight(2), Weight(3)}, {{0, 1}});
  const Schedule s = solve_uet_two_machines(inst);
  EXPECT_FALSE(validate_schedule(inst, s));
  EXPECT_TRUE(s.tardy.empty());
}

TEST(TwoMachines, ZeroDeadline) {
  Instance inst(2, 0, {1, 1}, {Weight(1), Weight(1)}, {});
  EXPECT_EQ(solve_uet_two_machines(inst).tardy.size(), 2u);
}

TEST(TwoMachines, Preconditions) {
  EXPECT_THROW(solve_uet_two_machines(Instance(2, 2, {1, 2}, {Weight(1), Weight(1)}, {})), PreconditionError);
  EXPECT_THROW(solve_uet_two_machines(Instance(3, 2, {1, 1}, {Weight(1), Weight(1)}, {})), PreconditionError);
}

TEST(TwoMachines, MatchesExhaustiveOptimum) {
  std::mt19937_64 rng(101);
  int shortcut_loses = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> nd(1, 8), dd(1, 3);
    const Instance inst = oracle::random_uet(rng, 2, nd(rng), dd(rng), 0.1 + 0.1 * (trial % 6));
    const Schedule s = solve_uet_two_machines(inst);
    ASSERT_FALSE(validate_schedule(inst, s));
    const Weight opt = oracle::uet_optimum(inst);
    EXPECT_EQ(objective_value(inst, s), opt) << "trial " << trial;
    if (oracle::raw_agreement_value(inst) < opt) ++shortcut_loses;
  }
  EXPECT_GT(shortcut_loses, 0);
}

TEST(TwoMachines, ShortcutCounterexample) {
  // Path 1-2-3-4 in the agreement graph, weights 1,5,5,1, one slot: the raw
  // matching pairs {1,2},{3,4}, but the best slot is {2,3}.
  Instance inst(2, 1, {1, 1, 1, 1}, {Weight(1), Weight(5), Weight(5), Weight(1)}, {{0, 2}, {0, 3}, {1, 3}});
  EXPECT_EQ(oracle::raw_agreement_value(inst), Weight(6));
  EXPECT_EQ(objective_value(inst, solve_uet_two_machines(inst)), Weight(10));
}

TEST(TwoMachines, FractionalWeights) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 6;
    std::uniform_int_distribution<int> wd(1, 12);
    std::vector<Weight> w(n);
    for (int j = 0; j < n; ++j) w[j] = Weight(wd(rng), 1 + j % 4);
    Instance inst(2, 2, std::vector<Time>(n, 1), w, oracle::random_conflicts(rng, n, 0.4));
    EXPECT_EQ(objective_value(inst, solve_uet_two_machines(inst)), oracle::uet_optimum(inst));
  }
}

TEST(FamilyA, TwoMachinesMatchesExactSolver) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = oracle::random_uet(rng, 2, 7, 2, 0.3);
    EXPECT_EQ(objective_value(inst, solve_uet_family_a(inst)),
              objective_value(inst, solve_uet_two_machines(inst)));
  }
}

TEST(FamilyA, ConflictFreeAllOnTime) {
  Instance inst(3, 2, std::vector<Time>(6, 1), std::vector<Weight>(6, Weight(2)), {});
  const Schedule s = solve_uet_family_a(inst);
  EXPECT_EQ(objective_value(inst, s), Weight(12));
}

TEST(FamilyA, ContainsTwoMachineJobsAndRespectsBound) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> md(3, 4), nd(2, 9), dd(1, 3);
    const Instance inst = oracle::random_uet(rng, md(rng), nd(rng), dd(rng), 0.35);
    const Schedule a = solve_uet_family_a(inst);
    ASSERT_FALSE(validate_schedule(inst, a));
    const auto base = on_time(solve_uet_two_machines(inst.with_machines(2)));
    const auto mine = on_time(a);
    EXPECT_TRUE(std::includes(mine.begin(), mine.end(), base.begin(), base.end()));
    const RatioReport r = verify_ratio_bound(inst, a, oracle::uet_optimum(inst));
    EXPECT_TRUE(r.pass) << "trial " << trial;
  }
}

TEST(FamilyA, RejectsNonUet) {
  EXPECT_THROW(solve_uet_family_a(Instance(3, 2, {1, 2}, {Weight(1), Weight(1)}, {})), PreconditionError);
}

TEST(Tightness, FourMachinesHalfEpsilon) {
  const TightnessInstance t = make_tightness_instance(4, Weight(1, 2), 2, Weight(1));
  EXPECT_EQ(tightness_delta_bound(4, Weight(1, 2), Weight(1)), Weight(1, 3));
  EXPECT_EQ(t.delta, Weight(1, 6));
  EXPECT_EQ(t.instance.num_jobs(), 12);
  EXPECT_EQ(t.optimum, Weight(8));
  EXPECT_EQ(t.anchored, Weight(14, 3));
  EXPECT_EQ(t.optimum / t.anchored, Weight(12, 7));
  EXPECT_GT(t.optimum / t.anchored, Weight(3, 2));
  EXPECT_LT(2 * (t.w + t.delta), Weight(t.m) * t.w);
  const Schedule a = solve_uet_family_a(t.instance);
  EXPECT_EQ(objective_value(t.instance, a), t.anchored);
  const RatioReport r = verify_ratio_bound(t.instance, a, t.optimum);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(*r.ratio, Weight(12, 7));
}

TEST(Tightness, ExplicitQuarterDelta) {
  const TightnessInstance t = tightness_instance_with_delta(4, 2, Weight(1), Weight(1, 4));
  EXPECT_EQ(objective_value(t.instance, solve_uet_family_a(t.instance)), Weight(5));
  const Instance two = t.instance.with_machines(2);
  EXPECT_EQ(objective_value(two, solve_uet_two_machines(two)), Weight(5));
}

TEST(Tightness, ThreeMachinesBruteForce) {
  const TightnessInstance t = make_tightness_instance(3, Weight(1, 2), 1, Weight(1));
  EXPECT_EQ(t.delta, Weight(1, 4));
  EXPECT_EQ(t.instance.num_jobs(), 5);
  EXPECT_EQ(oracle::uet_optimum(t.instance), Weight(3));
  EXPECT_EQ(t.optimum, Weight(3));
  EXPECT_EQ(oracle::uet_optimum(t.instance.with_machines(2)), t.anchored);
}

TEST(Tightness, AgreementStructure) {
  const TightnessInstance t = make_tightness_instance(3, Weight(1, 4), 2, Weight(2));
  const Instance& inst = t.instance;
  const int clique = 6;
  for (JobId a = 0; a < inst.num_jobs(); ++a)
    for (JobId b = a + 1; b < inst.num_jobs(); ++b) {
      const bool agree = (a < clique && b < clique) || (a >= clique && b == a + 1 && (a - clique) % 2 == 0);
      EXPECT_EQ(inst.in_conflict(a, b), !agree) << a << " " << b;
    }
}

TEST(Tightness, Preconditions) {
  EXPECT_THROW(make_tightness_instance(2, Weight(1, 2), 1, Weight(1)), PreconditionError);
  EXPECT_THROW(make_tightness_instance(3, Weight(0), 1, Weight(1)), PreconditionError);
  EXPECT_THROW(make_tightness_instance(3, Weight(3, 4), 1, Weight(1)), PreconditionError);
  EXPECT_THROW(tightness_instance_with_delta(3, 1, Weight(1), Weight(1, 2)), PreconditionError);
}

TEST(RatioReport, TwoMachinesIsOne) {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = oracle::random_uet(rng, 2, 6, 2, 0.3);
    const RatioReport r = verify_ratio_bound(inst, solve_uet_family_a(inst), oracle::uet_optimum(inst));
    ASSERT_TRUE(r.ratio);
    EXPECT_EQ(*r.ratio, Weight(1));
    EXPECT_EQ(r.bound, Weight(1));
  }
}

TEST(RatioReport, ZeroAchievedWithPositiveOptimumFails) {
  Instance inst(3, 1, {1}, {Weight(2)}, {});
  const RatioReport r = verify_ratio_bound(inst, Schedule::all_tardy(inst), Weight(2));
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.ratio);
}
