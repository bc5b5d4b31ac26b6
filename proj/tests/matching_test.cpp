#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "confsched/matching.hpp"
#include "confsched/uet.hpp"
#include "oracles.hpp"

using namespace confsched;

namespace {

WeightedGraph random_graph(std::mt19937_64& rng, int nv, double density, int w_max, int den = 1) {
  WeightedGraph g(nv);
  std::bernoulli_distribution coin(density);
  std::uniform_int_distribution<int> wd(0, w_max);
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b)
      if (coin(rng)) g.add_edge(a, b, Weight(wd(rng), den));
  return g;
}

std::vector<oracle::Edge> oracle_edges(const WeightedGraph& g) {
  std::vector<oracle::Edge> out;
  for (const auto& e : g.edges()) out.push_back({e.a, e.b, e.weight});
  return out;
}

void expect_is_matching(const WeightedGraph& g, const Matching& m) {
  std::vector<int> seen(g.num_nodes(), 0);
  Weight total(0);
  for (const auto& e : m.edges) {
    ASSERT_NE(g.find_edge(e.a, e.b), nullptr);
    EXPECT_EQ(++seen[e.a], 1);
    EXPECT_EQ(++seen[e.b], 1);
    total += e.weight;
  }
  EXPECT_EQ(total, m.weight);
  EXPECT_EQ(m.perfect, 2 * m.edges.size() == static_cast<std::size_t>(g.num_nodes()));
}

}  // namespace

TEST(Graph, RejectsBadEdges) {
  WeightedGraph g(3);
  g.add_edge(0, 1, Weight(1));
  EXPECT_THROW(g.add_edge(1, 0, Weight(2)), std::invalid_argument);
  EXPECT_THROW(g.add_edge(2, 2, Weight(2)), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 2, Weight(-1)), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 3, Weight(1)), StructuralError);
}

TEST(PerfectMatching, SingleEdge) {
  WeightedGraph g(2);
  g.add_edge(0, 1, Weight(5));
  const Matching m = max_weight_perfect_matching(g);
  ASSERT_EQ(m.edges.size(), 1u);
  EXPECT_EQ(m.weight, Weight(5));
  EXPECT_TRUE(m.perfect);
}

TEST(PerfectMatching, FourNodeExample) {
  WeightedGraph g(4);
  g.add_edge(0, 1, Weight(1));
  g.add_edge(2, 3, Weight(10));
  g.add_edge(0, 2, Weight(2));
  g.add_edge(1, 3, Weight(2));
  g.add_edge(0, 3, Weight(3));
  g.add_edge(1, 2, Weight(3));
  const Matching m = max_weight_perfect_matching(g);
  EXPECT_EQ(m.weight, Weight(11));
  ASSERT_EQ(m.edges.size(), 2u);
  EXPECT_EQ(m.edges[0].a, 0);
  EXPECT_EQ(m.edges[0].b, 1);
  EXPECT_EQ(m.edges[1].a, 2);
  EXPECT_EQ(m.edges[1].b, 3);
  EXPECT_EQ(brute_force_perfect_matching(g).weight, Weight(11));
}

TEST(PerfectMatching, PrefersCardinalityOverWeight) {
  // The heavy middle edge is not part of any perfect matching.
  WeightedGraph g(4);
  g.add_edge(0, 1, Weight(1));
  g.add_edge(1, 2, Weight(100));
  g.add_edge(2, 3, Weight(1));
  EXPECT_EQ(max_weight_perfect_matching(g).weight, Weight(2));
  EXPECT_EQ(max_weight_matching(g).weight, Weight(100));
}

TEST(PerfectMatching, NoneExists) {
  WeightedGraph g(4);
  g.add_edge(0, 1, Weight(1));
  g.add_edge(0, 2, Weight(1));
  g.add_edge(0, 3, Weight(1));
  try {
    max_weight_perfect_matching(g);
    FAIL() << "expected NoPerfectMatching";
  } catch (const NoPerfectMatching& e) {
    EXPECT_EQ(e.exposed().size(), 2u);
  }
  EXPECT_THROW(max_weight_perfect_matching(WeightedGraph(3)), NoPerfectMatching);
  EXPECT_THROW(brute_force_perfect_matching(g), NoPerfectMatching);
}

TEST(BruteForce, EmptyGraphAndK4) {
  const Matching empty = brute_force_perfect_matching(WeightedGraph(0));
  EXPECT_TRUE(empty.edges.empty());
  EXPECT_EQ(empty.weight, Weight(0));
  WeightedGraph k4(4);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) k4.add_edge(a, b, Weight(1));
  EXPECT_EQ(brute_force_perfect_matching(k4).weight, Weight(2));
  EXPECT_EQ(max_weight_perfect_matching(k4).weight, Weight(2));
  EXPECT_THROW(brute_force_perfect_matching(WeightedGraph(18)), std::invalid_argument);
}

TEST(BruteForce, AgreesWithIndependentEnumeration) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const WeightedGraph g = random_graph(rng, 8, 0.6, 9);
    const auto expected = oracle::perfect_matching_weight(8, oracle_edges(g));
    if (!expected) {
      EXPECT_THROW(brute_force_perfect_matching(g), NoPerfectMatching);
      continue;
    }
    EXPECT_EQ(brute_force_perfect_matching(g).weight, *expected);
  }
}

TEST(PerfectMatching, MatchesOracleOnRandomGraphs) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::uniform_int_distribution<int> nd(1, 6);
    const int nv = 2 * nd(rng);
    const WeightedGraph g = random_graph(rng, nv, trial % 2 ? 0.9 : 0.5, 20, 1 + trial % 4);
    const auto expected = oracle::perfect_matching_weight(nv, oracle_edges(g));
    if (!expected) {
      EXPECT_THROW(max_weight_perfect_matching(g), NoPerfectMatching);
      continue;
    }
    const Matching m = max_weight_perfect_matching(g);
    expect_is_matching(g, m);
    EXPECT_TRUE(m.perfect);
    EXPECT_EQ(m.weight, *expected) << "trial " << trial;
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(PerfectMatching, Deterministic) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const WeightedGraph g = random_graph(rng, 10, 1.0, 3);
    const Matching a = max_weight_perfect_matching(g);
    const Matching b = max_weight_perfect_matching(g);
    EXPECT_EQ(a.edges, b.edges);
  }
}

TEST(MaxWeightMatching, IsAMatchingAndAtLeastPerfectWeight) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const WeightedGraph g = random_graph(rng, 8, 0.5, 9);
    const Matching m = max_weight_matching(g);
    expect_is_matching(g, m);
    if (auto p = oracle::perfect_matching_weight(8, oracle_edges(g))) {
      EXPECT_GE(m.weight, *p);
    }
  }
}

TEST(TransformedGraph, CountsForThreeJobsTwoSlots) {
  Instance inst(2, 2, {1, 1, 1}, {Weight(1), Weight(2), Weight(3)}, {});
  const WeightedGraph g = build_transformed_graph(inst);
  EXPECT_EQ(g.num_nodes(), 8);
  int duplicate = 0, padding = 0, agreement = 0;
  Weight duplicate_weight(0);
  for (const auto& e : g.edges()) {
    if (g.node_class(e.b) == NodeClass::padding) {
      ++padding;
      EXPECT_EQ(e.weight, Weight(0));
    } else if (g.node_class(e.b) == NodeClass::duplicate) {
      ++duplicate;
      duplicate_weight += e.weight;
    } else {
      ++agreement;
      EXPECT_EQ(e.weight, inst.weight(e.a) + inst.weight(e.b));
    }
  }
  EXPECT_EQ(duplicate, 3);
  EXPECT_EQ(padding, 12);
  EXPECT_EQ(agreement, 3);
  EXPECT_EQ(duplicate_weight, inst.total_weight());
  EXPECT_EQ(g.num_edges(), 18u);
}

TEST(TransformedGraph, SingleConflict) {
  Instance inst(2, 1, {1, 1}, {Weight(2), Weight(5)}, {{0, 1}});
  const WeightedGraph g = build_transformed_graph(inst);
  EXPECT_EQ(g.num_nodes(), 6);
  EXPECT_EQ(g.find_edge(0, 1), nullptr);
  ASSERT_NE(g.find_edge(0, 2), nullptr);
  EXPECT_EQ(g.find_edge(0, 2)->weight, Weight(2));
  EXPECT_EQ(g.find_edge(1, 3)->weight, Weight(5));
  EXPECT_EQ(g.num_edges(), 2u + 8u);
}

TEST(TransformedGraph, Preconditions) {
  EXPECT_THROW(build_transformed_graph(Instance(2, 2, {1, 2, 1}, {Weight(1), Weight(1), Weight(1)}, {})),
               PreconditionError);
  EXPECT_THROW(build_transformed_graph(Instance(2, 3, {1, 1, 1}, {Weight(1), Weight(1), Weight(1)}, {})),
               PreconditionError);
  EXPECT_THROW(build_transformed_graph(Instance(2, 0, {1, 1, 1}, {Weight(1), Weight(1), Weight(1)}, {})),
               PreconditionError);
}

TEST(MatchingToSchedule, PerfectMatchingsCarryScheduleWeight) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> nd(2, 7);
    const int n = nd(rng);
    std::uniform_int_distribution<int> dd(1, n - 1);
    const Instance inst = oracle::random_uet(rng, 2, n, dd(rng), 0.4);
    const WeightedGraph g = build_transformed_graph(inst);
    const Matching m = max_weight_perfect_matching(g);
    int padding_edges = 0;
    for (const auto& e : m.edges) padding_edges += g.node_class(e.b) == NodeClass::padding;
    EXPECT_EQ(padding_edges, 2 * (n - inst.deadline()));
    const Schedule s = matching_to_schedule(inst, m);
    EXPECT_FALSE(validate_schedule(inst, s));
    EXPECT_EQ(objective_value(inst, s), m.weight);
    const Matching back = schedule_to_matching(inst, s);
    EXPECT_TRUE(back.perfect);
    EXPECT_EQ(back.weight, m.weight);
    EXPECT_EQ(objective_value(inst, matching_to_schedule(inst, back)), m.weight);
  }
}

TEST(MatchingToSchedule, SingletonsOnly) {
  Instance inst(2, 2, {1, 1, 1}, {Weight(1), Weight(2), Weight(3)}, {{0, 1}, {0, 2}, {1, 2}});
  const WeightedGraph g = build_transformed_graph(inst);
  std::vector<GraphEdge> chosen = {*g.find_edge(1, 4), *g.find_edge(2, 5), *g.find_edge(0, 6),
                                   *g.find_edge(3, 7)};
  Matching m = detail::make_matching(g, chosen);
  const Schedule s = matching_to_schedule(inst, m);
  EXPECT_EQ(s.machines[0], (std::vector<Placement>{{1, 0}, {2, 1}}));
  EXPECT_TRUE(s.machines[1].empty());
  EXPECT_EQ(s.tardy, std::vector<JobId>{0});
}

TEST(MatchingToSchedule, RejectsImperfect) {
  Instance inst(2, 1, {1, 1}, {Weight(2), Weight(5)}, {});
  const WeightedGraph g = build_transformed_graph(inst);
  Matching m = detail::make_matching(g, {*g.find_edge(0, 1)});
  EXPECT_THROW(matching_to_schedule(inst, m), StructuralError);
}

TEST(Dimacs, RoundTrip) {
  Instance inst(2, 2, {1, 1, 1, 1}, {Weight(1), Weight(5, 2), Weight(3), Weight(1)}, {{0, 3}});
  const WeightedGraph g = build_transformed_graph(inst);
  std::stringstream ss;
  write_dimacs(g, ss);
  const WeightedGraph back = read_dimacs(ss);
  EXPECT_EQ(back.num_nodes(), g.num_nodes());
  EXPECT_EQ(back.edges(), g.edges());
  std::istringstream bad("p edge 2 2\ne 1 2 1\n");
  EXPECT_THROW(read_dimacs(bad), std::invalid_argument);
}
