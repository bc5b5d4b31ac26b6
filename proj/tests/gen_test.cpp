#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "confsched/gen.hpp"

using namespace confsched;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Gen, DeadlineExample) {
  GenParams gp;
  gp.m = 2;
  gp.n = 10;
  gp.delta = 0.7;
  EXPECT_EQ(generated_deadline(gp), 350);
  EXPECT_EQ(generate_instance(gp).deadline(), 350);
  gp.m = 3;
  gp.delta = 0.3;
  EXPECT_EQ(generated_deadline(gp), 100);  // 100
  gp.n = 5;
  EXPECT_EQ(generated_deadline(gp), 50);
  gp.m = 4;
  gp.n = 5;
  EXPECT_EQ(generated_deadline(gp), 38);  // 37.5 rounds away from zero
}

TEST(Gen, EdgeCountIsFloor) {
  GenParams gp;
  gp.n = 10;
  gp.c = 0.1;
  EXPECT_EQ(generated_edge_count(gp), 4);
  EXPECT_EQ(generate_instance(gp).num_conflicts(), 4);
  gp.n = 15;
  EXPECT_EQ(generated_edge_count(gp), 10);
  gp.n = 5;
  gp.c = 0.3;
  EXPECT_EQ(generated_edge_count(gp), 3);
}

TEST(Gen, DeterministicPerSeed) {
  GenParams gp;
  gp.n = 20;
  gp.c = 0.3;
  gp.seed = 42;
  EXPECT_EQ(generate_instance(gp), generate_instance(gp));
  GenParams other = gp;
  other.seed = 43;
  EXPECT_FALSE(generate_instance(gp) == generate_instance(other));
}

TEST(Gen, RangesAndSimpleGraph) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GenParams gp;
    gp.m = 3;
    gp.n = 12;
    gp.c = 0.4;
    gp.seed = seed;
    const Instance inst = generate_instance(gp);
    for (JobId j = 0; j < inst.num_jobs(); ++j) {
      EXPECT_GE(inst.processing(j), 50);
      EXPECT_LE(inst.processing(j), 150);
      EXPECT_GE(inst.weight(j), Weight(1));
      EXPECT_LE(inst.weight(j), Weight(5));
      EXPECT_EQ(inst.weight(j).denominator(), 1);
    }
    std::set<std::pair<JobId, JobId>> edges(inst.conflicts().begin(), inst.conflicts().end());
    EXPECT_EQ(edges.size(), inst.conflicts().size());
    EXPECT_EQ(inst.num_conflicts(), 26);
  }
}

TEST(Gen, EmpiricalMeans) {
  double p_sum = 0, w_sum = 0;
  int jobs = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    GenParams gp;
    gp.n = 20;
    gp.seed = seed;
    const Instance inst = generate_instance(gp);
    for (JobId j = 0; j < inst.num_jobs(); ++j) {
      p_sum += static_cast<double>(inst.processing(j));
      w_sum += to_double(inst.weight(j));
      ++jobs;
    }
  }
  EXPECT_GE(jobs, 10000);
  EXPECT_NEAR(p_sum / jobs, 100.0, 2.0);
  EXPECT_NEAR(w_sum / jobs, 3.0, 0.1);
}

TEST(Gen, RejectsBadParams) {
  GenParams gp;
  gp.m = 1;
  EXPECT_THROW(generate_instance(gp), std::invalid_argument);
  gp = GenParams{};
  gp.c = 1.5;
  EXPECT_THROW(generate_instance(gp), std::invalid_argument);
  gp = GenParams{};
  gp.n = 0;
  EXPECT_THROW(generate_instance(gp), std::invalid_argument);
}

TEST(Corpus, WritesManifestAndRoundTrips) {
  const auto dir = scratch("confsched_gen_corpus");
  GenParams gp;
  gp.m = 3;
  gp.n = 15;
  gp.delta = 0.3;
  gp.seed = 100;
  const auto entries = generate_corpus(gp, 100, dir);
  ASSERT_EQ(entries.size(), 100u);
  const Corpus c = read_corpus_manifest(dir);
  EXPECT_EQ(c.params.m, 3);
  EXPECT_EQ(c.params.n, 15);
  EXPECT_DOUBLE_EQ(c.params.delta, 0.3);
  EXPECT_EQ(c.params.seed, 100u);
  ASSERT_EQ(c.entries.size(), 100u);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    EXPECT_EQ(c.entries[i].id, entries[i].id);
    EXPECT_EQ(c.entries[i].seed, 100u + i);
    const auto path = dir / entries[i].file;
    const std::string text = slurp(path);
    const Instance inst = read_instance_file(path.string());
    EXPECT_EQ(instance_to_string(inst), text);
    GenParams one = gp;
    one.seed = entries[i].seed;
    EXPECT_EQ(inst, generate_instance(one));
  }
  std::filesystem::remove_all(dir);
}

TEST(Corpus, MissingManifest) {
  const auto dir = scratch("confsched_gen_empty");
  std::filesystem::create_directories(dir);
  EXPECT_THROW(read_corpus_manifest(dir), std::runtime_error);
  std::filesystem::remove_all(dir);
}
