#ifndef CONFSCHED_GEN_HPP
#define CONFSCHED_GEN_HPP

// Seeded random instances and corpus directories.
//
// Processing times and weights are uniform integers in their ranges. The
// deadline is D = round(delta * mean_p * n / m), mean_p being the midpoint of
// the processing time range (100 for the default [50, 150]). The conflict
// graph has floor(c * n (n - 1) / 2) distinct edges drawn uniformly without
// replacement.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "confsched/core.hpp"
#include "confsched/io.hpp"
#include "confsched/rng.hpp"

namespace confsched {

struct GenParams {
  int m = 2;
  int n = 10;
  double delta = 0.7;
  double c = 0.1;
  std::uint64_t seed = 1;
  Time p_min = 50;
  Time p_max = 150;
  std::int64_t w_min = 1;
  std::int64_t w_max = 5;

  void check() const {
    if (m < 2) throw std::invalid_argument("m must be >= 2");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(delta > 0)) throw std::invalid_argument("delta must be > 0");
    if (!(c >= 0 && c < 1)) throw std::invalid_argument("c must be in [0, 1)");
    if (p_min < 1 || p_max < p_min) throw std::invalid_argument("bad processing time range");
    if (w_min < 1 || w_max < w_min) throw std::invalid_argument("bad weight range");
  }
};

inline Time generated_deadline(const GenParams& gp) {
  const double mean_p = 0.5 * static_cast<double>(gp.p_min + gp.p_max);
  return static_cast<Time>(std::llround(gp.delta * mean_p * gp.n / gp.m));
}

inline std::int64_t generated_edge_count(const GenParams& gp) {
  const double pairs = 0.5 * static_cast<double>(gp.n) * (gp.n - 1);
  // The tolerance keeps products such as 0.3 * 10 from flooring to 2.
  return static_cast<std::int64_t>(std::floor(gp.c * pairs + 1e-9));
}

inline Instance generate_instance(const GenParams& gp) {
  gp.check();
  Rng rng(gp.seed);
  std::vector<Time> p(gp.n);
  std::vector<Weight> w(gp.n);
  for (int j = 0; j < gp.n; ++j) p[j] = rng.between(gp.p_min, gp.p_max);
  for (int j = 0; j < gp.n; ++j) w[j] = Weight(rng.between(gp.w_min, gp.w_max));

  std::vector<std::pair<JobId, JobId>> pairs;
  for (JobId a = 0; a < gp.n; ++a)
    for (JobId b = a + 1; b < gp.n; ++b) pairs.emplace_back(a, b);
  const auto e = static_cast<std::size_t>(generated_edge_count(gp));
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < e; ++i) {
    const std::size_t k = i + static_cast<std::size_t>(rng.below(pairs.size() - i));
    std::swap(pairs[i], pairs[k]);
  }
  pairs.resize(e);
  return Instance(gp.m, generated_deadline(gp), std::move(p), std::move(w), std::move(pairs));
}

inline nlohmann::json gen_params_to_json(const GenParams& gp) {
  return {{"m", gp.m},         {"n", gp.n},         {"delta", gp.delta}, {"c", gp.c},
          {"seed", gp.seed},   {"p_min", gp.p_min}, {"p_max", gp.p_max}, {"w_min", gp.w_min},
          {"w_max", gp.w_max}};
}

inline GenParams gen_params_from_json(const nlohmann::json& j) {
  GenParams gp;
  gp.m = j.at("m").get<int>();
  gp.n = j.at("n").get<int>();
  gp.delta = j.at("delta").get<double>();
  gp.c = j.at("c").get<double>();
  gp.seed = j.at("seed").get<std::uint64_t>();
  gp.p_min = j.value("p_min", gp.p_min);
  gp.p_max = j.value("p_max", gp.p_max);
  gp.w_min = j.value("w_min", gp.w_min);
  gp.w_max = j.value("w_max", gp.w_max);
  return gp;
}

struct CorpusEntry {
  std::string id;
  std::string file;  // relative to the corpus directory
  std::uint64_t seed;
};

inline const char* kManifestName = "manifest.json";

/// Writes count instances seeded seed, seed+1, ... plus manifest.json.
inline std::vector<CorpusEntry> generate_corpus(const GenParams& gp, int count, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<CorpusEntry> entries;
  nlohmann::json list = nlohmann::json::array();
  for (int i = 0; i < count; ++i) {
    GenParams one = gp;
    one.seed = gp.seed + static_cast<std::uint64_t>(i);
    char id[32];
    std::snprintf(id, sizeof id, "inst_%04d", i);
    CorpusEntry e{id, std::string(id) + ".txt", one.seed};
    write_instance_file(generate_instance(one), (dir / e.file).string());
    list.push_back({{"id", e.id}, {"file", e.file}, {"seed", e.seed}});
    entries.push_back(std::move(e));
  }
  nlohmann::json manifest = {{"params", gen_params_to_json(gp)},
                             {"count", count},
                             {"edge_rounding", "floor"},
                             {"deadline_rounding", "nearest"},
                             {"instances", list}};
  std::ofstream out(dir / kManifestName);
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
  out << manifest.dump(2) << '\n';
  return entries;
}

struct Corpus {
  GenParams params;
  std::vector<CorpusEntry> entries;
};

inline Corpus read_corpus_manifest(const std::filesystem::path& dir) {
  std::ifstream in(dir / kManifestName);
  if (!in) throw std::runtime_error("no " + std::string(kManifestName) + " in " + dir.string());
  const auto j = nlohmann::json::parse(in);
  Corpus c;
  c.params = gen_params_from_json(j.at("params"));
  for (const auto& e : j.at("instances"))
    c.entries.push_back({e.at("id").get<std::string>(), e.at("file").get<std::string>(),
                         e.at("seed").get<std::uint64_t>()});
  return c;
}

}  // namespace confsched

#endif  // CONFSCHED_GEN_HPP
