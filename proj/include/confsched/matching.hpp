#ifndef CONFSCHED_MATCHING_HPP
#define CONFSCHED_MATCHING_HPP

// Weighted graphs, exact maximum weight (perfect) matching, and the
// correspondence between two-machine UET schedules and perfect matchings of
// the padded agreement graph.
//
// Node layout of the padded graph for an instance with n jobs and deadline D:
//   0 .. n-1           original jobs (class original)
//   n .. 2n-1          duplicates j' of each job (class duplicate)
//   2n .. 4n-2D-1      2(n-D) padding nodes (class padding)

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "confsched/blossom.hpp"
#include "confsched/core.hpp"

namespace confsched {

enum class NodeClass { original, duplicate, padding };

struct GraphEdge {
  int a;  // a < b
  int b;
  Weight weight;
  bool operator==(const GraphEdge&) const = default;
  bool operator<(const GraphEdge& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
};

class NoPerfectMatching : public std::runtime_error {
 public:
  NoPerfectMatching(const std::string& what, std::vector<int> exposed)
      : std::runtime_error(what), exposed_(std::move(exposed)) {}
  /// Nodes left uncovered by a maximum cardinality matching.
  const std::vector<int>& exposed() const { return exposed_; }

 private:
  std::vector<int> exposed_;
};

class WeightedGraph {
 public:
  explicit WeightedGraph(int nodes) : classes_(nodes, NodeClass::original) {}
  explicit WeightedGraph(std::vector<NodeClass> classes) : classes_(std::move(classes)) {}

  void add_edge(int a, int b, Weight w) {
    if (a < 0 || b < 0 || a >= num_nodes() || b >= num_nodes())
      throw StructuralError("edge references unknown node");
    if (a == b) throw std::invalid_argument("self-loop on node " + std::to_string(a));
    if (w < 0) throw std::invalid_argument("negative edge weight");
    if (a > b) std::swap(a, b);
    if (!index_.emplace(std::make_pair(a, b), edges_.size()).second)
      throw std::invalid_argument("parallel edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
    edges_.push_back({a, b, w});
  }

  int num_nodes() const { return static_cast<int>(classes_.size()); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  NodeClass node_class(int v) const { return classes_[v]; }

  const GraphEdge* find_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = index_.find({a, b});
    return it == index_.end() ? nullptr : &edges_[it->second];
  }

 private:
  std::vector<NodeClass> classes_;
  std::vector<GraphEdge> edges_;
  std::map<std::pair<int, int>, std::size_t> index_;
};

struct Matching {
  std::vector<GraphEdge> edges;  // sorted
  Weight weight{0};
  bool perfect = false;
};

namespace detail {

inline Matching make_matching(const WeightedGraph& g, std::vector<GraphEdge> chosen) {
  std::sort(chosen.begin(), chosen.end());
  Matching m;
  m.weight = 0;
  for (const auto& e : chosen) m.weight += e.weight;
  m.perfect = 2 * chosen.size() == static_cast<std::size_t>(g.num_nodes());
  m.edges = std::move(chosen);
  return m;
}

inline std::vector<int> run_blossom(const WeightedGraph& g, bool max_cardinality) {
  std::int64_t scale = 1;
  for (const auto& e : g.edges()) scale = std::lcm(scale, e.weight.denominator());
  std::vector<IntEdge> ints;
  ints.reserve(g.num_edges());
  // Doubling keeps every dual update integral.
  for (const auto& e : g.edges())
    ints.push_back({e.a, e.b, 2 * (e.weight.numerator() * (scale / e.weight.denominator()))});
  return BlossomMatcher(g.num_nodes(), ints, max_cardinality).solve();
}

inline Matching matching_from_mates(const WeightedGraph& g, const std::vector<int>& mate) {
  std::vector<GraphEdge> chosen;
  for (int v = 0; v < g.num_nodes(); ++v)
    if (mate[v] > v) chosen.push_back(*g.find_edge(v, mate[v]));
  return make_matching(g, std::move(chosen));
}

}  // namespace detail

/// Maximum weight matching, not necessarily perfect.
inline Matching max_weight_matching(const WeightedGraph& g) {
  return detail::matching_from_mates(g, detail::run_blossom(g, false));
}

/// Maximum weight perfect matching. Deterministic for a fixed graph (edge
/// insertion order included). Throws NoPerfectMatching with the nodes a
/// maximum cardinality matching leaves exposed.
inline Matching max_weight_perfect_matching(const WeightedGraph& g) {
  if (g.num_nodes() % 2 != 0) {
    std::vector<int> all(g.num_nodes());
    std::iota(all.begin(), all.end(), 0);
    throw NoPerfectMatching("odd number of nodes", std::move(all));
  }
  auto mate = detail::run_blossom(g, true);
  std::vector<int> exposed;
  for (int v = 0; v < g.num_nodes(); ++v)
    if (mate[v] < 0) exposed.push_back(v);
  if (!exposed.empty())
    throw NoPerfectMatching("graph has no perfect matching: " + std::to_string(exposed.size()) +
                                " nodes cannot be covered",
                            std::move(exposed));
  return detail::matching_from_mates(g, mate);
}

/// Exhaustive maximum weight perfect matching for at most 16 nodes. Among
/// optimal matchings returns the lexicographically smallest sorted edge list.
inline Matching brute_force_perfect_matching(const WeightedGraph& g) {
  const int nv = g.num_nodes();
  if (nv > 16) throw std::invalid_argument("brute force matching refuses more than 16 nodes");
  if (nv % 2 != 0) throw NoPerfectMatching("odd number of nodes", {});
  std::vector<std::vector<const GraphEdge*>> incident(nv);
  for (const auto& e : g.edges()) incident[e.a].push_back(&e);
  for (auto& lst : incident)
    std::sort(lst.begin(), lst.end(), [](auto* x, auto* y) { return x->b < y->b; });

  std::vector<bool> covered(nv, false);
  std::vector<GraphEdge> current;
  std::vector<GraphEdge> best;
  Weight current_weight(0);
  Weight best_weight(0);
  bool found = false;

  auto recurse = [&](auto&& self) -> void {
    int v = 0;
    while (v < nv && covered[v]) ++v;
    if (v == nv) {
      if (!found || current_weight > best_weight) {
        found = true;
        best_weight = current_weight;
        best = current;
      }
      return;
    }
    covered[v] = true;
    for (const GraphEdge* e : incident[v]) {
      if (covered[e->b]) continue;
      covered[e->b] = true;
      current.push_back(*e);
      current_weight += e->weight;
      self(self);
      current_weight -= e->weight;
      current.pop_back();
      covered[e->b] = false;
    }
    covered[v] = false;
  };
  recurse(recurse);
  if (!found) throw NoPerfectMatching("graph has no perfect matching", {});
  return detail::make_matching(g, std::move(best));
}

/// Padded agreement graph of a UET instance with n > D >= 1.
inline WeightedGraph build_transformed_graph(const Instance& inst) {
  if (!inst.is_uet()) throw PreconditionError("transformed graph needs unit processing times");
  const int n = inst.num_jobs();
  const Time d = inst.deadline();
  if (d < 1 || d >= n)
    throw PreconditionError("transformed graph needs n > D >= 1 (n=" + std::to_string(n) +
                            ", D=" + std::to_string(d) + ")");
  const int padding = static_cast<int>(2 * (n - d));
  std::vector<NodeClass> classes(2 * n + padding, NodeClass::padding);
  std::fill(classes.begin(), classes.begin() + n, NodeClass::original);
  std::fill(classes.begin() + n, classes.begin() + 2 * n, NodeClass::duplicate);
  WeightedGraph g(std::move(classes));
  for (JobId j = 0; j < n; ++j)
    for (JobId h = j + 1; h < n; ++h)
      if (!inst.in_conflict(j, h)) g.add_edge(j, h, inst.weight(j) + inst.weight(h));
  for (JobId j = 0; j < n; ++j) g.add_edge(j, n + j, inst.weight(j));
  for (int q = 0; q < padding; ++q)
    for (int v = 0; v < 2 * n; ++v) g.add_edge(v, 2 * n + q, Weight(0));
  return g;
}

/// Two-machine schedule induced by a perfect matching of the padded graph.
/// Pair and singleton edges fill slots 1..D ordered by their smallest job.
inline Schedule matching_to_schedule(const Instance& inst, const Matching& m) {
  const int n = inst.num_jobs();
  const Time d = inst.deadline();
  const int total = 4 * n - 2 * static_cast<int>(d);
  if (!m.perfect || static_cast<int>(m.edges.size()) * 2 != total)
    throw StructuralError("matching is not perfect on the padded graph");
  std::vector<std::pair<JobId, JobId>> slots;  // second == -1 for a singleton
  std::vector<bool> covered(total, false);
  for (const auto& e : m.edges) {
    if (e.a < 0 || e.b >= total || covered[e.a] || covered[e.b])
      throw StructuralError("matching edges overlap or reference unknown nodes");
    covered[e.a] = covered[e.b] = true;
    if (e.b >= 2 * n) continue;  // padding edge
    if (e.b < n) {
      if (inst.in_conflict(e.a, e.b)) throw StructuralError("matching pairs conflicting jobs");
      slots.emplace_back(e.a, e.b);
    } else if (e.b == e.a + n) {
      slots.emplace_back(e.a, -1);
    } else {
      throw StructuralError("matching edge is not in the padded graph");
    }
  }
  if (static_cast<Time>(slots.size()) != d)
    throw StructuralError("matching has " + std::to_string(slots.size()) +
                          " job edges, expected D=" + std::to_string(d));
  std::sort(slots.begin(), slots.end());

  Schedule s;
  s.machines.resize(inst.num_machines());
  std::vector<bool> on_time(n, false);
  for (std::size_t t = 0; t < slots.size(); ++t) {
    auto [a, b] = slots[t];
    s.machines[0].push_back({a, static_cast<Time>(t)});
    on_time[a] = true;
    if (b >= 0) {
      s.machines[1].push_back({b, static_cast<Time>(t)});
      on_time[b] = true;
    }
  }
  for (JobId j = 0; j < n; ++j)
    if (!on_time[j]) s.tardy.push_back(j);
  return s;
}

/// Perfect matching induced by a two-machine UET schedule that uses every
/// slot 1..D. Padding nodes are paired with uncovered nodes in index order.
inline Matching schedule_to_matching(const Instance& inst, const Schedule& s) {
  const WeightedGraph g = build_transformed_graph(inst);
  const int n = inst.num_jobs();
  const Time d = inst.deadline();
  std::vector<std::vector<JobId>> slot(d);
  for (const auto& seq : s.machines)
    for (const auto& pl : seq) {
      if (pl.start < 0 || pl.start >= d) throw StructuralError("job outside slots 1..D");
      slot[pl.start].push_back(pl.job);
    }
  std::vector<GraphEdge> chosen;
  std::vector<bool> covered(2 * n, false);
  for (Time t = 0; t < d; ++t) {
    auto& jobs = slot[t];
    std::sort(jobs.begin(), jobs.end());
    if (jobs.empty() || jobs.size() > 2)
      throw PreconditionError("every slot must hold one or two jobs to induce a perfect matching");
    if (jobs.size() == 2) {
      const GraphEdge* e = g.find_edge(jobs[0], jobs[1]);
      if (!e) throw StructuralError("schedule pairs conflicting jobs");
      chosen.push_back(*e);
      covered[jobs[0]] = covered[jobs[1]] = true;
    } else {
      chosen.push_back(*g.find_edge(jobs[0], n + jobs[0]));
      covered[jobs[0]] = covered[n + jobs[0]] = true;
    }
  }
  int q = 2 * n;
  for (int v = 0; v < 2 * n; ++v)
    if (!covered[v]) chosen.push_back(*g.find_edge(v, q++));
  return detail::make_matching(g, std::move(chosen));
}

/// DIMACS-like edge list: "p edge <nodes> <edges>" then "e a b w", 1-based.
inline void write_dimacs(const WeightedGraph& g, std::ostream& out) {
  out << "p edge " << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges())
    out << "e " << e.a + 1 << ' ' << e.b + 1 << ' ' << format_weight(e.weight) << '\n';
}

inline WeightedGraph read_dimacs(std::istream& in) {
  std::string line;
  std::optional<WeightedGraph> g;
  std::size_t declared_edges = 0;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      int nodes = 0;
      ss >> kind >> nodes >> declared_edges;
      if (!ss || kind != "edge") throw std::invalid_argument("bad DIMACS problem line");
      g.emplace(nodes);
    } else if (tag == "e") {
      if (!g) throw std::invalid_argument("DIMACS edge before problem line");
      int a = 0;
      int b = 0;
      std::string w;
      ss >> a >> b >> w;
      if (!ss) throw std::invalid_argument("bad DIMACS edge line");
      g->add_edge(a - 1, b - 1, parse_weight(w));
    } else {
      throw std::invalid_argument("unknown DIMACS line '" + tag + "'");
    }
  }
  if (!g) throw std::invalid_argument("missing DIMACS problem line");
  if (g->num_edges() != declared_edges) throw std::invalid_argument("DIMACS edge count mismatch");
  return std::move(*g);
}

}  // namespace confsched

#endif  // CONFSCHED_MATCHING_HPP
