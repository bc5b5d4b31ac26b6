#ifndef CONFSCHED_MILP_HPP
#define CONFSCHED_MILP_HPP

// Solver-neutral integer programs for the problem and their LP-file form.
//
// Position-indexed model (ILP1):
//   u_j_k_l  job j on time at position k of machine l   (binary)
//   U_j      job j tardy                                (binary)
//   t_k_l    start of position k on machine l           (continuous)
//   tau_j    start of job j                             (continuous)
//   y_j_g    for conflicting j, g: 0 if j precedes g     (binary)
// Time-indexed model (ILP2):
//   v_j_t    job j starts at time t, t = 0..D-p_j        (binary)
//   U_j, y_j_g as above.
// Both minimise sum_j w_j U_j. Job and position indices in names are 1-based,
// times 0-based.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "confsched/core.hpp"
#include "confsched/io.hpp"

namespace confsched {

enum class Formulation { ilp1, ilp2 };

inline std::string formulation_name(Formulation f) { return f == Formulation::ilp1 ? "ILP1" : "ILP2"; }

enum class VarKind { binary, continuous };
enum class Sense { le, eq, ge };

struct Variable {
  std::string name;
  VarKind kind;
  double lower = 0.0;
  double upper = 1.0;  // +infinity for unbounded continuous variables
  bool operator==(const Variable&) const = default;
};

struct Term {
  int var;
  double coef;
  bool operator==(const Term&) const = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense;
  double rhs;
  bool operator==(const Constraint&) const = default;
};

class IlpModel {
 public:
  Formulation formulation = Formulation::ilp2;
  std::uint64_t fingerprint = 0;
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  /// Minimised.
  std::vector<Term> objective;

  int add_binary(std::string name) { return add_var({std::move(name), VarKind::binary, 0.0, 1.0}); }
  int add_continuous(std::string name) {
    return add_var({std::move(name), VarKind::continuous, 0.0, std::numeric_limits<double>::infinity()});
  }
  int add_var(Variable v) {
    if (index_.count(v.name)) throw std::invalid_argument("duplicate variable " + v.name);
    index_.emplace(v.name, static_cast<int>(variables.size()));
    variables.push_back(std::move(v));
    return static_cast<int>(variables.size()) - 1;
  }
  void add_constraint(std::string name, std::vector<Term> terms, Sense sense, double rhs) {
    for (const auto& t : terms)
      if (t.var < 0 || t.var >= static_cast<int>(variables.size()))
        throw std::invalid_argument("constraint " + name + " references an undeclared variable");
    constraints.push_back({std::move(name), std::move(terms), sense, rhs});
  }

  std::optional<int> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  int at(const std::string& name) const {
    auto v = find(name);
    if (!v) throw std::out_of_range("no variable " + name);
    return *v;
  }

  std::size_t count(VarKind kind) const {
    return static_cast<std::size_t>(std::count_if(variables.begin(), variables.end(),
                                                  [&](const Variable& v) { return v.kind == kind; }));
  }
  std::size_t count_prefix(const std::string& prefix) const {
    return static_cast<std::size_t>(std::count_if(variables.begin(), variables.end(), [&](const Variable& v) {
      return v.name.rfind(prefix, 0) == 0;
    }));
  }

 private:
  std::unordered_map<std::string, int> index_;
};

namespace detail {

inline std::string vname(const char* prefix, std::initializer_list<std::int64_t> idx) {
  std::string s = prefix;
  for (auto i : idx) s += "_" + std::to_string(i);
  return s;
}

inline double weight_coef(const Weight& w) { return to_double(w); }

inline void add_objective_and_conflicts(IlpModel& model, const Instance& inst,
                                        const std::vector<int>& tardy_var) {
  for (JobId j = 0; j < inst.num_jobs(); ++j)
    model.objective.push_back({tardy_var[j], weight_coef(inst.weight(j))});
}

}  // namespace detail

/// k_max = min(n, floor(D / min_j p_j)).
inline int max_on_time_position(const Instance& inst) {
  return static_cast<int>(std::min<Time>(inst.num_jobs(), inst.deadline() / inst.min_processing()));
}

inline IlpModel build_ilp1(const Instance& inst) {
  using detail::vname;
  const int n = inst.num_jobs();
  const int m = inst.num_machines();
  const int kmax = max_on_time_position(inst);
  const double big_m = static_cast<double>(inst.deadline());
  IlpModel model;
  model.formulation = Formulation::ilp1;
  model.fingerprint = instance_fingerprint(inst);

  // u[j][k][l]
  std::vector<std::vector<std::vector<int>>> u(n, std::vector<std::vector<int>>(kmax, std::vector<int>(m)));
  for (JobId j = 0; j < n; ++j)
    for (int k = 0; k < kmax; ++k)
      for (int l = 0; l < m; ++l) u[j][k][l] = model.add_binary(vname("u", {j + 1, k + 1, l + 1}));
  std::vector<int> tardy(n);
  for (JobId j = 0; j < n; ++j) tardy[j] = model.add_binary(vname("U", {j + 1}));
  std::vector<std::vector<int>> t(kmax, std::vector<int>(m));
  for (int k = 0; k < kmax; ++k)
    for (int l = 0; l < m; ++l) t[k][l] = model.add_continuous(vname("t", {k + 1, l + 1}));
  std::vector<int> tau(n);
  for (JobId j = 0; j < n; ++j) tau[j] = model.add_continuous(vname("tau", {j + 1}));
  std::map<std::pair<JobId, JobId>, int> y;
  for (auto [a, b] : inst.conflicts()) {
    y[{a, b}] = model.add_binary(vname("y", {a + 1, b + 1}));
    y[{b, a}] = model.add_binary(vname("y", {b + 1, a + 1}));
  }

  detail::add_objective_and_conflicts(model, inst, tardy);

  for (JobId j = 0; j < n; ++j) {
    std::vector<Term> terms;
    for (int k = 0; k < kmax; ++k)
      for (int l = 0; l < m; ++l) terms.push_back({u[j][k][l], 1.0});
    terms.push_back({tardy[j], 1.0});
    model.add_constraint(vname("assign", {j + 1}), std::move(terms), Sense::eq, 1.0);
  }
  for (int k = 0; k < kmax; ++k)
    for (int l = 0; l < m; ++l) {
      std::vector<Term> terms;
      for (JobId j = 0; j < n; ++j) terms.push_back({u[j][k][l], 1.0});
      model.add_constraint(vname("position", {k + 1, l + 1}), std::move(terms), Sense::le, 1.0);
    }
  for (int k = 0; k + 1 < kmax; ++k)
    for (int l = 0; l < m; ++l) {
      std::vector<Term> terms{{t[k][l], 1.0}};
      for (JobId j = 0; j < n; ++j) terms.push_back({u[j][k][l], static_cast<double>(inst.processing(j))});
      terms.push_back({t[k + 1][l], -1.0});
      model.add_constraint(vname("sequence", {k + 1, l + 1}), std::move(terms), Sense::le, 0.0);
    }
  for (int k = 0; k < kmax; ++k)
    for (int l = 0; l < m; ++l) {
      std::vector<Term> terms{{t[k][l], 1.0}};
      for (JobId j = 0; j < n; ++j) terms.push_back({u[j][k][l], static_cast<double>(inst.processing(j))});
      model.add_constraint(vname("deadline", {k + 1, l + 1}), std::move(terms), Sense::le, big_m);
    }
  // tau_j + D (1 - u) >= t  and  t + D (1 - u) >= tau_j
  for (JobId j = 0; j < n; ++j)
    for (int k = 0; k < kmax; ++k)
      for (int l = 0; l < m; ++l) {
        model.add_constraint(vname("link_lo", {j + 1, k + 1, l + 1}),
                             {{tau[j], 1.0}, {t[k][l], -1.0}, {u[j][k][l], -big_m}}, Sense::ge, -big_m);
        model.add_constraint(vname("link_hi", {j + 1, k + 1, l + 1}),
                             {{t[k][l], 1.0}, {tau[j], -1.0}, {u[j][k][l], -big_m}}, Sense::ge, -big_m);
      }
  // tau_j + p_j (1 - U_j) - D y_jg <= tau_g
  for (auto [a, b] : inst.conflicts()) {
    for (auto [j, g] : {std::pair{a, b}, std::pair{b, a}}) {
      const double pj = static_cast<double>(inst.processing(j));
      model.add_constraint(vname("precede", {j + 1, g + 1}),
                           {{tau[j], 1.0}, {tardy[j], -pj}, {y[{j, g}], -big_m}, {tau[g], -1.0}}, Sense::le, -pj);
    }
    model.add_constraint(vname("exclusive", {a + 1, b + 1}), {{y[{a, b}], 1.0}, {y[{b, a}], 1.0}}, Sense::le, 1.0);
  }
  return model;
}

inline IlpModel build_ilp2(const Instance& inst) {
  using detail::vname;
  const int n = inst.num_jobs();
  const Time d = inst.deadline();
  const double big_m = static_cast<double>(d);
  IlpModel model;
  model.formulation = Formulation::ilp2;
  model.fingerprint = instance_fingerprint(inst);

  std::vector<std::vector<int>> v(n);
  for (JobId j = 0; j < n; ++j)
    for (Time t = 0; t + inst.processing(j) <= d; ++t) v[j].push_back(model.add_binary(vname("v", {j + 1, t})));
  std::vector<int> tardy(n);
  for (JobId j = 0; j < n; ++j) tardy[j] = model.add_binary(vname("U", {j + 1}));
  std::map<std::pair<JobId, JobId>, int> y;
  for (auto [a, b] : inst.conflicts()) {
    y[{a, b}] = model.add_binary(vname("y", {a + 1, b + 1}));
    y[{b, a}] = model.add_binary(vname("y", {b + 1, a + 1}));
  }

  detail::add_objective_and_conflicts(model, inst, tardy);

  for (JobId j = 0; j < n; ++j) {
    std::vector<Term> terms;
    for (int var : v[j]) terms.push_back({var, 1.0});
    terms.push_back({tardy[j], 1.0});
    model.add_constraint(vname("assign", {j + 1}), std::move(terms), Sense::eq, 1.0);
  }
  for (Time t = 0; t < d; ++t) {
    std::vector<Term> terms;
    for (JobId j = 0; j < n; ++j) {
      const Time p = inst.processing(j);
      for (Time s = std::max<Time>(0, t - p + 1); s <= std::min<Time>(t, d - p); ++s)
        terms.push_back({v[j][static_cast<std::size_t>(s)], 1.0});
    }
    if (terms.empty()) continue;
    model.add_constraint(vname("capacity", {t}), std::move(terms), Sense::le,
                         static_cast<double>(inst.num_machines()));
  }
  // sum t v_jt + p_j (1 - U_j) - D y_jg <= sum t v_gt
  for (auto [a, b] : inst.conflicts()) {
    for (auto [j, g] : {std::pair{a, b}, std::pair{b, a}}) {
      const double pj = static_cast<double>(inst.processing(j));
      std::vector<Term> terms;
      for (std::size_t t = 1; t < v[j].size(); ++t) terms.push_back({v[j][t], static_cast<double>(t)});
      terms.push_back({tardy[j], -pj});
      terms.push_back({y[{j, g}], -big_m});
      for (std::size_t t = 1; t < v[g].size(); ++t) terms.push_back({v[g][t], -static_cast<double>(t)});
      model.add_constraint(vname("precede", {j + 1, g + 1}), std::move(terms), Sense::le, -pj);
    }
    model.add_constraint(vname("exclusive", {a + 1, b + 1}), {{y[{a, b}], 1.0}, {y[{b, a}], 1.0}}, Sense::le, 1.0);
  }
  return model;
}

inline IlpModel build_model(const Instance& inst, Formulation f) {
  return f == Formulation::ilp1 ? build_ilp1(inst) : build_ilp2(inst);
}

// ---------------------------------------------------------------------------
// Assignments

/// Variable values indexed like IlpModel::variables.
using Assignment = std::vector<double>;

/// First constraint or bound violated by the assignment, if any.
inline std::optional<std::string> check_assignment(const IlpModel& model, const Assignment& x,
                                                   double tol = 1e-6) {
  if (x.size() != model.variables.size()) return "assignment size differs from variable count";
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& var = model.variables[i];
    if (x[i] < var.lower - tol || x[i] > var.upper + tol) return "bound of " + var.name;
    if (var.kind == VarKind::binary && std::abs(x[i] - std::round(x[i])) > tol) return "integrality of " + var.name;
  }
  for (const auto& c : model.constraints) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coef * x[static_cast<std::size_t>(t.var)];
    const bool ok = c.sense == Sense::le ? lhs <= c.rhs + tol
                    : c.sense == Sense::ge ? lhs >= c.rhs - tol
                                           : std::abs(lhs - c.rhs) <= tol;
    if (!ok) return "constraint " + c.name;
  }
  return std::nullopt;
}

inline double objective_of(const IlpModel& model, const Assignment& x) {
  double z = 0.0;
  for (const auto& t : model.objective) z += t.coef * x[static_cast<std::size_t>(t.var)];
  return z;
}

namespace detail {

inline void set_y_values(const IlpModel& model, const Instance& inst, const std::vector<Time>& start,
                         Assignment& x) {
  for (auto [a, b] : inst.conflicts()) {
    // y_jg = 0 means j precedes g. A tardy job counts as preceding its
    // conflicting jobs: its completion term vanishes and its start sum is 0.
    const bool a_first = start[a] < 0 || (start[b] >= 0 && start[a] + inst.processing(a) <= start[b]);
    x[static_cast<std::size_t>(model.at(vname("y", {a + 1, b + 1})))] = a_first ? 0.0 : 1.0;
    x[static_cast<std::size_t>(model.at(vname("y", {b + 1, a + 1})))] = a_first ? 1.0 : 0.0;
  }
}

inline std::vector<Time> start_times(const Instance& inst, const Schedule& s) {
  std::vector<Time> start(inst.num_jobs(), -1);
  for (const auto& seq : s.machines)
    for (const auto& pl : seq) start[pl.job] = pl.start;
  return start;
}

}  // namespace detail

/// Model assignment encoding a valid schedule. Tardy jobs get tau_j = 0 in
/// ILP1 and precede every job they conflict with.
inline Assignment assignment_from_schedule(const IlpModel& model, const Instance& inst, const Schedule& s) {
  using detail::vname;
  if (auto v = validate_schedule(inst, s)) throw ValidationError(*v);
  Assignment x(model.variables.size(), 0.0);
  const auto start = detail::start_times(inst, s);
  auto set = [&](const std::string& name, double value) { x[static_cast<std::size_t>(model.at(name))] = value; };
  for (JobId j : s.tardy) set(vname("U", {j + 1}), 1.0);
  if (model.formulation == Formulation::ilp2) {
    for (JobId j = 0; j < inst.num_jobs(); ++j)
      if (start[j] >= 0) set(vname("v", {j + 1, start[j]}), 1.0);
  } else {
    const int kmax = max_on_time_position(inst);
    for (int l = 0; l < inst.num_machines(); ++l) {
      const auto& seq = s.machines[static_cast<std::size_t>(l)];
      for (std::size_t k = 0; k < seq.size(); ++k) {
        set(vname("u", {seq[k].job + 1, static_cast<std::int64_t>(k) + 1, l + 1}), 1.0);
        set(vname("t", {static_cast<std::int64_t>(k) + 1, l + 1}), static_cast<double>(seq[k].start));
      }
      // Empty positions start where the machine's last job ends.
      Time tail = seq.empty() ? 0 : seq.back().start + inst.processing(seq.back().job);
      for (int k = static_cast<int>(seq.size()); k < kmax; ++k)
        set(vname("t", {k + 1, l + 1}), static_cast<double>(tail));
    }
    for (JobId j = 0; j < inst.num_jobs(); ++j)
      set(vname("tau", {j + 1}), start[j] >= 0 ? static_cast<double>(start[j]) : 0.0);
  }
  detail::set_y_values(model, inst, start, x);
  return x;
}

/// Schedule encoded by an integral feasible assignment. ILP1 reads machines
/// and starts from u and t; ILP2 reads starts from v and hands machines out
/// in start order to the lowest-indexed free machine.
inline Schedule extract_schedule(const Instance& inst, const IlpModel& model, const Assignment& x) {
  using detail::vname;
  if (auto bad = check_assignment(model, x)) throw ValidationError(Violation{"infeasible-assignment", {}, std::nullopt, *bad});
  auto value = [&](const std::string& name) {
    auto idx = model.find(name);
    return idx ? x[static_cast<std::size_t>(*idx)] : 0.0;
  };
  const int n = inst.num_jobs();
  const int m = inst.num_machines();
  Schedule s;
  s.machines.resize(m);
  if (model.formulation == Formulation::ilp1) {
    const int kmax = max_on_time_position(inst);
    std::vector<bool> on_time(n, false);
    for (int l = 0; l < m; ++l)
      for (int k = 0; k < kmax; ++k)
        for (JobId j = 0; j < n; ++j)
          if (value(vname("u", {j + 1, k + 1, l + 1})) > 0.5) {
            s.machines[l].push_back({j, std::llround(value(vname("t", {k + 1, l + 1})))});
            on_time[j] = true;
          }
    for (auto& seq : s.machines)
      std::stable_sort(seq.begin(), seq.end(), [](auto& a, auto& b) { return a.start < b.start; });
    for (JobId j = 0; j < n; ++j)
      if (!on_time[j]) s.tardy.push_back(j);
  } else {
    std::vector<std::pair<Time, JobId>> starts;
    for (JobId j = 0; j < n; ++j) {
      bool found = false;
      for (Time t = 0; t + inst.processing(j) <= inst.deadline(); ++t)
        if (value(vname("v", {j + 1, t})) > 0.5) {
          starts.emplace_back(t, j);
          found = true;
          break;
        }
      if (!found) s.tardy.push_back(j);
    }
    std::sort(starts.begin(), starts.end());
    std::vector<Time> free(m, 0);
    for (auto [t, j] : starts) {
      int l = 0;
      while (l < m && free[l] > t) ++l;
      if (l == m) throw ValidationError(Violation{"machine-overlap", {j}, std::nullopt, "no free machine at time " + std::to_string(t)});
      s.machines[l].push_back({j, t});
      free[l] = t + inst.processing(j);
    }
  }
  if (auto v = validate_schedule(inst, s)) throw ValidationError(*v);
  return s;
}

// ---------------------------------------------------------------------------
// LP text format

namespace detail {

inline std::string format_number(double v) {
  if (std::isfinite(v) && v == std::nearbyint(v) && std::abs(v) < 1e15) {
    std::ostringstream ss;
    ss << static_cast<std::int64_t>(v);
    return ss.str();
  }
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

inline void write_expression(std::ostream& out, const IlpModel& model, const std::vector<Term>& terms) {
  int on_line = 0;
  bool first = true;
  for (const auto& t : terms) {
    if (on_line == 8) {
      out << "\n   ";
      on_line = 0;
    }
    const double mag = std::abs(t.coef);
    if (first) {
      if (t.coef < 0) out << " -";
    } else {
      out << (t.coef < 0 ? " -" : " +");
    }
    if (mag != 1.0) out << ' ' << format_number(mag);
    out << ' ' << model.variables[static_cast<std::size_t>(t.var)].name;
    first = false;
    ++on_line;
  }
  if (terms.empty()) out << " 0";
}

}  // namespace detail

/// Writes the model in the common LP text format (Minimize, Subject To,
/// Bounds, Binary, End). The formulation tag and instance fingerprint travel
/// in leading comment lines.
inline void write_lp(const IlpModel& model, std::ostream& out) {
  out << "\\ formulation: " << formulation_name(model.formulation) << '\n';
  out << "\\ fingerprint: " << std::hex << std::setw(16) << std::setfill('0') << model.fingerprint << std::dec
      << std::setfill(' ') << '\n';
  out << "Minimize\n obj:";
  detail::write_expression(out, model, model.objective);
  out << "\nSubject To\n";
  for (const auto& c : model.constraints) {
    out << ' ' << c.name << ':';
    detail::write_expression(out, model, c.terms);
    out << (c.sense == Sense::le ? " <= " : c.sense == Sense::ge ? " >= " : " = ") << detail::format_number(c.rhs)
        << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.kind != VarKind::continuous) continue;
    if (std::isinf(v.upper))
      out << ' ' << v.name << " >= " << detail::format_number(v.lower) << '\n';
    else
      out << ' ' << detail::format_number(v.lower) << " <= " << v.name << " <= " << detail::format_number(v.upper)
          << '\n';
  }
  out << "Binary\n";
  for (const auto& v : model.variables)
    if (v.kind == VarKind::binary) out << ' ' << v.name << '\n';
  out << "End\n";
}

inline std::string lp_to_string(const IlpModel& model) {
  std::ostringstream ss;
  write_lp(model, ss);
  return ss.str();
}

inline void export_lp(const IlpModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write LP file " + path);
  write_lp(model, out);
  if (!out) throw std::runtime_error("error writing LP file " + path);
}

/// Reads an LP file in the subset written by write_lp. Continuous variables
/// are declared in Bounds order, binaries in Binary order.
inline IlpModel parse_lp(std::istream& in) {
  IlpModel model;
  enum class Section { header, objective, constraints, bounds, binary, end } section = Section::header;
  std::vector<std::string> tokens;  // of the current section
  std::vector<std::vector<std::string>> bound_lines;
  std::vector<std::string> binaries;
  std::string line;
  int line_no = 0;
  auto keyword = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind("\\", 0) == 0) {
      std::istringstream ss(line.substr(1));
      std::string key, val;
      ss >> key >> val;
      if (key == "formulation:") model.formulation = val == "ILP1" ? Formulation::ilp1 : Formulation::ilp2;
      if (key == "fingerprint:") model.fingerprint = std::stoull(val, nullptr, 16);
      continue;
    }
    const std::string kw = keyword(line.substr(0, line.find_last_not_of(" \r") + 1));
    if (kw == "minimize") { section = Section::objective; continue; }
    if (kw == "subject to") { section = Section::constraints; continue; }
    if (kw == "bounds") { section = Section::bounds; continue; }
    if (kw == "binary" || kw == "binaries") { section = Section::binary; continue; }
    if (kw == "end") { section = Section::end; continue; }
    std::istringstream ss(line);
    std::vector<std::string> words;
    for (std::string w; ss >> w;) words.push_back(w);
    if (words.empty()) continue;
    switch (section) {
      case Section::objective:
      case Section::constraints:
        tokens.insert(tokens.end(), words.begin(), words.end());
        if (section == Section::constraints) tokens.push_back("\n");
        else tokens.push_back(" ");
        break;
      case Section::bounds: bound_lines.push_back(words); break;
      case Section::binary: binaries.insert(binaries.end(), words.begin(), words.end()); break;
      default: throw ParseError(line_no, "content outside of a section");
    }
    if (section == Section::objective) continue;
  }

  // Declare variables first so that terms can be resolved.
  for (const auto& w : bound_lines) {
    if (w.size() == 3 && w[1] == ">=")
      model.add_var({w[0], VarKind::continuous, std::stod(w[2]), std::numeric_limits<double>::infinity()});
    else if (w.size() == 5 && w[1] == "<=" && w[3] == "<=")
      model.add_var({w[2], VarKind::continuous, std::stod(w[0]), std::stod(w[4])});
    else
      throw ParseError(0, "unsupported bound line");
  }
  for (const auto& b : binaries) model.add_binary(b);

  // Re-tokenise objective and constraints from the raw text.
  // Objective tokens precede the first "\n" marker only if there were no
  // constraint lines before; write_lp always writes the objective first.
  std::size_t pos = 0;
  auto parse_terms = [&](std::vector<Term>& terms, auto stop) {
    double sign = 1.0;
    double coef = 1.0;
    while (pos < tokens.size() && !stop(tokens[pos])) {
      const std::string& tok = tokens[pos++];
      if (tok == "\n" || tok == " ") continue;
      if (tok == "+") { sign = 1.0; continue; }
      if (tok == "-") { sign = -1.0; continue; }
      char* end = nullptr;
      const double num = std::strtod(tok.c_str(), &end);
      if (end && *end == '\0') {
        coef = num;
        continue;
      }
      auto idx = model.find(tok);
      if (!idx) throw ParseError(0, "undeclared variable " + tok);
      terms.push_back({*idx, sign * coef});
      sign = 1.0;
      coef = 1.0;
    }
  };
  auto is_sense = [](const std::string& t) { return t == "<=" || t == ">=" || t == "=" || t == "<" || t == ">"; };

  // Objective: "obj:" followed by terms up to the first constraint name.
  if (pos < tokens.size() && tokens[pos].back() == ':') ++pos;
  parse_terms(model.objective, [](const std::string& t) { return t == "\n" || (t.size() > 1 && t.back() == ':'); });
  while (pos < tokens.size()) {
    if (tokens[pos] == "\n" || tokens[pos] == " ") { ++pos; continue; }
    std::string name = tokens[pos++];
    if (name.back() != ':') throw ParseError(0, "expected constraint name, got " + name);
    name.pop_back();
    std::vector<Term> terms;
    parse_terms(terms, is_sense);
    if (pos + 1 >= tokens.size()) throw ParseError(0, "constraint " + name + " lacks a right-hand side");
    const std::string s = tokens[pos++];
    const Sense sense = (s == "<=" || s == "<") ? Sense::le : (s == ">=" || s == ">") ? Sense::ge : Sense::eq;
    const double rhs = std::stod(tokens[pos++]);
    model.add_constraint(std::move(name), std::move(terms), sense, rhs);
  }
  return model;
}

inline IlpModel lp_from_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_lp(ss);
}

}  // namespace confsched

#endif  // CONFSCHED_MILP_HPP
