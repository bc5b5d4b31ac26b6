#ifndef CONFSCHED_IO_HPP
#define CONFSCHED_IO_HPP

// Instance text files and schedule JSON.
//
// Instance format, one instance per file, jobs numbered from 1:
//   n m D
//   p_1 ... p_n
//   w_1 ... w_n          (integers or fractions a/b)
//   e
//   j g                  (e lines, one conflict pair each)
//
// Schedule format:
//   {"machines": [[[job, start], ...], ...], "tardy": [job, ...]}

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "confsched/core.hpp"

namespace confsched {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-blank line split into tokens.
  std::vector<std::string> next(const char* what) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return tokens;
    }
    throw ParseError(line_no_ + 1, std::string("unexpected end of file, expected ") + what);
  }

  bool at_end() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return false;
    }
    return true;
  }

  int line() const { return line_no_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

inline std::int64_t parse_int(const std::string& tok, int line, const char* what) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + tok + "'");
  return v;
}

}  // namespace detail

inline Instance read_instance(std::istream& in) {
  detail::LineReader reader(in);
  auto header = reader.next("header 'n m D'");
  int line = reader.line();
  if (header.size() != 3) throw ParseError(line, "header must be 'n m D'");
  const auto n = detail::parse_int(header[0], line, "n");
  const auto m = detail::parse_int(header[1], line, "m");
  const auto d = detail::parse_int(header[2], line, "D");
  if (n < 1) throw ParseError(line, "n must be >= 1");
  if (m < 2) throw ParseError(line, "m must be >= 2");
  if (d < 0) throw ParseError(line, "D must be >= 0");

  auto p_tokens = reader.next("processing times");
  line = reader.line();
  if (static_cast<std::int64_t>(p_tokens.size()) != n)
    throw ParseError(line, "expected " + std::to_string(n) + " processing times");
  std::vector<Time> p;
  for (const auto& tok : p_tokens) {
    p.push_back(detail::parse_int(tok, line, "processing time"));
    if (p.back() < 1) throw ParseError(line, "processing times must be >= 1");
  }

  auto w_tokens = reader.next("weights");
  line = reader.line();
  if (static_cast<std::int64_t>(w_tokens.size()) != n)
    throw ParseError(line, "expected " + std::to_string(n) + " weights");
  std::vector<Weight> w;
  for (const auto& tok : w_tokens) {
    try {
      w.push_back(parse_weight(tok));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
    if (w.back() <= 0) throw ParseError(line, "weights must be > 0");
  }

  auto e_tokens = reader.next("conflict count");
  line = reader.line();
  if (e_tokens.size() != 1) throw ParseError(line, "expected a single conflict count");
  const auto e = detail::parse_int(e_tokens[0], line, "conflict count");
  if (e < 0) throw ParseError(line, "conflict count must be >= 0");

  std::vector<std::pair<JobId, JobId>> edges;
  std::set<std::pair<JobId, JobId>> seen;
  for (std::int64_t k = 0; k < e; ++k) {
    auto tokens = reader.next("conflict pair");
    line = reader.line();
    if (tokens.size() != 2) throw ParseError(line, "conflict line must be 'j g'");
    auto a = detail::parse_int(tokens[0], line, "job");
    auto b = detail::parse_int(tokens[1], line, "job");
    if (a < 1 || a > n || b < 1 || b > n) throw ParseError(line, "conflict references unknown job");
    if (a == b) throw ParseError(line, "conflict self-loop");
    const auto lo = static_cast<JobId>(std::min(a, b) - 1);
    const auto hi = static_cast<JobId>(std::max(a, b) - 1);
    if (!seen.emplace(lo, hi).second)
      throw ParseError(line, "duplicate conflict pair " + tokens[0] + " " + tokens[1]);
    edges.emplace_back(static_cast<JobId>(a - 1), static_cast<JobId>(b - 1));
  }
  if (!reader.at_end()) throw ParseError(reader.line(), "trailing content after conflict list");

  try {
    return Instance(static_cast<int>(m), d, std::move(p), std::move(w), std::move(edges));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(0, ex.what());
  }
}

inline void write_instance(const Instance& inst, std::ostream& out) {
  out << inst.num_jobs() << ' ' << inst.num_machines() << ' ' << inst.deadline() << '\n';
  for (JobId j = 0; j < inst.num_jobs(); ++j) out << (j ? " " : "") << inst.processing(j);
  out << '\n';
  for (JobId j = 0; j < inst.num_jobs(); ++j) out << (j ? " " : "") << format_weight(inst.weight(j));
  out << '\n' << inst.num_conflicts() << '\n';
  for (auto [a, b] : inst.conflicts()) out << a + 1 << ' ' << b + 1 << '\n';
}

inline std::string instance_to_string(const Instance& inst) {
  std::ostringstream ss;
  write_instance(inst, ss);
  return ss.str();
}

inline Instance instance_from_string(const std::string& text) {
  std::istringstream ss(text);
  return read_instance(ss);
}

inline Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  return read_instance(in);
}

inline void write_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file " + path);
  write_instance(inst, out);
}

/// FNV-1a over the canonical instance text.
inline std::uint64_t instance_fingerprint(const Instance& inst) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : instance_to_string(inst)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline nlohmann::json schedule_to_json(const Schedule& s) {
  nlohmann::json machines = nlohmann::json::array();
  for (const auto& seq : s.machines) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& pl : seq) row.push_back({pl.job + 1, pl.start});
    machines.push_back(std::move(row));
  }
  nlohmann::json tardy = nlohmann::json::array();
  for (JobId j : s.tardy) tardy.push_back(j + 1);
  return {{"machines", std::move(machines)}, {"tardy", std::move(tardy)}};
}

/// Schedule from JSON. Job range checks are left to validate_schedule.
inline Schedule schedule_from_json(const nlohmann::json& j) {
  Schedule s;
  try {
    for (const auto& row : j.at("machines")) {
      std::vector<Placement> seq;
      for (const auto& entry : row) {
        if (!entry.is_array() || entry.size() != 2)
          throw ParseError(0, "schedule entries must be [job, start]");
        seq.push_back({entry[0].get<int>() - 1, entry[1].get<Time>()});
      }
      s.machines.push_back(std::move(seq));
    }
    for (const auto& t : j.at("tardy")) s.tardy.push_back(t.get<int>() - 1);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed schedule: ") + e.what());
  }
  return s;
}

inline std::string schedule_to_string(const Schedule& s) {
  return schedule_to_json(s).dump() + "\n";
}

inline Schedule schedule_from_string(const std::string& text) {
  try {
    return schedule_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("malformed schedule JSON: ") + e.what());
  }
}

inline Schedule read_schedule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open schedule file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return schedule_from_string(ss.str());
}

inline void write_schedule_file(const Schedule& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write schedule file " + path);
  out << schedule_to_string(s);
}

}  // namespace confsched

#endif  // CONFSCHED_IO_HPP
