#ifndef CONFSCHED_BENCH_HPP
#define CONFSCHED_BENCH_HPP

// Benchmark runs over a generated corpus.
//
// CSV columns, in order:
//   instance,method,m,n,deadline,F,ref,ref_status,error_pct,time_s,seed,valid
// F and ref are exact weights ("7" or "7/3"); error_pct has two decimals.
// Rows for one configuration are followed by an aggregate row whose instance
// field is "MEAN" and which carries the mean error and mean time per method.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "confsched/bnb.hpp"
#include "confsched/core.hpp"
#include "confsched/gen.hpp"
#include "confsched/heuristics.hpp"
#include "confsched/io.hpp"
#include "confsched/uet.hpp"

namespace confsched {

inline const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> names = {"uet2", "familyA", "wspt", "vns", "ivns", "bnb"};
  return names;
}

struct SolveOptions {
  SearchConfig search;
  BnbLimits limits;
};

struct SolveOutcome {
  Schedule schedule;
  Weight value{0};
  double seconds = 0.0;
  /// Only set for bnb.
  std::optional<BnbResult> bnb;
};

/// Runs one method; seconds covers the solve call only.
inline SolveOutcome run_method(const Instance& inst, const std::string& method, const SolveOptions& opt) {
  SolveOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  if (method == "uet2") {
    out.schedule = solve_uet_two_machines(inst);
  } else if (method == "familyA") {
    out.schedule = solve_uet_family_a(inst);
  } else if (method == "wspt") {
    out.schedule = wspt_list_schedule(inst);
  } else if (method == "vns") {
    out.schedule = vns(inst, wspt_list_schedule(inst), opt.search);
  } else if (method == "ivns") {
    out.schedule = ivns(inst, opt.search);
  } else if (method == "bnb") {
    BnbResult r = solve_bnb(inst, opt.limits);
    out.schedule = *r.incumbent;
    out.bnb = std::move(r);
  } else {
    throw PreconditionError("unknown method '" + method + "'");
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.value = on_time_weight(inst, out.schedule);
  return out;
}

struct BenchRecord {
  std::string instance;
  std::string method;
  int m = 0;
  int n = 0;
  Time deadline = 0;
  Weight value{0};
  Weight reference{0};
  /// "optimal" or "bound-only".
  std::string reference_status;
  double error_pct = 0.0;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  bool valid = false;
};

inline double relative_error_pct(const Weight& value, const Weight& reference) {
  if (reference == 0) return 0.0;
  return 100.0 * to_double((reference - value) / reference);
}

struct BenchOptions {
  std::vector<std::string> methods = {"wspt", "vns", "ivns", "bnb"};
  SolveOptions solve;
  int threads = 1;
};

namespace detail {

inline std::vector<BenchRecord> bench_instance(const Instance& inst, const std::string& id, std::uint64_t seed,
                                               const BenchOptions& opt) {
  // The reference always comes from branch-and-bound, even if bnb is not a
  // listed method.
  std::optional<SolveOutcome> bnb_run;
  auto reference_run = [&]() -> const SolveOutcome& {
    if (!bnb_run) bnb_run = run_method(inst, "bnb", opt.solve);
    return *bnb_run;
  };
  std::vector<BenchRecord> rows;
  for (const auto& method : opt.methods) {
    const SolveOutcome out = method == "bnb" ? reference_run() : run_method(inst, method, opt.solve);
    const BnbResult& ref = *reference_run().bnb;
    BenchRecord r;
    r.instance = id;
    r.method = method;
    r.m = inst.num_machines();
    r.n = inst.num_jobs();
    r.deadline = inst.deadline();
    r.value = out.value;
    r.reference = ref.status == BnbStatus::optimal ? ref.value : ref.upper_bound;
    r.reference_status = status_name(ref.status);
    r.error_pct = relative_error_pct(r.value, r.reference);
    r.seconds = out.seconds;
    r.seed = seed;
    r.valid = !validate_schedule(inst, out.schedule).has_value();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace detail

/// Benchmarks every instance listed in dir/manifest.json.
inline std::vector<BenchRecord> run_bench(const std::filesystem::path& dir, const BenchOptions& opt) {
  for (const auto& m : opt.methods)
    if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end())
      throw PreconditionError("unknown method '" + m + "'");
  const Corpus corpus = read_corpus_manifest(dir);
  std::vector<std::vector<BenchRecord>> per_instance(corpus.entries.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.entries.size(); i = next++) {
      try {
        const auto& e = corpus.entries[i];
        const Instance inst = read_instance_file((dir / e.file).string());
        per_instance[i] = detail::bench_instance(inst, e.id, e.seed, opt);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, opt.threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::vector<BenchRecord> rows;
  for (auto& v : per_instance)
    for (auto& r : v) rows.push_back(std::move(r));
  std::sort(rows.begin(), rows.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.instance, a.method) < std::tie(b.instance, b.method);
  });
  return rows;
}

struct BenchSummary {
  std::string method;
  std::size_t count = 0;
  double mean_error_pct = 0.0;
  double mean_seconds = 0.0;
};

inline std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& rows) {
  std::map<std::string, BenchSummary> by_method;
  for (const auto& r : rows) {
    auto& s = by_method[r.method];
    s.method = r.method;
    ++s.count;
    s.mean_error_pct += r.error_pct;
    s.mean_seconds += r.seconds;
  }
  std::vector<BenchSummary> out;
  for (auto& [name, s] : by_method) {
    s.mean_error_pct /= static_cast<double>(s.count);
    s.mean_seconds /= static_cast<double>(s.count);
    out.push_back(s);
  }
  return out;
}

inline const char* kBenchCsvHeader =
    "instance,method,m,n,deadline,F,ref,ref_status,error_pct,time_s,seed,valid";

inline std::string fixed_decimals(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& rows) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.instance << ',' << r.method << ',' << r.m << ',' << r.n << ',' << r.deadline << ','
        << format_weight(r.value) << ',' << format_weight(r.reference) << ',' << r.reference_status << ','
        << fixed_decimals(r.error_pct, 2) << ',' << fixed_decimals(r.seconds, 6) << ',' << r.seed << ','
        << (r.valid ? 1 : 0) << '\n';
  }
  if (rows.empty()) return;
  const auto& first = rows.front();
  for (const auto& s : summarize(rows)) {
    out << "MEAN," << s.method << ',' << first.m << ',' << first.n << ",,,,," << fixed_decimals(s.mean_error_pct, 2)
        << ',' << fixed_decimals(s.mean_seconds, 6) << ",,\n";
  }
}

inline std::string bench_csv_string(const std::vector<BenchRecord>& rows) {
  std::ostringstream out;
  write_bench_csv(out, rows);
  return out.str();
}

}  // namespace confsched

#endif  // CONFSCHED_BENCH_HPP
