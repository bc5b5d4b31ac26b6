// confsched: generate, solve, validate, export and benchmark instances.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "confsched/bench.hpp"
#include "confsched/core.hpp"
#include "confsched/gen.hpp"
#include "confsched/io.hpp"
#include "confsched/milp.hpp"

using namespace confsched;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  double time_limit = 0.0;
  int threads = 1;
};

void print_violation(const Violation& v) {
  std::cout << "valid=no\nviolation=" << v.kind;
  if (!v.jobs.empty()) {
    std::cout << " jobs=";
    for (std::size_t i = 0; i < v.jobs.size(); ++i) std::cout << (i ? "," : "") << v.jobs[i] + 1;
  }
  if (v.machine) std::cout << " machine=" << *v.machine + 1;
  std::cout << "\n" << v.message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted on-time scheduling on parallel machines with conflicts"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--time-limit", g.time_limit, "Branch-and-bound time limit in seconds (0 = none)");
  app.add_option("--threads", g.threads, "Worker threads for bench")->check(CLI::PositiveNumber);
  app.fallthrough();

  // generate
  auto* gen = app.add_subcommand("generate", "Write a seeded corpus of random instances");
  GenParams gp;
  int count = 1;
  std::string gen_out;
  gen->add_option("--m", gp.m, "Machines")->required();
  gen->add_option("--n", gp.n, "Jobs")->required();
  gen->add_option("--delta", gp.delta, "Deadline tightness")->required();
  gen->add_option("--c", gp.c, "Conflict density")->required();
  gen->add_option("--count", count, "Number of instances")->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "Output directory")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  std::string solve_in, solve_out, method = "ivns";
  int restarts = SearchConfig{}.restarts;
  double shake_frac = SearchConfig{}.shake_fraction;
  std::uint64_t node_limit = 0;
  solve->add_option("instance", solve_in, "Instance file")->required();
  solve->add_option("--method", method, "Solver")->check(CLI::IsMember(known_methods()));
  solve->add_option("--out", solve_out, "Schedule output file");
  solve->add_option("--restarts", restarts, "IVNS restarts")->check(CLI::PositiveNumber);
  solve->add_option("--shake-frac", shake_frac, "Fraction of jobs moved per shake");
  solve->add_option("--node-limit", node_limit, "Branch-and-bound node limit (0 = none)");

  // validate
  auto* validate = app.add_subcommand("validate", "Check a schedule against an instance");
  std::string val_inst, val_sched;
  validate->add_option("instance", val_inst, "Instance file")->required();
  validate->add_option("schedule", val_sched, "Schedule file")->required();

  // export
  auto* exp = app.add_subcommand("export", "Write an ILP model in LP format");
  std::string exp_in, exp_out, model_name = "ilp1";
  exp->add_option("instance", exp_in, "Instance file")->required();
  exp->add_option("--model", model_name, "Formulation")->check(CLI::IsMember({"ilp1", "ilp2"}));
  exp->add_option("--out", exp_out, "Output LP file")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Benchmark methods on a corpus");
  std::string corpus_dir, csv_out;
  std::vector<std::string> methods = BenchOptions{}.methods;
  bench->add_option("corpus", corpus_dir, "Corpus directory with manifest.json")->required();
  bench->add_option("--methods", methods, "Methods to run")->delimiter(',')->check(CLI::IsMember(known_methods()));
  bench->add_option("--out", csv_out, "CSV output file (default stdout)");
  bench->add_option("--restarts", restarts, "IVNS restarts")->check(CLI::PositiveNumber);
  bench->add_option("--shake-frac", shake_frac, "Fraction of jobs moved per shake");
  bench->add_option("--node-limit", node_limit, "Branch-and-bound node limit (0 = none)");

  CLI11_PARSE(app, argc, argv);

  SolveOptions sopt;
  sopt.search.seed = g.seed;
  sopt.search.restarts = restarts;
  sopt.search.shake_fraction = shake_frac;
  sopt.limits.time_limit = g.time_limit;
  sopt.limits.node_limit = node_limit;

  try {
    if (gen->parsed()) {
      gp.seed = g.seed;
      const auto entries = generate_corpus(gp, count, gen_out);
      std::cout << "wrote " << entries.size() << " instances to " << gen_out << " (deadline "
                << generated_deadline(gp) << ", " << generated_edge_count(gp) << " conflicts)\n";
      return 0;
    }
    if (solve->parsed()) {
      const Instance inst = read_instance_file(solve_in);
      const SolveOutcome out = run_method(inst, method, sopt);
      const auto violation = validate_schedule(inst, out.schedule);
      if (!solve_out.empty()) write_schedule_file(out.schedule, solve_out);
      std::cout << "method=" << method << "\nF=" << format_weight(out.value)
                << "\nvalid=" << (violation ? "no" : "yes") << "\n";
      if (out.bnb) {
        std::cout << "status=" << status_name(out.bnb->status) << "\nupper_bound=" << format_weight(out.bnb->upper_bound)
                  << "\nnodes=" << out.bnb->nodes << "\n";
      }
      std::printf("time_s=%.6f\n", out.seconds);
      return violation ? 1 : 0;
    }
    if (validate->parsed()) {
      const Instance inst = read_instance_file(val_inst);
      const Schedule s = read_schedule_file(val_sched);
      if (const auto v = validate_schedule(inst, s)) {
        print_violation(*v);
        return 1;
      }
      std::cout << "valid=yes\nF=" << format_weight(on_time_weight(inst, s)) << "\n";
      return 0;
    }
    if (exp->parsed()) {
      const Instance inst = read_instance_file(exp_in);
      const IlpModel model = build_model(inst, model_name == "ilp1" ? Formulation::ilp1 : Formulation::ilp2);
      export_lp(model, exp_out);
      std::cout << "wrote " << formulation_name(model.formulation) << " with " << model.variables.size()
                << " variables and " << model.constraints.size() << " constraints to " << exp_out << "\n";
      return 0;
    }
    if (bench->parsed()) {
      if (!std::filesystem::exists(std::filesystem::path(corpus_dir) / kManifestName)) {
        std::cerr << "usage error: " << corpus_dir << " has no " << kManifestName
                  << " (create one with 'confsched generate')\n";
        return 2;
      }
      BenchOptions bopt;
      bopt.methods = methods;
      bopt.solve = sopt;
      bopt.threads = g.threads;
      const auto rows = run_bench(corpus_dir, bopt);
      if (csv_out.empty()) {
        write_bench_csv(std::cout, rows);
      } else {
        std::ofstream f(csv_out);
        if (!f) throw std::runtime_error("cannot write " + csv_out);
        write_bench_csv(f, rows);
      }
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const StructuralError& e) {
    std::cerr << "structural error: " << e.what() << "\n";
    return 4;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
