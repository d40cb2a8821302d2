#include "max2sat/cli.hpp"
#include "max2sat/bench.hpp"
#include "max2sat/dimacs.hpp"
#include "max2sat/qubo_io.hpp"
#include "max2sat/solvers.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>

namespace max2sat {

namespace {

struct SolverFlags {
  std::string solver = "anneal";
  std::uint64_t seed = 1;
  std::optional<std::size_t> sweeps;
  std::optional<std::size_t> restarts;
  std::optional<double> budget;
  std::size_t max_vars = kBruteForceDefaultMaxVars;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Random seed (u64)");
  cmd->add_option("--sweeps", flags.sweeps, "Annealing sweeps per restart")->check(CLI::PositiveNumber);
  cmd->add_option("--restarts", flags.restarts, "Independent restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--max-vars", flags.max_vars, "Brute-force enumeration bound")
      ->check(CLI::Range(std::size_t{0}, kBruteForceHardMaxVars));
}

SolverConfig make_solver(const SolverFlags& flags) {
  if (flags.solver == "brute") {
    BruteForceConfig c;
    c.max_vars = flags.max_vars;
    c.time_budget = flags.budget;
    c.seed = flags.seed;
    return c;
  }
  if (flags.solver == "anneal") {
    AnnealConfig c;
    if (flags.sweeps) c.sweeps = *flags.sweeps;
    if (flags.restarts) c.restarts = *flags.restarts;
    c.time_budget = flags.budget;
    c.seed = flags.seed;
    return c;
  }
  if (flags.solver == "local") {
    LocalSearchConfig c;
    if (flags.restarts) c.restarts = *flags.restarts;
    c.time_budget = flags.budget;
    c.seed = flags.seed;
    return c;
  }
  throw std::invalid_argument("unknown solver '" + flags.solver + "' (expected brute, anneal or local)");
}

Assignment read_assignment(const std::string& path, std::size_t expected) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<int> bits;
  std::string tok;
  while (in >> tok) {
    if (tok != "0" && tok != "1") throw std::runtime_error("assignment entries must be 0 or 1, got '" + tok + "'");
    bits.push_back(tok == "1");
  }
  if (bits.size() != expected) {
    throw std::runtime_error("assignment has " + std::to_string(bits.size()) + " entries, instance has " +
                             std::to_string(expected) + " variables");
  }
  return Assignment(bits);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

int cmd_reduce(const std::string& input, const std::string& output, std::ostream& out) {
  const Formula f = read_dimacs_file(input);
  const QuboProblem<double> q = reduce_to_qubo(f);
  write_qubo_file(output, q);
  out << "vars " << f.num_vars() << '\n'
      << "clauses " << f.num_clauses() << '\n'
      << "nonzeros " << q.nonzeros() << '\n'
      << "offset " << format_number(q.offset()) << '\n';
  return 0;
}

int cmd_solve(const std::string& input, const SolverFlags& flags, std::ostream& out) {
  const SolverConfig cfg = make_solver(flags);
  const Formula f = read_dimacs_file(input);
  const QuboProblem<double> q = reduce_to_qubo(f);
  SolveOutcome<double> outcome = solve(q, cfg);
  attach_formula(outcome, f);
  out << "solver " << solver_name(cfg) << '\n'
      << "satisfied " << *outcome.satisfied_weight << " / " << f.total_weight() << '\n'
      << "objective " << format_number(outcome.best_objective) << '\n'
      << "time_to_first_best " << format_number(outcome.time_to_first_best.value_or(0)) << '\n'
      << "wall_time " << format_number(outcome.wall_time) << '\n'
      << "seed " << outcome.seed << '\n'
      << "assignment " << outcome.best_assignment.to_string() << '\n';
  return 0;
}

int cmd_bench(const std::string& dir, const SolverFlags& flags, std::size_t reps, double budget,
              std::size_t workers, std::size_t oracle_max_vars, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  const SolverConfig cfg = make_solver(flags);
  const InstanceSet set = load_instance_dir(dir);
  if (set.instances.empty()) {
    throw std::runtime_error("no parseable instances in " + dir);
  }
  BenchOptions options;
  options.repetitions = reps;
  options.budget = budget;
  options.base_seed = flags.seed;
  options.max_workers = workers;
  options.oracle_max_vars = oracle_max_vars;
  const BenchResult result = run_benchmark(set, cfg, options, out_path);
  for (const SkippedInstance& s : result.report.skipped) err << "warning: skipped " << s.id << ": " << s.reason << '\n';

  out << std::left << std::setw(24) << "instance" << std::setw(7) << "N" << std::setw(8) << "C" << std::setw(12)
      << "target" << std::setw(10) << "hits" << "tts_s\n";
  for (const InstanceReport& ir : result.report.instances) {
    out << std::setw(24) << ir.id << std::setw(7) << ir.num_vars << std::setw(8) << ir.num_clauses << std::setw(12)
        << format_number(ir.target_objective) << std::setw(10)
        << (std::to_string(ir.hits) + "/" + std::to_string(ir.trials))
        << (ir.tts.tts ? format_number(*ir.tts.tts) : "unbounded") << '\n';
  }
  out << "report " << out_path << '\n' << "trials " << trials_csv_path(out_path).string() << '\n';
  return 0;
}

int cmd_gen(std::size_t vars, std::size_t clauses, std::uint64_t seed, const std::string& path, std::ostream& out) {
  const Formula f = gen_random_2sat(vars, clauses, seed);
  write_text(path, emit_dimacs(f));
  out << "wrote " << path << " (p cnf " << vars << ' ' << clauses << ")\n";
  return 0;
}

int cmd_verify(const std::string& input, const std::string& assignment_path, std::optional<Weight> expect,
               std::ostream& out, std::ostream& err) {
  const Formula f = read_dimacs_file(input);
  const Assignment a = read_assignment(assignment_path, f.num_vars());
  const Weight sat = count_satisfied(f, a);
  out << "satisfied " << sat << " / " << f.total_weight() << '\n';
  if (expect && *expect != sat) {
    err << "error: expected " << *expect << " satisfied, got " << sat << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "MAX-2-SAT via QUBO reduction: reduce, solve, generate, verify and benchmark.\n"
      "Variables are 1-indexed in DIMACS files and 0-indexed everywhere else;\n"
      "assignments are space-separated 0/1 values in variable order."};
  app.require_subcommand(1, 1);

  std::string input, output;
  auto* reduce = app.add_subcommand("reduce", "Write the QUBO form of a DIMACS instance");
  reduce->add_option("--input", input, "DIMACS CNF/WCNF file")->required();
  reduce->add_option("--output", output, "QUBO text file")->required();

  SolverFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("--input", input, "DIMACS CNF/WCNF file")->required();
  solve_cmd->add_option("--solver", solve_flags.solver, "brute | anneal | local")
      ->check(CLI::IsMember({"brute", "anneal", "local"}));
  solve_cmd->add_option("--budget", solve_flags.budget, "Time budget in seconds")->check(CLI::NonNegativeNumber);
  add_solver_flags(solve_cmd, solve_flags);

  SolverFlags bench_flags;
  std::string bench_dir, bench_out;
  std::size_t reps = 20;
  double budget = 10.0;
  std::size_t workers = 1;
  std::size_t oracle_max_vars = kBruteForceDefaultMaxVars;
  auto* bench = app.add_subcommand("bench", "Measure time-to-optimal-solution over an instance directory");
  bench->add_option("--instances", bench_dir, "Directory of .cnf/.wcnf files")->required();
  bench->add_option("--solver", bench_flags.solver, "brute | anneal | local")
      ->required()
      ->check(CLI::IsMember({"brute", "anneal", "local"}));
  bench->add_option("--reps", reps, "Trials per instance")->required()->check(CLI::PositiveNumber);
  bench->add_option("--budget", budget, "Per-trial time budget in seconds")->required()->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "Report path (trial CSV is written beside it)")->required();
  bench->add_option("--workers", workers, "Concurrent trials")->check(CLI::PositiveNumber);
  bench->add_option("--oracle-max-vars", oracle_max_vars, "Largest N whose optimum is found by brute force")
      ->check(CLI::Range(std::size_t{0}, kBruteForceHardMaxVars));
  add_solver_flags(bench, bench_flags);

  std::size_t vars = 0, clauses = 0;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "Generate a random 2-SAT instance");
  gen->add_option("--vars", vars, "Number of variables")->required();
  gen->add_option("--clauses", clauses, "Number of clauses")->required();
  gen->add_option("--seed", gen_seed, "Random seed (u64)");
  gen->add_option("--out", output, "Output DIMACS file")->required();

  std::string assignment_path;
  std::optional<Weight> expect;
  auto* verify = app.add_subcommand("verify", "Count clauses satisfied by an assignment");
  verify->add_option("--input", input, "DIMACS CNF/WCNF file")->required();
  verify->add_option("--assignment", assignment_path, "File with one 0/1 value per variable")->required();
  verify->add_option("--expect", expect, "Exit nonzero unless the satisfied weight equals this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*reduce) return cmd_reduce(input, output, out);
    if (*solve_cmd) return cmd_solve(input, solve_flags, out);
    if (*bench) return cmd_bench(bench_dir, bench_flags, reps, budget, workers, oracle_max_vars, bench_out, out, err);
    if (*gen) return cmd_gen(vars, clauses, gen_seed, output, out);
    if (*verify) return cmd_verify(input, assignment_path, expect, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace max2sat
