#include "max2sat/bench.hpp"
#include "max2sat/dimacs.hpp"
#include "max2sat/qubo.hpp"
#include "max2sat/qubo_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace max2sat {

using nlohmann::json;

namespace {

constexpr double kMinGridTime = 1e-9;

bool reaches(double objective, double target) {
  return objective <= target + 1e-9 * std::max(1.0, std::abs(target));
}

std::string environment_note() {
  std::string note = "compiler ";
#if defined(__clang__)
  note += "clang " __clang_version__;
#elif defined(__GNUC__)
  note += "gcc " __VERSION__;
#else
  note += "unknown";
#endif
  note += "; hardware threads " + std::to_string(std::thread::hardware_concurrency());
  note += "; monotonic wall-clock timing, parsing and QUBO reduction excluded";
  return note;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> number_or_null(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::optional<double> tts_score(double t, double p) {
  if (p <= 0) return std::nullopt;
  if (p >= kTtsConfidence) return t;
  return t * std::log(1.0 - kTtsConfidence) / std::log(1.0 - p);
}

std::vector<double> default_grid(const std::vector<TrialRecord>& trials) {
  std::vector<double> grid;
  for (const TrialRecord& r : trials) {
    if (r.hit && r.time_to_hit) grid.push_back(std::max(*r.time_to_hit, kMinGridTime));
    if (r.budget > 0) grid.push_back(r.budget);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

TtsEstimate estimate_tts(const std::vector<TrialRecord>& trials, std::vector<double> grid) {
  if (trials.empty()) throw std::invalid_argument("estimate_tts: no trials");
  for (const TrialRecord& r : trials) {
    if (r.instance_id != trials.front().instance_id || r.solver_id != trials.front().solver_id) {
      throw std::invalid_argument("estimate_tts: trials mix instances or solvers");
    }
  }
  if (grid.empty()) throw std::invalid_argument("estimate_tts: empty time grid");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (!(grid.front() > 0)) throw std::invalid_argument("estimate_tts: grid times must be positive");

  std::vector<double> hit_times;
  for (const TrialRecord& r : trials) {
    if (r.hit && r.time_to_hit) hit_times.push_back(*r.time_to_hit);
  }
  std::sort(hit_times.begin(), hit_times.end());

  TtsEstimate est;
  est.time_grid = grid;
  const double n = static_cast<double>(trials.size());
  for (const double t : grid) {
    const auto hits = std::upper_bound(hit_times.begin(), hit_times.end(), t) - hit_times.begin();
    const double p = static_cast<double>(hits) / n;
    est.success_prob.push_back(p);
    const auto score = tts_score(t, p);
    if (score && (!est.tts || *score < *est.tts)) {
      est.tts = score;
      est.argmin_time = t;
    }
  }
  return est;
}

std::vector<TrialRecord> run_trials(const Formula& f, const SolverConfig& solver, std::size_t repetitions,
                                    std::optional<double> target_objective, std::uint64_t base_seed,
                                    const TrialOptions& options, const std::string& instance_id) {
  if (!target_objective) throw std::invalid_argument("run_trials: missing target objective");
  if (repetitions == 0) throw std::invalid_argument("run_trials: repetitions must be >= 1");
  const double target = *target_objective;
  const QuboProblem<double> q = reduce_to_qubo(f);
  const std::string solver_id = solver_name(solver);

  std::vector<TrialRecord> records(repetitions);
  const auto run_one = [&](std::size_t k) {
    const std::uint64_t seed = base_seed + k;
    const SolveOutcome<double> out = solve(q, configure_trial(solver, seed, options.budget, target));
    TrialRecord& r = records[k];
    r.instance_id = instance_id;
    r.solver_id = solver_id;
    r.seed = seed;
    r.target_objective = target;
    r.budget = options.budget;
    r.best_objective = out.best_objective;
    r.hit = reaches(out.best_objective, target) && out.time_to_first_best &&
            *out.time_to_first_best <= options.budget;
    if (r.hit) r.time_to_hit = out.time_to_first_best;
  };

  const std::size_t workers = std::clamp<std::size_t>(options.max_workers, 1, repetitions);
  if (workers == 1) {
    for (std::size_t k = 0; k < repetitions; ++k) run_one(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t k = next++; k < repetitions; k = next++) run_one(k);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.seed < b.seed; });
  return records;
}

InstanceSet load_instance_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".cnf" || ext == ".wcnf")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  InstanceSet set;
  for (const auto& path : files) {
    const std::string id = path.stem().string();
    try {
      std::ifstream in(path);
      if (!in) throw std::runtime_error("cannot open " + path.string());
      DimacsDocument doc = parse_dimacs_document(in);
      set.instances.push_back({id, std::move(doc.formula), known_optimum(doc.comments)});
    } catch (const std::exception& e) {
      set.unreadable.push_back({id, e.what()});
    }
  }
  return set;
}

std::map<std::string, std::string> describe(const SolverConfig& cfg) {
  std::map<std::string, std::string> out;
  out["solver"] = solver_name(cfg);
  std::visit(
      [&](const auto& c) {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, BruteForceConfig>) {
          out["max_vars"] = std::to_string(c.max_vars);
        } else if constexpr (std::is_same_v<C, AnnealConfig>) {
          out["sweeps"] = std::to_string(c.sweeps);
          out["restarts"] = std::to_string(c.restarts);
          out["initial_temperature"] = c.initial_temperature ? format_number(*c.initial_temperature) : "max|Q|";
          out["final_temperature"] = format_number(c.final_temperature);
        } else {
          out["restarts"] = std::to_string(c.restarts);
        }
      },
      cfg);
  return out;
}

BenchResult run_benchmark(const InstanceSet& set, const SolverConfig& solver, const BenchOptions& options,
                          const std::filesystem::path& output) {
  if (set.instances.empty()) throw std::invalid_argument("run_benchmark: empty instance set");
  BenchResult result;
  BenchReport& report = result.report;
  report.solver = solver_name(solver);
  report.solver_config = describe(solver);
  report.repetitions = options.repetitions;
  report.budget = options.budget;
  report.base_seed = options.base_seed;
  report.environment = environment_note();
  report.skipped = set.unreadable;

  for (const BenchInstance& inst : set.instances) {
    const Formula& f = inst.formula;
    InstanceReport ir;
    ir.id = inst.id;
    ir.num_vars = f.num_vars();
    ir.num_clauses = f.num_clauses();
    ir.total_weight = f.total_weight();
    if (inst.known_optimum) {
      if (*inst.known_optimum > f.total_weight()) {
        report.skipped.push_back({inst.id, "optimum metadata exceeds total clause weight"});
        continue;
      }
      ir.target_objective = static_cast<double>(f.total_weight() - *inst.known_optimum);
      ir.target_source = "metadata";
    } else if (f.num_vars() <= options.oracle_max_vars) {
      BruteForceConfig oracle;
      oracle.max_vars = options.oracle_max_vars;
      ir.target_objective = brute_force_solve(reduce_to_qubo(f), oracle).best_objective;
      ir.target_source = "brute-force";
    } else {
      report.skipped.push_back({inst.id, "no known optimum and " + std::to_string(f.num_vars()) +
                                             " variables exceeds the oracle bound of " +
                                             std::to_string(options.oracle_max_vars)});
      continue;
    }
    auto trials = run_trials(f, solver, options.repetitions, ir.target_objective, options.base_seed,
                             {options.budget, options.max_workers}, inst.id);
    ir.trials = trials.size();
    ir.hits = static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const auto& r) { return r.hit; }));
    ir.tts = estimate_tts(trials);
    report.instances.push_back(std::move(ir));
    result.trials.insert(result.trials.end(), trials.begin(), trials.end());
  }

  if (!output.empty()) {
    save_report(output, report);
    std::ofstream csv(trials_csv_path(output));
    if (!csv) throw std::runtime_error("cannot write " + trials_csv_path(output).string());
    write_trials_csv(csv, result.trials);
  }
  return result;
}

std::filesystem::path trials_csv_path(const std::filesystem::path& report_path) {
  std::filesystem::path p = report_path;
  p.replace_extension(".trials.csv");
  return p;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& trials) {
  out << "instance_id,solver_id,seed,hit,time_to_hit_s,budget_s,best_objective,target_objective\n";
  for (const TrialRecord& r : trials) {
    out << r.instance_id << ',' << r.solver_id << ',' << r.seed << ',' << (r.hit ? 1 : 0) << ','
        << (r.time_to_hit ? format_number(*r.time_to_hit) : "") << ',' << format_number(r.budget) << ','
        << format_number(r.best_objective) << ',' << format_number(r.target_objective) << '\n';
  }
}

void write_report(std::ostream& out, const BenchReport& report) {
  json j;
  j["solver"] = report.solver;
  j["solver_config"] = report.solver_config;
  j["repetitions"] = report.repetitions;
  j["budget_s"] = report.budget;
  j["base_seed"] = report.base_seed;
  j["environment"] = report.environment;
  j["instances"] = json::array();
  for (const InstanceReport& ir : report.instances) {
    json e;
    e["id"] = ir.id;
    e["num_vars"] = ir.num_vars;
    e["num_clauses"] = ir.num_clauses;
    e["total_weight"] = ir.total_weight;
    e["target_objective"] = ir.target_objective;
    e["target_source"] = ir.target_source;
    e["trials"] = ir.trials;
    e["hits"] = ir.hits;
    e["time_grid_s"] = ir.tts.time_grid;
    e["success_prob"] = ir.tts.success_prob;
    e["tts_s"] = ir.tts.tts ? json(*ir.tts.tts) : json("unbounded");
    e["argmin_time_s"] = optional_number(ir.tts.argmin_time);
    j["instances"].push_back(std::move(e));
  }
  j["skipped"] = json::array();
  for (const SkippedInstance& s : report.skipped) j["skipped"].push_back({{"id", s.id}, {"reason", s.reason}});
  out << j.dump(2) << '\n';
}

BenchReport read_report(std::istream& in) {
  const json j = json::parse(in);
  BenchReport report;
  report.solver = j.at("solver").get<std::string>();
  report.solver_config = j.at("solver_config").get<std::map<std::string, std::string>>();
  report.repetitions = j.at("repetitions").get<std::size_t>();
  report.budget = j.at("budget_s").get<double>();
  report.base_seed = j.at("base_seed").get<std::uint64_t>();
  report.environment = j.at("environment").get<std::string>();
  for (const json& e : j.at("instances")) {
    InstanceReport ir;
    ir.id = e.at("id").get<std::string>();
    ir.num_vars = e.at("num_vars").get<std::size_t>();
    ir.num_clauses = e.at("num_clauses").get<std::size_t>();
    ir.total_weight = e.at("total_weight").get<Weight>();
    ir.target_objective = e.at("target_objective").get<double>();
    ir.target_source = e.at("target_source").get<std::string>();
    ir.trials = e.at("trials").get<std::size_t>();
    ir.hits = e.at("hits").get<std::size_t>();
    ir.tts.time_grid = e.at("time_grid_s").get<std::vector<double>>();
    ir.tts.success_prob = e.at("success_prob").get<std::vector<double>>();
    const json& tts = e.at("tts_s");
    if (tts.is_string()) {
      if (tts.get<std::string>() != "unbounded") throw std::runtime_error("bad tts_s value");
    } else {
      ir.tts.tts = tts.get<double>();
    }
    ir.tts.argmin_time = number_or_null(e.at("argmin_time_s"));
    report.instances.push_back(std::move(ir));
  }
  for (const json& s : j.at("skipped")) {
    report.skipped.push_back({s.at("id").get<std::string>(), s.at("reason").get<std::string>()});
  }
  return report;
}

void save_report(const std::filesystem::path& path, const BenchReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_report(out, report);
}

BenchReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_report(in);
}

}  // namespace max2sat
