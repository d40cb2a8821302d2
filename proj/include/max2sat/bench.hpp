#pragma once

#include "max2sat/formula.hpp"
#include "max2sat/solvers.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace max2sat {

/// Success probability the time-to-solution statistic is normalised to.
inline constexpr double kTtsConfidence = 0.99;

struct TrialRecord {
  std::string instance_id;
  std::string solver_id;
  std::uint64_t seed = 0;
  double target_objective = 0;
  bool hit = false;
  /// Present iff hit; never exceeds budget.
  std::optional<double> time_to_hit;
  double budget = 0;
  double best_objective = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct TtsEstimate {
  std::vector<double> time_grid;
  std::vector<double> success_prob;
  /// nullopt means unbounded: no trial hit at any grid time.
  std::optional<double> tts;
  std::optional<double> argmin_time;

  friend bool operator==(const TtsEstimate&, const TtsEstimate&) = default;
};

/// t * ln(1 - 0.99) / ln(1 - p): the time needed to succeed at least once with
/// 99% probability when one run of length t succeeds with probability p.
/// p == 0 gives nullopt (unbounded); p >= 0.99 gives t itself.
std::optional<double> tts_score(double t, double p);

/// Observed hit times (clamped to be positive) plus each trial's budget, sorted
/// and deduplicated.
std::vector<double> default_grid(const std::vector<TrialRecord>& trials);

/// Minimum of tts_score over `grid` using the empirical p(t) = fraction of
/// trials that hit by time t. Throws std::invalid_argument on empty trials,
/// trials from more than one (instance, solver), or an empty or non-positive grid.
TtsEstimate estimate_tts(const std::vector<TrialRecord>& trials, std::vector<double> grid);
inline TtsEstimate estimate_tts(const std::vector<TrialRecord>& trials) {
  return estimate_tts(trials, default_grid(trials));
}

struct TrialOptions {
  double budget = 10.0;
  /// Concurrent trials; timings are only meaningful with one per hardware thread.
  std::size_t max_workers = 1;
};

/// Reduces `f` once outside the timed region, then runs `repetitions` trials
/// with seeds base_seed + k. A trial hits when its best objective reaches
/// `target_objective` within the budget. Records are sorted by seed.
/// Throws std::invalid_argument when the target is missing or repetitions == 0.
std::vector<TrialRecord> run_trials(const Formula& f, const SolverConfig& solver, std::size_t repetitions,
                                    std::optional<double> target_objective, std::uint64_t base_seed,
                                    const TrialOptions& options = {}, const std::string& instance_id = "instance");

struct BenchInstance {
  std::string id;
  Formula formula;
  /// Maximum satisfiable weight, when known from metadata.
  std::optional<Weight> known_optimum;
};

struct SkippedInstance {
  std::string id;
  std::string reason;

  friend bool operator==(const SkippedInstance&, const SkippedInstance&) = default;
};

struct InstanceSet {
  std::vector<BenchInstance> instances;
  std::vector<SkippedInstance> unreadable;
};

/// Every *.cnf / *.wcnf file in `dir`, in filename order. Files that fail to
/// parse land in `unreadable`. A "c optimum <W>" comment sets known_optimum.
InstanceSet load_instance_dir(const std::filesystem::path& dir);

struct BenchOptions {
  std::size_t repetitions = 20;
  double budget = 10.0;
  std::uint64_t base_seed = 1;
  std::size_t max_workers = 1;
  /// Instances up to this many variables get their target from brute force.
  std::size_t oracle_max_vars = kBruteForceDefaultMaxVars;
};

struct InstanceReport {
  std::string id;
  std::size_t num_vars = 0;
  std::size_t num_clauses = 0;
  Weight total_weight = 0;
  double target_objective = 0;
  std::string target_source;
  std::size_t trials = 0;
  std::size_t hits = 0;
  TtsEstimate tts;

  friend bool operator==(const InstanceReport&, const InstanceReport&) = default;
};

struct BenchReport {
  std::string solver;
  std::map<std::string, std::string> solver_config;
  std::size_t repetitions = 0;
  double budget = 0;
  std::uint64_t base_seed = 0;
  std::string environment;
  std::vector<InstanceReport> instances;
  std::vector<SkippedInstance> skipped;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

struct BenchResult {
  BenchReport report;
  std::vector<TrialRecord> trials;
};

/// Key-value echo of a solver configuration.
std::map<std::string, std::string> describe(const SolverConfig& cfg);

/// Resolves each instance's target (metadata first, then brute force up to
/// options.oracle_max_vars), runs the trials and estimates TTS. Instances
/// without a resolvable target are recorded as skipped. When `output` is
/// non-empty the report is written there and the trial CSV beside it (see
/// trials_csv_path). Throws std::invalid_argument on an empty instance set.
BenchResult run_benchmark(const InstanceSet& set, const SolverConfig& solver, const BenchOptions& options,
                          const std::filesystem::path& output = {});

std::filesystem::path trials_csv_path(const std::filesystem::path& report_path);

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& trials);
void write_report(std::ostream& out, const BenchReport& report);
BenchReport read_report(std::istream& in);
void save_report(const std::filesystem::path& path, const BenchReport& report);
BenchReport load_report(const std::filesystem::path& path);

}  // namespace max2sat
