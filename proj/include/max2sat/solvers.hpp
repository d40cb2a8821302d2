#pragma once

#include "max2sat/formula.hpp"
#include "max2sat/qubo.hpp"
#include "max2sat/random.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace max2sat {

template <typename Scalar>
struct Checkpoint {
  double seconds = 0;
  Scalar objective{};

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

template <typename Scalar = double>
struct SolveOutcome {
  Assignment best_assignment;
  Scalar best_objective{};
  /// Set by attach_formula().
  std::optional<Weight> satisfied_weight;
  /// Elapsed time when best_objective was first reached.
  std::optional<double> time_to_first_best;
  double wall_time = 0;
  std::uint64_t seed = 0;
  /// One entry per strict improvement of the best objective.
  std::vector<Checkpoint<Scalar>> checkpoints;
};

template <typename Scalar>
void attach_formula(SolveOutcome<Scalar>& outcome, const Formula& f) {
  outcome.satisfied_weight = count_satisfied(f, outcome.best_assignment);
}

/// Largest instance brute_force_solve accepts by default.
inline constexpr std::size_t kBruteForceDefaultMaxVars = 26;
/// Hard ceiling: the enumeration keys assignments on a 64-bit Gray code.
inline constexpr std::size_t kBruteForceHardMaxVars = 62;

struct BruteForceConfig {
  std::size_t max_vars = kBruteForceDefaultMaxVars;
  std::optional<double> time_budget;
  /// Stop as soon as the best objective is <= target.
  std::optional<double> target;
  std::uint64_t seed = 0;  // unused by the enumeration; echoed in the outcome
};

struct AnnealConfig {
  std::size_t sweeps = 1000;
  /// Defaults to the largest |coefficient| of the problem.
  std::optional<double> initial_temperature;
  double final_temperature = 0.01;
  std::size_t restarts = 10;
  std::optional<double> time_budget;
  std::optional<double> target;
  std::uint64_t seed = 0;
};

struct LocalSearchConfig {
  std::size_t restarts = 1;
  std::optional<double> time_budget;
  std::optional<double> target;
  std::uint64_t seed = 0;
};

using SolverConfig = std::variant<BruteForceConfig, AnnealConfig, LocalSearchConfig>;

inline std::string solver_name(const SolverConfig& cfg) {
  switch (cfg.index()) {
    case 0: return "brute";
    case 1: return "anneal";
    default: return "local";
  }
}

/// Throws std::invalid_argument on sweeps == 0, restarts == 0, a non-positive
/// temperature, or final > initial.
inline void validate(const AnnealConfig& cfg) {
  if (cfg.sweeps < 1) throw std::invalid_argument("anneal: sweeps must be >= 1");
  if (cfg.restarts < 1) throw std::invalid_argument("anneal: restarts must be >= 1");
  if (!(cfg.final_temperature > 0)) throw std::invalid_argument("anneal: final temperature must be positive");
  if (cfg.initial_temperature) {
    if (!(*cfg.initial_temperature > 0)) throw std::invalid_argument("anneal: initial temperature must be positive");
    if (cfg.final_temperature > *cfg.initial_temperature) {
      throw std::invalid_argument("anneal: final temperature exceeds initial temperature");
    }
  }
  if (cfg.time_budget && *cfg.time_budget < 0) throw std::invalid_argument("anneal: negative time budget");
}

inline void validate(const LocalSearchConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("local search: restarts must be >= 1");
  if (cfg.time_budget && *cfg.time_budget < 0) throw std::invalid_argument("local search: negative time budget");
}

/// Diagonal plus symmetric off-diagonal couplings of a QUBO, laid out so a
/// single flip touches only the flipped variable's column.
template <typename Scalar>
class FlipKernel {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Couplings = Eigen::SparseMatrix<Scalar>;

  explicit FlipKernel(const QuboProblem<Scalar>& q) : offset_(q.offset()) {
    const auto n = static_cast<Eigen::Index>(q.size());
    diagonal_ = q.matrix().diagonal();
    std::vector<Eigen::Triplet<Scalar>> entries;
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < j; ++i) {
        const Scalar v = q.matrix()(i, j);
        if (v != Scalar(0)) {
          entries.emplace_back(i, j, v);
          entries.emplace_back(j, i, v);
        }
      }
    }
    couplings_.resize(n, n);
    couplings_.setFromTriplets(entries.begin(), entries.end());
    couplings_.makeCompressed();
  }

  std::size_t size() const { return static_cast<std::size_t>(diagonal_.size()); }
  Scalar offset() const { return offset_; }
  const Vector& diagonal() const { return diagonal_; }
  const Couplings& couplings() const { return couplings_; }

 private:
  Vector diagonal_;
  Couplings couplings_;
  Scalar offset_;
};

/// An assignment with its objective and local fields kept current under flips.
///
/// field_i = Q_ii + sum_{j != i} J_ij x_j, so flipping bit i changes the
/// objective by (1 - 2 x_i) * field_i.
template <typename Scalar>
class FlipState {
 public:
  using Vector = typename FlipKernel<Scalar>::Vector;

  FlipState(const FlipKernel<Scalar>& kernel, Assignment start) : kernel_(&kernel) { reset(std::move(start)); }

  void reset(Assignment start) {
    detail::check_length(kernel_->size(), start.size());
    x_ = std::move(start);
    const Vector xs = x_.template as<Scalar>();
    field_ = kernel_->diagonal() + kernel_->couplings() * xs;
    energy_ = kernel_->offset() + kernel_->diagonal().dot(xs) + Scalar(0.5) * xs.dot(kernel_->couplings() * xs);
  }

  Scalar delta(std::size_t i) const {
    const Scalar f = field_[static_cast<Eigen::Index>(i)];
    return x_[i] ? -f : f;
  }

  void flip(std::size_t i) {
    energy_ += delta(i);
    const Scalar step = x_[i] ? Scalar(-1) : Scalar(1);
    x_.flip(i);
    for (typename FlipKernel<Scalar>::Couplings::InnerIterator it(kernel_->couplings(), static_cast<Eigen::Index>(i));
         it; ++it) {
      field_[it.row()] += step * it.value();
    }
  }

  const Assignment& assignment() const { return x_; }
  Scalar energy() const { return energy_; }
  std::size_t size() const { return x_.size(); }

 private:
  const FlipKernel<Scalar>* kernel_;
  Assignment x_;
  Vector field_;
  Scalar energy_{};
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  bool exceeded(const std::optional<double>& budget) const { return budget && seconds() > *budget; }

 private:
  std::chrono::steady_clock::time_point start_;
};

template <typename Scalar>
class BestTracker {
 public:
  BestTracker(const Stopwatch& clock, SolveOutcome<Scalar>& out, std::optional<double> target)
      : clock_(clock), out_(out), target_(target) {}

  /// Records (energy, a) if it strictly improves on the best so far.
  bool offer(Scalar energy, const Assignment& a) {
    if (have_ && !(energy < out_.best_objective)) return false;
    have_ = true;
    out_.best_objective = energy;
    out_.best_assignment = a;
    const double t = clock_.seconds();
    out_.time_to_first_best = t;
    out_.checkpoints.push_back({t, energy});
    return true;
  }

  bool has_best() const { return have_; }
  Scalar best() const { return out_.best_objective; }
  bool target_reached() const { return have_ && target_ && double(out_.best_objective) <= *target_; }

 private:
  const Stopwatch& clock_;
  SolveOutcome<Scalar>& out_;
  std::optional<double> target_;
  bool have_ = false;
};

template <typename Scalar>
void finish(const QuboProblem<Scalar>& q, const Stopwatch& clock, SolveOutcome<Scalar>& out) {
  // Recompute so the reported objective never depends on accumulated updates.
  out.best_objective = qubo_objective(q, out.best_assignment);
  out.wall_time = clock.seconds();
  if (out.time_to_first_best && *out.time_to_first_best > out.wall_time) out.time_to_first_best = out.wall_time;
}

inline Assignment random_assignment(std::size_t n, Engine& rng) {
  Assignment a(n);
  for (std::size_t i = 0; i < n; ++i) a.set(i, coin(rng));
  return a;
}

}  // namespace detail

/// Exhaustive minimum over all 2^N assignments by Gray-code enumeration.
/// Among minimizers the lexicographically smallest (variable 0 most
/// significant) is returned. Throws std::invalid_argument when
/// N > cfg.max_vars.
template <typename Scalar>
SolveOutcome<Scalar> brute_force_solve(const QuboProblem<Scalar>& q, const BruteForceConfig& cfg = {}) {
  const std::size_t n = q.size();
  if (cfg.max_vars > kBruteForceHardMaxVars) {
    throw std::invalid_argument("brute force: max_vars above hard limit " + std::to_string(kBruteForceHardMaxVars));
  }
  if (n > cfg.max_vars) {
    throw std::invalid_argument("brute force: " + std::to_string(n) + " variables exceeds the enumeration bound of " +
                                std::to_string(cfg.max_vars));
  }
  detail::Stopwatch clock;
  SolveOutcome<Scalar> out;
  out.seed = cfg.seed;
  detail::BestTracker<Scalar> best(clock, out, cfg.target);

  const FlipKernel<Scalar> kernel(q);
  FlipState<Scalar> state(kernel, Assignment(n));
  best.offer(state.energy(), state.assignment());

  // Variable v sits at bit (n - 1 - v), so a smaller code is a
  // lexicographically smaller assignment.
  std::uint64_t code = 0;
  std::uint64_t best_code = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t t = 1; t < total && !best.target_reached(); ++t) {
    const auto b = static_cast<std::size_t>(std::countr_zero(t));
    state.flip(n - 1 - b);
    code ^= std::uint64_t{1} << b;
    const Scalar e = state.energy();
    if (e < best.best()) {
      best_code = code;
      best.offer(e, state.assignment());
    } else if (e == best.best() && code < best_code) {
      best_code = code;
      out.best_assignment = state.assignment();
    }
    if ((t & 0xFFFF) == 0 && clock.exceeded(cfg.time_budget)) break;
  }
  detail::finish(q, clock, out);
  return out;
}

/// Simulated annealing: `restarts` independent chains from random starts,
/// each running `sweeps` sweeps of single-bit Metropolis proposals in shuffled
/// order under a geometric temperature schedule. Chain r draws from its own
/// stream of (seed, r).
template <typename Scalar>
SolveOutcome<Scalar> anneal_solve(const QuboProblem<Scalar>& q, const AnnealConfig& cfg) {
  validate(cfg);
  detail::Stopwatch clock;
  SolveOutcome<Scalar> out;
  out.seed = cfg.seed;
  detail::BestTracker<Scalar> best(clock, out, cfg.target);

  const std::size_t n = q.size();
  const double t_final = cfg.final_temperature;
  const double t_initial =
      cfg.initial_temperature.value_or(std::max(static_cast<double>(q.max_abs_coefficient()), t_final));
  const double ratio = t_final / t_initial;

  const FlipKernel<Scalar> kernel(q);
  FlipState<Scalar> state(kernel, Assignment(n));
  std::vector<std::size_t> order(n);

  bool stop = false;
  for (std::size_t r = 0; r < cfg.restarts && !stop; ++r) {
    Engine rng = make_engine(cfg.seed, r);
    state.reset(detail::random_assignment(n, rng));
    best.offer(state.energy(), state.assignment());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t s = 0; s < cfg.sweeps; ++s) {
      if (best.target_reached() || clock.exceeded(cfg.time_budget)) {
        stop = true;
        break;
      }
      const double frac = cfg.sweeps > 1 ? double(s) / double(cfg.sweeps - 1) : 0.0;
      const double temperature = t_initial * std::pow(ratio, frac);
      shuffle(std::span<std::size_t>(order), rng);
      for (const std::size_t i : order) {
        const Scalar d = state.delta(i);
        if (d <= Scalar(0) || uniform01(rng) < std::exp(-double(d) / temperature)) {
          state.flip(i);
          if (state.energy() < best.best()) best.offer(state.energy(), state.assignment());
        }
      }
    }
    if (best.target_reached()) stop = true;
  }
  detail::finish(q, clock, out);
  return out;
}

/// Steepest descent: repeatedly flips the variable with the most negative
/// delta (lowest index on ties) until no flip strictly improves.
/// `on_step(energy)` runs after every flip; descent halts early when
/// `should_stop()` returns true.
template <typename Scalar, typename OnStep, typename ShouldStop>
void descend(FlipState<Scalar>& state, OnStep&& on_step, ShouldStop&& should_stop) {
  const std::size_t n = state.size();
  while (!should_stop()) {
    std::size_t chosen = n;
    Scalar best_delta(0);
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar d = state.delta(i);
      if (d < best_delta) {
        best_delta = d;
        chosen = i;
      }
    }
    if (chosen == n) return;
    state.flip(chosen);
    on_step(state.energy());
  }
}

/// Restarted steepest descent from random starts; restart r uses stream (seed, r).
template <typename Scalar>
SolveOutcome<Scalar> local_search_solve(const QuboProblem<Scalar>& q, const LocalSearchConfig& cfg) {
  validate(cfg);
  detail::Stopwatch clock;
  SolveOutcome<Scalar> out;
  out.seed = cfg.seed;
  detail::BestTracker<Scalar> best(clock, out, cfg.target);

  const std::size_t n = q.size();
  const FlipKernel<Scalar> kernel(q);
  FlipState<Scalar> state(kernel, Assignment(n));
  const auto stop = [&] { return best.target_reached() || clock.exceeded(cfg.time_budget); };

  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    Engine rng = make_engine(cfg.seed, r);
    state.reset(detail::random_assignment(n, rng));
    best.offer(state.energy(), state.assignment());
    descend(
        state,
        [&](Scalar e) {
          if (e < best.best()) best.offer(e, state.assignment());
        },
        stop);
    if (stop()) break;
  }
  detail::finish(q, clock, out);
  return out;
}

template <typename Scalar>
SolveOutcome<Scalar> solve(const QuboProblem<Scalar>& q, const SolverConfig& cfg) {
  return std::visit(
      [&](const auto& c) -> SolveOutcome<Scalar> {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, BruteForceConfig>) {
          return brute_force_solve(q, c);
        } else if constexpr (std::is_same_v<C, AnnealConfig>) {
          return anneal_solve(q, c);
        } else {
          return local_search_solve(q, c);
        }
      },
      cfg);
}

/// Copy of `cfg` with seed, time budget and stop target replaced.
inline SolverConfig configure_trial(SolverConfig cfg, std::uint64_t seed, std::optional<double> budget,
                                    std::optional<double> target) {
  std::visit(
      [&](auto& c) {
        c.seed = seed;
        c.time_budget = budget;
        c.target = target;
      },
      cfg);
  return cfg;
}

}  // namespace max2sat
