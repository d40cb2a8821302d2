#pragma once

// Test-only oracles. Nothing here goes through the QUBO path.

#include "max2sat/formula.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace max2sat::testing {

/// Assignment whose bit i is bit i of `mask`.
inline Assignment from_mask(std::size_t n, std::uint64_t mask) {
  Assignment a(n);
  for (std::size_t i = 0; i < n; ++i) a.set(i, (mask >> i) & 1u);
  return a;
}

/// Maximum satisfied weight by plain enumeration of the formula.
inline Weight max_satisfied_exhaustive(const Formula& f) {
  Weight best = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << f.num_vars()); ++m) {
    best = std::max(best, count_satisfied(f, from_mask(f.num_vars(), m)));
  }
  return best;
}

/// Lexicographically smallest (variable 0 most significant) assignment
/// maximizing the satisfied weight.
inline Assignment lex_first_maximizer(const Formula& f) {
  const std::size_t n = f.num_vars();
  Assignment best(n);
  Weight best_w = -1;
  // Walk codes in increasing order with variable 0 as the top bit.
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    Assignment a(n);
    for (std::size_t v = 0; v < n; ++v) a.set(v, (code >> (n - 1 - v)) & 1u);
    const Weight w = count_satisfied(f, a);
    if (w > best_w) {
      best_w = w;
      best = a;
    }
  }
  return best;
}

/// Random formula that also exercises unit clauses, same-variable clauses and
/// weights above 1.
inline Formula random_mixed_formula(std::mt19937_64& rng, std::size_t n, std::size_t c, bool weighted) {
  std::uniform_int_distribution<std::uint32_t> var(0, static_cast<std::uint32_t>(n - 1));
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<Weight> weight(1, weighted ? 5 : 1);
  std::bernoulli_distribution sign(0.5);
  std::vector<Clause> clauses;
  for (std::size_t k = 0; k < c; ++k) {
    const Literal a{var(rng), sign(rng)};
    const int t = kind(rng);
    if (t == 0) {
      clauses.emplace_back(a, weight(rng));
    } else if (t == 1) {
      clauses.emplace_back(a, Literal{a.variable, sign(rng)}, weight(rng));
    } else {
      clauses.emplace_back(a, Literal{var(rng), sign(rng)}, weight(rng));
    }
  }
  return Formula(n, std::move(clauses));
}

}  // namespace max2sat::testing
