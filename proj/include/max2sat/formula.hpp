#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace max2sat {

using Var = std::uint32_t;
using Weight = std::int64_t;

struct Literal {
  Var variable = 0;
  bool negated = false;

  /// Truth value of this literal when its variable takes `value`.
  bool holds(bool value) const { return value != negated; }

  friend bool operator==(const Literal&, const Literal&) = default;
};

inline Literal pos(Var v) { return {v, false}; }
inline Literal neg(Var v) { return {v, true}; }

/// A disjunction of one or two literals with a positive integer weight.
/// A unit clause (x) is the degenerate same-variable case (x or x).
class Clause {
 public:
  Clause(Literal a, Weight weight = 1);
  Clause(Literal a, Literal b, Weight weight = 1);

  std::span<const Literal> literals() const { return {lits_.data(), arity_}; }
  std::size_t arity() const { return arity_; }
  Weight weight() const { return weight_; }

  /// First and second literal; the second repeats the first for unit clauses.
  const Literal& first() const { return lits_[0]; }
  const Literal& second() const { return lits_[arity_ - 1]; }

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::array<Literal, 2> lits_{};
  std::size_t arity_ = 1;
  Weight weight_ = 1;
};

/// A binary vector, one entry per variable.
class Assignment {
 public:
  using Bits = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>;

  Assignment() = default;
  explicit Assignment(std::size_t n) : bits_(Bits::Zero(static_cast<Eigen::Index>(n))) {}
  Assignment(std::initializer_list<int> bits);
  /// Throws std::invalid_argument unless every entry is 0 or 1.
  explicit Assignment(const std::vector<int>& bits);

  std::size_t size() const { return static_cast<std::size_t>(bits_.size()); }
  bool operator[](std::size_t i) const { return bits_[static_cast<Eigen::Index>(i)] != 0; }
  void set(std::size_t i, bool value) { bits_[static_cast<Eigen::Index>(i)] = value ? 1 : 0; }
  void flip(std::size_t i) { bits_[static_cast<Eigen::Index>(i)] ^= 1; }

  const Bits& bits() const { return bits_; }

  /// The assignment as a 0/1 vector of `Scalar`, for x^T Q x style algebra.
  template <typename Scalar>
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> as() const {
    return bits_.template cast<Scalar>();
  }

  /// Space-separated 0/1 in variable order.
  std::string to_string() const;

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.bits_.size() == b.bits_.size() && a.bits_ == b.bits_;
  }
  /// Lexicographic, variable 0 most significant.
  friend bool operator<(const Assignment& a, const Assignment& b);

 private:
  Bits bits_;
};

class Formula {
 public:
  Formula() = default;
  /// Throws std::invalid_argument if a literal refers to a variable >= num_vars
  /// or a weight is not positive.
  Formula(std::size_t num_vars, std::vector<Clause> clauses);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  Weight total_weight() const { return total_weight_; }
  bool unit_weights() const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  std::size_t num_vars_ = 0;
  std::vector<Clause> clauses_;
  Weight total_weight_ = 0;
};

bool is_satisfied(const Clause& c, const Assignment& a);

/// Weight of the clauses that `a` satisfies. Throws std::invalid_argument on
/// a length mismatch.
Weight count_satisfied(const Formula& f, const Assignment& a);

/// Random 2-SAT formula: each clause picks two distinct variables uniformly
/// and independent signs. Deterministic in (num_vars, num_clauses, seed).
/// Throws std::invalid_argument when clauses are requested with fewer than
/// two variables.
Formula gen_random_2sat(std::size_t num_vars, std::size_t num_clauses, std::uint64_t seed);

}  // namespace max2sat
