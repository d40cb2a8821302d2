#pragma once

#include "max2sat/formula.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace max2sat {

/// min over binary x of  offset + x^T Q x,  with Q upper triangular.
///
/// Linear terms live on the diagonal (x_i * x_i == x_i for binary x), the
/// coefficient of x_i x_j for i < j lives at (i, j), and every strictly lower
/// entry is zero. The extent is N x N whatever the number of clauses that
/// produced it.
template <typename Scalar = double>
class QuboProblem {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  QuboProblem() = default;
  explicit QuboProblem(std::size_t n)
      : matrix_(Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))) {}

  /// Throws std::invalid_argument if `matrix` is not square or has a nonzero
  /// strictly-lower entry.
  QuboProblem(Matrix matrix, Scalar offset) : matrix_(std::move(matrix)), offset_(offset) {
    if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("QUBO matrix must be square");
    if (!matrix_.template triangularView<Eigen::StrictlyLower>().toDenseMatrix().isZero(0)) {
      throw std::invalid_argument("QUBO matrix must be upper triangular");
    }
  }

  std::size_t size() const { return static_cast<std::size_t>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  Scalar offset() const { return offset_; }
  Scalar operator()(std::size_t i, std::size_t j) const {
    return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// Adds `c * x_i * x_j`, folding i == j onto the diagonal.
  void add_quadratic(std::size_t i, std::size_t j, Scalar c) {
    if (i > j) std::swap(i, j);
    matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += c;
  }
  void add_linear(std::size_t i, Scalar c) { add_quadratic(i, i, c); }
  void add_constant(Scalar c) { offset_ += c; }

  std::size_t nonzeros() const { return static_cast<std::size_t>((matrix_.array() != Scalar(0)).count()); }

  /// Largest |coefficient| in Q (the offset is not a coefficient).
  Scalar max_abs_coefficient() const { return size() ? matrix_.cwiseAbs().maxCoeff() : Scalar(0); }

  template <typename Other>
  QuboProblem<Other> cast() const {
    return QuboProblem<Other>(matrix_.template cast<Other>(), static_cast<Other>(offset_));
  }

  friend bool operator==(const QuboProblem& a, const QuboProblem& b) {
    return a.offset_ == b.offset_ && a.matrix_.rows() == b.matrix_.rows() && a.matrix_ == b.matrix_;
  }

 private:
  Matrix matrix_;
  Scalar offset_ = Scalar(0);
};

namespace detail {

inline void check_length(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw std::invalid_argument("assignment has " + std::to_string(got) + " entries, QUBO has size " +
                                std::to_string(expected));
  }
}

}  // namespace detail

/// Builds the QUBO whose objective is the weight of unsatisfied clauses.
///
/// Each clause contributes, scaled by its weight, the penalty that is 1 when
/// the clause is violated and 0 otherwise:
///
///     x_i or x_j          ->  1 - x_i - x_j + x_i x_j
///     not x_i or x_j      ->  x_i - x_i x_j
///     not x_i or not x_j  ->  x_i x_j
///
/// x_i or not x_j is commuted into the second row. A unit clause is read as
/// the same literal twice, and same-variable products fold onto the diagonal,
/// so (x or x) -> 1 - x, (not x or x) -> 0 and (not x or not x) -> x.
template <typename Scalar = double>
QuboProblem<Scalar> reduce_to_qubo(const Formula& f) {
  QuboProblem<Scalar> q(f.num_vars());
  for (const Clause& c : f.clauses()) {
    Literal a = c.first();
    Literal b = c.second();
    const auto w = static_cast<Scalar>(c.weight());
    if (!a.negated && b.negated) std::swap(a, b);
    const std::size_t i = a.variable;
    const std::size_t j = b.variable;
    if (!a.negated && !b.negated) {
      q.add_constant(w);
      q.add_linear(i, -w);
      q.add_linear(j, -w);
      q.add_quadratic(i, j, w);
    } else if (a.negated && !b.negated) {
      q.add_linear(i, w);
      q.add_quadratic(i, j, -w);
    } else {
      q.add_quadratic(i, j, w);
    }
  }
  return q;
}

/// offset + sum_i Q_ii x_i + sum_{i<j} Q_ij x_i x_j.
template <typename Scalar>
Scalar qubo_objective(const QuboProblem<Scalar>& q, const Assignment& a) {
  detail::check_length(q.size(), a.size());
  const auto x = a.as<Scalar>();
  return q.offset() + x.dot(q.matrix().template triangularView<Eigen::Upper>() * x);
}

/// Objective change from flipping bit i, read off row and column i only.
template <typename Scalar>
Scalar incremental_flip_delta(const QuboProblem<Scalar>& q, const Assignment& a, std::size_t i) {
  detail::check_length(q.size(), a.size());
  if (i >= q.size()) throw std::out_of_range("variable index " + std::to_string(i) + " out of range");
  const auto& m = q.matrix();
  const auto n = static_cast<Eigen::Index>(q.size());
  const auto k = static_cast<Eigen::Index>(i);
  const auto x = a.as<Scalar>();
  // Local field: the coefficient multiplying x_i once everything else is fixed.
  Scalar field = m(k, k);
  if (k > 0) field += m.col(k).head(k).dot(x.head(k));
  if (k + 1 < n) field += m.row(k).tail(n - k - 1).dot(x.tail(n - k - 1));
  return a[i] ? -field : field;
}

}  // namespace max2sat
