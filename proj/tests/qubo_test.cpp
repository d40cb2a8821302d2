#include "max2sat/dimacs.hpp"
#include "max2sat/qubo.hpp"
#include "max2sat/qubo_io.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace max2sat;
using max2sat::testing::from_mask;
using max2sat::testing::random_mixed_formula;

namespace {

Formula running_example() {
  return parse_dimacs("p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n");
}

bool is_integral(double v) { return std::nearbyint(v) == v; }

}  // namespace

TEST(Reduce, RunningExampleCollapsesToConstantOne) {
  // (1 - x1 - x2 + x1x2) + (x1 - x1x2) + (x2 - x1x2) + x1x2 = 1
  const QuboProblem<> q = reduce_to_qubo(running_example());
  EXPECT_EQ(q.size(), 2u);
  EXPECT_TRUE(q.matrix().isZero(0));
  EXPECT_EQ(q.offset(), 1.0);
}

TEST(Reduce, SinglePositiveClause) {
  const QuboProblem<> q = reduce_to_qubo(Formula(2, {Clause(pos(0), pos(1))}));
  EXPECT_EQ(q(0, 0), -1.0);
  EXPECT_EQ(q(1, 1), -1.0);
  EXPECT_EQ(q(0, 1), 1.0);
  EXPECT_EQ(q(1, 0), 0.0);
  EXPECT_EQ(q.offset(), 1.0);
}

TEST(Reduce, TableRowsAndMixedCommutation) {
  const QuboProblem<> neg_pos = reduce_to_qubo(Formula(2, {Clause(neg(0), pos(1))}));
  EXPECT_EQ(neg_pos(0, 0), 1.0);
  EXPECT_EQ(neg_pos(0, 1), -1.0);
  EXPECT_EQ(neg_pos(1, 1), 0.0);
  EXPECT_EQ(neg_pos.offset(), 0.0);

  // x1 or not x2 is (not x2 or x1): x2 - x1 x2
  const QuboProblem<> pos_neg = reduce_to_qubo(Formula(2, {Clause(pos(0), neg(1))}));
  EXPECT_EQ(pos_neg(0, 0), 0.0);
  EXPECT_EQ(pos_neg(1, 1), 1.0);
  EXPECT_EQ(pos_neg(0, 1), -1.0);

  const QuboProblem<> neg_neg = reduce_to_qubo(Formula(2, {Clause(neg(0), neg(1))}));
  EXPECT_EQ(neg_neg(0, 1), 1.0);
  EXPECT_EQ(neg_neg(0, 0) + neg_neg(1, 1) + neg_neg.offset(), 0.0);
}

TEST(Reduce, SameVariableClausesFoldOntoDiagonal) {
  const auto one = [](Clause c) { return reduce_to_qubo(Formula(1, {c})); };
  QuboProblem<> q = one(Clause(pos(0), pos(0)));  // 1 - x
  EXPECT_EQ(q(0, 0), -1.0);
  EXPECT_EQ(q.offset(), 1.0);
  q = one(Clause(pos(0)));
  EXPECT_EQ(q(0, 0), -1.0);
  EXPECT_EQ(q.offset(), 1.0);
  q = one(Clause(neg(0), pos(0)));  // 0
  EXPECT_EQ(q(0, 0), 0.0);
  EXPECT_EQ(q.offset(), 0.0);
  q = one(Clause(pos(0), neg(0)));
  EXPECT_EQ(q(0, 0), 0.0);
  EXPECT_EQ(q.offset(), 0.0);
  q = one(Clause(neg(0), neg(0), 3));  // 3x
  EXPECT_EQ(q(0, 0), 3.0);
  EXPECT_EQ(q.offset(), 0.0);
}

TEST(Reduce, EmptyFormula) {
  const QuboProblem<> q = reduce_to_qubo(Formula(5, {}));
  EXPECT_EQ(q.size(), 5u);
  EXPECT_TRUE(q.matrix().isZero(0));
  EXPECT_EQ(q.offset(), 0.0);
}

TEST(Objective, Examples) {
  EXPECT_EQ(qubo_objective(reduce_to_qubo(running_example()), Assignment{1, 1}), 1.0);
  EXPECT_EQ(qubo_objective(QuboProblem<>(3), Assignment{1, 0, 1}), 0.0);

  const QuboProblem<> q = reduce_to_qubo(Formula(2, {Clause(pos(0), pos(1))}));
  EXPECT_EQ(qubo_objective(q, Assignment{0, 0}), 1.0);
  EXPECT_EQ(qubo_objective(q, Assignment{0, 1}), 0.0);
  EXPECT_EQ(qubo_objective(q, Assignment{1, 0}), 0.0);
  EXPECT_EQ(qubo_objective(q, Assignment{1, 1}), 0.0);
}

TEST(Objective, LengthMismatchThrows) {
  EXPECT_THROW(qubo_objective(QuboProblem<>(3), Assignment{1, 0}), std::invalid_argument);
}

TEST(Objective, IgnoresNothingAboveDiagonal) {
  QuboProblem<> q(3);
  q.add_quadratic(2, 0, 4.0);  // stored at (0, 2)
  q.add_linear(1, -2.5);
  q.add_constant(0.5);
  EXPECT_EQ(q(0, 2), 4.0);
  EXPECT_EQ(qubo_objective(q, Assignment{1, 1, 1}), 2.0);
  EXPECT_EQ(qubo_objective(q, Assignment{1, 0, 0}), 0.5);
}

TEST(QuboProblem, RejectsLowerTriangle) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(1, 0) = 1;
  EXPECT_THROW(QuboProblem<>(m, 0.0), std::invalid_argument);
  EXPECT_THROW(QuboProblem<>(Eigen::MatrixXd::Zero(2, 3), 0.0), std::invalid_argument);
}

TEST(QuboProblem, FloatScalar) {
  const QuboProblem<float> q = reduce_to_qubo<float>(running_example());
  EXPECT_EQ(qubo_objective(q, Assignment{0, 1}), 1.0f);
  EXPECT_EQ(reduce_to_qubo(running_example()).cast<float>(), q);
}

TEST(ReduceProperty, ClauseLocalPenaltyIsZeroOrWeight) {
  for (int si = 0; si < 2; ++si) {
    for (int sj = 0; sj < 2; ++sj) {
      for (const bool same : {false, true}) {
        const Weight w = 3;
        const Literal a{0, si == 1};
        const Literal b{same ? 0u : 1u, sj == 1};
        const Clause c(a, b, w);
        const Formula f(2, {c});
        const QuboProblem<> q = reduce_to_qubo(f);
        for (std::uint64_t m = 0; m < 4; ++m) {
          const Assignment x = from_mask(2, m);
          EXPECT_EQ(qubo_objective(q, x), is_satisfied(c, x) ? 0.0 : double(w));
        }
      }
    }
  }
}

TEST(ReduceProperty, ObjectivePlusSatisfiedIsTotalWeight) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const Formula f = random_mixed_formula(rng, n, rng() % 61, trial % 3 == 0);
    const QuboProblem<> q = reduce_to_qubo(f);
    ASSERT_TRUE(is_integral(q.offset()));
    ASSERT_TRUE(q.matrix().unaryExpr([](double v) { return double(is_integral(v)); }).minCoeff() == 1.0);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      const Assignment a = from_mask(n, m);
      const double obj = qubo_objective(q, a);
      ASSERT_TRUE(is_integral(obj));
      ASSERT_EQ(static_cast<Weight>(obj) + count_satisfied(f, a), f.total_weight());
    }
  }
}

TEST(ReduceProperty, SizeDependsOnlyOnVariableCount) {
  for (const std::size_t c : {0u, 10u, 100u, 1000u}) {
    const QuboProblem<> q = reduce_to_qubo(gen_random_2sat(30, c, c + 1));
    EXPECT_EQ(q.size(), 30u);
    EXPECT_EQ(q.matrix().rows(), 30);
    EXPECT_EQ(q.matrix().cols(), 30);
    EXPECT_TRUE(q.matrix().triangularView<Eigen::StrictlyLower>().toDenseMatrix().isZero(0));
  }
}

TEST(ReduceProperty, ArgminMatchesArgmax) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 11;
    const Formula f = random_mixed_formula(rng, n, 5 + rng() % 40, trial % 2 == 0);
    const QuboProblem<> q = reduce_to_qubo(f);
    const Weight best_sat = max2sat::testing::max_satisfied_exhaustive(f);
    double best_obj = INFINITY;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) best_obj = std::min(best_obj, qubo_objective(q, from_mask(n, m)));
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      const Assignment a = from_mask(n, m);
      ASSERT_EQ(count_satisfied(f, a) == best_sat, qubo_objective(q, a) == best_obj);
    }
  }
}

TEST(ReduceProperty, LinearInWeights) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const Formula base = random_mixed_formula(rng, n, 1 + rng() % 15, false);
    const std::size_t pick = rng() % base.num_clauses();
    const Weight w = 2 + static_cast<Weight>(rng() % 4);
    std::vector<Clause> weighted = base.clauses();
    std::vector<Clause> repeated = base.clauses();
    const Clause& c = base.clauses()[pick];
    weighted[pick] = c.arity() == 1 ? Clause(c.first(), w) : Clause(c.first(), c.second(), w);
    for (Weight k = 1; k < w; ++k) repeated.push_back(c);
    EXPECT_EQ(reduce_to_qubo(Formula(n, weighted)), reduce_to_qubo(Formula(n, repeated)));
  }
}

TEST(FlipDelta, Examples) {
  EXPECT_EQ(incremental_flip_delta(QuboProblem<>(4), Assignment{1, 0, 1, 1}, 2), 0.0);
  const QuboProblem<> q = reduce_to_qubo(Formula(2, {Clause(pos(0), pos(1))}));
  EXPECT_EQ(incremental_flip_delta(q, Assignment{0, 0}, 0), -1.0);
  EXPECT_THROW(incremental_flip_delta(q, Assignment{0, 0}, 2), std::out_of_range);
}

TEST(FlipDelta, MatchesTwoEvaluationDifference) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coef(-9, 9);
  const std::size_t n = 10;
  QuboProblem<> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) q.add_quadratic(i, j, coef(rng));
  }
  q.add_constant(coef(rng));
  for (int k = 0; k < 1000; ++k) {
    const Assignment a = from_mask(n, rng());
    const std::size_t i = rng() % n;
    Assignment b = a;
    b.flip(i);
    ASSERT_EQ(incremental_flip_delta(q, a, i), qubo_objective(q, b) - qubo_objective(q, a));
  }
}

TEST(QuboText, EmitSingleClause) {
  const QuboProblem<> q = reduce_to_qubo(Formula(2, {Clause(pos(0), pos(1))}));
  EXPECT_EQ(emit_qubo(q), "q 2 1\n0 0 -1\n0 1 1\n1 1 -1\n");
  // Entry order in the input does not matter.
  EXPECT_EQ(parse_qubo("q 2 1\n0 0 -1\n1 1 -1\n0 1 1\n"), q);
}

TEST(QuboText, ZeroProblem) {
  EXPECT_EQ(emit_qubo(QuboProblem<>(1)), "q 1 0\n");
  EXPECT_EQ(parse_qubo("q 1 0\n"), QuboProblem<>(1));
}

TEST(QuboText, RoundTripReduction) {
  const QuboProblem<> q = reduce_to_qubo(gen_random_2sat(10, 40, 7));
  EXPECT_EQ(parse_qubo(emit_qubo(q)), q);
}

TEST(QuboText, RoundTripNonIntegral) {
  QuboProblem<> q(3);
  q.add_linear(0, 0.1);
  q.add_quadratic(0, 2, -1.0 / 3.0);
  q.add_constant(2.5e-7);
  EXPECT_EQ(parse_qubo(emit_qubo(q)), q);
  EXPECT_EQ(format_number(-3.0), "-3");
  EXPECT_EQ(format_number(0.25), "0.25");
}

TEST(QuboText, Errors) {
  EXPECT_THROW(parse_qubo(""), ParseError);
  EXPECT_THROW(parse_qubo("x 2 0\n"), ParseError);
  EXPECT_THROW(parse_qubo("q 2\n"), ParseError);
  EXPECT_THROW(parse_qubo("q 2 0\n1 0 3\n"), ParseError);
  EXPECT_THROW(parse_qubo("q 2 0\n0 2 3\n"), ParseError);
  EXPECT_THROW(parse_qubo("q 2 0\n0 1 3\n0 1 3\n"), ParseError);
  EXPECT_THROW(parse_qubo("q 2 0\n0 1\n"), ParseError);
  try {
    parse_qubo("q 2 0\n0 0 1\n1 0 3\n");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}
