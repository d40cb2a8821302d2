#include "max2sat/formula.hpp"
#include "max2sat/random.hpp"

#include <algorithm>
#include <stdexcept>

namespace max2sat {

namespace {

void check_weight(Weight w) {
  if (w < 1) throw std::invalid_argument("clause weight must be a positive integer");
}

}  // namespace

Clause::Clause(Literal a, Weight weight) : lits_{a, a}, arity_(1), weight_(weight) {
  check_weight(weight);
}

Clause::Clause(Literal a, Literal b, Weight weight) : lits_{a, b}, arity_(2), weight_(weight) {
  check_weight(weight);
}

Assignment::Assignment(std::initializer_list<int> bits)
    : Assignment(std::vector<int>(bits)) {}

Assignment::Assignment(const std::vector<int>& bits) : Assignment(bits.size()) {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("assignment entries must be 0 or 1");
    set(i, bits[i] == 1);
  }
}

std::string Assignment::to_string() const {
  std::string s;
  s.reserve(2 * size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s.push_back(' ');
    s.push_back((*this)[i] ? '1' : '0');
  }
  return s;
}

bool operator<(const Assignment& a, const Assignment& b) {
  return std::lexicographical_compare(a.bits_.data(), a.bits_.data() + a.bits_.size(),
                                      b.bits_.data(), b.bits_.data() + b.bits_.size());
}

Formula::Formula(std::size_t num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  for (const Clause& c : clauses_) {
    for (const Literal& l : c.literals()) {
      if (l.variable >= num_vars_) {
        throw std::invalid_argument("literal variable " + std::to_string(l.variable) +
                                    " out of range for " + std::to_string(num_vars_) + " variables");
      }
    }
    total_weight_ += c.weight();
  }
}

bool Formula::unit_weights() const {
  return std::all_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.weight() == 1; });
}

bool is_satisfied(const Clause& c, const Assignment& a) {
  for (const Literal& l : c.literals()) {
    if (l.holds(a[l.variable])) return true;
  }
  return false;
}

Weight count_satisfied(const Formula& f, const Assignment& a) {
  if (a.size() != f.num_vars()) {
    throw std::invalid_argument("assignment has " + std::to_string(a.size()) +
                                " entries, formula has " + std::to_string(f.num_vars()) + " variables");
  }
  Weight total = 0;
  for (const Clause& c : f.clauses()) {
    if (is_satisfied(c, a)) total += c.weight();
  }
  return total;
}

Formula gen_random_2sat(std::size_t num_vars, std::size_t num_clauses, std::uint64_t seed) {
  if (num_clauses > 0 && num_vars < 2) {
    throw std::invalid_argument("random 2-SAT clauses need at least two variables");
  }
  Engine rng = make_engine(seed);
  std::vector<Clause> clauses;
  clauses.reserve(num_clauses);
  for (std::size_t k = 0; k < num_clauses; ++k) {
    const auto i = static_cast<Var>(uniform_below(rng, num_vars));
    auto j = static_cast<Var>(uniform_below(rng, num_vars - 1));
    if (j >= i) ++j;
    const bool ni = coin(rng);
    const bool nj = coin(rng);
    clauses.emplace_back(Literal{i, ni}, Literal{j, nj});
  }
  return Formula(num_vars, std::move(clauses));
}

}  // namespace max2sat
