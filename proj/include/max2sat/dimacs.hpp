#pragma once

#include "max2sat/formula.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace max2sat {

/// Malformed input; `line()` is 1-based, 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A parsed instance together with its comment lines (text after the "c").
struct DimacsDocument {
  Formula formula;
  std::vector<std::string> comments;
};

/// Reads DIMACS CNF ("p cnf N C") or WCNF ("p wcnf N C [top]"). Variables
/// become 0-indexed. Clauses with more than two literals are rejected.
DimacsDocument parse_dimacs_document(std::istream& in);
Formula parse_dimacs(std::istream& in);
Formula parse_dimacs(std::string_view text);
Formula read_dimacs_file(const std::filesystem::path& path);

/// Canonical CNF, or WCNF when any weight differs from 1.
void emit_dimacs(std::ostream& out, const Formula& f);
std::string emit_dimacs(const Formula& f);

/// Value of a "c optimum <W>" comment: the maximum satisfiable weight.
std::optional<Weight> known_optimum(const std::vector<std::string>& comments);

}  // namespace max2sat
