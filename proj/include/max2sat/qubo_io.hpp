#pragma once

#include "max2sat/qubo.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace max2sat {

// Sparse text form:
//
//   q <N> <offset>
//   <i> <j> <value>      one line per nonzero, 0-indexed, i <= j, sorted by (i, j)
//
// Integral values print as plain integers; others print with the shortest
// representation that reads back to the same double.

void emit_qubo(std::ostream& out, const QuboProblem<double>& q);
std::string emit_qubo(const QuboProblem<double>& q);

/// Throws ParseError on a malformed header or entry, a lower-triangular entry
/// (i > j), an index out of range, or a repeated (i, j).
QuboProblem<double> parse_qubo(std::istream& in);
QuboProblem<double> parse_qubo(std::string_view text);

void write_qubo_file(const std::filesystem::path& path, const QuboProblem<double>& q);

/// Shortest round-trip rendering; integral values with |v| < 2^53 print as integers.
std::string format_number(double v);

}  // namespace max2sat
