#include "max2sat/qubo_io.hpp"
#include "max2sat/dimacs.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace max2sat {

namespace {

template <typename T>
bool read_token(std::istringstream& in, T& value) {
  std::string tok;
  if (!(in >> tok)) return false;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  return ec == std::errc{} && p == tok.data() + tok.size();
}

bool at_end(std::istringstream& in) {
  std::string rest;
  return !(in >> rest);
}

}  // namespace

std::string format_number(double v) {
  if (v == 0) return "0";
  if (std::nearbyint(v) == v && std::abs(v) < 0x1.0p53) {
    return std::to_string(static_cast<std::int64_t>(v));
  }
  std::array<char, 64> buf{};
  const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), p);
}

void emit_qubo(std::ostream& out, const QuboProblem<double>& q) {
  out << "q " << q.size() << ' ' << format_number(q.offset()) << '\n';
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i; j < q.size(); ++j) {
      const double v = q(i, j);
      if (v != 0) out << i << ' ' << j << ' ' << format_number(v) << '\n';
    }
  }
}

std::string emit_qubo(const QuboProblem<double>& q) {
  std::ostringstream out;
  emit_qubo(out, q);
  return out.str();
}

QuboProblem<double> parse_qubo(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  bool have_header = false;
  QuboProblem<double> q;
  std::vector<std::vector<bool>> seen;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ls(raw);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_header) {
      std::size_t n = 0;
      double offset = 0;
      if (first != "q" || !read_token(ls, n) || !read_token(ls, offset) || !at_end(ls)) {
        throw ParseError(line, "malformed header, expected 'q <N> <offset>'");
      }
      q = QuboProblem<double>(n);
      q.add_constant(offset);
      seen.assign(n, std::vector<bool>(n, false));
      have_header = true;
      continue;
    }
    std::istringstream entry(raw);
    std::size_t i = 0, j = 0;
    double v = 0;
    if (!read_token(entry, i) || !read_token(entry, j) || !read_token(entry, v) || !at_end(entry)) {
      throw ParseError(line, "malformed entry, expected '<i> <j> <value>'");
    }
    if (i >= q.size() || j >= q.size()) {
      throw ParseError(line, "index out of range for size " + std::to_string(q.size()));
    }
    if (i > j) throw ParseError(line, "lower-triangular entry (i > j)");
    if (seen[i][j]) throw ParseError(line, "repeated entry");
    seen[i][j] = true;
    q.add_quadratic(i, j, v);
  }
  if (!have_header) throw ParseError(0, "missing QUBO header");
  return q;
}

QuboProblem<double> parse_qubo(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_qubo(in);
}

void write_qubo_file(const std::filesystem::path& path, const QuboProblem<double>& q) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  emit_qubo(out, q);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace max2sat
