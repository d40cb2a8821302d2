#include "max2sat/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace max2sat {

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
std::optional<Int> to_int(std::string_view tok) {
  Int v{};
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

std::string quoted(std::string_view tok) { return "'" + std::string(tok) + "'"; }

struct Header {
  bool weighted = false;
  std::size_t num_vars = 0;
  std::size_t num_clauses = 0;
  std::optional<Weight> top;
};

Header parse_header(const std::vector<std::string_view>& toks, std::size_t line) {
  Header h;
  if (toks.size() < 4 || (toks[1] != "cnf" && toks[1] != "wcnf")) {
    throw ParseError(line, "malformed problem line, expected 'p cnf N C' or 'p wcnf N C [top]'");
  }
  h.weighted = toks[1] == "wcnf";
  if (toks.size() > (h.weighted ? 5u : 4u)) throw ParseError(line, "trailing tokens on problem line");
  const auto n = to_int<std::size_t>(toks[2]);
  const auto c = to_int<std::size_t>(toks[3]);
  if (!n || !c) throw ParseError(line, "problem line counts must be non-negative integers");
  if (*n > std::numeric_limits<Var>::max()) throw ParseError(line, "too many variables");
  h.num_vars = *n;
  h.num_clauses = *c;
  if (toks.size() == 5) {
    h.top = to_int<Weight>(toks[4]);
    if (!h.top || *h.top < 1) throw ParseError(line, "malformed top weight " + quoted(toks[4]));
  }
  return h;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

DimacsDocument parse_dimacs_document(std::istream& in) {
  DimacsDocument doc;
  std::optional<Header> header;
  std::vector<Clause> clauses;

  std::vector<Literal> pending;
  std::optional<Weight> pending_weight;
  bool in_clause = false;
  std::size_t clause_line = 0;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text(raw);
    const auto toks = split_ws(text);
    if (toks.empty()) continue;
    if (toks[0].front() == 'c') {
      const auto start = text.find('c') + 1;
      auto body = text.substr(start);
      while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
      while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
      doc.comments.emplace_back(body);
      continue;
    }
    if (toks[0] == "%") break;  // SATLIB end marker
    if (toks[0] == "p") {
      if (header) throw ParseError(line, "duplicate problem line");
      header = parse_header(toks, line);
      continue;
    }
    if (!header) throw ParseError(line, "clause before problem line");

    for (const auto tok : toks) {
      if (!in_clause) {
        in_clause = true;
        clause_line = line;
        pending.clear();
        pending_weight.reset();
        if (header->weighted) {
          const auto w = to_int<Weight>(tok);
          if (!w) throw ParseError(line, "malformed clause weight " + quoted(tok));
          if (*w < 1) throw ParseError(line, "clause weight must be positive, got " + quoted(tok));
          if (header->top && *w >= *header->top) {
            throw ParseError(line, "hard clause (weight >= top) is not supported");
          }
          pending_weight = *w;
          continue;
        }
      }
      const auto lit = to_int<std::int64_t>(tok);
      if (!lit) throw ParseError(line, "malformed literal " + quoted(tok));
      if (*lit == 0) {
        if (pending.empty()) throw ParseError(line, "empty clause");
        if (clauses.size() == header->num_clauses) {
          throw ParseError(line, "more clauses than the " + std::to_string(header->num_clauses) +
                                     " declared in the problem line");
        }
        const Weight w = pending_weight.value_or(1);
        if (pending.size() == 1) {
          clauses.emplace_back(pending[0], w);
        } else {
          clauses.emplace_back(pending[0], pending[1], w);
        }
        in_clause = false;
        continue;
      }
      const std::uint64_t v = *lit < 0 ? static_cast<std::uint64_t>(-(*lit + 1)) + 1
                                       : static_cast<std::uint64_t>(*lit);
      if (v > header->num_vars) {
        throw ParseError(line, "literal " + quoted(tok) + " exceeds the " +
                                   std::to_string(header->num_vars) + " declared variables");
      }
      if (pending.size() == 2) {
        throw ParseError(line, "clause starting on line " + std::to_string(clause_line) +
                                   " has more than 2 literals");
      }
      pending.push_back(Literal{static_cast<Var>(v - 1), *lit < 0});
    }
  }
  if (!header) throw ParseError(0, "missing problem line");
  if (in_clause) throw ParseError(clause_line, "clause is not terminated by 0");
  if (clauses.size() != header->num_clauses) {
    throw ParseError(0, "problem line declares " + std::to_string(header->num_clauses) +
                            " clauses, found " + std::to_string(clauses.size()));
  }
  doc.formula = Formula(header->num_vars, std::move(clauses));
  return doc;
}

Formula parse_dimacs(std::istream& in) { return parse_dimacs_document(in).formula; }

Formula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

Formula read_dimacs_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_dimacs(in);
}

void emit_dimacs(std::ostream& out, const Formula& f) {
  const bool weighted = !f.unit_weights();
  out << "p " << (weighted ? "wcnf " : "cnf ") << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const Clause& c : f.clauses()) {
    if (weighted) out << c.weight() << ' ';
    for (const Literal& l : c.literals()) {
      out << (l.negated ? "-" : "") << (static_cast<std::uint64_t>(l.variable) + 1) << ' ';
    }
    out << "0\n";
  }
}

std::string emit_dimacs(const Formula& f) {
  std::ostringstream out;
  emit_dimacs(out, f);
  return out.str();
}

std::optional<Weight> known_optimum(const std::vector<std::string>& comments) {
  for (const std::string& c : comments) {
    const auto toks = split_ws(c);
    if (toks.size() == 2 && toks[0] == "optimum") {
      if (auto w = to_int<Weight>(toks[1]); w && *w >= 0) return w;
    }
  }
  return std::nullopt;
}

}  // namespace max2sat
