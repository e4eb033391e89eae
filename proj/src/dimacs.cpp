#include "mcsat/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace mcsat {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long to_long(std::string_view tok, int line) {
  long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, "bad integer '" + std::string(tok) + "'");
  return v;
}

}  // namespace

Formula parse_dimacs(std::string_view text) {
  bool have_header = false, any_token = false;
  long nvars = 0;
  std::vector<Clause> clauses;
  Clause cur;
  int lineno = 0, last_lit_line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    any_token = true;
    if (toks[0] == "c" || toks[0][0] == 'c') continue;
    if (toks[0] == "%") break;
    if (toks[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf") throw ParseError(lineno, "malformed header, expected 'p cnf <vars> <clauses>'");
      nvars = to_long(toks[2], lineno);
      long ncl = to_long(toks[3], lineno);
      if (nvars < 0 || ncl < 0) throw ParseError(lineno, "negative count in header");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "clause data before header");
    for (auto tok : toks) {
      long x = to_long(tok, lineno);
      if (x == 0) {
        clauses.push_back(cur);
        cur.clear();
        continue;
      }
      if (x > nvars || -x > nvars)
        throw ParseError(lineno, "literal " + std::string(tok) + " exceeds declared variable count " + std::to_string(nvars));
      cur.push_back(Literal::from_dimacs(static_cast<int>(x)));
      last_lit_line = lineno;
    }
    if (end == text.size()) break;
  }
  if (!any_token) throw ParseError(lineno, "empty input");
  if (!have_header) throw ParseError(lineno, "missing header");
  if (!cur.empty()) throw ParseError(last_lit_line, "clause not terminated by 0");
  return Formula(clauses, static_cast<Var>(nvars + 1));
}

Formula read_dimacs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dimacs(ss.str());
}

std::string emit_dimacs(const Formula& f) {
  std::ostringstream os;
  os << "p cnf " << f.max_variable() << ' ' << f.num_clauses() << '\n';
  for (ClauseId id : f.clause_ids()) {
    for (Literal l : f.clause(id)) os << l.to_dimacs() << ' ';
    os << "0\n";
  }
  return os.str();
}

}  // namespace mcsat
