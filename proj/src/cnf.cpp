#include "wittsat/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "wittsat/errors.hpp"

namespace wittsat {

//===----------------------------------------------------------------------===//
// Assignment
//===----------------------------------------------------------------------===//

Assignment Assignment::from_mask(int n, std::uint64_t mask) {
  if (n > 64)
    throw InvalidArgument("mask assignments support at most 64 variables");
  Assignment a(n, false);
  for (int i = 0; i < n; ++i)
    a.set(i, (mask >> i) & 1u);
  return a;
}

std::uint64_t Assignment::mask() const {
  if (size() > 64)
    throw InvalidArgument("mask assignments support at most 64 variables");
  std::uint64_t m = 0;
  for (int i = 0; i < size(); ++i)
    if ((*this)[i])
      m |= std::uint64_t{1} << i;
  return m;
}

std::vector<int> Assignment::to_dimacs() const {
  std::vector<int> out;
  out.reserve(values_.size());
  for (int i = 0; i < size(); ++i)
    out.push_back((*this)[i] ? i + 1 : -(i + 1));
  return out;
}

std::string Assignment::to_string() const {
  std::string s;
  for (bool v : values_)
    s += v ? 'T' : 'F';
  return s;
}

//===----------------------------------------------------------------------===//
// Clause
//===----------------------------------------------------------------------===//

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  for (const auto &l : literals_)
    if (l.var < 0)
      throw InvalidArgument("negative variable index");
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()),
                  literals_.end());
}

Clause Clause::from_dimacs(const std::vector<int> &lits) {
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (int l : lits) {
    if (l == 0)
      throw InvalidArgument("literal 0 is the clause terminator");
    out.push_back(Literal::from_dimacs(l));
  }
  return Clause(std::move(out));
}

bool Clause::is_tautology() const noexcept {
  for (std::size_t i = 1; i < literals_.size(); ++i)
    if (literals_[i].var == literals_[i - 1].var)
      return true;
  return false;
}

int Clause::max_var() const noexcept {
  return literals_.empty() ? -1 : literals_.back().var;
}

bool Clause::satisfied_by(const Assignment &a) const {
  return std::any_of(literals_.begin(), literals_.end(),
                     [&](const Literal &l) { return l.satisfied_by(a); });
}

std::vector<int> Clause::to_dimacs() const {
  std::vector<int> out;
  for (const auto &l : literals_)
    out.push_back(l.to_dimacs());
  return out;
}

bool CnfFormula::satisfied_by(const Assignment &a) const {
  if (empty_clauses > 0)
    return false;
  return std::all_of(clauses.begin(), clauses.end(),
                     [&](const Clause &c) { return c.satisfied_by(a); });
}

//===----------------------------------------------------------------------===//
// DIMACS
//===----------------------------------------------------------------------===//

namespace {

bool parse_int(std::string_view tok, long long &out) {
  if (!tok.empty() && tok[0] == '+')
    tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> tokens_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; };
  while (i < line.size()) {
    while (i < line.size() && ws(line[i]))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !ws(line[j]))
      ++j;
    if (j > i)
      out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

} // namespace

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool have_header = false;
  std::vector<int> current;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  bool stop = false;

  while (pos < text.size() && !stop) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;

    auto toks = tokens_of(line);
    if (toks.empty())
      continue;
    if (toks[0][0] == 'c') {
      auto start = line.find('c');
      std::string_view rest = line.substr(start + 1);
      while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t'))
        rest.remove_prefix(1);
      while (!rest.empty() && rest.back() == '\r')
        rest.remove_suffix(1);
      f.meta.comments.emplace_back(rest);
      continue;
    }
    if (toks[0] == "p") {
      if (have_header)
        throw ParseError("duplicate problem line", lineno);
      long long n = 0, m = 0;
      if (toks.size() != 4 || toks[1] != "cnf" || !parse_int(toks[2], n) ||
          !parse_int(toks[3], m))
        throw ParseError("malformed header, expected 'p cnf <n> <m>'", lineno);
      if (n < 1)
        throw ParseError("header declares no variables", lineno);
      if (m < 0 || n > std::numeric_limits<int>::max() / 2 ||
          m > std::numeric_limits<int>::max())
        throw ParseError("header counts out of range", lineno);
      f.n = static_cast<int>(n);
      f.meta.declared_clauses = static_cast<int>(m);
      have_header = true;
      continue;
    }
    if (toks[0] == "%") {
      // SATLIB-style end marker.
      stop = true;
      break;
    }
    if (!have_header)
      throw ParseError("clause data before 'p cnf' header", lineno);

    for (auto tok : toks) {
      long long v = 0;
      if (!parse_int(tok, v))
        throw ParseError("bad literal '" + std::string(tok) + "'", lineno);
      if (v == 0) {
        if (tok[0] == '-')
          throw ParseError("literal index 0", lineno);
        if (current.empty()) {
          ++f.empty_clauses;
        } else {
          f.clauses.push_back(Clause::from_dimacs(current));
          current.clear();
        }
        continue;
      }
      long long var = v < 0 ? -v : v;
      if (var > f.n)
        throw ParseError("variable " + std::to_string(var) +
                             " exceeds declared " + std::to_string(f.n),
                         lineno);
      current.push_back(static_cast<int>(v));
    }
  }

  if (!have_header)
    throw ParseError("missing 'p cnf' header", lineno);
  if (!current.empty()) {
    f.clauses.push_back(Clause::from_dimacs(current));
    f.meta.warnings.push_back("last clause not terminated by 0");
  }
  if (f.m() != f.meta.declared_clauses)
    f.meta.warnings.push_back("header declares " +
                              std::to_string(f.meta.declared_clauses) +
                              " clauses, found " + std::to_string(f.m()));
  if (f.empty_clauses > 0)
    f.meta.warnings.push_back("formula contains an empty clause");
  return f;
}

std::string write_dimacs(const CnfFormula &f) {
  std::string out;
  for (const auto &c : f.meta.comments)
    out += "c " + c + "\n";
  out += "p cnf " + std::to_string(f.n) + " " + std::to_string(f.m()) + "\n";
  for (const auto &c : f.clauses) {
    for (int l : c.to_dimacs())
      out += std::to_string(l) + " ";
    out += "0\n";
  }
  for (int i = 0; i < f.empty_clauses; ++i)
    out += "0\n";
  return out;
}

} // namespace wittsat
