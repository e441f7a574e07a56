#include "xsmoo/dimacs.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "xsmoo/encode.hpp"
#include "xsmoo/errors.hpp"

namespace xsmoo {

std::string to_dimacs(const Formula& f, std::string_view comment) {
  VariableSpace space = f.space();
  std::vector<Clause> clauses = f.clauses();
  for (const CardinalityConstraint& c : f.cards()) {
    auto extra = encode_cardinality(c, space);
    clauses.insert(clauses.end(), extra.begin(), extra.end());
  }
  std::ostringstream body;
  std::size_t count = clauses.size();
  for (const Clause& c : clauses) {
    for (Lit l : c) body << l.to_dimacs() << ' ';
    body << "0\n";
  }
  for (const XorConstraint& x : f.xors()) {
    if (x.vars.empty()) {
      if (x.parity) {
        body << "0\n";
        ++count;
      }
      continue;
    }
    body << 'x';
    for (std::size_t i = 0; i < x.vars.size(); ++i) {
      const Lit l(x.vars[i], i == 0 && !x.parity);
      body << l.to_dimacs() << ' ';
    }
    body << "0\n";
    ++count;
  }
  std::ostringstream out;
  if (!comment.empty()) {
    std::istringstream lines{std::string(comment)};
    std::string line;
    while (std::getline(lines, line)) out << "c " << line << '\n';
  }
  out << "p cnf " << space.total() << ' ' << count << '\n' << body.str();
  return out.str();
}

namespace {

std::vector<long> parse_ints(std::string_view s, std::size_t line) {
  std::vector<long> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    long v = 0;
    const auto res = std::from_chars(s.data() + i, s.data() + j, v);
    if (res.ec != std::errc() || res.ptr != s.data() + j) {
      throw ParseError("bad integer '" + std::string(s.substr(i, j - i)) + "'", line);
    }
    out.push_back(v);
    i = j;
  }
  return out;
}

}  // namespace

Formula from_dimacs(std::string_view text, std::optional<VariableSpace> space) {
  std::optional<Formula> f;
  std::size_t declared = 0, seen = 0, vars = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    if (line[0] == 'p') {
      if (f) throw ParseError("duplicate header", line_no);
      std::istringstream in{std::string(line)};
      std::string p, kind;
      long v = -1, c = -1;
      in >> p >> kind >> v >> c;
      if (p != "p" || kind != "cnf" || v < 0 || c < 0) throw ParseError("malformed header", line_no);
      vars = static_cast<std::size_t>(v);
      declared = static_cast<std::size_t>(c);
      if (space) {
        if (space->total() != vars) {
          throw ParseError("header declares " + std::to_string(vars) + " variables, space has " +
                               std::to_string(space->total()),
                           line_no);
        }
        f.emplace(*space);
      } else {
        f.emplace(VariableSpace(vars, {}));
      }
      continue;
    }
    if (!f) throw ParseError("constraint before header", line_no);
    const bool is_xor = line[0] == 'x';
    if (is_xor) line.remove_prefix(1);
    std::vector<long> ints = parse_ints(line, line_no);
    if (ints.empty() || ints.back() != 0) throw ParseError("constraint must end with 0", line_no);
    ints.pop_back();
    std::vector<Lit> lits;
    for (long v : ints) {
      if (v == 0) throw ParseError("0 inside constraint", line_no);
      const unsigned long mag = static_cast<unsigned long>(v < 0 ? -v : v);
      if (mag > vars) throw ParseError("variable " + std::to_string(mag) + " exceeds header", line_no);
      lits.push_back(Lit::from_dimacs(v));
    }
    if (is_xor) {
      XorConstraint x;
      x.parity = true;
      for (Lit l : lits) {
        x.vars.push_back(l.var());
        if (l.negated()) x.parity = !x.parity;
      }
      f->add_xor(std::move(x));
    } else {
      f->add_clause(std::move(lits));
    }
    ++seen;
  }
  if (!f) throw ParseError("missing 'p cnf' header", 0);
  if (seen != declared) {
    throw ParseError("header declares " + std::to_string(declared) + " constraints, found " + std::to_string(seen),
                     0);
  }
  return *f;
}

}  // namespace xsmoo
