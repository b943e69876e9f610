#include <charconv>
#include <sstream>

#include "pch/error.hpp"
#include "pch/sat.hpp"

namespace pch::sat {

Dimacs parse_dimacs(std::string_view text)
{
  Dimacs out;
  bool have_header = false;
  std::size_t declared = 0;
  Clause current;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream hs(line);
      std::string p, fmt;
      long vars = -1, clauses = -1;
      hs >> p >> fmt >> vars >> clauses;
      if (fmt != "cnf" || vars < 0 || clauses < 0)
        throw Error(ErrorCode::MalformedHeader, "expected 'p cnf V C'");
      out.num_vars = static_cast<int>(vars);
      declared = static_cast<std::size_t>(clauses);
      have_header = true;
      continue;
    }
    if (!have_header) throw Error(ErrorCode::MalformedHeader, "clause before 'p cnf' header");
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw Error(ErrorCode::NonNumericLiteral, "'" + tok + "'");
      if (v == 0) {
        out.formula.add(std::move(current));
        current.clear();
        continue;
      }
      const int var = (v < 0 ? -v : v) - 1;
      if (var >= out.num_vars)
        throw Error(ErrorCode::UnallocatedVariable, "literal " + tok + " exceeds declared variables");
      current.push_back(Lit::make(var, v < 0));
    }
  }
  if (!have_header) throw Error(ErrorCode::MalformedHeader, "missing 'p cnf' header");
  if (!current.empty()) out.formula.add(std::move(current));
  if (out.formula.size() != declared)
    throw Error(ErrorCode::ClauseCountMismatch, "header declares " + std::to_string(declared) +
                                                    " clauses, found " +
                                                    std::to_string(out.formula.size()));
  return out;
}

std::string write_dimacs(int num_vars, const CnfFormula& f)
{
  std::ostringstream out;
  out << "p cnf " << num_vars << ' ' << f.size() << '\n';
  for (const auto& c : f.clauses) {
    for (Lit l : c) out << (l.sign() ? -(l.var() + 1) : l.var() + 1) << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace pch::sat
