#ifndef PCH_CHECKER_HPP
#define PCH_CHECKER_HPP

#include <array>
#include <chrono>
#include <optional>
#include <string>

#include "pch/aig.hpp"
#include "pch/certificate.hpp"
#include "pch/encoder.hpp"
#include "pch/error.hpp"
#include "pch/sat.hpp"

namespace pch {

enum class Query
{
  Initiation,     // I & -F
  Consecution,    // F & T & -F'
  Strengthening   // F & prop_defs & bad
};

enum class Strategy
{
  Split,   // -F as one assumption set per clause
  Tseitin  // -F through selector variables, one solve per query
};

enum class Outcome
{
  Valid,
  Invalid,
  Rejected
};

std::string_view to_string(Query q);
std::string_view to_string(Strategy s);
std::string_view to_string(Outcome o);

struct QueryReport
{
  bool unsat = false;
  std::chrono::microseconds time{0};
};

struct Verdict
{
  Outcome outcome = Outcome::Rejected;
  std::optional<Query> failed;          // Invalid only: first failing query
  sat::Model witness;                   // Invalid only: over the system's variables
  std::optional<ErrorCode> reject_code; // Rejected only
  std::string reason;
  std::array<QueryReport, 3> queries{};  // indexed by Query; all three always run
  std::chrono::microseconds setup_time{0};  // encode + bind

  std::chrono::microseconds query_time() const
  {
    return queries[0].time + queries[1].time + queries[2].time;
  }
};

struct ValidateOptions
{
  bool check_digest = true;
  bool parallel = true;  // run the three queries concurrently
};

// Never throws for malformed or tampered inputs; those become Rejected.
Verdict validate(const Aig& aig, std::size_t safety_index, const Certificate& cert,
                 Strategy strategy = Strategy::Split, const ValidateOptions& options = {});

// Re-checks an Invalid witness by evaluating the failed query's formula.
bool witness_satisfies(const TransitionSystem& ts, const sat::CnfFormula& f, Query q,
                       const sat::Model& witness);

// One line per query: "<name> <UNSAT|SAT> <microseconds>".
std::string format_report(const Verdict& v);

}  // namespace pch

#endif
