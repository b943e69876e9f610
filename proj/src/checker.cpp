#include "pch/checker.hpp"

#include <functional>

namespace pch {

using Clock = std::chrono::steady_clock;
using sat::Result;

std::string_view to_string(Query q)
{
  switch (q) {
    case Query::Initiation: return "initiation";
    case Query::Consecution: return "consecution";
    case Query::Strengthening: return "strengthening";
  }
  return "?";
}

std::string_view to_string(Strategy s) { return s == Strategy::Split ? "split" : "tseitin"; }

std::string_view to_string(Outcome o)
{
  switch (o) {
    case Outcome::Valid: return "valid";
    case Outcome::Invalid: return "invalid";
    case Outcome::Rejected: return "rejected";
  }
  return "?";
}

namespace {

struct QueryResult
{
  bool unsat = true;
  sat::Model witness;
  std::chrono::microseconds time{0};
};

std::chrono::microseconds since(Clock::time_point t0)
{
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
}

sat::Model truncate(const sat::Model& m, int vars)
{
  return sat::Model(m.begin(), m.begin() + std::min<std::ptrdiff_t>(vars, std::ssize(m)));
}

// Solves base & -f, where f is a CNF over solver variables below base_vars.
QueryResult refute_negation(const sat::CnfFormula& base, int base_vars, const sat::CnfFormula& f,
                            Strategy strategy)
{
  const auto t0 = Clock::now();
  QueryResult r;
  auto s = sat::make_solver();
  s->reserve_vars(base_vars);
  s->add_formula(base);
  if (strategy == Strategy::Split) {
    for (const auto& clause : f.clauses) {
      std::vector<sat::Lit> assumptions;
      for (auto l : clause) assumptions.push_back(~l);
      if (s->solve(assumptions) == Result::Sat) {
        r.unsat = false;
        r.witness = truncate(s->model(), base_vars);
        break;
      }
    }
  } else {
    sat::Var next = base_vars;
    const auto neg = negate_tseitin(f, next);
    s->reserve_vars(next);
    s->add_formula(neg.clauses);
    if (s->solve() == Result::Sat) {
      r.unsat = false;
      r.witness = truncate(s->model(), base_vars);
    }
  }
  r.time = since(t0);
  return r;
}

QueryResult strengthening(const TransitionSystem& ts, const sat::CnfFormula& f)
{
  const auto t0 = Clock::now();
  QueryResult r;
  auto s = sat::make_solver();
  s->reserve_vars(ts.vars.num_vars);
  s->add_formula(f);
  s->add_formula(ts.prop_defs);
  if (s->solve({ts.bad_lit()}) == Result::Sat) {
    r.unsat = false;
    r.witness = s->model();
  }
  r.time = since(t0);
  return r;
}

}  // namespace

Verdict validate(const Aig& aig, std::size_t safety_index, const Certificate& cert,
                 Strategy strategy, const ValidateOptions& options)
{
  Verdict v;
  const auto t0 = Clock::now();
  TransitionSystem ts;
  sat::CnfFormula f;
  try {
    ts = encode(aig, safety_index);
    f = bind(cert, aig, ts.vars, options.check_digest).formula;
  } catch (const Error& e) {
    v.outcome = Outcome::Rejected;
    v.reject_code = e.code();
    v.reason = e.what();
    v.setup_time = since(t0);
    return v;
  }
  v.setup_time = since(t0);

  std::array<QueryResult, 3> results;
  const std::array<std::function<void()>, 3> jobs{
      [&] { results[0] = refute_negation(ts.init, ts.vars.num_vars, f, strategy); },
      [&] {
        sat::CnfFormula base = f;
        base.append(ts.trans);
        results[1] = refute_negation(base, ts.vars.num_vars, prime(f, ts.vars), strategy);
      },
      [&] { results[2] = strengthening(ts, f); },
  };
  if (options.parallel) {
#pragma omp parallel sections num_threads(3)
    {
#pragma omp section
      jobs[0]();
#pragma omp section
      jobs[1]();
#pragma omp section
      jobs[2]();
    }
  } else {
    for (const auto& job : jobs) job();
  }

  v.outcome = Outcome::Valid;
  for (std::size_t q = 0; q < 3; ++q) {
    v.queries[q] = {results[q].unsat, results[q].time};
    if (!results[q].unsat && v.outcome == Outcome::Valid) {
      v.outcome = Outcome::Invalid;
      v.failed = static_cast<Query>(q);
      v.witness = results[q].witness;
    }
  }
  return v;
}

bool witness_satisfies(const TransitionSystem& ts, const sat::CnfFormula& f, Query q,
                       const sat::Model& m)
{
  if (m.size() < static_cast<std::size_t>(ts.vars.num_vars)) return false;
  switch (q) {
    case Query::Initiation: return sat::eval(ts.init, m) && !sat::eval(f, m);
    case Query::Consecution:
      return sat::eval(f, m) && sat::eval(ts.trans, m) && !sat::eval(prime(f, ts.vars), m);
    case Query::Strengthening:
      return sat::eval(f, m) && sat::eval(ts.prop_defs, m) && sat::eval(ts.bad_lit(), m);
  }
  return false;
}

std::string format_report(const Verdict& v)
{
  std::string out;
  if (v.outcome == Outcome::Rejected) return "rejected " + v.reason + "\n";
  for (std::size_t q = 0; q < 3; ++q)
    out += std::string(to_string(static_cast<Query>(q))) + " " + (v.queries[q].unsat ? "UNSAT" : "SAT") +
           " " + std::to_string(v.queries[q].time.count()) + "\n";
  out += "verdict " + std::string(to_string(v.outcome));
  if (v.failed) out += " " + std::string(to_string(*v.failed));
  return out + "\n";
}

}  // namespace pch
