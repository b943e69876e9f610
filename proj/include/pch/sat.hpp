#ifndef PCH_SAT_HPP
#define PCH_SAT_HPP

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pch::sat {

using Var = int;

// Solver literal: 2*var + sign. The two negative encodings are the
// constants, so that negation works uniformly on them as well.
struct Lit
{
  int x = -2;

  static constexpr Lit make(Var v, bool negated = false) { return Lit{2 * v + (negated ? 1 : 0)}; }
  static constexpr Lit constant(bool value) { return Lit{value ? -2 : -1}; }

  constexpr Var var() const { return x >> 1; }
  constexpr bool sign() const { return (x & 1) != 0; }
  constexpr bool is_const() const { return x < 0; }
  constexpr bool is_true() const { return x == -2; }
  constexpr bool is_false() const { return x == -1; }
  constexpr std::size_t index() const { return static_cast<std::size_t>(x); }

  constexpr Lit operator~() const { return Lit{x ^ 1}; }
  constexpr auto operator<=>(const Lit&) const = default;
};

inline constexpr Lit kTrueLit = Lit::constant(true);
inline constexpr Lit kFalseLit = Lit::constant(false);

using Clause = std::vector<Lit>;

// A CNF formula. Clauses never contain both polarities of a variable.
struct CnfFormula
{
  std::vector<Clause> clauses;

  std::size_t size() const { return clauses.size(); }
  bool empty() const { return clauses.empty(); }
  void add(Clause c) { clauses.push_back(std::move(c)); }
  void append(const CnfFormula& other)
  {
    clauses.insert(clauses.end(), other.clauses.begin(), other.clauses.end());
  }
  bool operator==(const CnfFormula&) const = default;
};

using Model = std::vector<bool>;  // indexed by variable

inline bool eval(Lit l, const Model& m)
{
  if (l.is_const()) return l.is_true();
  return m[static_cast<std::size_t>(l.var())] != l.sign();
}

inline bool eval(const Clause& c, const Model& m)
{
  for (Lit l : c)
    if (eval(l, m)) return true;
  return false;
}

inline bool eval(const CnfFormula& f, const Model& m)
{
  for (const auto& c : f.clauses)
    if (!eval(c, m)) return false;
  return true;
}

enum class Result
{
  Sat,
  Unsat,
  Unknown  // budget exhausted
};

struct Stats
{
  std::uint64_t solves = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t learnts = 0;
};

//----------------------------------------------------------------------
// Backend contract. A session is single-threaded; independent sessions
// may be used concurrently.
//----------------------------------------------------------------------

class Solver
{
 public:
  virtual ~Solver() = default;

  virtual Var new_var() = 0;
  virtual int num_vars() const = 0;

  // Permanent for the session. Constant literals are simplified away.
  // Throws Error(UnallocatedVariable) for literals beyond num_vars().
  virtual void add_clause(std::span<const Lit> clause) = 0;

  virtual Result solve(std::span<const Lit> assumptions = {}) = 0;

  // After Sat: a total assignment satisfying every clause and assumption.
  virtual const Model& model() const = 0;
  // After Unsat: assumptions sufficient for unsatisfiability.
  virtual const std::vector<Lit>& core() const = 0;

  // Per-solve limits; negative / nullopt disables.
  virtual void set_conflict_budget(std::int64_t conflicts) = 0;
  virtual void set_deadline(std::optional<std::chrono::steady_clock::time_point> deadline) = 0;

  virtual Stats stats() const = 0;

  void add_clause(std::initializer_list<Lit> clause)
  {
    add_clause(std::span<const Lit>(clause.begin(), clause.size()));
  }
  void add_formula(const CnfFormula& f)
  {
    for (const auto& c : f.clauses) add_clause(std::span<const Lit>(c));
  }
  Result solve(std::initializer_list<Lit> assumptions)
  {
    return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()));
  }
  bool model_value(Lit l) const { return eval(l, model()); }
  void reserve_vars(int n)
  {
    while (num_vars() < n) new_var();
  }
};

// The bundled CDCL solver.
std::unique_ptr<Solver> make_solver();

//----------------------------------------------------------------------
// DIMACS ("p cnf V C", 0-terminated clauses, 1-based signed integers)
//----------------------------------------------------------------------

struct Dimacs
{
  int num_vars = 0;
  CnfFormula formula;
};

Dimacs parse_dimacs(std::string_view text);
std::string write_dimacs(int num_vars, const CnfFormula& f);

std::string to_string(Lit l);

}  // namespace pch::sat

#endif
