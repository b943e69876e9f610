#ifndef PCH_ENCODER_HPP
#define PCH_ENCODER_HPP

#include <optional>
#include <vector>

#include "pch/aig.hpp"
#include "pch/sat.hpp"

namespace pch {

// Solver variables for every role a circuit variable can play. Numbering is
// canonical: inputs, current latches, gates, next-state latches, each in
// circuit order.
struct VarMap
{
  std::vector<sat::Var> input;    // per input index
  std::vector<sat::Var> current;  // per latch index
  std::vector<sat::Var> gate;     // per AND index (topological order)
  std::vector<sat::Var> next;     // per latch index
  std::vector<sat::Lit> aiger_to_solver;  // per AIGER variable; 0 maps to FALSE
  int num_vars = 0;

  // AIGER literal to solver literal; constants map to the constant literals.
  sat::Lit lit(Lit aiger_lit) const;

  // Latch index of a current-state variable, if it is one.
  std::optional<std::size_t> latch_of(sat::Var v) const;

  std::vector<int> latch_index;  // per solver var, -1 if not a current latch
};

struct TransitionSystem
{
  VarMap vars;
  sat::CnfFormula init;       // unit clauses over current latches
  sat::CnfFormula trans;      // all gate definitions + next-state equalities
  sat::Lit prop_lit;          // P; its negation is the bad literal
  sat::CnfFormula prop_defs;  // gate definitions in the bad literal's cone
  std::vector<bool> reset;    // per latch

  sat::Lit bad_lit() const { return ~prop_lit; }
  std::size_t num_latches() const { return vars.current.size(); }
  std::size_t num_inputs() const { return vars.input.size(); }

  // Initial-state literal of latch i over its current-state variable.
  sat::Lit init_lit(std::size_t i) const { return sat::Lit::make(vars.current[i], !reset[i]); }
};

// Throws NoSuchSafetyBit, UndefinedReset.
TransitionSystem encode(const Aig& aig, std::size_t safety_index);

// Maps a clause over current-state variables to next-state variables.
// Throws NonStateVariable.
sat::Clause prime(const sat::Clause& clause, const VarMap& vars);
sat::CnfFormula prime(const sat::CnfFormula& f, const VarMap& vars);

// Appends `c` after dropping FALSE literals and duplicates; clauses with a
// TRUE literal or both polarities of a variable are skipped.
void add_simplified(sat::CnfFormula& f, sat::Clause c);

//----------------------------------------------------------------------
// Negation of a CNF through selector variables: for clause c_i a fresh t_i
// with (-t_i | -l) for every l in c_i, plus the selector disjunction. The
// result is satisfiable together with G iff G & -f is.
//----------------------------------------------------------------------

struct NegatedCnf
{
  sat::CnfFormula clauses;
  std::vector<sat::Lit> selectors;
  // TRUE unless guarded; when guarded, the selector disjunction only
  // applies while this literal is assumed.
  sat::Lit activation = sat::kTrueLit;
};

// `next_var` is the first free solver variable and is advanced past the
// variables used.
NegatedCnf negate_tseitin(const sat::CnfFormula& f, sat::Var& next_var, bool guarded = false);

}  // namespace pch

#endif
