#include "pch/encoder.hpp"

#include <algorithm>

#include "pch/error.hpp"

namespace pch {

using sat::Clause;
using sat::CnfFormula;

sat::Lit VarMap::lit(Lit aiger_lit) const
{
  const auto base = aiger_to_solver[lit_var(aiger_lit)];
  return lit_sign(aiger_lit) ? ~base : base;
}

std::optional<std::size_t> VarMap::latch_of(sat::Var v) const
{
  if (v < 0 || static_cast<std::size_t>(v) >= latch_index.size()) return std::nullopt;
  const int i = latch_index[static_cast<std::size_t>(v)];
  if (i < 0) return std::nullopt;
  return static_cast<std::size_t>(i);
}

void add_simplified(CnfFormula& f, Clause c)
{
  Clause out;
  out.reserve(c.size());
  for (auto l : c) {
    if (l.is_true()) return;
    if (l.is_false()) continue;
    out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i + 1] == ~out[i]) return;
  f.add(std::move(out));
}

namespace {

void gate_clauses(CnfFormula& f, sat::Lit g, sat::Lit a, sat::Lit b)
{
  add_simplified(f, {~g, a});
  add_simplified(f, {~g, b});
  add_simplified(f, {g, ~a, ~b});
}

}  // namespace

TransitionSystem encode(const Aig& aig, std::size_t safety_index)
{
  const Lit bad = safety_literal(aig, safety_index);
  const auto ands = check_and_order(aig);

  TransitionSystem ts;
  VarMap& vm = ts.vars;
  vm.aiger_to_solver.assign(aig.max_var + 1, sat::kFalseLit);
  sat::Var next_var = 0;
  for (Lit l : aig.inputs) {
    vm.input.push_back(next_var);
    vm.aiger_to_solver[lit_var(l)] = sat::Lit::make(next_var++);
  }
  for (const auto& latch : aig.latches) {
    if (latch.reset == Reset::Undefined)
      throw Error(ErrorCode::UndefinedReset, "latch " + std::to_string(latch.lit));
    vm.current.push_back(next_var);
    vm.aiger_to_solver[lit_var(latch.lit)] = sat::Lit::make(next_var++);
    ts.reset.push_back(latch.reset == Reset::One);
  }
  for (const auto& g : ands) {
    vm.gate.push_back(next_var);
    vm.aiger_to_solver[lit_var(g.lhs)] = sat::Lit::make(next_var++);
  }
  for (std::size_t i = 0; i < aig.latches.size(); ++i) vm.next.push_back(next_var++);
  vm.num_vars = next_var;
  vm.latch_index.assign(static_cast<std::size_t>(next_var), -1);
  for (std::size_t i = 0; i < vm.current.size(); ++i)
    vm.latch_index[static_cast<std::size_t>(vm.current[i])] = static_cast<int>(i);

  for (std::size_t i = 0; i < aig.latches.size(); ++i) ts.init.add({ts.init_lit(i)});

  for (std::size_t k = 0; k < ands.size(); ++k)
    gate_clauses(ts.trans, sat::Lit::make(vm.gate[k]), vm.lit(ands[k].rhs0), vm.lit(ands[k].rhs1));
  for (std::size_t i = 0; i < aig.latches.size(); ++i) {
    const auto n = sat::Lit::make(vm.next[i]);
    const auto x = vm.lit(aig.latches[i].next);
    if (x.is_const()) {
      ts.trans.add({x.is_true() ? n : ~n});
    } else {
      ts.trans.add({~n, x});
      ts.trans.add({n, ~x});
    }
  }

  ts.prop_lit = ~vm.lit(bad);

  // Cone of influence of the bad literal.
  std::vector<bool> in_cone(aig.max_var + 1, false);
  std::vector<std::size_t> and_pos(aig.max_var + 1, ands.size());
  for (std::size_t k = 0; k < ands.size(); ++k) and_pos[lit_var(ands[k].lhs)] = k;
  std::vector<std::uint32_t> todo{lit_var(bad)};
  while (!todo.empty()) {
    const auto v = todo.back();
    todo.pop_back();
    if (v == 0 || in_cone[v] || and_pos[v] == ands.size()) continue;
    in_cone[v] = true;
    todo.push_back(lit_var(ands[and_pos[v]].rhs0));
    todo.push_back(lit_var(ands[and_pos[v]].rhs1));
  }
  for (std::size_t k = 0; k < ands.size(); ++k)
    if (in_cone[lit_var(ands[k].lhs)])
      gate_clauses(ts.prop_defs, sat::Lit::make(vm.gate[k]), vm.lit(ands[k].rhs0), vm.lit(ands[k].rhs1));
  return ts;
}

Clause prime(const Clause& clause, const VarMap& vars)
{
  Clause out;
  out.reserve(clause.size());
  for (auto l : clause) {
    const auto idx = l.is_const() ? std::nullopt : vars.latch_of(l.var());
    if (!idx) throw Error(ErrorCode::NonStateVariable, "literal " + sat::to_string(l));
    out.push_back(sat::Lit::make(vars.next[*idx], l.sign()));
  }
  return out;
}

CnfFormula prime(const CnfFormula& f, const VarMap& vars)
{
  CnfFormula out;
  for (const auto& c : f.clauses) out.add(prime(c, vars));
  return out;
}

NegatedCnf negate_tseitin(const CnfFormula& f, sat::Var& next_var, bool guarded)
{
  NegatedCnf out;
  Clause any;
  if (guarded) {
    out.activation = sat::Lit::make(next_var++);
    any.push_back(~out.activation);
  }
  for (const auto& c : f.clauses) {
    const auto t = sat::Lit::make(next_var++);
    out.selectors.push_back(t);
    for (auto l : c) out.clauses.add({~t, ~l});
    any.push_back(t);
  }
  out.clauses.add(std::move(any));
  return out;
}

}  // namespace pch
