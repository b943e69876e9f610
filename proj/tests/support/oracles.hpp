#ifndef PCH_TEST_ORACLES_HPP
#define PCH_TEST_ORACLES_HPP

// Test-only reference procedures. Nothing here calls into the solver or the
// IC3 engine, so the unit tests can use them as independent oracles.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pch/aig.hpp"
#include "pch/error.hpp"
#include "pch/sat.hpp"

namespace pch::testing {

// Exhaustive satisfiability over variables [0, num_vars).
inline std::optional<sat::Model> brute_force_sat(int num_vars, const sat::CnfFormula& f,
                                                 const std::vector<sat::Lit>& assumptions = {})
{
  sat::Model m(static_cast<std::size_t>(num_vars));
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << num_vars); ++bits) {
    for (int v = 0; v < num_vars; ++v) m[static_cast<std::size_t>(v)] = (bits >> v) & 1u;
    bool ok = true;
    for (auto a : assumptions)
      if (!sat::eval(a, m)) {
        ok = false;
        break;
      }
    if (ok && sat::eval(f, m)) return m;
  }
  return std::nullopt;
}

// Unit propagation to fixpoint. Returns nullopt on conflict; otherwise a
// partial assignment (-1 unassigned, 0 false, 1 true).
inline std::optional<std::vector<int>> unit_propagate(int num_vars, const sat::CnfFormula& f,
                                                      std::vector<int> assign)
{
  assign.resize(static_cast<std::size_t>(num_vars), -1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : f.clauses) {
      int unassigned = 0;
      sat::Lit last{};
      bool sat_clause = false;
      for (auto l : c) {
        const int v = assign[static_cast<std::size_t>(l.var())];
        if (v < 0) {
          ++unassigned;
          last = l;
        } else if ((v == 1) != l.sign()) {
          sat_clause = true;
          break;
        }
      }
      if (sat_clause) continue;
      if (unassigned == 0) return std::nullopt;
      if (unassigned == 1) {
        assign[static_cast<std::size_t>(last.var())] = last.sign() ? 0 : 1;
        changed = true;
      }
    }
  }
  return assign;
}

inline sat::CnfFormula random_cnf(std::mt19937_64& rng, int num_vars, int num_clauses, int width)
{
  sat::CnfFormula f;
  for (int k = 0; k < num_clauses; ++k) {
    sat::Clause c;
    while (static_cast<int>(c.size()) < width) {
      const auto v = static_cast<int>(rng() % static_cast<std::uint64_t>(num_vars));
      bool dup = false;
      for (auto l : c) dup = dup || l.var() == v;
      if (!dup) c.push_back(sat::Lit::make(v, rng() & 1u));
    }
    f.add(std::move(c));
  }
  return f;
}

struct RandomAigShape
{
  unsigned inputs = 2;
  unsigned latches = 2;
  unsigned ands = 4;
  unsigned outputs = 1;
  unsigned bads = 0;
  bool allow_reset_one = true;
};

// Random canonical AIG: operands drawn from constants and earlier variables.
inline Aig random_aig(std::mt19937_64& rng, const RandomAigShape& s)
{
  Aig aig;
  aig.max_var = s.inputs + s.latches + s.ands;
  auto any_lit = [&](std::uint32_t below) -> Lit {
    const auto v = static_cast<std::uint32_t>(rng() % below);  // 0 = constant
    return var_lit(v, rng() & 1u);
  };
  std::uint32_t v = 1;
  for (unsigned i = 0; i < s.inputs; ++i) aig.inputs.push_back(var_lit(v++));
  for (unsigned i = 0; i < s.latches; ++i)
    aig.latches.push_back({var_lit(v++), 0, (s.allow_reset_one && (rng() & 3u) == 0) ? Reset::One : Reset::Zero});
  for (unsigned i = 0; i < s.ands; ++i) {
    const Lit lhs = var_lit(v);
    Lit a = any_lit(v), b = any_lit(v);
    if (a < b) std::swap(a, b);
    aig.ands.push_back({lhs, a, b});
    ++v;
  }
  for (auto& latch : aig.latches) latch.next = any_lit(v);
  for (unsigned i = 0; i < s.outputs; ++i) aig.outputs.push_back(any_lit(v));
  for (unsigned i = 0; i < s.bads; ++i) aig.bads.push_back(any_lit(v));
  return aig;
}

inline std::vector<std::vector<bool>> random_inputs(std::mt19937_64& rng, std::size_t width,
                                                    std::size_t steps)
{
  std::vector<std::vector<bool>> in(steps, std::vector<bool>(width));
  for (auto& row : in)
    for (std::size_t i = 0; i < width; ++i) row[i] = rng() & 1u;
  return in;
}

// Explicit-state search used by the encoder/IC3 unit tests: the set of
// latch valuations reachable from reset, as integers (bit i = latch i).
inline std::vector<std::uint64_t> reachable_states(const Aig& aig)
{
  const auto nl = aig.latches.size();
  const auto ni = aig.inputs.size();
  std::uint64_t init = 0;
  for (std::size_t i = 0; i < nl; ++i)
    if (aig.latches[i].reset == Reset::One) init |= std::uint64_t{1} << i;
  std::vector<bool> seen(std::size_t{1} << nl, false);
  std::vector<std::uint64_t> out{init}, todo{init};
  seen[init] = true;
  while (!todo.empty()) {
    const auto s = todo.back();
    todo.pop_back();
    std::vector<bool> st(nl);
    for (std::size_t i = 0; i < nl; ++i) st[i] = (s >> i) & 1u;
    for (std::uint64_t in = 0; in < (std::uint64_t{1} << ni); ++in) {
      std::vector<bool> iv(ni);
      for (std::size_t i = 0; i < ni; ++i) iv[i] = (in >> i) & 1u;
      const auto tr = simulate_from(aig, st, {iv, std::vector<bool>(ni)});
      std::uint64_t n = 0;
      for (std::size_t i = 0; i < nl; ++i)
        if (tr.states[1][i]) n |= std::uint64_t{1} << i;
      if (!seen[n]) {
        seen[n] = true;
        out.push_back(n);
        todo.push_back(n);
      }
    }
  }
  return out;
}

// True if some reachable state raises the safety bit under some input.
inline bool bad_reachable(const Aig& aig, std::size_t safety_index)
{
  const auto ni = aig.inputs.size();
  const auto nl = aig.latches.size();
  for (auto s : reachable_states(aig)) {
    std::vector<bool> st(nl);
    for (std::size_t i = 0; i < nl; ++i) st[i] = (s >> i) & 1u;
    for (std::uint64_t in = 0; in < (std::uint64_t{1} << ni); ++in) {
      std::vector<bool> iv(ni);
      for (std::size_t i = 0; i < ni; ++i) iv[i] = (in >> i) & 1u;
      const auto tr = simulate_from(aig, st, {iv});
      if (safety_trace(aig, tr, safety_index)[0]) return true;
    }
  }
  return false;
}

//----------------------------------------------------------------------
// Explicit-state helpers over latch valuations packed into integers
// (bit i = latch i).
//----------------------------------------------------------------------

inline std::vector<bool> unpack(std::uint64_t bits, std::size_t n)
{
  std::vector<bool> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (bits >> i) & 1u;
  return out;
}

inline std::uint64_t reset_state(const Aig& aig)
{
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < aig.latches.size(); ++i)
    if (aig.latches[i].reset == Reset::One) s |= std::uint64_t{1} << i;
  return s;
}

// All successors of `state` plus whether some input makes the bit bad there.
struct Expansion
{
  std::vector<std::uint64_t> next;
  bool bad = false;
};

inline Expansion expand(const Aig& aig, std::size_t safety_index, std::uint64_t state)
{
  const auto nl = aig.latches.size(), ni = aig.inputs.size();
  Expansion e;
  for (std::uint64_t in = 0; in < (std::uint64_t{1} << ni); ++in) {
    const auto tr = simulate_from(aig, unpack(state, nl), {unpack(in, ni), std::vector<bool>(ni)});
    if (safety_trace(aig, tr, safety_index)[0]) e.bad = true;
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < nl; ++i)
      if (tr.states[1][i]) n |= std::uint64_t{1} << i;
    e.next.push_back(n);
  }
  return e;
}

// Length of the shortest trace to a bad step, by layered search.
inline std::optional<std::size_t> shortest_bad_depth(const Aig& aig, std::size_t safety_index)
{
  std::vector<bool> seen(std::size_t{1} << aig.latches.size(), false);
  std::vector<std::uint64_t> layer{reset_state(aig)};
  seen[layer[0]] = true;
  for (std::size_t depth = 0; !layer.empty(); ++depth) {
    std::vector<std::uint64_t> next;
    for (auto s : layer) {
      const auto e = expand(aig, safety_index, s);
      if (e.bad) return depth;
      for (auto n : e.next)
        if (!seen[n]) {
          seen[n] = true;
          next.push_back(n);
        }
    }
    layer = std::move(next);
  }
  return std::nullopt;
}

// Evaluates clauses of AIGER latch literals on a packed state. Literals on
// non-latch variables make the clause unevaluable; they count as false.
inline bool satisfies(const Aig& aig, const std::vector<std::vector<Lit>>& clauses, std::uint64_t state)
{
  for (const auto& c : clauses) {
    bool sat = false;
    for (Lit l : c)
      for (std::size_t i = 0; i < aig.latches.size(); ++i)
        if (lit_var(aig.latches[i].lit) == lit_var(l) && (((state >> i) & 1u) != lit_sign(l))) sat = true;
    if (!sat) return false;
  }
  return true;
}

// I => F, F & T => F', F => not bad, all by enumeration of every state.
inline bool is_inductive_strengthening(const Aig& aig, std::size_t safety_index,
                                       const std::vector<std::vector<Lit>>& clauses)
{
  if (!satisfies(aig, clauses, reset_state(aig))) return false;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << aig.latches.size()); ++s) {
    if (!satisfies(aig, clauses, s)) continue;
    const auto e = expand(aig, safety_index, s);
    if (e.bad) return false;
    for (auto n : e.next)
      if (!satisfies(aig, clauses, n)) return false;
  }
  return true;
}

template <class F>
std::optional<ErrorCode> error_code(F&& fn)
{
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace pch::testing

#endif
