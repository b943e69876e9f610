#ifndef PCH_AIG_HPP
#define PCH_AIG_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace pch {

//----------------------------------------------------------------------
// AIGER literals: variable = lit / 2, sign = lit % 2, 0 = FALSE, 1 = TRUE.
//----------------------------------------------------------------------

using Lit = std::uint32_t;

constexpr Lit kFalse = 0;
constexpr Lit kTrue = 1;

constexpr std::uint32_t lit_var(Lit l) { return l >> 1; }
constexpr bool lit_sign(Lit l) { return (l & 1u) != 0; }
constexpr Lit lit_strip(Lit l) { return l & ~1u; }
constexpr Lit lit_not(Lit l) { return l ^ 1u; }
constexpr Lit var_lit(std::uint32_t v, bool neg = false) { return (v << 1) | (neg ? 1u : 0u); }
constexpr bool lit_is_const(Lit l) { return l <= 1; }

enum class Reset : std::uint8_t
{
  Zero,
  One,
  Undefined  // reset literal equal to the latch itself
};

struct Latch
{
  Lit lit = 0;   // even
  Lit next = 0;
  Reset reset = Reset::Zero;

  bool operator==(const Latch&) const = default;
};

struct AndGate
{
  Lit lhs = 0;   // even
  Lit rhs0 = 0;  // rhs0 >= rhs1
  Lit rhs1 = 0;

  bool operator==(const AndGate&) const = default;
};

// An and-inverter graph with latches. Values are immutable once handed out
// by the parser or a builder; ANDs are kept in a topological order.
struct Aig
{
  std::uint32_t max_var = 0;
  std::vector<Lit> inputs;
  std::vector<Latch> latches;
  std::vector<Lit> outputs;
  std::vector<Lit> bads;
  std::vector<AndGate> ands;

  // Opaque metadata: symbol table lines and comment lines (without the "c").
  std::vector<std::string> symbols;
  std::vector<std::string> comments;

  // Structural equality ignores metadata.
  bool operator==(const Aig& o) const
  {
    return max_var == o.max_var && inputs == o.inputs && latches == o.latches &&
           outputs == o.outputs && bads == o.bads && ands == o.ands;
  }

  // Safety bits: the B section when present, else the outputs.
  const std::vector<Lit>& safety_bits() const { return bads.empty() ? outputs : bads; }
};

// Throws NoSuchSafetyBit when index does not address a safety bit.
Lit safety_literal(const Aig& aig, std::size_t index);

// Checks the structural invariants and returns the ANDs in topological
// order. Throws DuplicateDefinition, UndefinedVariableReference or
// CombinationalCycle.
std::vector<AndGate> check_and_order(const Aig& aig);

// True when inputs are 1..I, latches I+1..I+L, ands I+L+1..M in order and
// every operand is smaller than its AND; the form binary AIGER requires.
bool is_canonical(const Aig& aig);

// Renumbers variables into canonical form (see is_canonical). Metadata is
// carried over unchanged.
Aig canonicalize(const Aig& aig);

// Removes symbols and comments.
Aig strip_metadata(Aig aig);

//----------------------------------------------------------------------
// Simulation
//----------------------------------------------------------------------

struct SimTrace
{
  // outputs[k][j] is output j at step k; likewise for bads.
  std::vector<std::vector<bool>> outputs;
  std::vector<std::vector<bool>> bads;
  // Latch values at the beginning of each step.
  std::vector<std::vector<bool>> states;
};

// Runs the circuit from its reset state. Undefined resets start at 0.
SimTrace simulate(const Aig& aig, const std::vector<std::vector<bool>>& inputs);

// Same, but starting from an explicit latch valuation.
SimTrace simulate_from(const Aig& aig, const std::vector<bool>& initial_state,
                       const std::vector<std::vector<bool>>& inputs);

// Value of safety bit `index` at every step.
std::vector<bool> safety_trace(const Aig& aig, const SimTrace& trace, std::size_t index);

}  // namespace pch

#endif
