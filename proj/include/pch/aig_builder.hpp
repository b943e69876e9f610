#ifndef PCH_AIG_BUILDER_HPP
#define PCH_AIG_BUILDER_HPP

#include <span>
#include <vector>

#include "pch/aig.hpp"

namespace pch {

// Incremental construction of an Aig. Trivial ANDs (constant or repeated
// operands) are folded; build() returns the circuit in canonical order.
class AigBuilder
{
 public:
  Lit input();
  Lit latch(Reset reset = Reset::Zero);
  void set_next(Lit latch, Lit next);

  Lit and_(Lit a, Lit b);
  Lit or_(Lit a, Lit b) { return lit_not(and_(lit_not(a), lit_not(b))); }
  // (a & !b) | (!a & b) with three AND gates.
  Lit xor_(Lit a, Lit b) { return or_(and_(a, lit_not(b)), and_(lit_not(a), b)); }
  Lit xnor_(Lit a, Lit b) { return lit_not(xor_(a, b)); }
  Lit mux(Lit sel, Lit then_lit, Lit else_lit)
  {
    return or_(and_(sel, then_lit), and_(lit_not(sel), else_lit));
  }

  // Balanced reduction trees; empty input gives the neutral element.
  Lit and_tree(std::span<const Lit> lits);
  Lit or_tree(std::span<const Lit> lits);

  void output(Lit l) { outputs_.push_back(l); }
  void bad(Lit l) { bads_.push_back(l); }

  Aig build() const;

 private:
  Lit fresh() { return var_lit(++max_var_); }

  std::uint32_t max_var_ = 0;
  std::vector<Lit> inputs_;
  std::vector<Latch> latches_;
  std::vector<AndGate> ands_;
  std::vector<Lit> outputs_;
  std::vector<Lit> bads_;
};

}  // namespace pch

#endif
