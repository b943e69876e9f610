#include "pch/aig_builder.hpp"

#include <algorithm>

#include "pch/error.hpp"

namespace pch {

Lit AigBuilder::input()
{
  const Lit l = fresh();
  inputs_.push_back(l);
  return l;
}

Lit AigBuilder::latch(Reset reset)
{
  const Lit l = fresh();
  latches_.push_back({l, kFalse, reset});
  return l;
}

void AigBuilder::set_next(Lit latch, Lit next)
{
  for (auto& l : latches_)
    if (l.lit == latch) {
      l.next = next;
      return;
    }
  throw Error(ErrorCode::NonStateVariable, "literal " + std::to_string(latch) + " is not a latch");
}

Lit AigBuilder::and_(Lit a, Lit b)
{
  if (a == kFalse || b == kFalse || a == lit_not(b)) return kFalse;
  if (a == kTrue || a == b) return b;
  if (b == kTrue) return a;
  if (a < b) std::swap(a, b);
  const Lit g = fresh();
  ands_.push_back({g, a, b});
  return g;
}

Lit AigBuilder::and_tree(std::span<const Lit> lits)
{
  if (lits.empty()) return kTrue;
  if (lits.size() == 1) return lits[0];
  const auto half = lits.size() / 2;
  const Lit l = and_tree(lits.first(half));
  const Lit r = and_tree(lits.subspan(half));
  return and_(l, r);
}

Lit AigBuilder::or_tree(std::span<const Lit> lits)
{
  std::vector<Lit> neg(lits.begin(), lits.end());
  for (auto& l : neg) l = lit_not(l);
  return lit_not(and_tree(neg));
}

Aig AigBuilder::build() const
{
  Aig aig;
  aig.max_var = max_var_;
  aig.inputs = inputs_;
  aig.latches = latches_;
  aig.ands = ands_;
  aig.outputs = outputs_;
  aig.bads = bads_;
  return is_canonical(aig) ? aig : canonicalize(aig);
}

}  // namespace pch
