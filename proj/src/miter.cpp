#include "pch/miter.hpp"

#include <string>

#include "pch/aig_builder.hpp"
#include "pch/error.hpp"

namespace pch {

namespace {


// Copies `aig` into `b`, wiring its inputs to `shared`. Returns the output
// literals in the builder's numbering.
std::vector<Lit> import(AigBuilder& b, const Aig& aig, const std::vector<Lit>& shared)
{
  std::vector<Lit> map(aig.max_var + 1u, kFalse);
  auto tr = [&](Lit l) { return map[lit_var(l)] ^ (l & 1u); };

  for (std::size_t i = 0; i < aig.inputs.size(); ++i) map[lit_var(aig.inputs[i])] = shared[i];
  for (const auto& l : aig.latches) map[lit_var(l.lit)] = b.latch(l.reset);
  for (const auto& g : check_and_order(aig)) map[lit_var(g.lhs)] = b.and_(tr(g.rhs0), tr(g.rhs1));
  for (const auto& l : aig.latches) b.set_next(map[lit_var(l.lit)], tr(l.next));

  std::vector<Lit> out;
  for (auto o : aig.outputs) out.push_back(tr(o));
  return out;
}

}  // namespace

Aig build_equivalence_miter(const Aig& spec, const Aig& impl)
{
  if (spec.inputs.size() != impl.inputs.size())
    throw Error(ErrorCode::InputCountMismatch, std::to_string(spec.inputs.size()) + " vs " +
                                                   std::to_string(impl.inputs.size()) + " inputs");
  if (spec.outputs.size() != impl.outputs.size())
    throw Error(ErrorCode::OutputCountMismatch,
                std::to_string(spec.outputs.size()) + " vs " + std::to_string(impl.outputs.size()) +
                    " outputs");

  AigBuilder b;
  std::vector<Lit> shared;
  for (std::size_t i = 0; i < spec.inputs.size(); ++i) shared.push_back(b.input());
  const auto lhs = import(b, spec, shared);
  const auto rhs = import(b, impl, shared);

  std::vector<Lit> diffs;
  for (std::size_t i = 0; i < lhs.size(); ++i) diffs.push_back(b.xor_(lhs[i], rhs[i]));
  b.output(b.or_tree(diffs));
  return b.build();
}

std::pair<Aig, std::size_t> select_safety(const Aig& aig, std::size_t index)
{
  safety_literal(aig, index);
  return {aig, index};
}

}  // namespace pch
