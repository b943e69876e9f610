#include "pch/aig.hpp"

#include <algorithm>
#include <string>

#include "pch/error.hpp"

namespace pch {

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::DuplicateDefinition: return "DuplicateDefinition";
    case ErrorCode::UndefinedVariableReference: return "UndefinedVariableReference";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::CombinationalCycle: return "CombinationalCycle";
    case ErrorCode::InvalidLiteral: return "InvalidLiteral";
    case ErrorCode::TruncatedDeltaStream: return "TruncatedDeltaStream";
    case ErrorCode::NonMonotoneAndIndex: return "NonMonotoneAndIndex";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::InputArityMismatch: return "InputArityMismatch";
    case ErrorCode::NoSuchSafetyBit: return "NoSuchSafetyBit";
    case ErrorCode::UndefinedReset: return "UndefinedReset";
    case ErrorCode::NonStateVariable: return "NonStateVariable";
    case ErrorCode::UnallocatedVariable: return "UnallocatedVariable";
    case ErrorCode::InputCountMismatch: return "InputCountMismatch";
    case ErrorCode::OutputCountMismatch: return "OutputCountMismatch";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::NotAFixpoint: return "NotAFixpoint";
    case ErrorCode::ClauseCountMismatch: return "ClauseCountMismatch";
    case ErrorCode::NonNumericLiteral: return "NonNumericLiteral";
    case ErrorCode::NonLatchVariable: return "NonLatchVariable";
    case ErrorCode::DuplicateVariable: return "DuplicateVariable";
    case ErrorCode::DigestMismatch: return "DigestMismatch";
    case ErrorCode::TooManyStateBits: return "TooManyStateBits";
    case ErrorCode::BadValueOutOfRange: return "BadValueOutOfRange";
    case ErrorCode::EmptyCertificate: return "EmptyCertificate";
    case ErrorCode::NoGates: return "NoGates";
    case ErrorCode::InvalidWidth: return "InvalidWidth";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Lit safety_literal(const Aig& aig, std::size_t index)
{
  const auto& bits = aig.safety_bits();
  if (index >= bits.size())
    throw Error(ErrorCode::NoSuchSafetyBit,
                "index " + std::to_string(index) + " but circuit has " +
                    std::to_string(bits.size()) + (aig.bads.empty() ? " outputs" : " bad bits"));
  return bits[index];
}

namespace {

enum class Role : std::uint8_t
{
  None,
  Input,
  Latch,
  And
};

}  // namespace

std::vector<AndGate> check_and_order(const Aig& aig)
{
  const std::uint32_t m = aig.max_var;
  std::vector<Role> role(m + 1, Role::None);
  std::vector<std::size_t> and_index(m + 1, 0);

  auto define = [&](Lit l, Role r, const char* what) {
    if (lit_sign(l) || lit_var(l) == 0)
      throw Error(ErrorCode::InvalidLiteral, std::string(what) + " literal " + std::to_string(l));
    const auto v = lit_var(l);
    if (v > m)
      throw Error(ErrorCode::UndefinedVariableReference,
                  std::string(what) + " literal " + std::to_string(l) + " exceeds M");
    if (role[v] != Role::None)
      throw Error(ErrorCode::DuplicateDefinition, "variable " + std::to_string(v));
    role[v] = r;
  };

  for (Lit l : aig.inputs) define(l, Role::Input, "input");
  for (const auto& latch : aig.latches) define(latch.lit, Role::Latch, "latch");
  for (std::size_t i = 0; i < aig.ands.size(); ++i) {
    define(aig.ands[i].lhs, Role::And, "and");
    and_index[lit_var(aig.ands[i].lhs)] = i;
  }

  auto use = [&](Lit l, const char* what) {
    const auto v = lit_var(l);
    if (v == 0) return;
    if (v > m || role[v] == Role::None)
      throw Error(ErrorCode::UndefinedVariableReference,
                  std::string(what) + " uses undefined literal " + std::to_string(l));
  };
  for (const auto& latch : aig.latches) use(latch.next, "latch next");
  for (Lit l : aig.outputs) use(l, "output");
  for (Lit l : aig.bads) use(l, "bad");
  for (const auto& g : aig.ands) {
    use(g.rhs0, "and");
    use(g.rhs1, "and");
  }

  // Iterative DFS; preserves the given order when it is already topological.
  std::vector<std::uint8_t> mark(aig.ands.size(), 0);  // 0 new, 1 on stack, 2 done
  std::vector<AndGate> order;
  order.reserve(aig.ands.size());
  std::vector<std::pair<std::size_t, int>> stack;
  for (std::size_t root = 0; root < aig.ands.size(); ++root) {
    if (mark[root] == 2) continue;
    stack.emplace_back(root, 0);
    mark[root] = 1;
    while (!stack.empty()) {
      auto& [idx, child] = stack.back();
      if (child < 2) {
        const Lit op = child == 0 ? aig.ands[idx].rhs0 : aig.ands[idx].rhs1;
        ++child;
        const auto v = lit_var(op);
        if (v != 0 && role[v] == Role::And) {
          const auto j = and_index[v];
          if (mark[j] == 1)
            throw Error(ErrorCode::CombinationalCycle, "through variable " + std::to_string(v));
          if (mark[j] == 0) {
            mark[j] = 1;
            stack.emplace_back(j, 0);
          }
        }
        continue;
      }
      mark[idx] = 2;
      order.push_back(aig.ands[idx]);
      stack.pop_back();
    }
  }
  return order;
}

bool is_canonical(const Aig& aig)
{
  std::uint32_t v = 1;
  for (Lit l : aig.inputs)
    if (l != var_lit(v++)) return false;
  for (const auto& latch : aig.latches)
    if (latch.lit != var_lit(v++)) return false;
  for (const auto& g : aig.ands) {
    if (g.lhs != var_lit(v++)) return false;
    if (g.rhs0 >= g.lhs || g.rhs1 > g.rhs0) return false;
  }
  return aig.max_var == v - 1;
}

Aig canonicalize(const Aig& aig)
{
  const auto order = check_and_order(aig);
  std::vector<Lit> map(aig.max_var + 1, kFalse);
  std::uint32_t next = 1;
  for (Lit l : aig.inputs) map[lit_var(l)] = var_lit(next++);
  for (const auto& latch : aig.latches) map[lit_var(latch.lit)] = var_lit(next++);
  for (const auto& g : order) map[lit_var(g.lhs)] = var_lit(next++);
  auto tr = [&](Lit l) { return map[lit_var(l)] ^ (l & 1u); };

  Aig out;
  out.max_var = next - 1;
  for (Lit l : aig.inputs) out.inputs.push_back(tr(l));
  for (const auto& latch : aig.latches)
    out.latches.push_back({tr(latch.lit), tr(latch.next), latch.reset});
  for (Lit l : aig.outputs) out.outputs.push_back(tr(l));
  for (Lit l : aig.bads) out.bads.push_back(tr(l));
  for (const auto& g : order) {
    Lit a = tr(g.rhs0), b = tr(g.rhs1);
    if (a < b) std::swap(a, b);
    out.ands.push_back({tr(g.lhs), a, b});
  }
  out.symbols = aig.symbols;
  out.comments = aig.comments;
  return out;
}

Aig strip_metadata(Aig aig)
{
  aig.symbols.clear();
  aig.comments.clear();
  return aig;
}

//----------------------------------------------------------------------
// Simulation
//----------------------------------------------------------------------

SimTrace simulate_from(const Aig& aig, const std::vector<bool>& initial_state,
                       const std::vector<std::vector<bool>>& inputs)
{
  if (initial_state.size() != aig.latches.size())
    throw Error(ErrorCode::InputArityMismatch, "initial state has " +
                                                   std::to_string(initial_state.size()) +
                                                   " bits, circuit has " +
                                                   std::to_string(aig.latches.size()) + " latches");
  const auto order = check_and_order(aig);
  std::vector<bool> val(aig.max_var + 1, false);
  auto get = [&](Lit l) { return val[lit_var(l)] != lit_sign(l); };

  std::vector<bool> state = initial_state;
  SimTrace trace;
  for (std::size_t step = 0; step < inputs.size(); ++step) {
    const auto& in = inputs[step];
    if (in.size() != aig.inputs.size())
      throw Error(ErrorCode::InputArityMismatch,
                  "step " + std::to_string(step) + " has " + std::to_string(in.size()) +
                      " bits, circuit has " + std::to_string(aig.inputs.size()) + " inputs");
    for (std::size_t i = 0; i < in.size(); ++i) val[lit_var(aig.inputs[i])] = in[i];
    for (std::size_t i = 0; i < state.size(); ++i) val[lit_var(aig.latches[i].lit)] = state[i];
    for (const auto& g : order) val[lit_var(g.lhs)] = get(g.rhs0) && get(g.rhs1);

    trace.states.push_back(state);
    std::vector<bool> outs, bads;
    for (Lit l : aig.outputs) outs.push_back(get(l));
    for (Lit l : aig.bads) bads.push_back(get(l));
    trace.outputs.push_back(std::move(outs));
    trace.bads.push_back(std::move(bads));
    for (std::size_t i = 0; i < state.size(); ++i) state[i] = get(aig.latches[i].next);
  }
  return trace;
}

SimTrace simulate(const Aig& aig, const std::vector<std::vector<bool>>& inputs)
{
  std::vector<bool> init;
  init.reserve(aig.latches.size());
  for (const auto& latch : aig.latches) init.push_back(latch.reset == Reset::One);
  return simulate_from(aig, init, inputs);
}

std::vector<bool> safety_trace(const Aig& aig, const SimTrace& trace, std::size_t index)
{
  safety_literal(aig, index);
  const auto& rows = aig.bads.empty() ? trace.outputs : trace.bads;
  std::vector<bool> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[index]);
  return out;
}

}  // namespace pch
