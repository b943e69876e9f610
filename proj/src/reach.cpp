#include "pch/reach.hpp"

#include <unordered_map>

#include "pch/error.hpp"

namespace pch {

namespace {

using State = std::uint64_t;

// Circuit flattened for repeated evaluation: slot per variable, slot 0 is
// the constant.
struct Flat
{
  std::vector<std::uint32_t> input_vars, latch_vars;
  std::vector<AndGate> ands;
  std::vector<Lit> next;
  Lit bad = kFalse;
  std::size_t slots = 0;
  State reset = 0;
};

Flat flatten(const Aig& aig, std::size_t safety_index)
{
  Flat f;
  f.bad = safety_literal(aig, safety_index);
  f.ands = check_and_order(aig);
  f.slots = aig.max_var + 1u;
  for (Lit l : aig.inputs) f.input_vars.push_back(lit_var(l));
  for (std::size_t i = 0; i < aig.latches.size(); ++i) {
    f.latch_vars.push_back(lit_var(aig.latches[i].lit));
    f.next.push_back(aig.latches[i].next);
    if (aig.latches[i].reset == Reset::One) f.reset |= State{1} << i;
  }
  return f;
}

// Discovery record for trace reconstruction.
struct Parent
{
  State state;
  std::uint64_t input;
};

struct Step
{
  std::optional<std::uint64_t> bad_input;  // smallest input vector hitting bad
  std::vector<std::pair<State, std::uint64_t>> successors;  // input order
};

Step expand_serial(const Flat& f, State s)
{
  Step out;
  std::vector<std::uint8_t> val(f.slots, 0);
  auto get = [&](Lit l) { return std::uint8_t(val[lit_var(l)] ^ (l & 1u)); };
  const std::uint64_t combos = std::uint64_t{1} << f.input_vars.size();
  for (std::uint64_t in = 0; in < combos; ++in) {
    for (std::size_t i = 0; i < f.input_vars.size(); ++i) val[f.input_vars[i]] = (in >> i) & 1u;
    for (std::size_t i = 0; i < f.latch_vars.size(); ++i) val[f.latch_vars[i]] = (s >> i) & 1u;
    for (const auto& g : f.ands) val[lit_var(g.lhs)] = get(g.rhs0) & get(g.rhs1);
    if (get(f.bad) && !out.bad_input) out.bad_input = in;
    State n = 0;
    for (std::size_t i = 0; i < f.next.size(); ++i) n |= State{get(f.next[i])} << i;
    out.successors.emplace_back(n, in);
  }
  return out;
}

Step expand_words(const Flat& f, State s)
{
  Step out;
  std::vector<std::uint64_t> val(f.slots, 0);
  auto get = [&](Lit l) { return val[lit_var(l)] ^ (lit_sign(l) ? ~std::uint64_t{0} : 0); };
  const std::size_t ni = f.input_vars.size();
  const std::uint64_t combos = std::uint64_t{1} << ni;
  const std::uint64_t lanes = std::min<std::uint64_t>(64, combos);
  const std::uint64_t lane_mask = lanes == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lanes) - 1;
  static constexpr std::uint64_t kPattern[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull,
                                                0xF0F0F0F0F0F0F0F0ull, 0xFF00FF00FF00FF00ull,
                                                0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  for (std::size_t i = 0; i < f.latch_vars.size(); ++i)
    val[f.latch_vars[i]] = (s >> i) & 1u ? ~std::uint64_t{0} : 0;
  for (std::uint64_t block = 0; block < combos; block += 64) {
    for (std::size_t i = 0; i < ni; ++i)
      val[f.input_vars[i]] = i < 6 ? kPattern[i] : (((block >> i) & 1u) ? ~std::uint64_t{0} : 0);
    for (const auto& g : f.ands) val[lit_var(g.lhs)] = get(g.rhs0) & get(g.rhs1);
    const auto bad = get(f.bad) & lane_mask;
    if (bad && !out.bad_input) out.bad_input = block + static_cast<std::uint64_t>(__builtin_ctzll(bad));
    std::vector<std::uint64_t> next(f.next.size());
    for (std::size_t i = 0; i < f.next.size(); ++i) next[i] = get(f.next[i]);
    for (std::uint64_t lane = 0; lane < lanes; ++lane) {
      State n = 0;
      for (std::size_t i = 0; i < next.size(); ++i) n |= ((next[i] >> lane) & 1u) << i;
      out.successors.emplace_back(n, block + lane);
    }
  }
  return out;
}

std::vector<bool> input_bits(std::uint64_t in, std::size_t n)
{
  std::vector<bool> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (in >> i) & 1u;
  return out;
}

}  // namespace

ReachResult reach_bruteforce(const Aig& aig, std::size_t safety_index, unsigned state_bit_limit,
                             ReachKernel kernel)
{
  if (aig.latches.size() > state_bit_limit || aig.latches.size() > kMaxStateBits)
    throw Error(ErrorCode::TooManyStateBits, std::to_string(aig.latches.size()) +
                                                 " latches exceed the limit of " +
                                                 std::to_string(state_bit_limit));
  if (aig.inputs.size() > kMaxInputBits)
    throw Error(ErrorCode::TooManyStateBits,
                std::to_string(aig.inputs.size()) + " inputs are too many to enumerate");
  const Flat f = flatten(aig, safety_index);

  std::vector<std::uint64_t> visited(((std::size_t{1} << f.latch_vars.size()) + 63) / 64, 0);
  auto mark = [&](State s) {
    auto& w = visited[s >> 6];
    const auto bit = std::uint64_t{1} << (s & 63);
    const bool fresh = !(w & bit);
    w |= bit;
    return fresh;
  };
  std::unordered_map<State, Parent> parent;

  ReachResult result;
  std::vector<State> frontier{f.reset};
  mark(f.reset);
  while (!frontier.empty()) {
    result.reachable += frontier.size();
    std::vector<Step> steps(frontier.size());
    if (kernel == ReachKernel::Serial) {
      for (std::size_t k = 0; k < frontier.size(); ++k) steps[k] = expand_serial(f, frontier[k]);
    } else {
      const auto n = static_cast<std::ptrdiff_t>(frontier.size());
#pragma omp parallel for schedule(dynamic, 16)
      for (std::ptrdiff_t k = 0; k < n; ++k)
        steps[static_cast<std::size_t>(k)] = expand_words(f, frontier[static_cast<std::size_t>(k)]);
    }

    for (std::size_t k = 0; k < frontier.size(); ++k) {
      if (!steps[k].bad_input) continue;
      Counterexample cex;
      for (std::size_t i = 0; i < aig.latches.size(); ++i) cex.initial_state.push_back((f.reset >> i) & 1u);
      std::vector<std::uint64_t> inputs{*steps[k].bad_input};
      for (auto it = parent.find(frontier[k]); it != parent.end(); it = parent.find(it->second.state))
        inputs.push_back(it->second.input);
      for (auto it = inputs.rbegin(); it != inputs.rend(); ++it)
        cex.inputs.push_back(input_bits(*it, aig.inputs.size()));
      result.safe = false;
      result.trace = std::move(cex);
      return result;
    }

    std::vector<State> next;
    for (std::size_t k = 0; k < frontier.size(); ++k)
      for (const auto& [s, in] : steps[k].successors)
        if (mark(s)) {
          parent.emplace(s, Parent{frontier[k], in});
          next.push_back(s);
        }
    frontier = std::move(next);
  }
  return result;
}

}  // namespace pch
