#ifndef PCH_WITNESS_HPP
#define PCH_WITNESS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "pch/aig.hpp"

namespace pch {

// An input trace from a concrete initial state; the bad bit is asserted at
// the last step. length() counts transitions, so a bad initial state has
// length 0 and one input vector.
struct Counterexample
{
  std::vector<bool> initial_state;          // per latch
  std::vector<std::vector<bool>> inputs;    // per step, per input

  std::size_t length() const { return inputs.empty() ? 0 : inputs.size() - 1; }
  bool operator==(const Counterexample&) const = default;
};

// AIGER witness: "1", "b<index>", initial latch bits, one input line per
// step, ".".
std::string write_witness(const Counterexample& cex, std::size_t safety_index);

// Throws MalformedHeader for anything that is not a single-trace witness.
Counterexample read_witness(std::string_view text);

// Replays the trace from the given initial state, which must agree with the
// defined resets. True iff the safety bit is 1 at the last step.
bool replay_counterexample(const Aig& aig, std::size_t safety_index, const Counterexample& cex);

}  // namespace pch

#endif
