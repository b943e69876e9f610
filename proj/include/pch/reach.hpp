#ifndef PCH_REACH_HPP
#define PCH_REACH_HPP

#include <optional>

#include "pch/aig.hpp"
#include "pch/witness.hpp"

namespace pch {

// Explicit-state reachability, used as an independent oracle. States are
// explored breadth-first from reset (undefined resets start at 0) with every
// input vector enumerated, so a returned trace is a shortest one.
struct ReachResult
{
  bool safe = true;
  std::optional<Counterexample> trace;
  std::size_t reachable = 0;  // states visited before stopping
};

enum class ReachKernel
{
  Serial,   // scalar evaluation, one input vector at a time
  Parallel  // 64 input vectors per word, frontier split across threads
};

constexpr unsigned kDefaultStateBitLimit = 16;
constexpr unsigned kMaxInputBits = 24;
constexpr unsigned kMaxStateBits = 30;  // visited bitmap stays below 128 MiB

// Throws TooManyStateBits when the latch count exceeds `state_bit_limit` or
// kMaxStateBits, or the inputs exceed kMaxInputBits. Throws NoSuchSafetyBit.
ReachResult reach_bruteforce(const Aig& aig, std::size_t safety_index,
                             unsigned state_bit_limit = kDefaultStateBitLimit,
                             ReachKernel kernel = ReachKernel::Parallel);

}  // namespace pch

#endif
