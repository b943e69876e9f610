#ifndef PCH_MITER_HPP
#define PCH_MITER_HPP

#include <utility>

#include "pch/aig.hpp"

namespace pch {

// Sequential equivalence miter: one shared input list drives both circuits,
// the latch sets stay disjoint (spec latches first), and the only output is
// the OR over the pairwise output XORs. Both machines start from their reset
// states, so step 0 is compared as well.
// Throws InputCountMismatch, OutputCountMismatch.
Aig build_equivalence_miter(const Aig& spec, const Aig& impl);

// Resolves the safety bit at `index` (B section first, outputs otherwise).
// The circuit is returned unchanged. Throws NoSuchSafetyBit.
std::pair<Aig, std::size_t> select_safety(const Aig& aig, std::size_t index);

}  // namespace pch

#endif
