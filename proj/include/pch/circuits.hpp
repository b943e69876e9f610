#ifndef PCH_CIRCUITS_HPP
#define PCH_CIRCUITS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "pch/aig.hpp"
#include "pch/certificate.hpp"

namespace pch {

// width-bit up-counter from 0 (wrapping). The single B-section bad bit fires
// when the state equals bad_value; without a value it is constant FALSE.
// Throws InvalidWidth for width 0 or above 63, BadValueOutOfRange.
Aig gen_counter(unsigned width, std::optional<std::uint64_t> bad_value = std::nullopt);

// Sequential width x width -> 2*width multipliers with identical I/O
// behavior. Inputs a[0..w) then b[0..w), read every step and expected to
// stay constant for a run. Outputs p[0..2w) then done; the product bits are
// gated by done, which rises after `width` steps and stays up.
//   spec: binary step counter, multiplicand shifted left by the counter
//         through a barrel shifter, multiplier bit picked by a mux tree.
//   impl: Gray-coded step counter decoded to one-hot phases, partial
//         product row selected per phase, accumulator stored inverted
//         (reset to all ones), different full-adder decomposition.
// Throws InvalidWidth for width < 2.
std::pair<Aig, Aig> gen_multiplier_pair(unsigned width);

enum class CertMutation
{
  FlipLiteral,
  DeleteClause,
  AddClause,
  SwapVariable
};

enum class CircuitMutation
{
  FlipAndOperand,
  RewireOperand,
  FlipLatchReset,
  FlipSafetyBit  // negates an output or bad literal
};

std::string_view to_string(CertMutation m);
std::string_view to_string(CircuitMutation m);

// Draws from std::mt19937_64(seed): first the kind, uniformly among the
// applicable ones (in enum order), then the site uniformly. New literals
// come from `latches` (AIGER latch literals), or from the variables already
// in the certificate when empty. Throws EmptyCertificate.
Certificate mutate_certificate(const Certificate& cert, std::uint64_t seed,
                               std::span<const Lit> latches = {},
                               CertMutation* applied = nullptr);

// Same draw scheme. Operands are only rewired to variables defined before
// the gate, so the result stays acyclic; it is returned canonical. Throws
// NoGates when the circuit offers no mutation site at all.
Aig mutate_circuit(const Aig& aig, std::uint64_t seed, CircuitMutation* applied = nullptr);

}  // namespace pch

#endif
