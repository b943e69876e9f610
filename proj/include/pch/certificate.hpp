#ifndef PCH_CERTIFICATE_HPP
#define PCH_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pch/aig.hpp"
#include "pch/encoder.hpp"
#include "pch/sat.hpp"

namespace pch {

// A CNF over latch state variables, written with AIGER literals.
struct Certificate
{
  std::vector<std::vector<Lit>> clauses;
  std::optional<std::string> digest;  // 64 lowercase hex characters
  std::vector<std::string> comments;  // free-form, without the leading "c "

  bool operator==(const Certificate&) const = default;
};

// File format:
//   c <comment>                 (any number)
//   c circuit-sha256 <hex>      (when a digest is present)
//   p pch <num_clauses>
//   <lit> <lit> ... 0           (one clause per line)
std::string write_certificate(const Certificate& cert);

// Throws MalformedHeader, ClauseCountMismatch, NonNumericLiteral.
Certificate read_certificate(std::string_view text);

// SHA-256 over the ASCII serialization of the canonical, metadata-free circuit.
std::string circuit_digest(const Aig& aig);

struct BoundCertificate
{
  sat::CnfFormula formula;  // over current-state solver variables
};

// Maps the certificate onto the encoder's variables of `aig`. The digest,
// when present and `check_digest` is set, is compared before anything else.
// Throws DigestMismatch, NonLatchVariable, DuplicateVariable.
BoundCertificate bind(const Certificate& cert, const Aig& aig, const VarMap& vars,
                      bool check_digest = true);

}  // namespace pch

#endif
