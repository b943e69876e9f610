#ifndef PCH_ERROR_HPP
#define PCH_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace pch {

enum class ErrorCode
{
  // aiger-io
  MalformedHeader,
  DuplicateDefinition,
  UndefinedVariableReference,
  CountMismatch,
  CombinationalCycle,
  InvalidLiteral,
  TruncatedDeltaStream,
  NonMonotoneAndIndex,
  Unsupported,
  InputArityMismatch,
  // encoder
  NoSuchSafetyBit,
  UndefinedReset,
  NonStateVariable,
  // satlib
  UnallocatedVariable,
  // miter
  InputCountMismatch,
  OutputCountMismatch,
  // ic3gen
  ResourceLimit,
  NotAFixpoint,
  // certificate
  ClauseCountMismatch,
  NonNumericLiteral,
  NonLatchVariable,
  DuplicateVariable,
  DigestMismatch,
  // checker
  TooManyStateBits,
  // circuits
  BadValueOutOfRange,
  EmptyCertificate,
  NoGates,
  InvalidWidth,
  // generic
  IoError,
};

std::string_view to_string(ErrorCode code);

// All recoverable failures in the library are reported through this type.
class Error : public std::runtime_error
{
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pch

#endif
