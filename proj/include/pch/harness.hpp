#ifndef PCH_HARNESS_HPP
#define PCH_HARNESS_HPP

#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pch/aig.hpp"
#include "pch/checker.hpp"
#include "pch/ic3.hpp"

namespace pch {

// One prove-then-check run, as reported by `pch bench`.
struct BenchRow
{
  std::string instance;
  std::size_t latches = 0;
  std::size_t ands = 0;
  std::chrono::microseconds prove_time{0};
  std::chrono::microseconds check_time{0};  // query time only
  std::size_t cert_bytes = 0;
  std::string verdict;  // valid | invalid | rejected | unsafe | limit
  std::optional<Certificate> certificate;
  std::optional<Counterexample> counterexample;

  // prove / check; 0 when nothing was checked.
  double speedup() const;
};

struct BenchOptions
{
  std::optional<double> limit_seconds;
  Strategy strategy = Strategy::Split;
  std::size_t safety_index = 0;
};

BenchRow run_instance(const std::string& name, const Aig& aig, const BenchOptions& options = {});

std::string csv_header();
std::string csv_line(const BenchRow& row);

// Certificate as shipped: digest of `aig` plus a descriptive comment.
Certificate ship(Certificate cert, const Aig& aig);

}  // namespace pch

#endif
