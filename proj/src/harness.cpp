#include "pch/harness.hpp"

#include <cstdio>

#include "pch/certificate.hpp"
#include "pch/encoder.hpp"
#include "pch/error.hpp"

namespace pch {

double BenchRow::speedup() const
{
  if (check_time.count() <= 0) return 0.0;
  return static_cast<double>(prove_time.count()) / static_cast<double>(check_time.count());
}

Certificate ship(Certificate cert, const Aig& aig)
{
  cert.digest = circuit_digest(aig);
  cert.comments = {"inductive strengthening, " + std::to_string(cert.clauses.size()) + " clauses"};
  return cert;
}

BenchRow run_instance(const std::string& name, const Aig& aig, const BenchOptions& options)
{
  BenchRow row;
  row.instance = name;
  row.latches = aig.latches.size();
  row.ands = aig.ands.size();

  const auto ts = encode(aig, options.safety_index);
  Ic3Options ic3;
  ic3.limit_seconds = options.limit_seconds;
  const auto t0 = std::chrono::steady_clock::now();
  ProveResult result;
  try {
    result = prove(ts, ic3);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ResourceLimit) throw;
    row.prove_time = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);
    row.verdict = "limit";
    return row;
  }
  row.prove_time = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);

  if (auto* cex = std::get_if<Counterexample>(&result)) {
    row.verdict = "unsafe";
    row.counterexample = *cex;
    return row;
  }
  const Certificate cert = ship(std::get<Certificate>(result), aig);
  row.cert_bytes = write_certificate(cert).size();
  // The consumer starts from the shipped bytes.
  const auto v = validate(aig, options.safety_index, read_certificate(write_certificate(cert)), options.strategy);
  row.check_time = v.query_time();
  row.verdict = std::string(to_string(v.outcome));
  row.certificate = cert;
  return row;
}

std::string csv_header() { return "instance,latches,ands,prove_us,check_us,cert_bytes,verdict,speedup"; }

std::string csv_line(const BenchRow& r)
{
  char speed[32];
  std::snprintf(speed, sizeof speed, "%.2f", r.speedup());
  return r.instance + "," + std::to_string(r.latches) + "," + std::to_string(r.ands) + "," +
         std::to_string(r.prove_time.count()) + "," + std::to_string(r.check_time.count()) + "," +
         std::to_string(r.cert_bytes) + "," + r.verdict + "," + speed;
}

}  // namespace pch
