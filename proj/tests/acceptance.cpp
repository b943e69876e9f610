// Acceptance suite: prints one PASS/FAIL/SKIP line per criterion and exits
// non-zero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pch/aiger_io.hpp"
#include "pch/checker.hpp"
#include "pch/circuits.hpp"
#include "pch/error.hpp"
#include "pch/harness.hpp"
#include "pch/ic3.hpp"
#include "pch/miter.hpp"
#include "pch/reach.hpp"

using namespace pch;

namespace {

// Pinned thresholds.
constexpr std::size_t kMinInstances = 200;
constexpr double kCheckToProveBound = 0.5;
constexpr double kPerInstanceQuota = 0.9;
constexpr double kMinGeomeanSpeedup = 5.0;
constexpr std::size_t kMaxCertBytes = 1536;
constexpr int kCertMutations = 100;
constexpr int kCircuitMutations = 100;
constexpr unsigned kReachLimit = 24;  // the width-4 multiplier miter has 22 latches
constexpr double kProveBudgetSeconds = 60.0;

int failures = 0;

void report(bool pass, int id, const std::string& title, const std::string& detail)
{
  std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

struct Instance
{
  std::string name;
  Aig aig;
};

// Split and tseitin results on one (circuit, certificate) pair; records
// agreement and witness re-checks.
struct Tally
{
  int validations = 0;
  int disagreements = 0;
  int witnesses = 0;
  int bad_witnesses = 0;
  std::vector<std::string> notes;

  Verdict run(const std::string& what, const Aig& aig, const Certificate& cert, bool check_digest = true)
  {
    ValidateOptions opts;
    opts.check_digest = check_digest;
    const auto split = validate(aig, 0, cert, Strategy::Split, opts);
    const auto tseitin = validate(aig, 0, cert, Strategy::Tseitin, opts);
    ++validations;
    if (split.outcome != tseitin.outcome || split.failed != tseitin.failed) {
      ++disagreements;
      notes.push_back(what);
    }
    for (const auto* v : {&split, &tseitin}) {
      if (v->outcome != Outcome::Invalid) continue;
      ++witnesses;
      const auto ts = encode(aig, 0);
      const auto f = bind(cert, aig, ts.vars, false).formula;
      if (!witness_satisfies(ts, f, *v->failed, v->witness)) ++bad_witnesses;
    }
    return split;
  }
};

Aig mult_miter(unsigned w, std::optional<std::uint64_t> mutate_seed = std::nullopt)
{
  auto [spec, impl] = gen_multiplier_pair(w);
  if (mutate_seed) impl = mutate_circuit(impl, *mutate_seed);
  return build_equivalence_miter(spec, impl);
}

std::string join(const std::vector<std::string>& v, std::size_t max = 5)
{
  std::string out;
  for (std::size_t i = 0; i < v.size() && i < max; ++i) out += (i ? ", " : "") + v[i];
  if (v.size() > max) out += ", ...";
  return out;
}

}  // namespace

int main()
{
  Tally tally;
  int cex_total = 0, cex_bad = 0;

  //------------------------------------------------------------------
  // [1] + [2]: generated corpus with mutants, verdicts vs. reachability.
  //------------------------------------------------------------------
  std::vector<Instance> corpus;
  {
    std::vector<Instance> base;
    for (unsigned w = 1; w <= 8; ++w) {
      const std::uint64_t top = (std::uint64_t{1} << w) - 1;
      std::vector<std::optional<std::uint64_t>> bads{std::nullopt, 0, top, top / 2, (top * 3) / 4};
      bads.push_back(w > 1 ? std::optional<std::uint64_t>(1) : std::nullopt);
      for (const auto& b : bads)
        base.push_back({"counter" + std::to_string(w) + "-" + (b ? std::to_string(*b) : "none"), gen_counter(w, b)});
    }
    std::vector<Instance> mults;
    for (unsigned w = 2; w <= 4; ++w) mults.push_back({"mult" + std::to_string(w), mult_miter(w)});

    std::uint64_t seed = 1;
    for (const auto& inst : base) {
      corpus.push_back(inst);
      for (int j = 0; j < 3; ++j, ++seed)
        corpus.push_back({inst.name + "-mut" + std::to_string(j), mutate_circuit(inst.aig, seed)});
    }
    for (unsigned w = 2; w <= 4; ++w) {
      corpus.push_back({"mult" + std::to_string(w), mult_miter(w)});
      for (int j = 0; j < 3; ++j, ++seed)
        corpus.push_back({"mult" + std::to_string(w) + "-mut" + std::to_string(j), mult_miter(w, seed)});
    }
  }

  int agree = 0, safe = 0, unsafe = 0, accepted = 0, certs = 0;
  std::vector<std::string> mismatches, rejected_honest;
  for (const auto& inst : corpus) {
    std::string verdict;
    ProveResult result;
    try {
      Ic3Options opts;
      opts.limit_seconds = kProveBudgetSeconds;
      result = prove(encode(inst.aig, 0), opts);
    } catch (const Error& e) {
      mismatches.push_back(inst.name + " (" + e.what() + ")");
      continue;
    }
    const auto oracle = reach_bruteforce(inst.aig, 0, kReachLimit);
    const bool proved_safe = std::holds_alternative<Certificate>(result);
    if (proved_safe == oracle.safe)
      ++agree;
    else
      mismatches.push_back(inst.name);
    if (proved_safe) {
      ++safe;
      ++certs;
      const auto cert = ship(std::get<Certificate>(result), inst.aig);
      const auto split = tally.run(inst.name, inst.aig, cert);
      const auto tseitin = validate(inst.aig, 0, cert, Strategy::Tseitin);
      if (split.outcome == Outcome::Valid && tseitin.outcome == Outcome::Valid)
        ++accepted;
      else
        rejected_honest.push_back(inst.name);
    } else {
      ++unsafe;
      ++cex_total;
      if (!replay_counterexample(inst.aig, 0, std::get<Counterexample>(result))) ++cex_bad;
    }
  }
  report(corpus.size() >= kMinInstances && agree == static_cast<int>(corpus.size()), 1,
         "end-to-end soundness",
         std::to_string(agree) + "/" + std::to_string(corpus.size()) + " verdicts agree with reach_bruteforce (" +
             std::to_string(safe) + " safe, " + std::to_string(unsafe) + " unsafe)" +
             (mismatches.empty() ? "" : "; mismatches: " + join(mismatches)));

  //------------------------------------------------------------------
  // [3] + [4]: multiplier suite, widths 2..8.
  //------------------------------------------------------------------
  std::vector<BenchRow> rows;
  for (unsigned w = 2; w <= 8; ++w) {
    BenchOptions opts;
    opts.limit_seconds = 600.0;
    rows.push_back(run_instance("mult" + std::to_string(w), mult_miter(w), opts));
    const auto& row = rows.back();
    std::printf("  %s\n", csv_line(row).c_str());
    if (row.certificate) {
      ++certs;
      const auto split = tally.run(row.instance, mult_miter(w), *row.certificate);
      if (split.outcome == Outcome::Valid && row.verdict == "valid")
        ++accepted;
      else
        rejected_honest.push_back(row.instance);
    } else {
      rejected_honest.push_back(row.instance + " (" + row.verdict + ")");
    }
  }
  report(rejected_honest.empty(), 2, "certificate acceptance",
         std::to_string(accepted) + "/" + std::to_string(certs) +
             " honest certificates valid under split and tseitin" +
             (rejected_honest.empty() ? "" : "; failing: " + join(rejected_honest)));

  {
    int eligible = 0, within = 0;
    double log_sum = 0;
    int timed = 0;
    std::string detail;
    for (const auto& r : rows) {
      const unsigned w = static_cast<unsigned>(std::stoul(r.instance.substr(4)));
      if (w < 4) continue;
      ++eligible;
      if (r.verdict == "valid" && r.check_time.count() > 0) {
        if (static_cast<double>(r.check_time.count()) <= kCheckToProveBound * static_cast<double>(r.prove_time.count()))
          ++within;
        log_sum += std::log(r.speedup());
        ++timed;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s%s %.1fx", detail.empty() ? "" : ", ", r.instance.c_str(), r.speedup());
      detail += buf;
    }
    const double geomean = timed ? std::exp(log_sum / timed) : 0.0;
    const bool pass = eligible > 0 && within >= kPerInstanceQuota * eligible && timed == eligible &&
                      geomean >= kMinGeomeanSpeedup;
    char head[160];
    std::snprintf(head, sizeof head, "%d/%d instances with check <= %.1f x prove, geomean speed-up %.1fx (need >= %.1fx); ",
                  within, eligible, kCheckToProveBound, geomean, kMinGeomeanSpeedup);
    report(pass, 3, "validation speed-up", head + detail);
  }
  {
    std::size_t largest = 0;
    std::string sizes;
    bool all = true;
    for (const auto& r : rows) {
      if (!r.certificate || r.cert_bytes > kMaxCertBytes) all = false;
      largest = std::max(largest, r.cert_bytes);
      sizes += (sizes.empty() ? "" : ", ") + r.instance + " " + std::to_string(r.cert_bytes) + "B";
    }
    report(all, 4, "proof size", "largest " + std::to_string(largest) + " bytes (limit " +
                                     std::to_string(kMaxCertBytes) + "); " + sizes);
  }

  //------------------------------------------------------------------
  // [5]: tamper-proofness on the width-2 and width-3 multiplier miters.
  //------------------------------------------------------------------
  {
    std::map<unsigned, Aig> miters;
    std::map<unsigned, Certificate> honest;
    for (unsigned w : {2u, 3u}) {
      miters[w] = mult_miter(w);
      honest[w] = std::get<Certificate>(prove(encode(miters[w], 0)));
      honest[w] = ship(honest[w], miters[w]);
    }
    int cert_rejected = 0, cert_harmless = 0, circ_rejected = 0, circ_harmless = 0, digest_caught = 0;
    std::vector<std::string> unsound;
    for (int seed = 0; seed < kCertMutations; ++seed) {
      const unsigned w = seed % 2 ? 3u : 2u;
      std::vector<Lit> latches;
      for (const auto& l : miters[w].latches) latches.push_back(l.lit);
      const auto mutant = mutate_certificate(honest[w], static_cast<std::uint64_t>(seed), latches);
      const auto v = tally.run("cert-mutant-" + std::to_string(seed), miters[w], mutant);
      if (v.outcome != Outcome::Valid) {
        ++cert_rejected;
      } else if (reach_bruteforce(miters[w], 0, 16).safe) {
        ++cert_harmless;
      } else {
        unsound.push_back("cert seed " + std::to_string(seed));
      }
    }
    for (int seed = 0; seed < kCircuitMutations; ++seed) {
      const unsigned w = seed % 2 ? 3u : 2u;
      const Aig mutant = mult_miter(w, static_cast<std::uint64_t>(1000 + seed));
      if (validate(mutant, 0, honest[w]).outcome == Outcome::Rejected) ++digest_caught;
      // Judge the SAT-based check alone, without the digest fast path.
      const auto v = tally.run("circuit-mutant-" + std::to_string(seed), mutant, honest[w], false);
      if (v.outcome != Outcome::Valid) {
        ++circ_rejected;
      } else if (reach_bruteforce(mutant, 0, 16).safe) {
        ++circ_harmless;
      } else {
        unsound.push_back("circuit seed " + std::to_string(seed));
      }
    }
    report(unsound.empty(), 5, "tamper-proofness",
           "certificate mutants: " + std::to_string(cert_rejected) + " rejected, " + std::to_string(cert_harmless) +
               " accepted and safe; circuit mutants: " + std::to_string(circ_rejected) + " rejected, " +
               std::to_string(circ_harmless) + " accepted and safe (" + std::to_string(digest_caught) +
               " also caught by digest); accepted-but-unsafe: " + std::to_string(unsound.size()) +
               (unsound.empty() ? "" : " (" + join(unsound) + ")"));
  }

  report(cex_bad == 0 && tally.bad_witnesses == 0, 6, "counterexample validity",
         std::to_string(cex_total - cex_bad) + "/" + std::to_string(cex_total) + " traces replay, " +
             std::to_string(tally.witnesses - tally.bad_witnesses) + "/" + std::to_string(tally.witnesses) +
             " Invalid witnesses satisfy their query");
  report(tally.disagreements == 0, 7, "strategy agreement",
         std::to_string(tally.validations - tally.disagreements) + "/" + std::to_string(tally.validations) +
             " validations agree" + (tally.notes.empty() ? "" : "; disagreeing: " + join(tally.notes)));

  //------------------------------------------------------------------
  // [8]: externally supplied AIGER files, if any.
  //------------------------------------------------------------------
  const char* dir = std::getenv("PCH_HWMCC_DIR");
  if (!dir || !std::filesystem::is_directory(dir)) {
    std::printf("SKIP [8] external instances: set PCH_HWMCC_DIR to a directory of .aig files\n");
  } else {
    int solved = 0, faster = 0;
    std::vector<std::string> slow;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
      if (e.path().extension() == ".aig" || e.path().extension() == ".aag") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      BenchOptions opts;
      opts.limit_seconds = kProveBudgetSeconds;
      BenchRow row;
      try {
        row = run_instance(f.filename().string(), read_aiger_file(f), opts);
      } catch (const Error& e) {
        std::printf("  %s: skipped (%s)\n", f.filename().c_str(), e.what());
        continue;
      }
      std::printf("  %s\n", csv_line(row).c_str());
      if (row.verdict == "limit" || row.verdict == "unsafe") continue;
      ++solved;
      if (row.verdict == "valid" && row.check_time < row.prove_time)
        ++faster;
      else
        slow.push_back(row.instance);
    }
    report(slow.empty(), 8, "external instances",
           std::to_string(faster) + "/" + std::to_string(solved) + " solved safe instances check faster than prove" +
               (slow.empty() ? "" : "; not: " + join(slow)));
  }
  return failures == 0 ? 0 : 1;
}
