#include "pch/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>

#include "pch/aiger_io.hpp"
#include "pch/certificate.hpp"
#include "pch/checker.hpp"
#include "pch/circuits.hpp"
#include "pch/error.hpp"
#include "pch/harness.hpp"
#include "pch/ic3.hpp"
#include "pch/miter.hpp"
#include "pch/witness.hpp"

namespace pch::cli {

namespace {

namespace fs = std::filesystem;

struct GenArgs
{
  std::string kind;
  unsigned width = 0;
  std::optional<std::uint64_t> bad;
  std::vector<std::string> out;
};

struct ProveArgs
{
  std::string file;
  std::size_t safety_index = 0;
  std::string cert, witness;
  std::optional<double> limit_seconds;
};

struct CheckArgs
{
  std::string file, cert;
  std::size_t safety_index = 0;
  std::string strategy = "split";
  bool no_digest = false;
  bool serial = false;
  std::string report, unsat_trace;
};

struct TamperArgs
{
  std::string kind, in, out, circuit;
  std::uint64_t seed = 0;
};

struct BenchArgs
{
  std::vector<std::string> suite;
  std::vector<unsigned> widths{2, 3, 4, 5, 6, 7, 8};
  std::string report;
  std::optional<double> limit_seconds;
  std::string strategy = "split";
};

Strategy parse_strategy(const std::string& s) { return s == "tseitin" ? Strategy::Tseitin : Strategy::Split; }

int gen(const GenArgs& a, std::ostream& out)
{
  if (a.kind == "counter") {
    if (a.out.size() != 1) throw CLI::ValidationError("-o", "counter needs one output file");
    write_aiger_file(gen_counter(a.width, a.bad), a.out[0]);
    out << "wrote " << a.out[0] << "\n";
  } else {
    if (a.out.size() != 2) throw CLI::ValidationError("-o", "mult needs SPEC,IMPL output files");
    const auto [spec, impl] = gen_multiplier_pair(a.width);
    write_aiger_file(spec, a.out[0]);
    write_aiger_file(impl, a.out[1]);
    out << "wrote " << a.out[0] << " " << a.out[1] << "\n";
  }
  return kOk;
}

int miter(const std::string& spec, const std::string& impl, const std::string& file, std::ostream& out,
          std::ostream& err)
{
  const Aig s = read_aiger_file(spec), i = read_aiger_file(impl);
  Aig m;
  try {
    m = build_equivalence_miter(s, i);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InputCountMismatch && e.code() != ErrorCode::OutputCountMismatch) throw;
    err << "rejected: " << e.what() << "\n";
    return kRefuted;
  }
  write_aiger_file(m, file);
  out << "wrote " << file << " (" << m.latches.size() << " latches, " << m.ands.size() << " ands)\n";
  return kOk;
}

int prove_cmd(const ProveArgs& a, std::ostream& out)
{
  const Aig aig = read_aiger_file(a.file);
  const auto [circuit, idx] = select_safety(aig, a.safety_index);
  const auto ts = encode(circuit, idx);
  Ic3Options opts;
  opts.limit_seconds = a.limit_seconds;
  Ic3 engine(ts, opts);
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = engine.prove();
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);

  if (const auto* cex = std::get_if<Counterexample>(&result)) {
    out << "unsafe: counterexample of length " << cex->length() << " (" << us.count() << " us)\n";
    if (!a.witness.empty()) write_file(a.witness, write_witness(*cex, idx));
    return kRefuted;
  }
  const auto cert = ship(std::get<Certificate>(result), circuit);
  const auto text = write_certificate(cert);
  out << "safe: certificate with " << cert.clauses.size() << " clauses, " << text.size() << " bytes ("
      << us.count() << " us, " << engine.stats().queries << " queries)\n";
  if (!a.cert.empty()) write_file(a.cert, text);
  return kOk;
}

int check_cmd(const CheckArgs& a, std::ostream& out, std::ostream& err)
{
  if (!a.unsat_trace.empty()) {
    err << "--unsat-trace: shipping a refutation trace for consecution is not supported\n";
    return kUsage;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const Aig aig = read_aiger_file(a.file);
  const Certificate cert = read_certificate(read_file(a.cert));
  const auto parse_us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);

  ValidateOptions opts;
  opts.check_digest = !a.no_digest;
  opts.parallel = !a.serial;
  const auto v = validate(aig, a.safety_index, cert, parse_strategy(a.strategy), opts);
  std::string report = "parse " + std::to_string(parse_us.count()) + "\n" + format_report(v);
  out << report;
  if (!a.report.empty()) write_file(a.report, report);
  return v.outcome == Outcome::Valid ? kOk : kRefuted;
}

int tamper(const TamperArgs& a, std::ostream& out)
{
  if (a.kind == "cert") {
    std::vector<Lit> latches;
    if (!a.circuit.empty())
      for (const auto& l : read_aiger_file(a.circuit).latches) latches.push_back(l.lit);
    CertMutation kind{};
    const auto m = mutate_certificate(read_certificate(read_file(a.in)), a.seed, latches, &kind);
    write_file(a.out, write_certificate(m));
    out << to_string(kind) << "\n";
  } else {
    CircuitMutation kind{};
    const auto m = mutate_circuit(read_aiger_file(a.in), a.seed, &kind);
    write_aiger_file(m, a.out);
    out << to_string(kind) << "\n";
  }
  return kOk;
}

int bench(const BenchArgs& a, std::ostream& out)
{
  std::vector<std::pair<std::string, std::function<Aig()>>> instances;
  if (a.suite[0] == "mult") {
    for (unsigned w : a.widths)
      instances.emplace_back("mult" + std::to_string(w), [w] {
        const auto [spec, impl] = gen_multiplier_pair(w);
        return build_equivalence_miter(spec, impl);
      });
  } else {
    if (a.suite.size() != 2) throw CLI::ValidationError("--suite", "dir needs a PATH");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(a.suite[1]))
      if (e.path().extension() == ".aig" || e.path().extension() == ".aag") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) instances.emplace_back(f.filename().string(), [f] { return read_aiger_file(f); });
  }

  BenchOptions opts;
  opts.limit_seconds = a.limit_seconds;
  opts.strategy = parse_strategy(a.strategy);
  std::string csv = csv_header() + "\n";
  out << csv;
  bool all_good = true;
  for (const auto& [name, make] : instances) {
    const auto row = run_instance(name, make(), opts);
    if (row.verdict == "invalid" || row.verdict == "rejected") all_good = false;
    const auto line = csv_line(row) + "\n";
    out << line << std::flush;
    csv += line;
  }
  if (!a.report.empty()) write_file(a.report, csv);
  return all_good ? kOk : kRefuted;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Proof-carrying hardware: miters, IC3 certificates, certificate checking", "pch"};
  app.require_subcommand(1);
  std::function<int()> action;

  GenArgs g;
  auto* gen_cmd = app.add_subcommand("gen", "generate a benchmark circuit");
  gen_cmd->add_option("kind", g.kind, "counter or mult")->required()->check(CLI::IsMember({"counter", "mult"}));
  gen_cmd->add_option("--width", g.width, "bit width")->required();
  gen_cmd->add_option("--bad", g.bad, "counter value that raises the bad bit");
  gen_cmd->add_option("-o", g.out, "output file (mult: SPEC,IMPL)")->required()->delimiter(',');
  gen_cmd->callback([&] { action = [&] { return gen(g, out); }; });

  std::string m_spec, m_impl, m_out;
  auto* miter_cmd = app.add_subcommand("miter", "build the sequential equivalence miter");
  miter_cmd->add_option("spec", m_spec)->required();
  miter_cmd->add_option("impl", m_impl)->required();
  miter_cmd->add_option("-o", m_out)->required();
  miter_cmd->callback([&] { action = [&] { return miter(m_spec, m_impl, m_out, out, err); }; });

  ProveArgs p;
  auto* prove_sub = app.add_subcommand("prove", "run IC3 on a safety bit");
  prove_sub->add_option("file", p.file)->required();
  prove_sub->add_option("--safety-index", p.safety_index);
  prove_sub->add_option("--cert", p.cert, "write the certificate here");
  prove_sub->add_option("--witness", p.witness, "write the AIGER witness here");
  prove_sub->add_option("--limit-seconds", p.limit_seconds);
  prove_sub->callback([&] { action = [&] { return prove_cmd(p, out); }; });

  CheckArgs c;
  auto* check_sub = app.add_subcommand("check", "validate a certificate");
  check_sub->add_option("file", c.file)->required();
  check_sub->add_option("cert", c.cert)->required();
  check_sub->add_option("--safety-index", c.safety_index);
  check_sub->add_option("--strategy", c.strategy)->check(CLI::IsMember({"split", "tseitin"}));
  check_sub->add_flag("--no-digest-check", c.no_digest);
  check_sub->add_flag("--serial", c.serial, "run the three queries one after another");
  check_sub->add_option("--report", c.report);
  check_sub->add_option("--unsat-trace", c.unsat_trace, "reserved");
  check_sub->callback([&] { action = [&] { return check_cmd(c, out, err); }; });

  TamperArgs t;
  auto* tamper_sub = app.add_subcommand("tamper", "apply one seeded mutation");
  tamper_sub->add_option("kind", t.kind)->required()->check(CLI::IsMember({"cert", "circuit"}));
  tamper_sub->add_option("in", t.in)->required();
  tamper_sub->add_option("--seed", t.seed)->required();
  tamper_sub->add_option("-o", t.out)->required();
  tamper_sub->add_option("--circuit", t.circuit, "draw new certificate literals from this circuit's latches");
  tamper_sub->callback([&] { action = [&] { return tamper(t, out); }; });

  BenchArgs b;
  auto* bench_sub = app.add_subcommand("bench", "prove and check a suite, report CSV");
  bench_sub->add_option("--suite", b.suite, "mult | dir PATH")->required()->expected(1, 2);
  bench_sub->add_option("--widths", b.widths)->delimiter(',');
  bench_sub->add_option("--report", b.report);
  bench_sub->add_option("--limit-seconds", b.limit_seconds);
  bench_sub->add_option("--strategy", b.strategy)->check(CLI::IsMember({"split", "tseitin"}));
  bench_sub->callback([&] { action = [&] { return bench(b, out); }; });

  try {
    app.parse(argc, argv);
    if (b.suite.size() && b.suite[0] != "mult" && b.suite[0] != "dir")
      throw CLI::ValidationError("--suite", "expected mult or dir PATH");
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ResourceLimit ? kLimit : kUsage;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace pch::cli
