#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>

#include "pch/aiger_io.hpp"
#include "pch/certificate.hpp"
#include "pch/cli.hpp"
#include "pch/witness.hpp"
#include "support/oracles.hpp"

using namespace pch;
namespace fs = std::filesystem;

namespace {

struct TempDir
{
  fs::path path;
  TempDir()
  {
    std::random_device rd;
    path = fs::temp_directory_path() / ("pch-cli-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const char* name) const { return (path / name).string(); }
};

struct Run
{
  int code;
  std::string out, err;
};

Run pch_run(std::vector<std::string> args)
{
  args.insert(args.begin(), "pch");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: counter with reachable bad value yields a replayable witness")
{
  TempDir d;
  REQUIRE(pch_run({"gen", "counter", "--width", "2", "--bad", "3", "-o", d / "c.aag"}).code == 0);
  const auto r = pch_run({"prove", d / "c.aag", "--witness", d / "w.txt"});
  CHECK(r.code == 1);
  const Aig aig = read_aiger_file(d / "c.aag");
  const auto text = read_file(d / "w.txt");
  CHECK(text.rfind("1\nb0\n", 0) == 0);
  const auto cex = read_witness(text);
  CHECK(replay_counterexample(aig, 0, cex));
  CHECK(cex.length() == testing::shortest_bad_depth(aig, 0));
}

TEST_CASE("cli: multiplier pipeline proves and checks")
{
  TempDir d;
  REQUIRE(pch_run({"gen", "mult", "--width", "3", "-o", d / "s.aag" + std::string(",") + d / "i.aag"}).code == 0);
  REQUIRE(pch_run({"miter", d / "s.aag", d / "i.aag", "-o", d / "m.aag"}).code == 0);
  CHECK_FALSE(testing::bad_reachable(read_aiger_file(d / "m.aag"), 0));
  CHECK(pch_run({"prove", d / "m.aag", "--cert", d / "p.crt"}).code == 0);
  for (const char* s : {"split", "tseitin"}) {
    const auto r = pch_run({"check", d / "m.aag", d / "p.crt", "--strategy", s, "--report", d / "r.txt"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict valid") != std::string::npos);
    CHECK(read_file(d / "r.txt") == r.out);
  }
  CHECK(pch_run({"check", d / "m.aag", d / "p.crt", "--serial"}).code == 0);
}

TEST_CASE("cli: tampered certificate is rejected unless still a strengthening")
{
  TempDir d;
  REQUIRE(pch_run({"gen", "mult", "--width", "2", "-o", d / "s.aag" + std::string(",") + d / "i.aag"}).code == 0);
  REQUIRE(pch_run({"miter", d / "s.aag", d / "i.aag", "-o", d / "m.aag"}).code == 0);
  REQUIRE(pch_run({"prove", d / "m.aag", "--cert", d / "p.crt"}).code == 0);
  const Aig m = read_aiger_file(d / "m.aag");
  for (int seed : {7, 1, 2, 3, 4, 5}) {
    CAPTURE(seed);
    REQUIRE(pch_run({"tamper", "cert", d / "p.crt", "--seed", std::to_string(seed), "-o", d / "p2.crt", "--circuit",
                     d / "m.aag"})
                .code == 0);
    const auto r = pch_run({"check", d / "m.aag", d / "p2.crt", "--no-digest-check"});
    const auto mutant = read_certificate(read_file(d / "p2.crt"));
    CHECK(r.code == (testing::is_inductive_strengthening(m, 0, mutant.clauses) ? 0 : 1));
  }
}

TEST_CASE("cli: tampered circuit fails the digest check")
{
  TempDir d;
  REQUIRE(pch_run({"gen", "mult", "--width", "2", "-o", d / "s.aag" + std::string(",") + d / "i.aag"}).code == 0);
  REQUIRE(pch_run({"miter", d / "s.aag", d / "i.aag", "-o", d / "m.aag"}).code == 0);
  REQUIRE(pch_run({"prove", d / "m.aag", "--cert", d / "p.crt"}).code == 0);
  REQUIRE(pch_run({"tamper", "circuit", d / "m.aag", "--seed", "3", "-o", d / "m2.aag"}).code == 0);
  const auto r = pch_run({"check", d / "m2.aag", d / "p.crt"});
  CHECK(r.code == 1);
  CHECK(r.out.find("rejected") != std::string::npos);
}

TEST_CASE("cli: usage and I/O errors exit 2")
{
  TempDir d;
  CHECK(pch_run({}).code == 2);
  CHECK(pch_run({"frobnicate"}).code == 2);
  CHECK(pch_run({"prove", d / "missing.aag"}).code == 2);
  CHECK(pch_run({"gen", "counter", "--width", "0", "-o", d / "c.aag"}).code == 2);
  CHECK(pch_run({"bench", "--suite", "nope"}).code == 2);

  write_file(d / "c.aag", "aag 1 0 1 1 0\n2 2\n2\n");
  write_file(d / "bad.crt", "p pch 2\n3 0\n");
  CHECK(pch_run({"check", d / "c.aag", d / "bad.crt"}).code == 2);
  write_file(d / "ok.crt", "p pch 1\n3 0\n");
  CHECK(pch_run({"check", d / "c.aag", d / "ok.crt", "--unsat-trace", d / "t"}).code == 2);
  CHECK(pch_run({"prove", d / "c.aag", "--safety-index", "4"}).code == 2);
}

TEST_CASE("cli: miter of mismatched circuits is refuted")
{
  TempDir d;
  write_file(d / "a.aag", "aag 1 1 0 1 0\n2\n2\n");
  write_file(d / "b.aag", "aag 2 2 0 1 0\n2\n4\n2\n");
  const auto r = pch_run({"miter", d / "a.aag", d / "b.aag", "-o", d / "m.aag"});
  CHECK(r.code == 1);
  CHECK(r.err.find("rejected") != std::string::npos);
}

TEST_CASE("cli: resource limit exits 3")
{
  TempDir d;
  REQUIRE(pch_run({"gen", "mult", "--width", "8", "-o", d / "s.aag" + std::string(",") + d / "i.aag"}).code == 0);
  REQUIRE(pch_run({"miter", d / "s.aag", d / "i.aag", "-o", d / "m.aag"}).code == 0);
  CHECK(pch_run({"prove", d / "m.aag", "--limit-seconds", "0.05"}).code == 3);
}

TEST_CASE("cli: bench reports one CSV row per width")
{
  TempDir d;
  const auto r = pch_run({"bench", "--suite", "mult", "--widths", "2,3", "--report", d / "b.csv"});
  CHECK(r.code == 0);
  const auto csv = read_file(d / "b.csv");
  CHECK(csv.rfind("instance,latches,ands,prove_us,check_us,cert_bytes,verdict,speedup\n", 0) == 0);
  CHECK(csv.find("\nmult2,12,") != std::string::npos);
  CHECK(csv.find("\nmult3,16,") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
