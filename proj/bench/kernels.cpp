// Serial vs. OpenMP kernels: explicit-state reachability and certificate
// validation. Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include "pch/checker.hpp"
#include "pch/circuits.hpp"
#include "pch/harness.hpp"
#include "pch/ic3.hpp"
#include "pch/miter.hpp"
#include "pch/reach.hpp"

using namespace pch;

namespace {

Aig miter(unsigned w)
{
  const auto [spec, impl] = gen_multiplier_pair(w);
  return build_equivalence_miter(spec, impl);
}

void reach(benchmark::State& state, ReachKernel kernel)
{
  const Aig aig = miter(static_cast<unsigned>(state.range(0)));
  std::size_t reachable = 0;
  for (auto _ : state) {
    const auto r = reach_bruteforce(aig, 0, kMaxStateBits, kernel);
    reachable = r.reachable;
    benchmark::DoNotOptimize(r.safe);
  }
  state.counters["reachable"] = static_cast<double>(reachable);
  state.counters["latches"] = static_cast<double>(aig.latches.size());
}

void check(benchmark::State& state, bool parallel)
{
  const Aig aig = miter(static_cast<unsigned>(state.range(0)));
  const auto cert = ship(std::get<Certificate>(prove(encode(aig, 0))), aig);
  ValidateOptions opts;
  opts.parallel = parallel;
  for (auto _ : state) {
    const auto v = validate(aig, 0, cert, Strategy::Split, opts);
    if (v.outcome != Outcome::Valid) state.SkipWithError("certificate rejected");
  }
  state.counters["clauses"] = static_cast<double>(cert.clauses.size());
}

}  // namespace

BENCHMARK_CAPTURE(reach, serial, ReachKernel::Serial)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(reach, parallel, ReachKernel::Parallel)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(check, serial, false)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(check, parallel, true)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
