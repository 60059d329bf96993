#include <benchmark/benchmark.h>

#include "qclone/cloner.hpp"
#include "qclone/sweep.hpp"

namespace {

using namespace qclone;

void BM_CloneIdeal(benchmark::State& state) {
  for (auto _ : state) {
    CloneOutput out = clone_angles(0.7, 2.1);
    benchmark::DoNotOptimize(out.fidelity_a);
  }
}
BENCHMARK(BM_CloneIdeal);

void BM_CloningSequenceUnitary(benchmark::State& state) {
  SpinSystem sys;
  RunOptions opts;
  for (auto _ : state) {
    Matrix u = sequence_unitary(cloning_sequence(sys), sys, opts);
    benchmark::DoNotOptimize(u(0, 0));
  }
}
BENCHMARK(BM_CloningSequenceUnitary);

void BM_ClonePulseIdealSelective(benchmark::State& state) {
  SpinSystem sys;
  RunOptions opts;
  opts.ideal_selective = true;
  for (auto _ : state) {
    PulseCloneResult res = clone_pulse(sys, kPi / 2, 0.0, opts);
    benchmark::DoNotOptimize(res.fidelity_a);
  }
}
BENCHMARK(BM_ClonePulseIdealSelective);

void BM_ClonePulseRelaxed(benchmark::State& state) {
  SpinSystem sys;
  RunOptions opts;
  opts.relaxation = true;
  for (auto _ : state) {
    PulseCloneResult res = clone_pulse(sys, kPi / 2, 0.0, opts);
    benchmark::DoNotOptimize(res.fidelity_a);
  }
}
BENCHMARK(BM_ClonePulseRelaxed);

void BM_SweepIdeal(benchmark::State& state) {
  SpinSystem sys;
  SweepOptions opts;
  opts.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto records = run_sweep(sys, opts);
    benchmark::DoNotOptimize(records.size());
  }
}
BENCHMARK(BM_SweepIdeal)->Arg(1)->Arg(4);

void BM_Purification(benchmark::State& state) {
  SpinSystem sys;
  RunOptions opts;
  opts.ideal_selective = true;
  for (auto _ : state) {
    PurificationResult res = purify_thermal(sys, opts);
    benchmark::DoNotOptimize(res.coefficient);
  }
}
BENCHMARK(BM_Purification);

}  // namespace

BENCHMARK_MAIN();
