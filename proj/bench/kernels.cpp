// Serial vs OpenMP first-failure scan over the valuation space.
#include <benchmark/benchmark.h>

#include "kripke/catalog.hpp"
#include "kripke/families.hpp"
#include "kripke/kernels.hpp"
#include "kripke/semantics.hpp"

using namespace kripke;

namespace {

struct Case {
  Frame frame;
  kernels::Program prog;
  std::vector<Upset> ups;
};

// Valid formulas force a full scan; refuted ones stop at the first failure.
const Case& get(int which) {
  static const Case cases[] = {
      {family_frame(3), kernels::Program::compile(gabbay_de_jongh(2)), upsets(family_frame(3))},
      {fine_truncation(3), kernels::Program::compile(shehtman(Shehtman::Kappa)), upsets(fine_truncation(3))},
      {fine_truncation(3), kernels::Program::compile(shehtman(Shehtman::Delta)), upsets(fine_truncation(3))},
  };
  return cases[which];
}

const char* kNames[] = {"bb_2 on F3 (valid)", "kappa on fine3 (valid)", "delta on fine3 (refuted)"};

template <bool Parallel>
void scan(benchmark::State& state) {
  const Case& c = get(static_cast<int>(state.range(0)));
  const kernels::Space space{c.ups, c.prog.variables().size()};
  state.SetLabel(kNames[state.range(0)]);
  for (auto _ : state) {
    auto r = Parallel ? kernels::first_failure_parallel(c.frame, c.prog, space)
                      : kernels::first_failure_serial(c.frame, c.prog, space);
    benchmark::DoNotOptimize(r);
  }
  state.counters["tuples"] = static_cast<double>(space.count());
  state.counters["threads"] = Parallel ? kernels::max_threads() : 1;
}

}  // namespace

BENCHMARK(scan<false>)->Name("serial")->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(scan<true>)->Name("parallel")->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
