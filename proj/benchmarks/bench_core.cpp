// Microbenchmarks for the exact kernels; populated alongside the modules.
#include <benchmark/benchmark.h>

#include "g2torsion/resultant.hpp"

namespace {

using namespace g2torsion;

void BM_SubresultantResultant(benchmark::State& state) {
  // deg-8 integer polynomials, mild coefficients
  std::vector<Rational> a, b;
  for (int i = 0; i <= 8; ++i) {
    a.emplace_back((i * 37 + 11) % 19 - 9);
    b.emplace_back((i * 53 + 29) % 23 - 11);
  }
  QUniv pa{a}, pb{b};
  for (auto _ : state) {
    benchmark::DoNotOptimize(resultant(pa, pb));
  }
}
BENCHMARK(BM_SubresultantResultant);

}  // namespace

BENCHMARK_MAIN();
