#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "cayex/abelian.hpp"
#include "cayex/bsgs.hpp"
#include "cayex/epsbias.hpp"
#include "cayex/group_io.hpp"
#include "cayex/series.hpp"
#include "cayex/solvable.hpp"

using namespace cayex;

namespace {

GeneratorList symmetric(std::size_t n) {
  std::string cycle = "(";
  for (std::size_t i = 1; i <= n; ++i) cycle += std::to_string(i) + (i < n ? " " : ")");
  return {n, {parse_permutation(cycle, n), parse_permutation("(1 2)", n)}};
}

GeneratorList dihedral(std::size_t n) {
  std::string cycle = "(", refl;
  for (std::size_t i = 1; i <= n; ++i) cycle += std::to_string(i) + (i < n ? " " : ")");
  for (std::size_t i = 1, j = n; i < j; ++i, --j) refl += "(" + std::to_string(i) + " " + std::to_string(j) + ")";
  return {n, {parse_permutation(cycle, n), parse_permutation(refl, n)}};
}

void BM_SchreierSims(benchmark::State& st) {
  GeneratorList g = symmetric(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Bsgs::build(g).order());
}
BENCHMARK(BM_SchreierSims)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_DerivedSeries(benchmark::State& st) {
  GeneratorList g = dihedral(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(derived_series(g).length());
}
BENCHMARK(BM_DerivedSeries)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CyclicExpander(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(cyclic_expander(static_cast<std::uint64_t>(st.range(0)), 0.25).bound);
}
BENCHMARK(BM_CyclicExpander)->Arg(210)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_SolvableDihedral(benchmark::State& st) {
  GeneratorList g = dihedral(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    AuxFamily fam;
    benchmark::DoNotOptimize(solvable_expander(g, fam).bound);
  }
}
BENCHMARK(BM_SolvableDihedral)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_BiasSpace(benchmark::State& st) {
  auto d = static_cast<std::uint32_t>(st.range(0));
  auto n = static_cast<std::uint32_t>(st.range(1));
  for (auto _ : st) {
    AuxFamily fam;
    benchmark::DoNotOptimize(zdn_bias_space(d, n, 0.25, fam).certified_eps);
  }
}
BENCHMARK(BM_BiasSpace)->Args({2, 8})->Args({3, 5})->Args({6, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
