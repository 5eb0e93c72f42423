#include <benchmark/benchmark.h>

#include "qgrowth/classify.hpp"
#include "qgrowth/covers.hpp"
#include "qgrowth/dsl.hpp"
#include "qgrowth/expr.hpp"
#include "qgrowth/qatoms.hpp"
#include "qgrowth/series.hpp"
#include "qgrowth/wordmodel.hpp"

namespace {

using namespace qgrowth;

FiberCoverSpec two_point_order() {
  FiberCoverSpec spec;
  spec.fiber_size = 2;
  const Permutation swap = Permutation::from_cycles("(0 1)", 2);
  spec.H = FiniteGroup::from_generators({swap}, 2);
  spec.L = spec.H;
  spec.base = QReduct::Order;
  return spec;
}

void BM_ProfileRecursion(benchmark::State& state) {
  const GroupExpr e = expr_atom(two_point_order());
  for (auto _ : state) {
    // The profile cache keys on (expression, order), so vary the order to
    // measure the recursion rather than the map lookup.
    const OrbitSeries u = profile(e, 30 + (state.iterations() & 1));
    benchmark::DoNotOptimize(u.coefficients.back());
  }
}
BENCHMARK(BM_ProfileRecursion);

void BM_WordModelSubsets(benchmark::State& state) {
  const FiberCoverSpec spec = two_point_order();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_subset_orbits(spec, n));
  }
}
BENCHMARK(BM_WordModelSubsets)->Arg(4)->Arg(6)->Arg(8);

void BM_GammaBisection(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma(d).value);
  }
}
BENCHMARK(BM_GammaBisection)->Arg(2)->Arg(10)->Arg(30);

void BM_EulerTransform(benchmark::State& state) {
  OrbitSeries ones = make_series(SeriesKind::U, {1});
  ones.coefficients.assign(64, BigInt(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(euler_transform(ones).coefficients.back());
  }
}
BENCHMARK(BM_EulerTransform);

void BM_CoverDecompose(benchmark::State& state) {
  const FiniteGroup s2 =
      FiniteGroup::from_generators({Permutation::from_cycles("(0 1)", 2)}, 2);
  const FiniteCover cover =
      make_cover(kernel_LH(2, s2, s2, 3), {0, 0, 1, 1, 2, 2});
  for (auto _ : state) {
    auto [quotient, descent] = decompose(cover);
    benchmark::DoNotOptimize(quotient.total.order());
  }
}
BENCHMARK(BM_CoverDecompose);

void BM_CatalogEnumeration(benchmark::State& state) {
  const auto fiber = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_S_catalog(fiber).size());
  }
}
BENCHMARK(BM_CatalogEnumeration)->Arg(2)->Arg(3);

void BM_ParsePrint(benchmark::State& state) {
  const std::string text =
      "prod(cover{F=2; H=(0 1); L=(0 1); base=<}, wr_omega(Q cyc))";
  for (auto _ : state) {
    benchmark::DoNotOptimize(print_expr(parse_expr(text)));
  }
}
BENCHMARK(BM_ParsePrint);

}  // namespace

BENCHMARK_MAIN();
