#include <benchmark/benchmark.h>

#include <memory>

#include "gentwistor/decomp.hpp"
#include "gentwistor/distributions.hpp"
#include "gentwistor/exalg/linalg.hpp"
#include "gentwistor/flatmodel.hpp"
#include "gentwistor/kostant.hpp"
#include "gentwistor/stabilizers.hpp"

using namespace gentwistor;

namespace {

std::pair<int, int> family(const benchmark::State& state) {
  return state.range(0) == 2 ? std::pair{2, 3} : std::pair{3, 3};
}

// Hilbert-like matrix with a rank drop in the last row
exalg::Matrix test_matrix(std::size_t n) {
  exalg::Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = exalg::Scalar(1) / exalg::Scalar(long(i + j + 1));
  for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j) + m(1, j);
  return m;
}

void BM_ExactRank(benchmark::State& state) {
  auto m = test_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exalg::rank(m));
}
BENCHMARK(BM_ExactRank)->Arg(8)->Arg(16)->Arg(32);

void BM_BuildClifford(benchmark::State& state) {
  auto [p, q] = family(state);
  for (auto _ : state) benchmark::DoNotOptimize(clifford::build_clifford(p + 1, q + 1));
}
BENCHMARK(BM_BuildClifford)->Arg(2)->Arg(3);

void BM_Stabilizer(benchmark::State& state) {
  auto [p, q] = family(state);
  flatmodel::FlatContext ctx(p, q);
  auto so = std::make_shared<const clifford::SoAction>(ctx.doubled_ptr());
  auto X = pairings::double_spinor(pairings::distinguished_tau(ctx.model()), pairings::distinguished_chi(ctx.model()));
  for (auto _ : state) benchmark::DoNotOptimize(stabilizers::stabilizer(so, X));
}
BENCHMARK(BM_Stabilizer)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_HarmonicModule(benchmark::State& state) {
  auto [p, q] = family(state);
  flatmodel::FlatContext ctx(p, q);
  auto so = std::make_shared<const clifford::SoAction>(ctx.doubled_ptr());
  auto X = pairings::double_spinor(pairings::distinguished_tau(ctx.model()), pairings::distinguished_chi(ctx.model()));
  auto s = stabilizers::stabilizer(so, X);
  auto d = kostant::graded_data(s, stabilizers::frame_grading(s), "small");
  for (auto _ : state) benchmark::DoNotOptimize(kostant::harmonic_module(d));
}
BENCHMARK(BM_HarmonicModule)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SolveKernel(benchmark::State& state) {
  flatmodel::FlatContext ctx(2, 3);
  auto eq = static_cast<flatmodel::Equation>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(flatmodel::solve_kernel(ctx, eq, 2));
}
BENCHMARK(BM_SolveKernel)
    ->Arg(static_cast<int>(flatmodel::Equation::twistor))
    ->Arg(static_cast<int>(flatmodel::Equation::aes))
    ->Arg(static_cast<int>(flatmodel::Equation::ckf))
    ->Unit(benchmark::kMillisecond);

void BM_GrowthVector(benchmark::State& state) {
  auto [p, q] = family(state);
  flatmodel::FlatContext ctx(p, q);
  auto d = distributions::distribution_from_spinor(ctx, flatmodel::standard_generic_twistor(ctx));
  distributions::Point x(static_cast<std::size_t>(p + q));
  for (auto _ : state) benchmark::DoNotOptimize(distributions::growth_vector(d, x));
}
BENCHMARK(BM_GrowthVector)->Arg(2)->Arg(3);

void BM_NckPointReport(benchmark::State& state) {
  auto [p, q] = family(state);
  flatmodel::FlatContext ctx(p, q);
  auto chi = flatmodel::standard_generic_twistor(ctx);
  auto d = distributions::distribution_from_spinor(ctx, chi);
  auto f = decomp::nck_form(ctx, chi);
  distributions::Point x(static_cast<std::size_t>(p + q));
  for (auto _ : state) benchmark::DoNotOptimize(decomp::nck_point_report(ctx, f, d, x));
}
BENCHMARK(BM_NckPointReport)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
