#include <benchmark/benchmark.h>

#include <vector>

#include "rmtev/clt.hpp"
#include "rmtev/evec_esd.hpp"
#include "rmtev/linalg.hpp"
#include "rmtev/stieltjes.hpp"

namespace {

rmtev::ModelConfig identity_model(int n, int N) {
  rmtev::ModelConfig cfg;
  cfg.n = n;
  cfg.N = N;
  cfg.seed = 11;
  return cfg;
}

void BM_SolveMbarBulk(benchmark::State& state) {
  const auto h = rmtev::SpectralMeasure({1.0, 3.0}, {0.5, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(rmtev::solve_mbar({1.0, 0.01}, h, 0.5).mbar);
}
BENCHMARK(BM_SolveMbarBulk);

void BM_Density(benchmark::State& state) {
  const rmtev::LimitLaw law(0.25, rmtev::SpectralMeasure::point(1.0), 4);
  for (auto _ : state) benchmark::DoNotOptimize(law.density(1.0));
}
BENCHMARK(BM_Density);

void BM_BuildAndDecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto cfg = identity_model(n, 2 * n);
  std::uint64_t r = 0;
  for (auto _ : state) {
    const auto es = rmtev::eig_decompose(rmtev::build_sample_cov(cfg, r++));
    benchmark::DoNotOptimize(es.lambdas.data());
  }
}
BENCHMARK(BM_BuildAndDecompose)->Arg(50)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_ContourCovariance(benchmark::State& state) {
  const auto h = rmtev::SpectralMeasure::point(1.0);
  const auto [c1, c2] = rmtev::default_contours(h, 0.5, false, static_cast<int>(state.range(0)));
  const std::vector<rmtev::FunctionalSpec> gs = {rmtev::FunctionalSpec::poly({0, 1}),
                                                 rmtev::FunctionalSpec::poly({0, 0, 1})};
  for (auto _ : state) {
    auto cov = rmtev::theoretical_cov_contour_matrix(gs, h, 0.5, c1, c2, rmtev::EntryCase::real);
    benchmark::DoNotOptimize(cov.data());
  }
}
BENCHMARK(BM_ContourCovariance)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Replications(benchmark::State& state) {
  const auto cfg = identity_model(100, 200);
  const std::vector<rmtev::FunctionalSpec> gs = {rmtev::FunctionalSpec::poly({0, 1})};
  for (auto _ : state) {
    auto values = rmtev::run_replications(cfg, gs, 16, static_cast<unsigned>(state.range(0)));
    benchmark::DoNotOptimize(values.data());
  }
}
BENCHMARK(BM_Replications)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
