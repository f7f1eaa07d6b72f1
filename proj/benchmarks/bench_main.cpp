#include <benchmark/benchmark.h>

#include <random>

#include "ssc/certify.hpp"
#include "ssc/compound.hpp"
#include "ssc/graphs.hpp"
#include "ssc/stepmodel.hpp"

namespace {

ssc::SymMatF random_symmetric(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  ssc::SymMatF m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.set(i, j, u(rng));
  return m;
}

void BM_Eigh(benchmark::State& state) {
  const auto m = random_symmetric(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ssc::eigh(m));
}
BENCHMARK(BM_Eigh)->Arg(6)->Arg(15)->Arg(35)->Arg(105)->Unit(benchmark::kMicrosecond);

void BM_PsiRational(benchmark::State& state) {
  ssc::MatrixQ m(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) m(i, j) = ssc::frac(static_cast<long>(i + 2 * j) - 5, 7);
  for (auto _ : state) benchmark::DoNotOptimize(ssc::psi(m));
}
BENCHMARK(BM_PsiRational)->Unit(benchmark::kMicrosecond);

void BM_SpectralSum(benchmark::State& state) {
  const auto g = ssc::knpq(static_cast<int>(state.range(0)), 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ssc::spectral_sum(g));
}
BENCHMARK(BM_SpectralSum)->Arg(7)->Arg(20);

void BM_SearchExtremal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ssc::search_extremal(n, ssc::SearchMode::Max));
}
BENCHMARK(BM_SearchExtremal)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_MaximizeSigma(benchmark::State& state) {
  ssc::OptimizeOptions opt;
  opt.restarts = 20;
  const auto h6 = ssc::candidate(ssc::CandidateName::H6);
  for (auto _ : state) benchmark::DoNotOptimize(ssc::maximize_sigma(h6, opt));
}
BENCHMARK(BM_MaximizeSigma)->Unit(benchmark::kMillisecond);

void BM_SdpSolveH6(benchmark::State& state) {
  const auto problem = ssc::assemble(ssc::candidate(ssc::CandidateName::H6), ssc::frac(8, 7));
  for (auto _ : state) benchmark::DoNotOptimize(ssc::sdp_solve(problem));
}
BENCHMARK(BM_SdpSolveH6)->Unit(benchmark::kMillisecond);

void BM_VerifyH6(benchmark::State& state) {
  const auto out = ssc::certify(ssc::candidate(ssc::CandidateName::H6), ssc::frac(8, 7));
  if (!out.certificate) {
    state.SkipWithError("certification failed");
    return;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssc::verify_identity(*out.certificate));
    benchmark::DoNotOptimize(ssc::verify_psd(*out.certificate));
  }
}
BENCHMARK(BM_VerifyH6)->Unit(benchmark::kMillisecond);

}  // namespace
