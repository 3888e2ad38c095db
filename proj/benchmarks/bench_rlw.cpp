#include "rlw/assembly.hpp"
#include "rlw/banded.hpp"
#include "rlw/problems.hpp"
#include "rlw/solver.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

void BM_ElementMatrices(benchmark::State& state) {
    const auto basis = rlw::make_basis(1.0, 0.3);
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rlw::element_matrices(basis, order));
    }
}
BENCHMARK(BM_ElementMatrices)->Arg(4)->Arg(8)->Arg(16);

void BM_BandSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    rlw::BandMatrix m(n, 3, 3);
    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) {
        for (int j = std::max(0, i - 3); j <= std::min(n - 1, i + 3); ++j) m.at(i, j) = u(rng);
        m.at(i, i) = 8.0;
        rhs[i] = u(rng);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(rlw::band_solve(m, rhs));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_BandSolve)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);

void BM_SolitonStep(benchmark::State& state) {
    rlw::SolitonSpec spec;
    rlw::RLWProblem pr;
    pr.a = -40.0;
    pr.b = 60.0;
    pr.n_elements = 800;
    pr.tension = 0.01262;
    pr.initial = [spec](double x) { return rlw::exact_soliton(spec, x, 0.0); };
    pr.inner_iters = static_cast<int>(state.range(0));
    const rlw::Discretization disc(pr);
    auto st = rlw::fit_initial(pr, disc.basis, disc.mesh);
    for (auto _ : state) {
        st = rlw::step(st, disc, pr);
        benchmark::DoNotOptimize(st.delta.data());
    }
}
BENCHMARK(BM_SolitonStep)->Arg(1)->Arg(3);

} // namespace

BENCHMARK_MAIN();
