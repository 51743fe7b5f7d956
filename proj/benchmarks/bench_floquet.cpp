#include "eit/floquet.hpp"
#include "eit/model.hpp"
#include "eit/spectrum.hpp"

#include <benchmark/benchmark.h>

using namespace eit;

namespace {

MediumParams standard_medium() {
    return {2e-13, 1.0, 1e-1, 1e-9, 1e-14, 0.0, 0.0};
}

ControlFieldSpec standard_control() {
    return {Complex(1e-8, 0.0), SinusoidalChirp{5.0, 2e-9}};
}

ProbePulseSpec standard_probe() {
    return {Complex(1e-10, 0.0), 8e9, 0.0, 0.0, 0.0};
}

} // namespace

static void BM_CouplingMatrix(benchmark::State& state) {
    const MediumParams m = standard_medium();
    const ControlFieldSpec c = standard_control();
    const int s_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(coupling_matrix(1e-11, m, c, s_max));
    }
}
BENCHMARK(BM_CouplingMatrix)->Arg(15)->Arg(20)->Arg(30);

static void BM_ColumnDecomposition(benchmark::State& state) {
    const MediumParams m = standard_medium();
    const ControlFieldSpec c = standard_control();
    const int s_max = static_cast<int>(state.range(0));
    const double kappa2 = derive_kappa2(m);
    const Eigen::MatrixXcd a = coupling_matrix(1e-11, m, c, s_max);
    const Eigen::MatrixXcd n = propagation_matrix(a, kappa2, 2e-9, s_max);
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose_propagation_matrix(n, 1e-11));
    }
}
BENCHMARK(BM_ColumnDecomposition)->Arg(15)->Arg(20)->Arg(30);

static void BM_EngineBuild(benchmark::State& state) {
    const FloquetGrid grid{2e-9, static_cast<int>(state.range(0)), 20};
    for (auto _ : state) {
        FloquetEngine engine(standard_medium(), standard_control(), grid);
        benchmark::DoNotOptimize(engine.kappa2());
    }
}
BENCHMARK(BM_EngineBuild)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_Propagate(benchmark::State& state) {
    const FloquetGrid grid{2e-9, static_cast<int>(state.range(0)), 20};
    const FloquetEngine engine(standard_medium(), standard_control(), grid);
    const FloquetSpectrum in = incoming_spectrum(standard_probe(), grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(engine.propagate(in, 2e10));
    }
}
BENCHMARK(BM_Propagate)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_ReconstructTime(benchmark::State& state) {
    const FloquetGrid grid{2e-9, 128, 20};
    const FloquetEngine engine(standard_medium(), standard_control(), grid);
    const FloquetSpectrum out =
        engine.propagate(incoming_spectrum(standard_probe(), grid), 2e10);
    std::vector<double> t_grid(static_cast<std::size_t>(state.range(0)));
    for (std::size_t j = 0; j < t_grid.size(); ++j)
        t_grid[j] = 1.5e11 + 1e8 * static_cast<double>(j);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reconstruct_time(out, t_grid));
    }
}
BENCHMARK(BM_ReconstructTime)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
