// Serial reference kernels against their OpenMP counterparts.
//   bench_kernels --benchmark_filter=step

#include <benchmark/benchmark.h>

#include "coldplasma/classify.hpp"
#include "coldplasma/euler_field.hpp"
#include "coldplasma/profile.hpp"

using namespace coldplasma;

namespace {

void field_step(benchmark::State& st, euler::Scheme scheme, bool parallel) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const euler::FieldState s0 = euler::init_gaussian(2.07, 3.0, euler::Grid::symmetric(n, 13.5));
    const euler::StepOptions o{euler::Model::rel, scheme, euler::Boundary::equilibrium, 1, parallel};
    const double dt = 0.5 * s0.grid.h;
    euler::FieldState a = s0, b;
    for (auto _ : st) {
        euler::step_into(a, b, dt, o);
        std::swap(a, b);
        benchmark::DoNotOptimize(a.P.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(n));
}

void sweep(benchmark::State& st, bool parallel) {
    const profile::GaussianProfile prof(2.07, 3.0);
    classify::SweepOptions o;
    o.rho_min = 0.0;
    o.rho_max = 6.0;
    o.samples = static_cast<std::size_t>(st.range(0));
    o.parallel = parallel;
    for (auto _ : st) benchmark::DoNotOptimize(classify::classify_profile(prof, euler::Model::rel, o));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(field_step, jet_serial, euler::Scheme::jet, false)->Arg(1000)->Arg(4000)->Arg(16000);
BENCHMARK_CAPTURE(field_step, jet_omp, euler::Scheme::jet, true)->Arg(1000)->Arg(4000)->Arg(16000);
BENCHMARK_CAPTURE(field_step, pc_serial, euler::Scheme::predictor_corrector, false)->Arg(1000)->Arg(4000)->Arg(16000);
BENCHMARK_CAPTURE(field_step, pc_omp, euler::Scheme::predictor_corrector, true)->Arg(1000)->Arg(4000)->Arg(16000);
BENCHMARK_CAPTURE(sweep, serial, false)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sweep, omp, true)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
