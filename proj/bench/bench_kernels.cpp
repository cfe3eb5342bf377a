// Serial reference against the OpenMP variant for each data-parallel kernel.

#include <benchmark/benchmark.h>

#include <random>

#include "erfq/coefficients.hpp"
#include "erfq/conic.hpp"
#include "erfq/families.hpp"
#include "erfq/kernels.hpp"

using namespace erfq;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

std::vector<kernels::SchwarzPair> pairs(std::size_t n)
{
    const auto specs = sample_schwarz_batch(1, n);
    std::vector<kernels::SchwarzPair> out;
    for (const auto& s : specs) {
        const auto w = schwarz_series(s, 2);
        out.push_back({w[1], w[2]});
    }
    return out;
}

void BM_LemmaSweep(benchmark::State& state)
{
    const auto samples = pairs(20000);
    std::vector<double> ts;
    for (int i = -300; i <= 300; ++i)
        ts.push_back(i / 100.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::lemma_sweep(exec_of(state), samples, ts));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples.size() * ts.size()));
}

void BM_FeketeSzegoSup(benchmark::State& state)
{
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    std::vector<kernels::CoeffPair> coeffs(10000);
    for (auto& c : coeffs)
        c = {cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
    std::vector<cplx> mus;
    for (int i = 0; i < 97; ++i)
        mus.emplace_back(-2.0 + 0.05 * i, 0.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::fekete_szego_sup(exec_of(state), coeffs, mus));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(coeffs.size() * mus.size()));
}

void BM_CoefficientRecovery(benchmark::State& state)
{
    const ClassParams params(0.0, 0.5, 1.0);
    const auto outer = OuterTarget::from_conic(ConicParams(0.0, 0.0));
    const auto specs = sample_schwarz_batch(3, 2000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::map<kernels::CoeffPair>(exec_of(state), specs.size(), [&](std::size_t i) {
            const auto c = recover_coeffs_numeric(params, ClassKind::StarlikeSub, outer, specs[i]);
            return kernels::CoeffPair{c.a2, c.a3};
        }));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(specs.size()));
}

void BM_CauchyCircle(benchmark::State& state)
{
    const ConicParams params(2.0, 0.25);
    const DiskFunction f = [&](cplx z) { return eval_pk(params, z); };
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::sample_circle(exec_of(state), f, 0.5, 4096));
    state.SetItemsProcessed(state.iterations() * 4096);
}

} // namespace

// Arg 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_LemmaSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FeketeSzegoSup)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoefficientRecovery)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CauchyCircle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
