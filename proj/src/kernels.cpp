#include "erfq/kernels.hpp"

#include <cmath>
#include <numbers>

namespace erfq::kernels {

void set_thread_cap(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace {
double lemma_improved_value(cplx w1, cplx w2, double t) {
    const double base = std::abs(w2 - t * w1 * w1);
    const double m = std::norm(w1);
    return t <= 0.0 ? base + (1.0 + t) * m : base + (1.0 - t) * m;
}

} // namespace

LemmaSweep lemma_sweep(Exec exec, std::span<const SchwarzPair> samples, std::span<const double> t_grid) {
    LemmaSweep out;
    out.functional = sup_per_probe(exec, t_grid.size(), samples.size(), [&](std::size_t s, std::size_t p) {
        const auto& w = samples[s];
        return std::abs(w.w2 - t_grid[p] * w.w1 * w.w1);
    });
    out.improved = sup_per_probe(exec, t_grid.size(), samples.size(), [&](std::size_t s, std::size_t p) {
        const double t = t_grid[p];
        if (!(t > -1.0 && t < 1.0)) return 0.0;
        return lemma_improved_value(samples[s].w1, samples[s].w2, t);
    });
    return out;
}

std::vector<Sup> fekete_szego_sup(Exec exec, std::span<const CoeffPair> samples, std::span<const cplx> mus) {
    return sup_per_probe(exec, mus.size(), samples.size(), [&](std::size_t s, std::size_t p) {
        return std::abs(samples[s].a3 - mus[p] * samples[s].a2 * samples[s].a2);
    });
}

std::vector<cplx> sample_circle(Exec exec, const DiskFunction& f, double r, int samples) {
    const double step = 2.0 * std::numbers::pi / samples;
    return map<cplx>(exec, static_cast<std::size_t>(samples), [&](std::size_t j) {
        return f(std::polar(r, step * static_cast<double>(j)));
    });
}

} // namespace erfq::kernels
