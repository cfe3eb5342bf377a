#pragma once

// Data-parallel kernels. Each kernel has a serial reference and an OpenMP
// variant; both run the same per-index work in the same order, so their
// outputs are bitwise identical and the serial path doubles as the oracle
// for the parallel one.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "erfq/series.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace erfq::kernels {

/// Caps OpenMP threads; 0 keeps the runtime default. No-op without OpenMP.
void set_thread_cap(int threads);
[[nodiscard]] int thread_count();

template <class T, class Fn>
std::vector<T> map_serial(std::size_t n, Fn&& fn) {
    std::vector<T> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = fn(i);
    }
    return out;
}

// Exceptions cannot cross an OpenMP region boundary; the lowest failing
// index is captured and rethrown so failure reporting is deterministic.
template <class T, class Fn>
std::vector<T> map_parallel(std::size_t n, Fn&& fn) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

template <class T, class Fn>
std::vector<T> map(Exec exec, std::size_t n, Fn&& fn) {
    return exec == Exec::Serial ? map_serial<T>(n, fn) : map_parallel<T>(n, fn);
}

struct Sup {
    double value = 0.0;
    std::size_t index = 0;
    friend bool operator==(const Sup&, const Sup&) = default;
};

/// For each probe p, the max over samples s of score(s, p). Ties keep the
/// lowest sample index.
template <class Score>
std::vector<Sup> sup_per_probe(Exec exec, std::size_t probes, std::size_t samples, Score&& score) {
    auto one = [&](std::size_t p) {
        Sup best{-1.0, 0};
        for (std::size_t s = 0; s < samples; ++s) {
            const double v = score(s, p);
            if (v > best.value) best = {v, s};
        }
        return best;
    };
    return map<Sup>(exec, probes, one);
}

struct SchwarzPair {
    cplx w1;
    cplx w2;
};

struct LemmaSweep {
    std::vector<Sup> functional; // sup |w2 - t w1^2| per t
    std::vector<Sup> improved;   // sup of the improved sum, only for -1 < t < 1 (else value 0)
};

/// Lemma-1 sweep over all (sample, t) pairs.
[[nodiscard]] LemmaSweep lemma_sweep(Exec exec, std::span<const SchwarzPair> samples,
                                     std::span<const double> t_grid);

struct CoeffPair {
    cplx a2;
    cplx a3;
};

/// sup over samples of |a3 - mu a2^2| per mu.
[[nodiscard]] std::vector<Sup> fekete_szego_sup(Exec exec, std::span<const CoeffPair> samples,
                                                std::span<const cplx> mus);

/// f at M equally spaced points on |z| = r, starting at angle 0.
[[nodiscard]] std::vector<cplx> sample_circle(Exec exec, const DiskFunction& f, double r, int samples);

} // namespace erfq::kernels
