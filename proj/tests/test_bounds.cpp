#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "erfq/bounds.hpp"
#include "erfq/errors.hpp"
#include "test_util.hpp"

using namespace erfq;

namespace {

const ClassParams kAnchor(0.0, 0.5, 1.0);

} // namespace

TEST_CASE("lemma bound")
{
    CHECK(lemma_bound(0.0) == 1.0);
    CHECK(lemma_bound(2.0) == 2.0);
    CHECK(lemma_bound(-1.5) == 1.5);
    CHECK(lemma_bound_complex(cplx(0.0, 1.0)) == 1.0);
    CHECK(lemma_bound_complex(cplx(0.0, 3.0)) == 3.0);
    for (double t = -3.0; t <= 3.0; t += 0.01) {
        CHECK(lemma_bound_complex(t) == lemma_bound(t));
        CHECK(lemma_bound(t) == lemma_bound(-t));
    }
}

TEST_CASE("improved lemma")
{
    CHECK(lemma_improved_check(1.0, 0.0, 0.0) == 1.0);
    CHECK(lemma_improved_check(0.0, 1.0, 0.5) == 1.0);
    CHECK_THROWS_AS((void)lemma_improved_check(1.0, 0.0, 1.0), RegimeError);
    const auto specs = sample_schwarz_batch(7, 5000);
    double worst = 0.0;
    for (const auto& s : specs) {
        const auto w = schwarz_series(s, 3);
        for (double t = -0.99; t < 1.0; t += 0.01)
            worst = std::max(worst, lemma_improved_check(w[1], w[2], t));
    }
    CHECK(worst <= 1.0 + 1e-12);
}

TEST_CASE("starlike thresholds at the anchor")
{
    const auto th = thresholds_starlike(kAnchor, 2.0, 2.0);
    CHECK(th.real);
    CHECK(std::abs(th.sigma1 - 10.0 / 9.0) < 1e-12);
    CHECK(std::abs(th.sigma3 - 25.0 / 27.0) < 1e-12);
    CHECK(std::abs(th.sigma2 + 20.0 / 27.0) < 1e-12);
    CHECK(std::abs(th.lower - 20.0 / 27.0) < 1e-12);
    CHECK(std::abs(th.zero - 25.0 / 27.0) < 1e-12);
    CHECK(std::abs(th.upper - 10.0 / 9.0) < 1e-12);
    // printed sigma1 and sigma3 coincide with the engine's upper and zero crossings,
    // printed sigma2 is the negated lower crossing
    CHECK(std::abs(th.sigma1 - th.upper) < 1e-12);
    CHECK(std::abs(th.sigma3 - th.zero) < 1e-12);
    CHECK(std::abs(th.sigma2 + th.lower) < 1e-12);
}

TEST_CASE("engine crossings are ordered for real positive b")
{
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const ClassParams p(0.0, 0.05 + 0.9 * u(rng), 0.1 + 3.0 * u(rng));
        const double p1 = 0.1 + 3.0 * u(rng), p2 = -2.0 + 4.0 * u(rng);
        for (const auto& th : {thresholds_starlike(p, p1, p2), thresholds_convex(p, p1, p2)}) {
            CHECK(th.real);
            CHECK(th.lower.real() <= th.zero.real());
            CHECK(th.zero.real() <= th.upper.real());
        }
        const auto tc = thresholds_convex(p, p1, p2);
        CHECK(std::abs(tc.sigma1 - tc.lower) < 1e-10 * (1.0 + std::abs(tc.lower)));
        CHECK(std::abs(tc.sigma2 - tc.upper) < 1e-10 * (1.0 + std::abs(tc.upper)));
        CHECK(std::abs(tc.sigma3 - tc.zero) < 1e-10 * (1.0 + std::abs(tc.zero)));
    }
}

TEST_CASE("printed thresholds scale with b as printed")
{
    const ClassParams p(0.3, 0.4, cplx(0.8, 0.2));
    const ClassParams p3(0.3, 0.4, cplx(0.8, 0.2) * 3.0);
    const auto a = thresholds_starlike(p, 1.3, 0.7);
    const auto b = thresholds_starlike(p3, 1.3, 0.7);
    const double c = 10.0 * p.theta2() / (9.0 * p.theta3());
    CHECK(std::abs((b.sigma1 - c) * 3.0 - (a.sigma1 - c)) < 1e-13);
    CHECK(std::abs((b.sigma2 + c) * 3.0 - (a.sigma2 + c)) < 1e-13);
    CHECK(std::abs((b.sigma3 - c) * 3.0 - (a.sigma3 - c)) < 1e-13);
    CHECK_FALSE(a.real);
}

TEST_CASE("starlike piecewise bound")
{
    const auto mid = fs_bound_starlike(kAnchor, 2.0, 2.0, 0.9);
    CHECK(mid.regime == Regime::Middle);
    CHECK(std::abs(mid.value - 80.0 / 3.0) < 1e-12);
    CHECK(std::abs(mid.printed - 80.0 / 3.0) < 1e-12);
    CHECK(fs_bound_starlike(kAnchor, 2.0, 2.0, -1.0).regime == Regime::Below);
    CHECK(fs_bound_starlike(kAnchor, 2.0, 2.0, 3.0).regime == Regime::Above);
    CHECK(std::abs(fs_bound_starlike(kAnchor, 2.0, 2.0, 3.0).value - 80.0 / 3.0 * (5.4 * 3.0 - 5.0)) < 1e-11);

    const auto th = thresholds_starlike(kAnchor, 2.0, 2.0);
    for (cplx edge : {th.lower, th.upper}) {
        const double at = fs_bound_starlike(kAnchor, 2.0, 2.0, edge).value;
        CHECK(std::abs(at - 80.0 / 3.0) < 1e-10);
        CHECK(std::abs(fs_bound_starlike(kAnchor, 2.0, 2.0, edge.real() - 1e-12).value - at) < 1e-9);
        CHECK(std::abs(fs_bound_starlike(kAnchor, 2.0, 2.0, edge.real() + 1e-12).value - at) < 1e-9);
    }
    const auto im = fs_bound_starlike(kAnchor, 2.0, 2.0, cplx(0.0, 0.7));
    CHECK(im.regime == Regime::ComplexMu);
    CHECK(im.value >= 80.0 / 3.0);

    for (double mu = -2.0; mu <= 3.0; mu += 0.05) {
        const auto pw = fs_bound_starlike(kAnchor, 2.0, 2.0, mu);
        const auto dec = fs_decomposition(kAnchor, ClassKind::StarlikeSub, 2.0, 2.0, mu);
        const double max_form = std::abs(dec.prefactor) * lemma_bound_complex(dec.t);
        CHECK(max_form >= pw.value - 1e-10);
        if (pw.regime != Regime::Middle)
            CHECK(std::abs(max_form - pw.value) < 1e-10);
        CHECK(pw.value >= 0.0);
    }
}

TEST_CASE("bounds scale linearly in |b|")
{
    for (double mu : {-1.0, 0.5, 2.0}) {
        for (double lam : {0.5, 2.0}) {
            // move mu so that t stays fixed under b -> lam b
            const ClassParams p(0.0, 0.5, lam);
            const double t2 = 0.5, t3 = 0.75;
            const double moved = (10.0 * t2 + (9.0 * mu * t3 - 10.0 * t2) / lam) / (9.0 * t3);
            const auto a = fs_bound_starlike(p, 2.0, 2.0, moved);
            const auto b = fs_bound_starlike(kAnchor, 2.0, 2.0, mu);
            CHECK(a.regime == b.regime);
            CHECK(std::abs(a.value - lam * b.value) < 1e-10 * b.value);
        }
    }
}

TEST_CASE("improved starlike inequality")
{
    const double mu = 0.85; // inside (lower, upper)
    const auto zero_a2 = fs_improved_starlike(kAnchor, 2.0, 2.0, mu, 0.0, cplx(3.0, 4.0));
    CHECK(zero_a2.lhs == 5.0);
    CHECK(std::abs(zero_a2.rhs - 80.0 / 3.0) < 1e-12);

    const auto outer = OuterTarget::from_coeffs(2.0, 2.0);
    const auto r = recover_coeffs_numeric(kAnchor, ClassKind::StarlikeSub, outer, {Monomial{2}});
    for (double m : {0.75, 0.85, 0.95, 1.05}) {
        const auto s = fs_improved_starlike(kAnchor, 2.0, 2.0, m, r.a2, r.a3);
        CHECK(std::abs(s.lhs - s.rhs) < 1e-9);
    }
    for (const auto& w : sample_schwarz_batch(8, 2000)) {
        const auto c = recover_coeffs_numeric(kAnchor, ClassKind::StarlikeSub, outer, w);
        for (double m : {0.75, 0.85, 0.95, 1.05}) {
            const auto s = fs_improved_starlike(kAnchor, 2.0, 2.0, m, c.a2, c.a3);
            CHECK(s.lhs <= s.rhs + 1e-9);
        }
    }
    CHECK_THROWS_AS((void)fs_improved_starlike(kAnchor, 2.0, 2.0, 3.0, 0.0, 0.0), RegimeError);
    CHECK(std::abs(improved_weight(kAnchor, ClassKind::StarlikeSub, 2.0) - 10.0 * 0.25 / (9.0 * 0.75 * 2.0)) < 1e-14);
}

TEST_CASE("convex bound")
{
    const auto cb = thresholds_and_bound_convex(kAnchor, 2.0, 2.0, 1.0);
    CHECK(cb.bound.regime == Regime::Middle);
    CHECK(std::abs(cb.bound.value - 40.0 / 7.0) < 1e-12);
    CHECK(cb.thresholds.sigma1.real() <= cb.thresholds.sigma3.real());
    CHECK(cb.thresholds.sigma3.real() <= cb.thresholds.sigma2.real());
    for (cplx edge : {cb.thresholds.sigma1, cb.thresholds.sigma2}) {
        const double lo = thresholds_and_bound_convex(kAnchor, 2.0, 2.0, edge.real() - 1e-12).bound.value;
        const double hi = thresholds_and_bound_convex(kAnchor, 2.0, 2.0, edge.real() + 1e-12).bound.value;
        CHECK(std::abs(lo - hi) < 1e-10);
    }
    const auto above = thresholds_and_bound_convex(kAnchor, 2.0, 2.0, 5.0).bound;
    CHECK(above.regime == Regime::Above);
    CHECK(std::abs(std::abs(above.printed) - above.value) < 1e-10);
    CHECK_FALSE(above.printed_negative);
    const auto below = thresholds_and_bound_convex(kAnchor, 2.0, 2.0, -2.0).bound;
    CHECK(std::abs(std::abs(below.printed) - below.value) < 1e-10);

    const auto outer = OuterTarget::from_coeffs(2.0, 2.0);
    const auto r = recover_coeffs_numeric(kAnchor, ClassKind::ConvexSub, outer, {Monomial{2}});
    const auto s = fs_improved_convex(kAnchor, 2.0, 2.0, 1.0, r.a2, r.a3);
    CHECK(std::abs(s.lhs - s.rhs) < 1e-9);
    CHECK(std::abs(improved_weight(kAnchor, ClassKind::ConvexSub, 2.0) - 5.0 * 2.25 / (9.0 * 1.75 * 2.0)) < 1e-14);
}

TEST_CASE("quasi bounds")
{
    const auto s0 = quasi_bounds_starlike(kAnchor, 2.0, 2.0, 0.0);
    CHECK(std::abs(s0.fs - s0.a3) < 1e-12);
    CHECK(std::abs(s0.a2 - 12.0) < 1e-12);
    CHECK(std::abs(s0.a2_printed - 12.0) < 1e-12);
    CHECK(std::abs(s0.a3_printed - s0.a3) < 1e-12);
    for (double mu = -3.0; mu <= 3.0; mu += 0.1)
        CHECK(std::abs(quasi_bounds_starlike(kAnchor, 2.0, 2.0, mu).fs_printed -
                       quasi_bounds_starlike(kAnchor, 2.0, 2.0, mu).fs) < 1e-10);

    const auto c0 = quasi_bounds_convex(kAnchor, 2.0, 2.0, 0.0);
    CHECK(std::abs(c0.a2 - 4.0) < 1e-12);
    CHECK(std::abs(c0.a2_printed - 4.0) < 1e-12);
    CHECK(std::abs(c0.fs - c0.a3) < 1e-12);
    CHECK(std::abs(c0.a3_printed - c0.a3) < 1e-12);
    // The printed convex display sits below the derived bound for small negative mu.
    const auto neg = quasi_bounds_convex(kAnchor, 2.0, 2.0, -0.3);
    CHECK(neg.fs > neg.fs_printed);

    const auto tiny = quasi_bounds_starlike(kAnchor, 1e-6, 0.0, 0.0);
    const auto k = class_constants(kAnchor, ClassKind::StarlikeSub);
    CHECK(std::abs(tiny.a3 - std::abs(k.a3_scale) * 2e-6) < 1e-15);

    const ClassParams near_one(0.2, 0.999, cplx(1.0, 0.5));
    const auto lim = quasi_bounds_convex(near_one, 1.5, 0.4, 0.7);
    const double rho = std::abs(near_one.rho());
    CHECK(std::isfinite(lim.fs));
    CHECK(std::abs(lim.a2 - 3.0 * std::abs(near_one.b()) * 1.5 / (rho * 2.0)) < 2e-3);
    CHECK_THROWS_AS((void)quasi_bounds_starlike(kAnchor, 0.0, 1.0, 0.0), DomainError);
}
