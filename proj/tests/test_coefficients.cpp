#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "erfq/coefficients.hpp"
#include "erfq/errors.hpp"
#include "test_util.hpp"

using namespace erfq;

namespace {

struct Draw {
    ClassParams params;
    double p1, p2;
    SchwarzSpec w;
    PhiSpec phi;
    cplx mu;
};

Draw random_draw(std::mt19937_64& rng, ConvexPrime prime = ConvexPrime::Ordinary)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double beta = -1.2 + 2.4 * u(rng);
    const double q = 0.05 + 0.9 * u(rng);
    const cplx b = std::polar(0.3 + 1.7 * u(rng), 2 * std::numbers::pi * u(rng));
    const double p1 = 0.2 + 2.8 * u(rng);
    const double p2 = -2.0 + 5.0 * u(rng);
    const auto seed = rng();
    return {ClassParams(beta, q, b, prime), p1, p2, sample_schwarz(seed), sample_phi(seed ^ 0xabcdefULL),
            erfq::testing::random_unit_disk(rng, 3.0)};
}

bool close(cplx a, cplx b, double tol)
{
    return std::abs(a - b) <= tol * (1.0 + std::abs(b));
}

const ClassKind kAllKinds[] = {ClassKind::StarlikeSub, ClassKind::ConvexSub, ClassKind::StarlikeQuasi,
                               ClassKind::ConvexQuasi};

} // namespace

TEST_CASE("ClassParams")
{
    const ClassParams p(0.3, 0.4, cplx(1.0, 0.5));
    CHECK(p.rho().real() == 1.0);
    CHECK(std::abs(p.rho().imag() - std::tan(0.3)) < 1e-15);
    CHECK(std::abs(p.theta2() - 0.4) < 1e-15);
    CHECK(std::abs(p.theta3() - 0.56) < 1e-15);
    CHECK_THROWS_AS(ClassParams(std::numbers::pi / 2, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(ClassParams(0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ClassParams(0.0, 0.5, 0.0), DomainError);
    for (auto k : kAllKinds)
        CHECK(parse_class_kind(to_string(k)) == k);
    CHECK_THROWS_AS((void)parse_class_kind("spiral"), DomainError);
}

TEST_CASE("lhs_functional")
{
    const ClassParams p(0.4, 0.6, cplx(0.7, -0.2));
    for (auto kind : kAllKinds) {
        const auto one = lhs_functional(TruncatedSeries::monomial(1, 8), p, kind);
        CHECK(max_abs_diff(one, TruncatedSeries::constant(1.0, 7)) < 1e-15);
    }
    const cplx a2(0.8, 1.3);
    const auto F = to_family_E(TruncatedSeries{0.0, 1.0, a2, 0.0, 0.0});
    const auto L = lhs_functional(F, p, ClassKind::StarlikeSub);
    CHECK(std::abs(L[1] - p.rho() / p.b() * (1.0 - p.bracket2()) * a2 / 3.0) < 1e-14);

    const ClassParams plain(0.0, 0.6, 1.0);
    const auto G = to_family_E(TruncatedSeries{0.0, 1.0, a2, cplx(-0.4, 0.1), 0.3});
    const auto ratio = div(shift_down(shift_up(q_derivative(G, plain.qctx()))), shift_down(G));
    CHECK(max_abs_diff(lhs_functional(G, plain, ClassKind::StarlikeSub), ratio) < 1e-14);
    CHECK_THROWS_AS((void)lhs_functional(TruncatedSeries{0.0, 2.0, 0.0}, plain, ClassKind::StarlikeSub),
                    NotNormalized);
}

TEST_CASE("printed starlike closed form examples")
{
    const ClassParams p(0.0, 0.5, 1.0);
    const auto zero = closed_form_a2_a3_starlike(p, 2.0, 2.0, 0.0, 0.0);
    CHECK(zero.a2 == cplx(0.0));
    CHECK(zero.a3 == cplx(0.0));
    const auto r = closed_form_a2_a3_starlike(p, 2.0, 2.0, 1.0, 0.0);
    CHECK(std::abs(r.a2 + 12.0) < 1e-13);
    CHECK(r.source == CoeffSource::ClosedForm);
}

TEST_CASE("recover against hand arithmetic")
{
    // w = z, p = (1+z)/(1-z), q = 1/2: zD_qF = F S with S = 1 + 2z + 2z^2 + ...
    // gives F_2 = 4, F_3 = 40/3, so a2 = -12 and a3 = 400/3.
    const ClassParams p(0.0, 0.5, 1.0);
    const auto outer = OuterTarget::from_conic(ConicParams(0.0, 0.0));
    const auto r = recover_coeffs_numeric(p, ClassKind::StarlikeSub, outer, {Monomial{1}});
    CHECK(std::abs(r.a2 + 12.0) < 1e-12);
    CHECK(std::abs(r.a3 - 400.0 / 3.0) < 1e-11);
    CHECK(r.source == CoeffSource::SeriesSolve);
    CHECK(std::abs(closed_form_a2_a3_starlike(p, 2.0, 2.0, 1.0, 0.0).a2 - r.a2) < 1e-12);

    const auto sq = recover_coeffs_numeric(p, ClassKind::StarlikeSub, outer, {Monomial{2}});
    CHECK(sq.a2 == cplx(0.0));
}

TEST_CASE("recovered coefficients against the engine closed forms")
{
    std::mt19937_64 rng(41);
    for (auto prime : {ConvexPrime::Ordinary, ConvexPrime::Q}) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto d = random_draw(rng, prime);
            const auto outer = OuterTarget::from_coeffs(d.p1, d.p2);
            const auto w = schwarz_series(d.w, 4);
            for (auto kind : {ClassKind::StarlikeSub, ClassKind::ConvexSub}) {
                const auto num = recover_coeffs_numeric(d.params, kind, outer, d.w);
                const auto cf = engine_closed_form(d.params, kind, d.p1, d.p2, w[1], w[2]);
                CHECK(close(num.a2, cf.a2, 1e-10));
                CHECK(close(num.a3, cf.a3, 1e-10));
            }
            const auto phi = phi_series(d.phi, 4);
            for (auto kind : {ClassKind::StarlikeQuasi, ClassKind::ConvexQuasi}) {
                const auto num = recover_coeffs_numeric(d.params, kind, outer, d.w, d.phi);
                const auto cf = engine_closed_form_quasi(d.params, kind, d.p1, d.p2, phi[0], phi[1], w[1], w[2]);
                CHECK(close(num.a2, cf.a2, 1e-10));
                CHECK(close(num.a3, cf.a3, 1e-10));
            }
        }
    }
}

TEST_CASE("printed starlike a2 and quasi forms agree with the series solve")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = random_draw(rng);
        const auto outer = OuterTarget::from_coeffs(d.p1, d.p2);
        const auto w = schwarz_series(d.w, 4);
        const auto num = recover_coeffs_numeric(d.params, ClassKind::StarlikeSub, outer, d.w);
        CHECK(close(closed_form_a2_a3_starlike(d.params, d.p1, d.p2, w[1], w[2]).a2, num.a2, 1e-10));

        const auto phi = phi_series(d.phi, 4);
        const auto qn = recover_coeffs_numeric(d.params, ClassKind::StarlikeQuasi, outer, d.w, d.phi);
        const auto qp = quasi_closed_form_a2_a3(d.params, d.p1, d.p2, phi[0], phi[1], w[1], w[2]);
        CHECK(close(qp.a2, qn.a2, 1e-10));
        CHECK(close(qp.a3, qn.a3, 1e-10));
    }
}

TEST_CASE("quasi with phi = 1 reduces to subordination")
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = random_draw(rng);
        const auto outer = OuterTarget::from_coeffs(d.p1, d.p2);
        for (auto [sub, quasi] : {std::pair{ClassKind::StarlikeSub, ClassKind::StarlikeQuasi},
                                  std::pair{ClassKind::ConvexSub, ClassKind::ConvexQuasi}}) {
            const auto s = recover_coeffs_numeric(d.params, sub, outer, d.w);
            const auto q1 = recover_coeffs_numeric(d.params, quasi, outer, d.w, PhiSpec{PhiConstant{1.0}});
            const auto q0 = recover_coeffs_numeric(d.params, quasi, outer, d.w);
            CHECK(close(q1.a2, s.a2, 1e-12));
            CHECK(close(q1.a3, s.a3, 1e-12));
            CHECK(q0.a2 == q1.a2);
            CHECK(q0.a3 == q1.a3);
        }
        const auto w = schwarz_series(d.w, 4);
        const auto qp = quasi_closed_form_a2_a3(d.params, d.p1, d.p2, 1.0, 0.0, w[1], w[2]);
        const auto sp = engine_closed_form(d.params, ClassKind::StarlikeSub, d.p1, d.p2, w[1], w[2]);
        CHECK(close(qp.a2, sp.a2, 1e-12));
        CHECK(close(qp.a3, sp.a3, 1e-12));
        const auto none = quasi_closed_form_a2_a3(d.params, d.p1, d.p2, 0.4, 0.2, 0.0, 0.0);
        CHECK(none.a2 == cplx(0.0));
        CHECK(none.a3 == cplx(0.0));
    }
}

TEST_CASE("a2 depends only on first-order data")
{
    std::mt19937_64 rng(44);
    const ClassParams p(0.5, 0.3, cplx(0.8, 0.4));
    const auto outer = OuterTarget::from_conic(ConicParams(0.5, 0.1));
    for (auto kind : kAllKinds) {
        const auto w = erfq::testing::random_series(rng, 12, 0.3).with_coeff(0, 0.0);
        const auto r1 = recover_coeffs_numeric(p, kind, outer, {ExplicitSeries{w}});
        const auto r2 = recover_coeffs_numeric(p, kind, outer, {ExplicitSeries{w.with_coeff(2, w[2] + 0.1)}});
        CHECK(r1.a2 == r2.a2);
        CHECK(r1.a3 != r2.a3);
    }
}

TEST_CASE("solve_F_from_subordination")
{
    const ClassParams p(0.2, 0.45, cplx(1.2, -0.3));
    for (auto kind : {ClassKind::StarlikeSub, ClassKind::ConvexSub})
        CHECK(max_abs_diff(solve_F_from_subordination(p, kind, TruncatedSeries::constant(1.0, 12)),
                           TruncatedSeries::monomial(1, 12)) == 0.0);

    const auto outer = OuterTarget::from_conic(ConicParams(2.0, 0.2));
    std::vector<SchwarzSpec> ws = {{Monomial{1}}, {Monomial{2}}, {MobiusPlus{0.3}}, {MobiusMinus{0.8}},
                                   {MobiusPlus{0.6}, 1.0, 0.4}};
    for (auto prime : {ConvexPrime::Ordinary, ConvexPrime::Q}) {
        const ClassParams pp(0.2, 0.45, cplx(1.2, -0.3), prime);
        for (auto kind : {ClassKind::StarlikeSub, ClassKind::ConvexSub}) {
            for (const auto& w : ws) {
                const auto rhs = class_rhs(kind, outer.series(), schwarz_series(w, 12), std::nullopt);
                const auto F = solve_F_from_subordination(pp, kind, rhs, 12);
                CHECK(F[0] == cplx(0.0));
                CHECK(F[1] == cplx(1.0));
                CHECK(max_abs_diff(lhs_functional(F, pp, kind), rhs.truncated(11)) < 1e-10);
                const auto f = from_family_E(F);
                const auto r = recover_coeffs_numeric(pp, kind, outer, w);
                CHECK(close(f[2], r.a2, 1e-11));
                CHECK(close(f[3], r.a3, 1e-11));
            }
        }
    }
    CHECK_THROWS_AS((void)solve_F_from_subordination(p, ClassKind::StarlikeSub, TruncatedSeries{2.0, 1.0}),
                    DomainError);
}

TEST_CASE("Fekete-Szego functional")
{
    CHECK(fekete_szego({0.0, cplx(3.0, 4.0)}, 2.0) == 5.0);
    CHECK(fekete_szego({cplx(1.0, 1.0), cplx(3.0, 4.0)}, 0.0) == 5.0);
    CHECK(fekete_szego({2.0, 5.0}, 1.0) == 1.0);

    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = random_draw(rng);
        const auto outer = OuterTarget::from_coeffs(d.p1, d.p2);
        const auto w = schwarz_series(d.w, 4);
        for (auto kind : {ClassKind::StarlikeSub, ClassKind::ConvexSub}) {
            const auto r = recover_coeffs_numeric(d.params, kind, outer, d.w);
            const auto dec = fs_decomposition(d.params, kind, d.p1, d.p2, d.mu);
            const double lhs = fekete_szego(r, d.mu);
            const double rhs = std::abs(dec.prefactor) * std::abs(w[2] - dec.t * w[1] * w[1]);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + rhs));
        }
        const auto dec = fs_decomposition(d.params, ClassKind::StarlikeSub, d.p1, d.p2, d.mu);
        const auto& pr = d.params;
        CHECK(close(dec.prefactor, 10.0 * pr.b() * d.p1 / (pr.rho() * pr.theta3()), 1e-14));
    }
}

TEST_CASE("engine t at the anchor configuration")
{
    const ClassParams p(0.0, 0.5, 1.0);
    for (double mu : {-1.0, 0.0, 0.5, 10.0 / 9.0, 2.0}) {
        const auto dec = fs_decomposition(p, ClassKind::StarlikeSub, 2.0, 2.0, mu);
        CHECK(std::abs(dec.t - (5.4 * mu - 5.0)) < 1e-13);
        CHECK(std::abs(dec.prefactor - 80.0 / 3.0) < 1e-13);
    }
    CHECK(std::abs(fs_decomposition(p, ClassKind::StarlikeSub, 2.0, 2.0, 25.0 / 27.0).t) < 1e-14);
}
