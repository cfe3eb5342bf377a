#include "erfq/coefficients.hpp"

#include <cmath>
#include <numbers>

#include "erfq/errors.hpp"

namespace erfq {

namespace {

constexpr double kMultiplierTol = 1e-14;

TruncatedSeries trial_F(cplx a2, cplx a3)
{
    return to_family_E(TruncatedSeries{0.0, 1.0, a2, a3});
}

} // namespace

bool is_convex(ClassKind kind) noexcept
{
    return kind == ClassKind::ConvexSub || kind == ClassKind::ConvexQuasi;
}

bool is_quasi(ClassKind kind) noexcept
{
    return kind == ClassKind::StarlikeQuasi || kind == ClassKind::ConvexQuasi;
}

std::string to_string(ClassKind kind)
{
    switch (kind) {
    case ClassKind::StarlikeSub: return "starlike-sub";
    case ClassKind::ConvexSub: return "convex-sub";
    case ClassKind::StarlikeQuasi: return "starlike-quasi";
    case ClassKind::ConvexQuasi: return "convex-quasi";
    }
    return "unknown";
}

ClassKind parse_class_kind(std::string_view text)
{
    for (auto kind : {ClassKind::StarlikeSub, ClassKind::ConvexSub, ClassKind::StarlikeQuasi, ClassKind::ConvexQuasi})
        if (text == to_string(kind))
            return kind;
    throw DomainError("unknown class kind '" + std::string(text) + "'");
}

std::string to_string(ConvexPrime prime)
{
    return prime == ConvexPrime::Ordinary ? "ordinary" : "q";
}

ConvexPrime parse_convex_prime(std::string_view text)
{
    if (text == "ordinary")
        return ConvexPrime::Ordinary;
    if (text == "q")
        return ConvexPrime::Q;
    throw DomainError("convex-prime must be 'ordinary' or 'q', got '" + std::string(text) + "'");
}

std::string to_string(CoeffSource source)
{
    return source == CoeffSource::ClosedForm ? "ClosedForm" : "SeriesSolve";
}

ClassParams::ClassParams(double beta, double q, cplx b, ConvexPrime prime)
    : beta_(beta), ctx_(q), b_(b), prime_(prime)
{
    if (!std::isfinite(beta) || !(std::abs(beta) < std::numbers::pi / 2))
        throw DomainError("beta must satisfy |beta| < pi/2");
    if (!std::isfinite(b.real()) || !std::isfinite(b.imag()) || std::abs(b) == 0.0)
        throw DomainError("b must be finite and nonzero");
    rho_ = cplx(1.0, std::tan(beta));
    if (!std::isfinite(rho_.imag()))
        throw DomainError("tan(beta) overflows");
    bracket2_ = q_bracket(ctx_, 2);
    bracket3_ = q_bracket(ctx_, 3);
}

TruncatedSeries lhs_functional(const TruncatedSeries& F, const ClassParams& params, ClassKind kind)
{
    if (F.order() < 1 || std::abs(F[0]) > 1e-14 || std::abs(F[1] - 1.0) > 1e-12)
        throw NotNormalized("lhs_functional expects F_0 = 0 and F_1 = 1");
    const auto& ctx = params.qctx();
    TruncatedSeries ratio;
    if (!is_convex(kind)) {
        const auto zdq = shift_up(q_derivative(F, ctx));
        ratio = div(shift_down(zdq), shift_down(F));
    } else {
        const auto dq = q_derivative(F, ctx);
        const auto zdq = shift_up(dq);
        const auto num = params.prime() == ConvexPrime::Ordinary ? derivative(zdq) : q_derivative(zdq, ctx);
        ratio = div(num, dq);
    }
    const cplx itan(0.0, std::tan(params.beta()));
    return add_constant(scale(add_constant(scale(ratio, params.rho()), -itan - 1.0), 1.0 / params.b()), 1.0);
}

TruncatedSeries class_rhs(ClassKind kind, const TruncatedSeries& outer, const TruncatedSeries& w,
                          const std::optional<TruncatedSeries>& phi)
{
    auto composed = compose(outer, w);
    if (!is_quasi(kind))
        return composed;
    if (!phi)
        return composed;
    return add_constant(mul(*phi, add_constant(composed, -1.0)), 1.0);
}

CoeffResult recover_coeffs_from_rhs(const ClassParams& params, ClassKind kind, const TruncatedSeries& rhs)
{
    if (rhs.order() < 2)
        throw DomainError("right-hand side needs order >= 2");
    // The z relation involves a2 only and the z^2 relation is affine in a3
    // once a2 is fixed, so two probes per step give intercept and slope.
    const auto base = lhs_functional(trial_F(0.0, 0.0), params, kind);
    const auto unit = lhs_functional(trial_F(1.0, 0.0), params, kind);
    const cplx m1 = unit[1] - base[1];
    if (std::abs(m1) < kMultiplierTol)
        throw SingularRelation("a2 multiplier vanishes");
    cplx a2 = (rhs[1] - base[1]) / m1;
    // one residual correction at the estimate; removes the rounding of the unit-step slope
    a2 += (rhs[1] - lhs_functional(trial_F(a2, 0.0), params, kind)[1]) / m1;

    const auto at0 = lhs_functional(trial_F(a2, 0.0), params, kind);
    const auto at1 = lhs_functional(trial_F(a2, 1.0), params, kind);
    const cplx m2 = at1[2] - at0[2];
    if (std::abs(m2) < kMultiplierTol)
        throw SingularRelation("a3 multiplier vanishes");
    cplx a3 = (rhs[2] - at0[2]) / m2;
    a3 += (rhs[2] - lhs_functional(trial_F(a2, a3), params, kind)[2]) / m2;
    return {a2, a3, CoeffSource::SeriesSolve};
}

CoeffResult recover_coeffs_numeric(const ClassParams& params, ClassKind kind, const OuterTarget& outer,
                                   const SchwarzSpec& w, const std::optional<PhiSpec>& phi, int order)
{
    check_schwarz_spec(w);
    std::optional<TruncatedSeries> phi_s;
    if (is_quasi(kind)) {
        if (phi) {
            check_phi_spec(*phi);
            phi_s = phi_series(*phi, order);
        } else {
            phi_s = TruncatedSeries::constant(1.0, order);
        }
    }
    const auto rhs = class_rhs(kind, outer.series().truncated(order), schwarz_series(w, order), phi_s);
    return recover_coeffs_from_rhs(params, kind, rhs);
}

TruncatedSeries solve_F_from_subordination(const ClassParams& params, ClassKind kind, const TruncatedSeries& rhs,
                                           int order)
{
    if (std::abs(rhs[0] - 1.0) > 1e-12)
        throw DomainError("right-hand side must have constant term 1");
    const int n = std::min(order, rhs.order() + 1);
    if (n < 1)
        throw DomainError("order must be >= 1");
    const auto& ctx = params.qctx();
    const cplx k = params.b() / params.rho();
    std::vector<cplx> sigma(static_cast<std::size_t>(n));
    sigma[0] = 1.0;
    for (int j = 1; j < n; ++j)
        sigma[j] = k * rhs[j];

    std::vector<cplx> F(static_cast<std::size_t>(n) + 1, 0.0);
    F[1] = 1.0;
    if (!is_convex(kind)) {
        for (int m = 2; m <= n; ++m) {
            const double mult = q_bracket(ctx, m) - 1.0;
            if (std::abs(mult) < kMultiplierTol)
                throw RecursionBreakdown("vanishing multiplier at order " + std::to_string(m));
            cplx acc = 0.0;
            for (int j = 1; j < m; ++j)
                acc += F[j] * sigma[m - j];
            F[m] = acc / mult;
        }
    } else {
        // g = D_q F with g_0 = 1; recursion from (z g)' = g T or D_q(z g) = g T.
        std::vector<cplx> g(static_cast<std::size_t>(n), 0.0);
        g[0] = 1.0;
        for (int j = 1; j < n; ++j) {
            const double mult =
                params.prime() == ConvexPrime::Ordinary ? static_cast<double>(j) : q_bracket(ctx, j + 1) - 1.0;
            if (std::abs(mult) < kMultiplierTol)
                throw RecursionBreakdown("vanishing multiplier at order " + std::to_string(j + 1));
            cplx acc = 0.0;
            for (int i = 0; i < j; ++i)
                acc += g[i] * sigma[j - i];
            g[j] = acc / mult;
            F[j + 1] = g[j] / q_bracket(ctx, j + 1);
        }
    }
    return TruncatedSeries(std::move(F));
}

ClassConstants class_constants(const ClassParams& params, ClassKind kind)
{
    const cplx b = params.b();
    const cplx rho = params.rho();
    const double t2 = params.theta2();
    const double t3 = params.theta3();
    if (!is_convex(kind))
        return {-3.0 * b / (rho * t2), 10.0 * b / (rho * t3), b / (rho * t2)};
    const double br2 = params.bracket2();
    const double br3 = params.bracket3();
    if (params.prime() == ConvexPrime::Ordinary)
        return {-3.0 * b / (rho * br2), 5.0 * b / (rho * br3), b / rho};
    return {-3.0 * b / (rho * br2 * t2), 10.0 * b / (rho * br3 * t3), b / (rho * t2)};
}

cplx fs_shift(const ClassParams& params, ClassKind kind, cplx mu)
{
    const auto c = class_constants(params, kind);
    return c.square_shift - mu * c.a2_scale * c.a2_scale / c.a3_scale;
}

FsDecomposition fs_decomposition(const ClassParams& params, ClassKind kind, double p1, double p2, cplx mu)
{
    if (!(p1 > 0.0))
        throw DomainError("p1 must be positive");
    const auto c = class_constants(params, kind);
    return {c.a3_scale * p1, -p2 / p1 - p1 * fs_shift(params, kind, mu)};
}

CoeffResult engine_closed_form(const ClassParams& params, ClassKind kind, double p1, double p2, cplx w1, cplx w2)
{
    const auto c = class_constants(params, kind);
    const cplx r1 = p1 * w1;
    const cplx r2 = p1 * w2 + p2 * w1 * w1;
    return {c.a2_scale * r1, c.a3_scale * (r2 + c.square_shift * r1 * r1), CoeffSource::ClosedForm};
}

CoeffResult engine_closed_form_quasi(const ClassParams& params, ClassKind kind, double c1, double c2, cplx d0, cplx d1,
                                     cplx w1, cplx w2)
{
    const auto c = class_constants(params, kind);
    const cplx r1 = c1 * d0 * w1;
    const cplx r2 = c1 * d1 * w1 + d0 * (c1 * w2 + c2 * w1 * w1);
    return {c.a2_scale * r1, c.a3_scale * (r2 + c.square_shift * r1 * r1), CoeffSource::ClosedForm};
}

CoeffResult closed_form_a2_a3_starlike(const ClassParams& params, double p1, double p2, cplx w1, cplx w2)
{
    const cplx b = params.b();
    const cplx rho = params.rho();
    const double one_minus_b2 = 1.0 - params.bracket2();
    const cplx a2 = 3.0 * b * p1 * w1 / (rho * one_minus_b2);
    const cplx a3 = 10.0 * b * p1 / ((params.bracket3() - 1.0) * rho) *
                    (w2 - (p2 / p1 + p1 * b / (rho * one_minus_b2)) * w1 * w1);
    return {a2, a3, CoeffSource::ClosedForm};
}

cplx printed_t_starlike(const ClassParams& params, double p1, double p2, cplx mu)
{
    const double u2 = 1.0 - params.bracket2();
    const double u3 = 1.0 - params.bracket3();
    return p2 / p1 + (10.0 * u2 - 9.0 * mu * u3) * params.b() * p1 / (10.0 * params.rho() * u2 * u2);
}

CoeffResult quasi_closed_form_a2_a3(const ClassParams& params, double c1, double c2, cplx d0, cplx d1, cplx w1,
                                    cplx w2)
{
    const cplx b = params.b();
    const cplx rho = params.rho();
    const double u2 = 1.0 - params.bracket2();
    const cplx a2 = 3.0 * b * c1 * d0 * w1 / (rho * u2);
    const cplx a3 = 10.0 * b / (rho * (params.bracket3() - 1.0)) *
                    (c1 * d1 * w1 + c1 * d0 * w2 + d0 * (c2 - b * c1 * c1 * d0 / (rho * u2)) * w1 * w1);
    return {a2, a3, CoeffSource::ClosedForm};
}

double fekete_szego(const CoeffResult& result, cplx mu)
{
    return std::abs(result.a3 - mu * result.a2 * result.a2);
}

} // namespace erfq
