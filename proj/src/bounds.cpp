#include "erfq/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "erfq/errors.hpp"

namespace erfq {

namespace {

bool nearly_real(cplx v) { return std::abs(v.imag()) <= kRealTol * (1.0 + std::abs(v)); }

ClassKind sub_kind(ClassKind kind)
{
    return is_convex(kind) ? ClassKind::ConvexSub : ClassKind::StarlikeSub;
}

// Fills the engine crossings; t is affine in mu.
void fill_engine_crossings(Thresholds& th, const ClassParams& params, ClassKind kind, double p1, double p2)
{
    const cplx t0 = fs_decomposition(params, kind, p1, p2, 0.0).t;
    const cplx slope = fs_decomposition(params, kind, p1, p2, 1.0).t - t0;
    th.lower = (-1.0 - t0) / slope;
    th.zero = -t0 / slope;
    th.upper = (1.0 - t0) / slope;
    th.real = nearly_real(th.sigma1) && nearly_real(th.sigma2) && nearly_real(th.sigma3) && nearly_real(th.lower) &&
              nearly_real(th.zero) && nearly_real(th.upper);
}

Regime classify(const Thresholds& th, cplx mu)
{
    if (!th.real || !nearly_real(mu))
        return Regime::ComplexMu;
    const double lo = std::min(th.lower.real(), th.upper.real());
    const double hi = std::max(th.lower.real(), th.upper.real());
    if (mu.real() < lo - kThresholdSlack)
        return Regime::Below;
    if (mu.real() > hi + kThresholdSlack)
        return Regime::Above;
    return Regime::Middle;
}

bool negative_real(cplx v) { return nearly_real(v) && v.real() < 0.0; }

PiecewiseBound piecewise(const ClassParams& params, ClassKind kind, const Thresholds& th, double p1, double p2,
                         cplx mu)
{
    PiecewiseBound out;
    const auto dec = fs_decomposition(params, kind, p1, p2, mu);
    out.t = dec.t;
    out.regime = classify(th, mu);
    out.value = std::abs(dec.prefactor) * (out.regime == Regime::ComplexMu ? lemma_bound_complex(dec.t)
                                                                           : std::max(1.0, std::abs(dec.t.real())));
    return out;
}

ImprovedSides improved(const ClassParams& params, ClassKind kind, double p1, double p2, cplx mu, cplx a2, cplx a3)
{
    const auto dec = fs_decomposition(params, kind, p1, p2, mu);
    if (!nearly_real(dec.t) || !(dec.t.real() > -1.0 && dec.t.real() < 1.0))
        throw RegimeError("improved inequality needs real t in (-1, 1)");
    const double t = dec.t.real();
    const double factor = t <= 0.0 ? 1.0 + t : 1.0 - t;
    return {std::abs(a3 - mu * a2 * a2) + improved_weight(params, kind, p1) * factor * std::norm(a2),
            std::abs(dec.prefactor)};
}

} // namespace

double lemma_bound(double t) noexcept
{
    if (t < -1.0)
        return -t;
    if (t > 1.0)
        return t;
    return 1.0;
}

double lemma_bound_complex(cplx t) noexcept { return std::max(1.0, std::abs(t)); }

double lemma_improved_check(cplx w1, cplx w2, double t)
{
    if (!(t > -1.0 && t < 1.0))
        throw RegimeError("improved lemma needs -1 < t < 1");
    const double factor = t <= 0.0 ? 1.0 + t : 1.0 - t;
    return std::abs(w2 - t * w1 * w1) + factor * std::norm(w1);
}

std::string to_string(Regime regime)
{
    switch (regime) {
    case Regime::Below: return "Below";
    case Regime::Middle: return "Middle";
    case Regime::Above: return "Above";
    case Regime::ComplexMu: return "ComplexMu";
    }
    return "unknown";
}

Thresholds thresholds_starlike(const ClassParams& params, double p1, double p2)
{
    if (!(p1 > 0.0))
        throw DomainError("p1 must be positive");
    const cplx b = params.b();
    const cplx rho = params.rho();
    const double t2 = params.theta2();
    const double t3 = params.theta3();
    const cplx den = 9.0 * t3 * b * p1 * p1;
    Thresholds th;
    th.sigma1 = (10.0 * (p1 + p2) * rho * t2 * t2 + 10.0 * t2 * b * p1 * p1) / den;
    th.sigma2 = (10.0 * (p1 - p2) * rho * t2 * t2 - 10.0 * t2 * b * p1 * p1) / den;
    th.sigma3 = (10.0 * rho * t2 * t2 * p2 + 10.0 * t2 * b * p1 * p1) / den;
    fill_engine_crossings(th, params, ClassKind::StarlikeSub, p1, p2);
    return th;
}

Thresholds thresholds_convex(const ClassParams& params, double p1, double p2)
{
    if (!(p1 > 0.0))
        throw DomainError("p1 must be positive");
    const cplx b = params.b();
    const cplx rho = params.rho();
    const double br2 = params.bracket2();
    const cplx c = 5.0 * br2 * br2 * rho / (9.0 * params.bracket3() * b * p1 * p1);
    const cplx shift = b * p1 * p1 / rho;
    Thresholds th;
    th.sigma1 = c * (p2 - p1 + shift);
    th.sigma2 = c * (p1 + p2 + shift);
    th.sigma3 = c * (p2 + shift);
    fill_engine_crossings(th, params, ClassKind::ConvexSub, p1, p2);
    return th;
}

PiecewiseBound fs_bound_starlike(const ClassParams& params, double p1, double p2, cplx mu)
{
    const auto th = thresholds_starlike(params, p1, p2);
    auto out = piecewise(params, ClassKind::StarlikeSub, th, p1, p2, mu);
    const cplx b = params.b();
    const cplx rho = params.rho();
    const double t2 = params.theta2();
    const double t3 = params.theta3();
    const cplx pre = 10.0 * b * p1 / (rho * t3);
    const cplx outer_bracket = p2 / p1 + (10.0 * t2 - 9.0 * mu * t3) / (rho * t2) * b * p1;
    switch (out.regime) {
    case Regime::Below: out.printed = pre * (p2 / p1 + (9.0 * mu * t3 - 10.0 * t2) / (10.0 * rho * t2 * t2) * b * p1); break;
    case Regime::Middle: out.printed = pre; break;
    case Regime::Above: out.printed = pre * outer_bracket; break;
    case Regime::ComplexMu: out.printed = pre * std::max(1.0, std::abs(outer_bracket)); break;
    }
    out.printed_negative = negative_real(out.printed);
    return out;
}

ConvexBound thresholds_and_bound_convex(const ClassParams& params, double p1, double p2, cplx mu)
{
    const auto th = thresholds_convex(params, p1, p2);
    auto out = piecewise(params, ClassKind::ConvexSub, th, p1, p2, mu);
    const cplx b = params.b();
    const cplx rho = params.rho();
    const double br2 = params.bracket2();
    const double br3 = params.bracket3();
    const cplx pre = 5.0 * b * p1 / (rho * br3);
    const cplx x = p2 / p1 + b * p1 / rho - 9.0 * mu * br3 * b * p1 / (5.0 * br2 * br2 * rho);
    switch (out.regime) {
    case Regime::Below: out.printed = pre * x; break;
    case Regime::Middle: out.printed = pre; break;
    case Regime::Above: out.printed = -pre * x; break;
    case Regime::ComplexMu: out.printed = pre * std::max(1.0, std::abs(x)); break;
    }
    out.printed_negative = negative_real(out.printed);
    return {th, out};
}

Thresholds thresholds_for(const ClassParams& params, ClassKind kind, double p1, double p2)
{
    return is_convex(kind) ? thresholds_convex(params, p1, p2) : thresholds_starlike(params, p1, p2);
}

PiecewiseBound fs_bound(const ClassParams& params, ClassKind kind, double p1, double p2, cplx mu)
{
    return is_convex(kind) ? thresholds_and_bound_convex(params, p1, p2, mu).bound
                           : fs_bound_starlike(params, p1, p2, mu);
}

double improved_weight(const ClassParams& params, ClassKind kind, double p1)
{
    const auto c = class_constants(params, sub_kind(kind));
    return std::abs(c.a3_scale * p1) / std::norm(c.a2_scale * p1);
}

ImprovedSides fs_improved_starlike(const ClassParams& params, double p1, double p2, cplx mu, cplx a2, cplx a3)
{
    return improved(params, ClassKind::StarlikeSub, p1, p2, mu, a2, a3);
}

ImprovedSides fs_improved_convex(const ClassParams& params, double p1, double p2, cplx mu, cplx a2, cplx a3)
{
    return improved(params, ClassKind::ConvexSub, p1, p2, mu, a2, a3);
}

namespace {

QuasiBounds derived_quasi(const ClassParams& params, ClassKind kind, double c1, double c2, cplx mu)
{
    if (!(c1 > 0.0))
        throw DomainError("c1 must be positive");
    const auto c = class_constants(params, sub_kind(kind));
    const double k = std::abs(c.a3_scale);
    QuasiBounds out;
    out.a2 = std::abs(c.a2_scale) * c1;
    out.a3 = k * (c1 + std::max(c1, std::abs(c.square_shift) * c1 * c1 + std::abs(c2)));
    out.fs = k * (c1 + std::max(c1, std::abs(fs_shift(params, sub_kind(kind), mu)) * c1 * c1 + std::abs(c2)));
    return out;
}

} // namespace

QuasiBounds quasi_bounds_starlike(const ClassParams& params, double c1, double c2, cplx mu)
{
    auto out = derived_quasi(params, ClassKind::StarlikeQuasi, c1, c2, mu);
    const cplx b = params.b();
    const cplx rho = params.rho();
    const double u2 = 1.0 - params.bracket2();
    const double t3 = params.bracket3() - 1.0;
    const double pre = 10.0 * std::abs(b) / (std::abs(rho) * t3);
    out.a2_printed = 3.0 * std::abs(b) * c1 / (std::abs(rho) * std::abs(u2));
    out.a3_printed = pre * (c1 + std::max(c1, std::abs(b * c1 * c1 / (rho * (params.bracket2() - 1.0))) + std::abs(c2)));
    const double inner = std::abs((10.0 * u2 + 9.0 * mu * b * t3) / (10.0 * rho * u2 * u2));
    out.fs_printed = pre * (c1 + std::max(c1, inner * std::abs(b) * c1 * c1 + std::abs(c2)));
    return out;
}

QuasiBounds quasi_bounds_convex(const ClassParams& params, double c1, double c2, cplx mu)
{
    auto out = derived_quasi(params, ClassKind::ConvexQuasi, c1, c2, mu);
    const cplx b = params.b();
    const cplx rho = params.rho();
    const double br2 = params.bracket2();
    const double pre = 5.0 * std::abs(b) / (std::abs(rho) * params.bracket3());
    out.a2_printed = 3.0 * std::abs(b) * c1 / (std::abs(rho) * br2);
    out.a3_printed = pre * (c1 + std::max(c1, std::abs(b * c1 * c1 / rho) + std::abs(c2)));
    const cplx r2 = rho * rho * br2 * br2;
    const double inner = std::abs((r2 + 9.0 * mu * b) / r2);
    out.fs_printed = pre * (c1 + std::max(c1, inner * std::abs(b) * c1 * c1 + std::abs(c2)));
    return out;
}

QuasiBounds quasi_bounds(const ClassParams& params, ClassKind kind, double c1, double c2, cplx mu)
{
    return is_convex(kind) ? quasi_bounds_convex(params, c1, c2, mu) : quasi_bounds_starlike(params, c1, c2, mu);
}

} // namespace erfq
