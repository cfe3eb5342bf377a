#include "erfq/conic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "erfq/errors.hpp"

namespace erfq {

namespace {

constexpr double kPi = std::numbers::pi;

double agm(double a, double b) {
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return 0.5 * (a + b);
}

double complement_of(double t) { return std::sqrt((1.0 - t) * (1.0 + t)); }

double segment_distance(cplx p, cplx end) {
    const double len2 = std::norm(end);
    if (len2 == 0.0) return std::abs(p);
    const double s = std::clamp((p.real() * end.real() + p.imag() * end.imag()) / len2, 0.0, 1.0);
    return std::abs(p - s * end);
}

// (t, t') from y = log(t / t').
std::pair<double, double> modulus_from_log_ratio(double y) {
    const double t = 1.0 / std::sqrt(1.0 + std::exp(-2.0 * y));
    const double tc = 1.0 / std::sqrt(1.0 + std::exp(2.0 * y));
    return {t, tc};
}

} // namespace

double elliptic_K_complete_from_complement(double t_complement) {
    return kPi / (2.0 * agm(1.0, t_complement));
}

double elliptic_K_complete(double t) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("elliptic_K_complete: modulus must lie in (0,1)");
    return elliptic_K_complete_from_complement(complement_of(t));
}

namespace detail {

cplx carlson_rf(cplx x, cplx y, cplx z) {
    constexpr double kErrTol = 0.0008;
    for (int i = 0; i < 200; ++i) {
        const cplx sx = std::sqrt(x);
        const cplx sy = std::sqrt(y);
        const cplx sz = std::sqrt(z);
        const cplx lambda = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        const cplx mean = (x + y + z) / 3.0;
        const cplx dx = (mean - x) / mean;
        const cplx dy = (mean - y) / mean;
        const cplx dz = (mean - z) / mean;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < kErrTol) {
            const cplx e2 = dx * dy - dz * dz;
            const cplx e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(mean);
        }
    }
    throw Error("carlson_rf: no convergence");
}

cplx incomplete_first_kind(cplx omega, double t_complement) {
    if (omega == cplx{}) return {};
    const cplx w2 = omega * omega;
    const cplx x = 1.0 - w2;
    // 1 - t^2 w^2 written through t' so that t -> 1 loses nothing.
    const cplx y = x + t_complement * t_complement * w2;
    return omega * carlson_rf(x, y, cplx{1.0});
}

} // namespace detail

cplx elliptic_K_incomplete(cplx omega, double t) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("elliptic_K_incomplete: modulus must lie in (0,1)");
    const std::array<cplx, 4> branch_points{cplx{1.0}, cplx{-1.0}, cplx{1.0 / t}, cplx{-1.0 / t}};
    for (const cplx bp : branch_points) {
        if (segment_distance(bp, omega) < kBranchPointClearance) {
            throw BranchPointProximity("elliptic_K_incomplete: segment passes a branch point");
        }
    }
    // A real segment beyond 1 lies on the cut of the principal root.
    if (omega.imag() == 0.0 && std::abs(omega.real()) > 1.0) {
        throw BranchPointProximity("elliptic_K_incomplete: segment runs along a branch cut");
    }
    return detail::incomplete_first_kind(omega, complement_of(t));
}

double modulus_relation_k(double t, double t_complement) {
    // kappa'(t)/kappa(t) = AGM(1, t') / AGM(1, t)
    return std::cosh(0.25 * kPi * agm(1.0, t_complement) / agm(1.0, t));
}

double modulus_relation_k(double t) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("modulus_relation_k: modulus must lie in (0,1)");
    return modulus_relation_k(t, complement_of(t));
}

EllipticModulusSolution solve_modulus_t(double k) {
    if (!(k > 1.0) || !std::isfinite(k)) throw DomainError("solve_modulus_t: requires k > 1");
    constexpr double kLo = -40.0;
    constexpr double kHi = 340.0;
    auto gap = [k](double y) {
        const auto [t, tc] = modulus_from_log_ratio(y);
        return modulus_relation_k(t, tc) - k;
    };

    // The relation is expected to decrease in t; check it on the bracket
    // before trusting bisection.
    constexpr int kProbes = 33;
    double prev = gap(kLo);
    for (int i = 1; i < kProbes; ++i) {
        const double cur = gap(kLo + (kHi - kLo) * i / (kProbes - 1));
        if (!(cur < prev)) throw BracketingFailure("solve_modulus_t: modulus relation not monotone on bracket");
        prev = cur;
    }
    double lo = kLo;
    double hi = kHi;
    if (!(gap(lo) > 0.0 && gap(hi) < 0.0)) {
        throw BracketingFailure("solve_modulus_t: no sign change on bracket");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) > 0.0 ? lo : hi) = mid;
    }
    const double y = 0.5 * (lo + hi);
    const auto [t, tc] = modulus_from_log_ratio(y);
    return {t, tc, std::abs(modulus_relation_k(t, tc) - k)};
}

ConicParams::ConicParams(double k, double alpha) : k_(k), alpha_(alpha) {
    if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError("conic parameter k must satisfy 0 <= k < inf");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("conic order alpha must lie in [0,1)");
    if (k == 0.0) {
        branch_ = ConicBranch::Disk;
    } else if (k < 1.0) {
        branch_ = ConicBranch::Hyperbolic;
        A_ = 2.0 / kPi * std::acos(k);
    } else if (k == 1.0) {
        branch_ = ConicBranch::Parabolic;
    } else {
        branch_ = ConicBranch::Elliptic;
        modulus_ = solve_modulus_t(k);
        const double t = modulus_->t;
        const double tc = modulus_->t_complement;
        s_ = 2.0 * std::sqrt(t) / (1.0 + t);
        // 1 - t = t'^2 / (1 + t)
        s_complement_ = tc * tc / ((1.0 + t) * (1.0 + t));
        kappa_s_ = elliptic_K_complete_from_complement(s_complement_);
    }
}

namespace {

// log((1 + sqrt z)/(1 - sqrt z)) = 2 artanh(sqrt z)
cplx log_ratio(cplx z) {
    const cplx s = std::sqrt(z);
    return std::log((1.0 + s) / (1.0 - s));
}

} // namespace

cplx eval_pk(const ConicParams& params, cplx z) {
    if (!(std::abs(z) < 1.0)) throw DomainError("eval_pk: requires |z| < 1");
    const double a = params.alpha();
    const double k = params.k();
    switch (params.branch()) {
    case ConicBranch::Disk:
        return (1.0 + (1.0 - 2.0 * a) * z) / (1.0 - z);
    case ConicBranch::Parabolic: {
        const cplx l = log_ratio(z);
        return 1.0 + 2.0 * (1.0 - a) / (kPi * kPi) * l * l;
    }
    case ConicBranch::Hyperbolic: {
        // cos(A i L) = cosh(A L) = 1 + 2 sinh^2(A L / 2); avoids the
        // 1 - k^2 cancellation near k = 1.
        const cplx sh = std::sinh(0.5 * *params.A() * log_ratio(z));
        return 1.0 + 2.0 * (1.0 - a) * sh * sh / ((1.0 - k) * (1.0 + k));
    }
    case ConicBranch::Elliptic: {
        const double s = params.landen_s();
        const cplx omega = std::sqrt(z) / std::sqrt(s);
        const cplx arg = kPi / (2.0 * params.landen_kappa()) *
                         detail::incomplete_first_kind(omega, params.landen_s_complement());
        const cplx sn = std::sin(arg);
        return 1.0 + 2.0 * (1.0 - a) / ((k - 1.0) * (k + 1.0)) * sn * sn;
    }
    }
    return {};
}

cplx eval_pk_printed_elliptic(const ConicParams& params, cplx z) {
    if (params.branch() != ConicBranch::Elliptic) throw DomainError("printed elliptic form needs k > 1");
    if (!(std::abs(z) < 1.0)) throw DomainError("eval_pk_printed_elliptic: requires |z| < 1");
    const double k = params.k();
    const double a = params.alpha();
    const auto& m = *params.modulus();
    const cplx omega = std::sqrt(z) / std::sqrt(m.t);
    const cplx arg = kPi / (2.0 * elliptic_K_complete_from_complement(m.t_complement)) *
                     detail::incomplete_first_kind(omega, m.t_complement);
    const cplx sn = std::sin(arg);
    return (1.0 - a) / (k * k - 1.0) * sn * sn + (k * k - a) / (k * k - 1.0);
}

TruncatedSeries pk_taylor(const ConicParams& params, int order, Exec exec) {
    if (order < 2) throw DomainError("pk_taylor: order must be at least 2");
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
    if (params.branch() == ConicBranch::Disk) {
        c[0] = 1.0;
        for (int n = 1; n <= order; ++n) c[static_cast<std::size_t>(n)] = 2.0 * (1.0 - params.alpha());
        return TruncatedSeries(std::move(c));
    }
    const TruncatedSeries raw = coefficients_via_cauchy([&params](cplx z) { return eval_pk(params, z); }, order,
                                                        kCauchyRadius, kCauchySamples, exec);
    for (int n = 0; n <= order; ++n) {
        if (std::abs(raw[n].imag()) > 1e-9) {
            throw Error("pk_taylor: imaginary residue above 1e-9 in coefficient " + std::to_string(n));
        }
        c[static_cast<std::size_t>(n)] = raw[n].real();
    }
    return TruncatedSeries(std::move(c));
}

bool in_conic_domain(cplx w, double k, double alpha) {
    const double u = w.real();
    const double v = w.imag();
    return (u - alpha) * (u - alpha) > k * k * (u - 1.0) * (u - 1.0) + k * k * v * v;
}

} // namespace erfq
