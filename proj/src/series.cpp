#include "erfq/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "erfq/errors.hpp"
#include "erfq/kernels.hpp"

namespace erfq {

TruncatedSeries::TruncatedSeries(int order) {
    if (order < 0) throw DomainError("series order must be non-negative");
    c_.assign(static_cast<std::size_t>(order) + 1, cplx{});
}

TruncatedSeries::TruncatedSeries(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw DomainError("series needs at least one coefficient");
}

TruncatedSeries::TruncatedSeries(std::initializer_list<cplx> coeffs)
    : TruncatedSeries(std::vector<cplx>(coeffs)) {}

TruncatedSeries TruncatedSeries::constant(cplx value, int order) {
    TruncatedSeries s(order);
    s.c_[0] = value;
    return s;
}

TruncatedSeries TruncatedSeries::monomial(int power, int order, cplx scale) {
    TruncatedSeries s(order);
    if (power >= 0 && power <= order) s.c_[static_cast<std::size_t>(power)] = scale;
    return s;
}

TruncatedSeries TruncatedSeries::geometric(int order) {
    return TruncatedSeries(std::vector<cplx>(static_cast<std::size_t>(order) + 1, cplx{1.0}));
}

cplx TruncatedSeries::coeff(int k) const noexcept {
    if (k < 0 || k > order()) return {};
    return c_[static_cast<std::size_t>(k)];
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1, cplx{});
    for (int k = 0; k <= std::min(order, this->order()); ++k) c[static_cast<std::size_t>(k)] = coeff(k);
    return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::with_coeff(int k, cplx value) const {
    TruncatedSeries s = *this;
    if (k >= 0 && k <= order()) s.c_[static_cast<std::size_t>(k)] = value;
    return s;
}

QBracketContext::QBracketContext(double q) : q_(q) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("q must lie in the open interval (0,1)");
}

double q_bracket(const QBracketContext& ctx, int n) {
    if (n <= 0) return 0.0;
    // (1 - q^n)/(1 - q) without cancellation for q close to 1.
    return -std::expm1(n * std::log(ctx.q())) / (1.0 - ctx.q());
}

namespace {

template <class Op>
TruncatedSeries zip(const TruncatedSeries& a, const TruncatedSeries& b, Op op) {
    const int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = op(a[k], b[k]);
    return TruncatedSeries(std::move(c));
}

} // namespace

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
    return zip(a, b, [](cplx x, cplx y) { return x + y; });
}

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    return zip(a, b, [](cplx x, cplx y) { return x - y; });
}

TruncatedSeries hadamard(const TruncatedSeries& a, const TruncatedSeries& b) {
    return zip(a, b, [](cplx x, cplx y) { return x * y; });
}

TruncatedSeries scale(const TruncatedSeries& a, cplx s) {
    std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
    for (auto& x : c) x *= s;
    return TruncatedSeries(std::move(c));
}

TruncatedSeries add_constant(const TruncatedSeries& a, cplx s) {
    return a.with_coeff(0, a[0] + s);
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        cplx acc{};
        for (int j = 0; j <= k; ++j) acc += a[j] * b[k - j];
        c[static_cast<std::size_t>(k)] = acc;
    }
    return TruncatedSeries(std::move(c));
}

TruncatedSeries div(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (std::abs(b[0]) < kDivisionPivotTol) {
        throw NearZeroConstantTerm("series division: |b_0| below pivot tolerance");
    }
    const int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        cplx acc = a[k];
        for (int j = 0; j < k; ++j) acc -= c[static_cast<std::size_t>(j)] * b[k - j];
        c[static_cast<std::size_t>(k)] = acc / b[0];
    }
    return TruncatedSeries(std::move(c));
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
    if (inner[0] != cplx{}) throw NonVanishingInner("compose: inner series must vanish at 0");
    const int n = std::min(outer.order(), inner.order());
    // Horner in the series ring: ((o_N w + o_{N-1}) w + ...) + o_0.
    TruncatedSeries acc = TruncatedSeries::constant(outer[n], n);
    const TruncatedSeries w = inner.truncated(n);
    for (int k = n - 1; k >= 0; --k) {
        acc = add_constant(mul(acc, w), outer[k]);
    }
    return acc;
}

TruncatedSeries derivative(const TruncatedSeries& a) {
    const int n = std::max(a.order() - 1, 0);
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = static_cast<double>(k + 1) * a[k + 1];
    return TruncatedSeries(std::move(c));
}

TruncatedSeries q_derivative(const TruncatedSeries& a, const QBracketContext& ctx) {
    const int n = std::max(a.order() - 1, 0);
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = q_bracket(ctx, k + 1) * a[k + 1];
    return TruncatedSeries(std::move(c));
}

TruncatedSeries q_integral(const TruncatedSeries& a, const QBracketContext& ctx) {
    const int n = a.order();
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m + 1 <= n; ++m) c[static_cast<std::size_t>(m) + 1] = a[m] / q_bracket(ctx, m + 1);
    return TruncatedSeries(std::move(c));
}

TruncatedSeries shift_up(const TruncatedSeries& a) {
    std::vector<cplx> c(static_cast<std::size_t>(a.order()) + 2);
    for (int k = 0; k <= a.order(); ++k) c[static_cast<std::size_t>(k) + 1] = a[k];
    return TruncatedSeries(std::move(c));
}

TruncatedSeries shift_down(const TruncatedSeries& a) {
    if (a[0] != cplx{}) throw NotNormalized("shift_down: constant term must vanish");
    const int n = std::max(a.order() - 1, 0);
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = a[k + 1];
    return TruncatedSeries(std::move(c));
}

cplx eval(const TruncatedSeries& a, cplx z) {
    cplx acc{};
    for (int k = a.order(); k >= 0; --k) acc = acc * z + a[k];
    return acc;
}

double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
    double m = 0.0;
    for (int k = 0; k <= std::max(a.order(), b.order()); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

TruncatedSeries coefficients_via_cauchy(const DiskFunction& f, int order, double r, int samples, Exec exec) {
    if (order < 0) throw DomainError("coefficients_via_cauchy: order must be non-negative");
    if (!(r > 0.0 && r < 1.0)) throw DomainError("coefficients_via_cauchy: radius must lie in (0,1)");
    const int m = samples > 0 ? samples : std::max(256, 4 * (order + 1));
    if (m < 4 * (order + 1)) throw DomainError("coefficients_via_cauchy: need at least 4(N+1) samples");

    const std::vector<cplx> values = kernels::sample_circle(exec, f, r, m);
    const double step = 2.0 * std::numbers::pi / m;
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) {
        cplx acc{};
        for (int j = 0; j < m; ++j) {
            // Reduce the phase index mod M so the twiddle angle stays small.
            const long long idx = (static_cast<long long>(j) * k) % m;
            acc += values[static_cast<std::size_t>(j)] * std::polar(1.0, -step * static_cast<double>(idx));
        }
        c[static_cast<std::size_t>(k)] = acc / (static_cast<double>(m) * std::pow(r, k));
    }
    return TruncatedSeries(std::move(c));
}

} // namespace erfq
