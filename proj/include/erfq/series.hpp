#pragma once

// Truncated complex power series and the Jackson q-operators.
//
// A TruncatedSeries holds c_0..c_N. Every binary operation truncates to the
// smaller of the two orders; nothing beyond order N is ever invented.

#include <complex>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace erfq {

using cplx = std::complex<double>;

inline constexpr int kDefaultOrder = 12;
inline constexpr double kDivisionPivotTol = 1e-12;

class TruncatedSeries {
public:
    /// Zero series of the given order.
    explicit TruncatedSeries(int order = kDefaultOrder);
    explicit TruncatedSeries(std::vector<cplx> coeffs);
    TruncatedSeries(std::initializer_list<cplx> coeffs);

    static TruncatedSeries constant(cplx value, int order = kDefaultOrder);
    static TruncatedSeries monomial(int power, int order = kDefaultOrder, cplx scale = 1.0);
    /// 1 + z + z^2 + ... + z^N
    static TruncatedSeries geometric(int order = kDefaultOrder);

    [[nodiscard]] int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    /// Coefficient k, or zero when k lies above the truncation order.
    [[nodiscard]] cplx coeff(int k) const noexcept;
    [[nodiscard]] cplx operator[](int k) const noexcept { return coeff(k); }
    [[nodiscard]] std::span<const cplx> coeffs() const noexcept { return c_; }

    [[nodiscard]] TruncatedSeries truncated(int order) const;
    /// Same series with coefficient k replaced.
    [[nodiscard]] TruncatedSeries with_coeff(int k, cplx value) const;

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    std::vector<cplx> c_;
};

// Order-N context for [n]_q. Rejects q outside the open interval (0,1).
class QBracketContext {
public:
    explicit QBracketContext(double q);
    [[nodiscard]] double q() const noexcept { return q_; }

private:
    double q_;
};

/// (1 - q^n)/(1 - q); zero for n = 0.
[[nodiscard]] double q_bracket(const QBracketContext& ctx, int n);

[[nodiscard]] TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
[[nodiscard]] TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
[[nodiscard]] TruncatedSeries scale(const TruncatedSeries& a, cplx s);
[[nodiscard]] TruncatedSeries add_constant(const TruncatedSeries& a, cplx s);

/// Cauchy product truncated to min(order(a), order(b)).
[[nodiscard]] TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// a / b by order-by-order recursion. Throws NearZeroConstantTerm when
/// |b_0| < kDivisionPivotTol.
[[nodiscard]] TruncatedSeries div(const TruncatedSeries& a, const TruncatedSeries& b);

/// outer(inner(z)); requires inner_0 == 0 (NonVanishingInner otherwise).
[[nodiscard]] TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

/// Coefficientwise product, no renormalization.
[[nodiscard]] TruncatedSeries hadamard(const TruncatedSeries& a, const TruncatedSeries& b);

/// Ordinary derivative; result has order N-1.
[[nodiscard]] TruncatedSeries derivative(const TruncatedSeries& a);

/// Jackson derivative (f(z) - f(qz))/((1-q)z); coefficient k is [k+1]_q a_{k+1}.
[[nodiscard]] TruncatedSeries q_derivative(const TruncatedSeries& a, const QBracketContext& ctx);

/// Jackson integral from 0; coefficient m+1 is a_m/[m+1]_q. Keeps order N.
[[nodiscard]] TruncatedSeries q_integral(const TruncatedSeries& a, const QBracketContext& ctx);

/// z * a(z), order N+1.
[[nodiscard]] TruncatedSeries shift_up(const TruncatedSeries& a);
/// a(z) / z, order N-1. The constant term must vanish (NotNormalized otherwise).
[[nodiscard]] TruncatedSeries shift_down(const TruncatedSeries& a);

/// Horner evaluation. Intended for |z| < 1 but not enforced.
[[nodiscard]] cplx eval(const TruncatedSeries& a, cplx z);

[[nodiscard]] double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b);

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return add(a, b); }
inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return sub(a, b); }
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return mul(a, b); }
inline TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) { return div(a, b); }
inline TruncatedSeries operator*(cplx s, const TruncatedSeries& a) { return scale(a, s); }

using DiskFunction = std::function<cplx(cplx)>;

enum class Exec { Serial, Parallel };

/// Taylor coefficients of f through order N from M samples on |z| = r
/// (discrete Cauchy integral). M = 0 selects max(256, 4(N+1)).
/// f must be safe to call concurrently when exec is Parallel.
[[nodiscard]] TruncatedSeries coefficients_via_cauchy(const DiskFunction& f, int order, double r,
                                                      int samples = 0, Exec exec = Exec::Parallel);

} // namespace erfq
