#pragma once

// Conic-domain mapping functions p_{k,alpha} and the Legendre elliptic
// integrals the k > 1 branch needs.

#include <optional>

#include "erfq/series.hpp"

namespace erfq {

inline constexpr double kCauchyRadius = 0.5;
inline constexpr int kCauchySamples = 256;
inline constexpr double kBranchPointClearance = 1e-6;

/// Complete integral kappa(t) = K(1,t), modulus t in (0,1). AGM based.
[[nodiscard]] double elliptic_K_complete(double t);

/// kappa as a function of the complementary modulus t' = sqrt(1 - t^2).
/// Keeps full precision when t is within rounding of 1.
[[nodiscard]] double elliptic_K_complete_from_complement(double t_complement);

/// K(omega, t) = int_0^omega dx / (sqrt(1-x^2) sqrt(1-t^2 x^2)) along the
/// straight segment, principal branches. Throws BranchPointProximity when the
/// segment passes within kBranchPointClearance of +-1 or +-1/t.
[[nodiscard]] cplx elliptic_K_incomplete(cplx omega, double t);

struct EllipticModulusSolution {
    double t = 0.0;
    double t_complement = 1.0; // sqrt(1 - t^2), carried separately for t -> 1
    double residual = 0.0;     // |cosh(pi kappa'(t) / (4 kappa(t))) - k|
};

/// cosh(pi kappa'(t) / (4 kappa(t))), the cone parameter tied to modulus t.
[[nodiscard]] double modulus_relation_k(double t, double t_complement);
[[nodiscard]] double modulus_relation_k(double t);

/// Solves k = cosh(pi kappa'(t) / (4 kappa(t))) for t, k > 1.
/// Bisection in y = log(t / t'); the map is checked to be monotone on the
/// bracket and BracketingFailure is thrown otherwise.
[[nodiscard]] EllipticModulusSolution solve_modulus_t(double k);

enum class ConicBranch { Disk, Hyperbolic, Parabolic, Elliptic };

class ConicParams {
public:
    /// 0 <= k < inf, 0 <= alpha < 1; DomainError otherwise.
    ConicParams(double k, double alpha);

    [[nodiscard]] double k() const noexcept { return k_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] ConicBranch branch() const noexcept { return branch_; }
    /// (2/pi) arccos k, present for 0 < k < 1.
    [[nodiscard]] std::optional<double> A() const noexcept { return A_; }
    /// Elliptic modulus, present for k > 1.
    [[nodiscard]] const std::optional<EllipticModulusSolution>& modulus() const noexcept { return modulus_; }

    // Ascending Landen transform s = 2 sqrt(t)/(1+t) of the modulus and its
    // complement; the sin^2 / sqrt(z) representation of the elliptic branch
    // runs on s.
    [[nodiscard]] double landen_s() const noexcept { return s_; }
    [[nodiscard]] double landen_s_complement() const noexcept { return s_complement_; }
    [[nodiscard]] double landen_kappa() const noexcept { return kappa_s_; }

private:
    double k_;
    double alpha_;
    ConicBranch branch_;
    std::optional<double> A_;
    std::optional<EllipticModulusSolution> modulus_;
    double s_ = 0.0;
    double s_complement_ = 1.0;
    double kappa_s_ = 0.0;
};

/// p_{k,alpha}(z) for |z| < 1 (DomainError otherwise). p(0) = 1 in every branch.
[[nodiscard]] cplx eval_pk(const ConicParams& params, cplx z);

/// The k > 1 branch exactly as printed, sin^2 over K(sqrt z / sqrt t, t)
/// with additive constant (k^2 - alpha)/(k^2 - 1). It is not normalized
/// (value at 0 is (k^2-alpha)/(k^2-1)); kept only for reconciliation reports.
[[nodiscard]] cplx eval_pk_printed_elliptic(const ConicParams& params, cplx z);

/// Taylor coefficients 1, p_1, ..., p_N (real). Closed form for k = 0,
/// discrete Cauchy extraction at radius 0.5 with 256 samples otherwise.
[[nodiscard]] TruncatedSeries pk_taylor(const ConicParams& params, int order = kDefaultOrder,
                                        Exec exec = Exec::Parallel);

/// Literal test (u - alpha)^2 > k^2 (u - 1)^2 + k^2 v^2 with w = u + iv.
[[nodiscard]] bool in_conic_domain(cplx w, double k, double alpha);

namespace detail {
/// Carlson R_F(x, y, z) for complex arguments off the negative real axis.
[[nodiscard]] cplx carlson_rf(cplx x, cplx y, cplx z);
/// K(omega, t) with the modulus given through t' = sqrt(1 - t^2); no
/// branch-proximity check. Real omega beyond 1 takes the upper-side limit.
[[nodiscard]] cplx incomplete_first_kind(cplx omega, double t_complement);
} // namespace detail

} // namespace erfq
