#pragma once

// Operational form of the spirallike starlike/convex error-function classes:
// the defining functional, coefficient recovery by series solving, extremal
// members by coefficient recursion, and the closed forms they are checked
// against.

#include <optional>
#include <string>
#include <string_view>

#include "erfq/families.hpp"
#include "erfq/series.hpp"

namespace erfq {

enum class ClassKind { StarlikeSub, ConvexSub, StarlikeQuasi, ConvexQuasi };

/// Reading of the prime in (z D_q F)' for the convex kinds.
enum class ConvexPrime { Ordinary, Q };

[[nodiscard]] bool is_convex(ClassKind kind) noexcept;
[[nodiscard]] bool is_quasi(ClassKind kind) noexcept;
[[nodiscard]] std::string to_string(ClassKind kind);
/// "starlike-sub", "convex-sub", "starlike-quasi", "convex-quasi"; DomainError otherwise.
[[nodiscard]] ClassKind parse_class_kind(std::string_view text);
[[nodiscard]] std::string to_string(ConvexPrime prime);
[[nodiscard]] ConvexPrime parse_convex_prime(std::string_view text);

class ClassParams {
public:
    /// |beta| < pi/2, 0 < q < 1, b != 0; DomainError otherwise.
    ClassParams(double beta, double q, cplx b, ConvexPrime prime = ConvexPrime::Ordinary);

    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] double q() const noexcept { return ctx_.q(); }
    [[nodiscard]] cplx b() const noexcept { return b_; }
    [[nodiscard]] ConvexPrime prime() const noexcept { return prime_; }
    [[nodiscard]] const QBracketContext& qctx() const noexcept { return ctx_; }

    /// 1 + i tan(beta)
    [[nodiscard]] cplx rho() const noexcept { return rho_; }
    [[nodiscard]] double bracket2() const noexcept { return bracket2_; }
    [[nodiscard]] double bracket3() const noexcept { return bracket3_; }
    /// [2]_q - 1 (= q)
    [[nodiscard]] double theta2() const noexcept { return bracket2_ - 1.0; }
    /// [3]_q - 1 (= q + q^2)
    [[nodiscard]] double theta3() const noexcept { return bracket3_ - 1.0; }

private:
    double beta_;
    QBracketContext ctx_;
    cplx b_;
    ConvexPrime prime_;
    cplx rho_;
    double bracket2_;
    double bracket3_;
};

enum class CoeffSource { ClosedForm, SeriesSolve };
[[nodiscard]] std::string to_string(CoeffSource source);

struct CoeffResult {
    cplx a2;
    cplx a3;
    CoeffSource source = CoeffSource::SeriesSolve;
};

/// 1 + (1/b)((1 + i tan beta) Q(z) - i tan beta - 1), with Q = z D_q F / F for
/// starlike kinds and (z D_q F)' / D_q F for convex kinds. Result order N-1.
[[nodiscard]] TruncatedSeries lhs_functional(const TruncatedSeries& F, const ClassParams& params, ClassKind kind);

/// Right-hand side the functional is matched against: outer(w(z)) for the
/// subordination kinds, 1 + phi(z)(outer(w(z)) - 1) for the quasi kinds.
[[nodiscard]] TruncatedSeries class_rhs(ClassKind kind, const TruncatedSeries& outer, const TruncatedSeries& w,
                                        const std::optional<TruncatedSeries>& phi);

/// a2 from the z relation, then a3 from the z^2 relation, by matching
/// lhs_functional(f * Erf) to rhs. Throws SingularRelation on a vanishing multiplier.
[[nodiscard]] CoeffResult recover_coeffs_from_rhs(const ClassParams& params, ClassKind kind,
                                                  const TruncatedSeries& rhs);

/// Builds the right-hand side from (outer, w, phi) and recovers a2, a3.
/// phi is ignored for subordination kinds and defaults to 1 for quasi kinds.
[[nodiscard]] CoeffResult recover_coeffs_numeric(const ClassParams& params, ClassKind kind, const OuterTarget& outer,
                                                 const SchwarzSpec& w, const std::optional<PhiSpec>& phi = {},
                                                 int order = kDefaultOrder);

/// The normalized F (F_0 = 0, F_1 = 1) with lhs_functional(F) = rhs through
/// order N-1, by coefficient recursion. rhs_0 must be 1.
[[nodiscard]] TruncatedSeries solve_F_from_subordination(const ClassParams& params, ClassKind kind,
                                                         const TruncatedSeries& rhs, int order = kDefaultOrder);

/// Engine-derived constants: with r1, r2 the z and z^2 coefficients of the
/// right-hand side, a2 = a2_scale r1 and a3 = a3_scale (r2 + square_shift r1^2).
struct ClassConstants {
    cplx a2_scale;
    cplx a3_scale;
    cplx square_shift;
};
[[nodiscard]] ClassConstants class_constants(const ClassParams& params, ClassKind kind);

/// a3 - mu a2^2 = a3_scale (r2 + fs_shift(mu) r1^2).
[[nodiscard]] cplx fs_shift(const ClassParams& params, ClassKind kind, cplx mu);

/// For subordination to 1 + p1 z + p2 z^2 + ...: a3 - mu a2^2 = prefactor (w2 - t w1^2).
struct FsDecomposition {
    cplx prefactor;
    cplx t;
};
[[nodiscard]] FsDecomposition fs_decomposition(const ClassParams& params, ClassKind kind, double p1, double p2,
                                               cplx mu);

/// a2, a3 from the engine constants for subordination data (p1, p2, w1, w2).
[[nodiscard]] CoeffResult engine_closed_form(const ClassParams& params, ClassKind kind, double p1, double p2, cplx w1,
                                             cplx w2);
/// Quasi data: r1 = c1 d0 w1, r2 = c1 d1 w1 + d0 (c1 w2 + c2 w1^2).
[[nodiscard]] CoeffResult engine_closed_form_quasi(const ClassParams& params, ClassKind kind, double c1, double c2,
                                                   cplx d0, cplx d1, cplx w1, cplx w2);

/// Starlike a2, a3 exactly as printed: a2 = 3 b p1 w1 / (rho (1 - [2]_q)),
/// a3 = 10 b p1 / (([3]_q - 1) rho) (w2 - (p2/p1 + p1 b / (rho (1 - [2]_q))) w1^2).
[[nodiscard]] CoeffResult closed_form_a2_a3_starlike(const ClassParams& params, double p1, double p2, cplx w1,
                                                     cplx w2);

/// Starlike t as printed:
/// p2/p1 + (10 (1 - [2]_q) - 9 mu (1 - [3]_q)) b p1 / (10 rho (1 - [2]_q)^2).
[[nodiscard]] cplx printed_t_starlike(const ClassParams& params, double p1, double p2, cplx mu);

/// Starlike quasi-subordination a2, a3 as printed in the proof displays.
[[nodiscard]] CoeffResult quasi_closed_form_a2_a3(const ClassParams& params, double c1, double c2, cplx d0, cplx d1,
                                                  cplx w1, cplx w2);

/// |a3 - mu a2^2|
[[nodiscard]] double fekete_szego(const CoeffResult& result, cplx mu);

} // namespace erfq
