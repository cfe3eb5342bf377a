#pragma once

// Closed-form coefficient bounds: the Schwarz-function lemma, the piecewise
// Fekete-Szego bounds of the starlike and convex classes, and the
// quasi-subordination bounds.
//
// Bound values follow the modulus convention: moduli of the printed complex
// prefactors times the lemma value of the engine-derived t. The raw printed
// expressions are carried alongside for reconciliation.

#include <string>

#include "erfq/coefficients.hpp"

namespace erfq {

/// max(1, |t|) written piecewise: -t below -1, 1 on [-1, 1], t above 1.
[[nodiscard]] double lemma_bound(double t) noexcept;
[[nodiscard]] double lemma_bound_complex(cplx t) noexcept;

/// |w2 - t w1^2| + (1 + t)|w1|^2 for t <= 0, |w2 - t w1^2| + (1 - t)|w1|^2 for t > 0.
/// Throws RegimeError unless -1 < t < 1.
[[nodiscard]] double lemma_improved_check(cplx w1, cplx w2, double t);

inline constexpr double kRealTol = 1e-10;
inline constexpr double kThresholdSlack = 1e-12;

struct Thresholds {
    // As printed.
    cplx sigma1;
    cplx sigma2;
    cplx sigma3;
    // mu where the engine t crosses -1, 0 and +1.
    cplx lower;
    cplx zero;
    cplx upper;
    /// all six real within kRealTol
    bool real = false;
};

[[nodiscard]] Thresholds thresholds_starlike(const ClassParams& params, double p1, double p2);
[[nodiscard]] Thresholds thresholds_convex(const ClassParams& params, double p1, double p2);

enum class Regime { Below, Middle, Above, ComplexMu };
[[nodiscard]] std::string to_string(Regime regime);

struct PiecewiseBound {
    double value = 0.0;
    Regime regime = Regime::ComplexMu;
    cplx t;            // engine t at this mu
    cplx printed;      // the printed branch expression, unsigned and unmodulated
    bool printed_negative = false;
};

[[nodiscard]] PiecewiseBound fs_bound_starlike(const ClassParams& params, double p1, double p2, cplx mu);

struct ConvexBound {
    Thresholds thresholds;
    PiecewiseBound bound;
};
[[nodiscard]] ConvexBound thresholds_and_bound_convex(const ClassParams& params, double p1, double p2, cplx mu);

/// Dispatch on a subordination kind (quasi kinds map to their subordination analog).
[[nodiscard]] Thresholds thresholds_for(const ClassParams& params, ClassKind kind, double p1, double p2);
[[nodiscard]] PiecewiseBound fs_bound(const ClassParams& params, ClassKind kind, double p1, double p2, cplx mu);

struct ImprovedSides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// |a3 - mu a2^2| + C (1 -+ t)|a2|^2 against |prefactor|, C = |prefactor| / |a2 multiplier|^2.
/// Throws RegimeError unless the engine t is real and -1 < t < 1.
[[nodiscard]] ImprovedSides fs_improved_starlike(const ClassParams& params, double p1, double p2, cplx mu, cplx a2,
                                                 cplx a3);
[[nodiscard]] ImprovedSides fs_improved_convex(const ClassParams& params, double p1, double p2, cplx mu, cplx a2,
                                               cplx a3);
/// The |a2|^2 weight C of the improved inequality before the (1 -+ t) factor.
[[nodiscard]] double improved_weight(const ClassParams& params, ClassKind kind, double p1);

struct QuasiBounds {
    double a2 = 0.0;
    double a3 = 0.0;
    double fs = 0.0;
    // printed displays with moduli applied
    double a2_printed = 0.0;
    double a3_printed = 0.0;
    double fs_printed = 0.0;
};

[[nodiscard]] QuasiBounds quasi_bounds_starlike(const ClassParams& params, double c1, double c2, cplx mu);
[[nodiscard]] QuasiBounds quasi_bounds_convex(const ClassParams& params, double c1, double c2, cplx mu);
[[nodiscard]] QuasiBounds quasi_bounds(const ClassParams& params, ClassKind kind, double c1, double c2, cplx mu);

} // namespace erfq
