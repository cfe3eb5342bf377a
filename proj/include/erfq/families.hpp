#pragma once

// Error-function series, the Hadamard family E, and the parametric inner
// (Schwarz) and scale (phi) functions fed to subordination.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "erfq/conic.hpp"
#include "erfq/series.hpp"

namespace erfq {

/// erf(z) = (2/sqrt(pi)) sum (-1)^n z^(2n+1) / ((2n+1) n!), through z^N.
[[nodiscard]] TruncatedSeries erf_series(int order);

/// z + sum_{n>=2} (-1)^(n-1) z^n / ((2n-1)(n-1)!).
[[nodiscard]] TruncatedSeries normalized_erf_series(int order);

/// Rebuilds the normalized series from an erf series by the sqrt(z)
/// substitution (sqrt(pi z)/2) erf(sqrt z): c_{n+1} = (sqrt(pi)/2) e_{2n+1}.
[[nodiscard]] TruncatedSeries recompose_normalized_erf(const TruncatedSeries& erf, int order);

/// (2n-1)(n-1)!, the denominator of the n-th normalized coefficient (n >= 1).
[[nodiscard]] std::uint64_t normalized_erf_denominator(int n);

/// F = f * Erf. Throws NotNormalized unless f_0 = 0 and f_1 = 1.
[[nodiscard]] TruncatedSeries to_family_E(const TruncatedSeries& f);
/// Inverse weighting a_n = F_n (-1)^(n-1) (2n-1)(n-1)!.
[[nodiscard]] TruncatedSeries from_family_E(const TruncatedSeries& F);

// --- Schwarz functions ---------------------------------------------------

struct Monomial {
    int power = 1;
};
/// z (lambda + z) / (1 + lambda z)
struct MobiusPlus {
    double lambda = 0.0;
};
/// -z (lambda + z) / (1 + lambda z)
struct MobiusMinus {
    double lambda = 0.0;
};
/// z * prod_j (z - a_j) / (1 - conj(a_j) z); at most two extra zeros (degree <= 3).
struct Blaschke {
    std::vector<cplx> zeros;
};
struct ExplicitSeries {
    TruncatedSeries series;
};

using SchwarzForm = std::variant<Monomial, MobiusPlus, MobiusMinus, Blaschke, ExplicitSeries>;

/// w_spec(z) = e^{i theta} w(e^{-i theta_inner} z).
struct SchwarzSpec {
    SchwarzForm form;
    double theta = 0.0;
    double theta_inner = 0.0;
    std::uint64_t seed = 0; // nonzero for sampled specs
};

[[nodiscard]] std::string variant_name(const SchwarzSpec& spec);

/// Throws InvalidSpec on out-of-range parameters (lambda outside [0,1],
/// power < 1, zeros outside the disk, degree > 3, explicit c_0 != 0).
void check_schwarz_spec(const SchwarzSpec& spec);

[[nodiscard]] TruncatedSeries schwarz_series(const SchwarzSpec& spec, int order = kDefaultOrder);
/// Closed-form evaluation (explicit specs evaluate their polynomial).
[[nodiscard]] cplx eval_schwarz(const SchwarzSpec& spec, cplx z);

inline constexpr double kBoundaryRadius = 0.999;
inline constexpr int kBoundaryGrid = 512;
inline constexpr double kBoundaryTol = 1e-9;

/// c_0 = 0 and max |w| over the 512-point circle of radius 0.999 <= 1 + 1e-9.
/// Applies to the polynomial as given, so a low-order truncation of a valid
/// Schwarz function may fail near the boundary.
[[nodiscard]] bool validate_schwarz(const TruncatedSeries& series);
/// Same grid test on the closed form of the spec.
[[nodiscard]] bool validate_schwarz(const SchwarzSpec& spec);

/// Random Blaschke spec (degree 1..3, zeros with modulus <= 0.95, random
/// rotations), fully determined by the seed.
[[nodiscard]] SchwarzSpec sample_schwarz(std::uint64_t seed);
/// Specs for indices 0..count-1, each from a seed derived from (seed, index).
[[nodiscard]] std::vector<SchwarzSpec> sample_schwarz_batch(std::uint64_t seed, std::size_t count,
                                                            Exec exec = Exec::Parallel);

// --- scale functions phi for quasi-subordination -------------------------

struct PhiConstant {
    cplx d0 = 1.0;
};
/// rho (a + e^{i psi} z) / (1 + conj(a) e^{i psi} z)
struct PhiMobius {
    cplx a = 0.0;
    double rho = 1.0;
    double psi = 0.0;
};
struct PhiExplicit {
    TruncatedSeries series;
};

using PhiForm = std::variant<PhiConstant, PhiMobius, PhiExplicit>;

struct PhiSpec {
    PhiForm form;
    std::uint64_t seed = 0;
};

[[nodiscard]] std::string variant_name(const PhiSpec& spec);
void check_phi_spec(const PhiSpec& spec);
[[nodiscard]] TruncatedSeries phi_series(const PhiSpec& spec, int order = kDefaultOrder);
[[nodiscard]] cplx eval_phi(const PhiSpec& spec, cplx z);
[[nodiscard]] bool validate_phi(const TruncatedSeries& series);
[[nodiscard]] bool validate_phi(const PhiSpec& spec);
[[nodiscard]] PhiSpec sample_phi(std::uint64_t seed);
[[nodiscard]] std::vector<PhiSpec> sample_phi_batch(std::uint64_t seed, std::size_t count,
                                                    Exec exec = Exec::Parallel);

// --- outer targets --------------------------------------------------------

/// Series with c_0 = 1 playing the role of p_{k,alpha} (subordination) or
/// phi(z) = 1 + c_1 z + ... with c_1 > 0 (quasi-subordination).
class OuterTarget {
public:
    /// Throws InvalidSpec unless c_0 = 1 and c_1 is real and positive.
    explicit OuterTarget(TruncatedSeries series);
    static OuterTarget from_conic(const ConicParams& params, int order = kDefaultOrder);
    /// 1 + c1 z + c2 z^2 (higher coefficients zero).
    static OuterTarget from_coeffs(double c1, double c2, int order = kDefaultOrder);

    [[nodiscard]] const TruncatedSeries& series() const noexcept { return series_; }
    [[nodiscard]] double c1() const noexcept { return series_[1].real(); }
    [[nodiscard]] double c2() const noexcept { return series_[2].real(); }

private:
    TruncatedSeries series_;
};

/// Deterministic 64-bit mix used to derive per-index seeds.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace erfq
