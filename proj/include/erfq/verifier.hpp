#pragma once

// Randomized and extremal-search validation of the bound catalog, plus the
// reconciliation of printed closed forms against the series solve.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "erfq/bounds.hpp"
#include "erfq/conic.hpp"
#include "erfq/families.hpp"

namespace erfq {

inline constexpr double kViolationTol = 1e-9;
inline constexpr double kAttainmentTol = 1e-8;
inline constexpr double kAgreeTol = 1e-9;
inline constexpr std::size_t kLemmaSamples = 100000;
inline constexpr std::size_t kClassBudget = 10000;
inline constexpr int kLambdaGrid = 21;
inline constexpr int kRealMuPoints = 81;
inline constexpr int kComplexMuProbes = 16;
inline constexpr double kComplexMuRadius = 2.0;

struct Witness {
    SchwarzSpec w;
    std::optional<PhiSpec> phi;
    std::string origin; // "sample", "extremal" or "refined"
    std::string label;  // e.g. "g_phi2", "h_lambda", "blaschke"
};

struct BoundReport {
    std::string quantity; // "lemma", "lemma-improved", "fs", "a2", "a3"
    cplx mu;              // t for the lemma suite
    std::string regime;
    double theoretical = 0.0;
    double empirical_sup = 0.0;
    double margin = 0.0;
    bool violation = false;
    Witness witness;
    /// theoretical minus the best deterministic or refined witness value
    double attainment_gap = 0.0;
    /// label and gap of the family the extremal analysis names for this point;
    /// empty when none is named
    std::string named_witness;
    double named_gap = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

// --- lemma -----------------------------------------------------------------

struct LemmaConfig {
    std::size_t samples = kLemmaSamples;
    std::uint64_t seed = 0;
    double t_min = -3.0;
    double t_max = 3.0;
    double t_step = 0.01;
    Exec exec = Exec::Parallel;
};

struct FamilyCheck {
    std::string label;
    double t = 0.0;
    double max_gap = 0.0; // over the lambda grid
};

struct LemmaReport {
    LemmaConfig config;
    std::vector<BoundReport> functional;
    std::vector<BoundReport> improved;
    std::vector<FamilyCheck> families;
    std::size_t violations = 0;
};

[[nodiscard]] std::vector<double> lemma_t_grid(const LemmaConfig& config);
[[nodiscard]] LemmaReport verify_lemma(const LemmaConfig& config);

/// Value of |w2 - t w1^2| for a Schwarz spec.
[[nodiscard]] double lemma_value(const SchwarzSpec& w, double t);

// --- class bounds ----------------------------------------------------------

struct ClassSweepConfig {
    ClassParams params{0.0, 0.5, 1.0};
    ClassKind kind = ClassKind::StarlikeSub;
    std::optional<ConicParams> conic = ConicParams(0.0, 0.0);
    /// used when conic is empty
    std::optional<OuterTarget> outer;
    /// empty selects default_mu_grid
    std::vector<cplx> mus;
    std::size_t budget = kClassBudget;
    std::uint64_t seed = 0;
    bool refine = true;
    Exec exec = Exec::Parallel;
};

struct ClassSweepReport {
    ClassSweepConfig config;
    double p1 = 0.0; // c1 for quasi kinds
    double p2 = 0.0;
    Thresholds thresholds;
    std::vector<BoundReport> reports;
    std::size_t violations = 0;
};

[[nodiscard]] OuterTarget sweep_outer(const ClassSweepConfig& config);
/// 81 real points over [lower - 1, upper + 1] of the engine crossings, then 16
/// probes on |mu| = 2.
[[nodiscard]] std::vector<cplx> default_mu_grid(const Thresholds& thresholds);
[[nodiscard]] ClassSweepReport verify_class_bound(const ClassSweepConfig& config);

/// a2, a3 of a witness: series solve for samples, coefficient recursion for
/// extremal and refined witnesses.
[[nodiscard]] CoeffResult evaluate_witness(const ClassSweepConfig& config, const Witness& witness);
/// The reported functional for a witness ("fs" at mu, "a2", "a3").
[[nodiscard]] double witness_value(const ClassSweepConfig& config, const BoundReport& report);

// --- reconciliation --------------------------------------------------------

struct ReconciliationEntry {
    std::string quantity;
    std::string role; // "check" or "finding"
    int draw = -1;    // -1 for fixed-configuration entries
    cplx printed_value;
    cplx engine_value;
    bool agree = false;
    std::string note;
};

struct ReconciliationSummary {
    std::string quantity;
    std::string role;
    int draws = 0;
    int agreements = 0;
    double max_rel_error = 0.0;
};

struct ReconciliationReport {
    int draws = 0;
    std::uint64_t seed = 0;
    std::vector<ReconciliationEntry> entries;
    std::vector<ReconciliationSummary> summary;
    std::vector<std::string> notes;
    std::size_t violations = 0; // failed checks
};

[[nodiscard]] bool agrees(cplx printed, cplx engine) noexcept;
[[nodiscard]] ReconciliationReport reconcile_closed_forms(int draws, std::uint64_t seed, Exec exec = Exec::Parallel);

// --- real-part floor -------------------------------------------------------

struct FloorReport {
    double k = 0.0;
    double alpha = 0.0;
    double floor = 0.0;
    double min_re = 0.0;
    cplx argmin;
    double slack = 0.0;
    bool pass = false;
};

[[nodiscard]] std::vector<std::pair<double, double>> default_floor_grid();
[[nodiscard]] std::vector<FloorReport> verify_real_part_floor(const std::vector<std::pair<double, double>>& grid,
                                                              Exec exec = Exec::Parallel);

} // namespace erfq
