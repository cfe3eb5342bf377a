#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "erfq/errors.hpp"
#include "erfq/verifier.hpp"

using namespace erfq;

namespace {

const ReconciliationSummary* find_summary(const ReconciliationReport& r, const std::string& quantity)
{
    for (const auto& s : r.summary)
        if (s.quantity == quantity)
            return &s;
    return nullptr;
}

} // namespace

TEST_CASE("t grid lands on integers")
{
    LemmaConfig cfg;
    const auto grid = lemma_t_grid(cfg);
    REQUIRE(grid.size() == 601);
    CHECK(grid.front() == -3.0);
    CHECK(grid.back() == 3.0);
    CHECK(grid[200] == -1.0);
    CHECK(grid[300] == 0.0);
    CHECK(grid[400] == 1.0);
    cfg.t_step = 0.0;
    CHECK_THROWS_AS((void)lemma_t_grid(cfg), DomainError);
}

TEST_CASE("lemma sweep")
{
    LemmaConfig cfg;
    cfg.samples = 3000;
    cfg.seed = 11;
    const auto rep = verify_lemma(cfg);
    CHECK(rep.violations == 0);
    REQUIRE(rep.functional.size() == 601);
    CHECK(rep.improved.size() == 199);
    for (const auto& r : rep.functional) {
        CHECK(r.margin >= -1e-12);
        CHECK(r.attainment_gap <= kAttainmentTol);
        CHECK(std::abs(r.named_gap) <= 1e-12);
        CHECK(r.violation == (r.margin < -kViolationTol));
        // the reported witness reproduces the reported sup
        CHECK(std::abs(lemma_value(r.witness.w, r.mu.real()) - r.empirical_sup) <= 1e-12);
    }
    for (const auto& r : rep.improved) {
        CHECK(r.margin >= -1e-12);
        CHECK(r.attainment_gap <= kAttainmentTol);
    }
    REQUIRE(rep.families.size() == 2);
    for (const auto& f : rep.families)
        CHECK(f.max_gap <= 1e-12);

    cfg.exec = Exec::Serial;
    const auto serial = verify_lemma(cfg);
    for (std::size_t i = 0; i < rep.functional.size(); ++i)
        CHECK(serial.functional[i].empirical_sup == rep.functional[i].empirical_sup);
}

TEST_CASE("default mu grid")
{
    Thresholds th;
    th.lower = -0.5;
    th.upper = 1.5;
    const auto mus = default_mu_grid(th);
    REQUIRE(mus.size() == 97);
    CHECK(mus[0] == cplx(-1.5, 0.0));
    CHECK(mus[80] == cplx(2.5, 0.0));
    CHECK(std::abs(std::abs(mus[90]) - 2.0) < 1e-15);
}

TEST_CASE("class sweep, subordination kinds")
{
    for (auto kind : {ClassKind::StarlikeSub, ClassKind::ConvexSub}) {
        ClassSweepConfig cfg;
        cfg.kind = kind;
        cfg.budget = 400;
        cfg.seed = 5;
        const auto rep = verify_class_bound(cfg);
        CHECK(rep.p1 == doctest::Approx(2.0));
        CHECK(rep.violations == 0);
        REQUIRE(rep.reports.size() == 97);
        for (const auto& r : rep.reports) {
            CHECK(r.margin >= -kViolationTol);
            CHECK(r.attainment_gap <= kAttainmentTol);
            CHECK(std::abs(r.named_gap) <= kAttainmentTol);
            CHECK(std::abs(witness_value(cfg, r) - r.empirical_sup) <= 1e-12);
        }
    }
}

TEST_CASE("class sweep, quasi kinds")
{
    for (auto kind : {ClassKind::StarlikeQuasi, ClassKind::ConvexQuasi}) {
        ClassSweepConfig cfg;
        cfg.kind = kind;
        cfg.budget = 400;
        cfg.seed = 9;
        const auto rep = verify_class_bound(cfg);
        CHECK(rep.violations == 0);
        REQUIRE(rep.reports.size() == 99);
        CHECK(rep.reports[97].quantity == "a2");
        CHECK(rep.reports[98].quantity == "a3");
        // phi = 1 with w = z attains the a2 bound
        CHECK(rep.reports[97].attainment_gap <= kAttainmentTol);
        for (const auto& r : rep.reports)
            CHECK(std::abs(witness_value(cfg, r) - r.empirical_sup) <= 1e-12);
    }
}

TEST_CASE("class sweep is reproducible and exec independent")
{
    ClassSweepConfig cfg;
    cfg.budget = 200;
    cfg.seed = 3;
    cfg.mus = {0.5, cplx(0.0, 1.0)};
    const auto a = verify_class_bound(cfg);
    cfg.exec = Exec::Serial;
    const auto b = verify_class_bound(cfg);
    for (std::size_t i = 0; i < a.reports.size(); ++i) {
        CHECK(a.reports[i].empirical_sup == b.reports[i].empirical_sup);
        CHECK(a.reports[i].witness.label == b.reports[i].witness.label);
    }
    cfg.budget = 3;
    CHECK_THROWS_AS((void)verify_class_bound(cfg), DomainError);
    cfg.budget = 200;
    cfg.conic.reset();
    CHECK_THROWS_AS((void)verify_class_bound(cfg), DomainError);
}

TEST_CASE("reconciliation")
{
    const auto rep = reconcile_closed_forms(40, 21);
    CHECK(rep.violations == 0);
    for (const auto& e : rep.entries)
        if (e.role == "check")
            CHECK_MESSAGE(e.agree, e.quantity);
    const auto* a2 = find_summary(rep, "a2 starlike (printed)");
    const auto* a3 = find_summary(rep, "a3 starlike (printed)");
    const auto* flipped = find_summary(rep, "a3 starlike (printed, p2/p1 sign flipped)");
    const auto* quasi = find_summary(rep, "a3 starlike quasi (printed)");
    REQUIRE(a2);
    REQUIRE(a3);
    REQUIRE(flipped);
    REQUIRE(quasi);
    CHECK(a2->agreements == 40);
    CHECK(a3->agreements < 40);
    CHECK(flipped->agreements == 40);
    CHECK(quasi->agreements == 40);
    CHECK(find_summary(rep, "convex sigma1 vs t = -1 crossing")->agreements == 1);
    CHECK(find_summary(rep, "convex quasi fs bound (printed vs derived)")->agreements == 0);
    CHECK(find_summary(rep, "elliptic map value at 0 (printed form)")->agreements == 0);
    CHECK(!rep.notes.empty());
}

TEST_CASE("real part floor")
{
    const auto grid = default_floor_grid();
    CHECK(grid.size() == 12);
    for (const auto& r : verify_real_part_floor(grid)) {
        CHECK(r.pass);
        CHECK(r.min_re > r.floor - 1e-9);
    }
}
