#include "erfq/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "erfq/bounds.hpp"
#include "erfq/coefficients.hpp"
#include "erfq/conic.hpp"
#include "erfq/errors.hpp"
#include "erfq/families.hpp"
#include "erfq/kernels.hpp"
#include "erfq/report_io.hpp"
#include "erfq/verifier.hpp"

namespace erfq {

namespace {

using io::Cell;
using io::json;
using io::Table;

constexpr int kMaxErfOrder = 20; // (2n-1)(n-1)! stays inside 64 bits
constexpr int kMaxTaylorOrder = 64;
constexpr double kRecomposeTol = 1e-14;

// Thrown for bad flag values found after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string format = "table";
    std::string out;
    int threads = 0;
    std::optional<std::uint64_t> seed;
    std::string prime = "ordinary";
};

struct ClassArgs {
    std::string kind = "starlike-sub";
    double k = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double q = 0.5;
    std::optional<double> b;
    std::optional<double> b_re;
    std::optional<double> b_im;
    std::optional<double> c1;
    std::optional<double> c2;
    std::vector<std::string> mu;
};

double parse_double(std::string_view text)
{
    double x = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, x);
    if (ec != std::errc() || ptr != end || !std::isfinite(x))
        throw UsageError("not a finite number: '" + std::string(text) + "'");
    return x;
}

/// "re" or "re,im"
cplx parse_complex(const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        return parse_double(text);
    return {parse_double(std::string_view(text).substr(0, comma)),
            parse_double(std::string_view(text).substr(comma + 1))};
}

std::uint64_t resolve_seed(const Common& c)
{
    if (c.seed)
        return *c.seed;
    if (const char* env = std::getenv("ERFQ_SEED"); env && *env) {
        std::uint64_t s = 0;
        const std::string_view v(env);
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
        if (ec != std::errc() || ptr != v.data() + v.size())
            throw UsageError("ERFQ_SEED must be an unsigned integer, got '" + std::string(v) + "'");
        return s;
    }
    return 0;
}

ClassParams class_params(const ClassArgs& a, const Common& c)
{
    if (a.b && (a.b_re || a.b_im))
        throw UsageError("give b either as --b or as --b-re/--b-im");
    const cplx b = a.b ? cplx(*a.b, 0.0) : cplx(a.b_re.value_or(1.0), a.b_im.value_or(0.0));
    return ClassParams(a.beta, a.q, b, parse_convex_prime(c.prime));
}

OuterTarget class_outer(const ClassArgs& a)
{
    if (a.c1.has_value() != a.c2.has_value())
        throw UsageError("--c1 and --c2 go together");
    if (a.c1)
        return OuterTarget::from_coeffs(*a.c1, *a.c2);
    return OuterTarget::from_conic(ConicParams(a.k, a.alpha));
}

std::vector<cplx> parse_mus(const std::vector<std::string>& texts)
{
    std::vector<cplx> mus;
    for (const auto& t : texts)
        mus.push_back(parse_complex(t));
    return mus;
}

std::string complex_text(cplx z)
{
    if (z.imag() == 0.0)
        return io::format_double(z.real());
    return io::format_double(z.real()) + (z.imag() < 0.0 ? "" : "+") + io::format_double(z.imag()) + "i";
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw UsageError("cannot write " + path.string());
    f << text;
    if (!f)
        throw UsageError("write failed for " + path.string());
}

// Renders a plain (non-verify) result in the chosen format, to --out or stdout.
void emit(const Common& c, std::ostream& out, const io::HeaderInfo& info, json body, const Table& table,
          std::vector<std::pair<std::string, std::string>> extra_header = {})
{
    auto header = io::header_lines(info);
    header.insert(header.end(), extra_header.begin(), extra_header.end());
    std::string text;
    if (c.format == "json")
        text = io::make_document(info, std::move(body)).dump(2) + "\n";
    else if (c.format == "csv")
        text = io::render_csv(table, header);
    else
        text = io::render_table(table, header);
    if (c.out.empty())
        out << text;
    else
        write_file(c.out, text);
}

struct SuiteOutput {
    std::string name;
    json document;
    Table full;
    Table summary;
    std::vector<std::pair<std::string, std::string>> header;
    std::size_t violations = 0;
};

Table bound_summary(const std::vector<const BoundReport*>& reports)
{
    Table t;
    t.columns = {"quantity", "regime", "points", "violations", "min_margin", "max_attainment_gap", "max_named_gap"};
    std::vector<std::pair<std::string, std::string>> keys;
    for (const auto* r : reports)
        if (std::find(keys.begin(), keys.end(), std::pair{r->quantity, r->regime}) == keys.end())
            keys.emplace_back(r->quantity, r->regime);
    for (const auto& [quantity, regime] : keys) {
        std::int64_t points = 0, violations = 0;
        double min_margin = INFINITY, max_gap = -INFINITY, max_named = 0.0;
        for (const auto* r : reports) {
            if (r->quantity != quantity || r->regime != regime)
                continue;
            ++points;
            violations += r->violation ? 1 : 0;
            min_margin = std::min(min_margin, r->margin);
            max_gap = std::max(max_gap, r->attainment_gap);
            max_named = std::max(max_named, std::abs(r->named_gap));
        }
        t.rows.push_back({quantity, regime, points, violations, min_margin, max_gap, max_named});
    }
    return t;
}

SuiteOutput lemma_suite(const LemmaConfig& cfg, const Common& c)
{
    const auto rep = verify_lemma(cfg);
    SuiteOutput s;
    s.name = "lemma";
    const io::HeaderInfo info{"lemma", cfg.seed, std::nullopt};
    s.document = io::make_document(info, io::to_json(rep));
    s.full = io::lemma_table(rep);
    std::vector<const BoundReport*> all;
    for (const auto& r : rep.functional)
        all.push_back(&r);
    for (const auto& r : rep.improved)
        all.push_back(&r);
    s.summary = bound_summary(all);
    s.header = io::header_lines(info);
    for (const auto& f : rep.families)
        s.header.emplace_back("family " + f.label + " at t=" + io::format_double(f.t, 3),
                              "max gap " + io::format_double(f.max_gap, 3));
    s.violations = rep.violations;
    (void)c;
    return s;
}

SuiteOutput class_suite(const ClassSweepConfig& cfg, const Common& c, const std::string& name)
{
    const auto rep = verify_class_bound(cfg);
    SuiteOutput s;
    s.name = name;
    const io::HeaderInfo info{name, cfg.seed, parse_convex_prime(c.prime)};
    s.document = io::make_document(info, io::to_json(rep));
    s.full = io::class_table(rep);
    std::vector<const BoundReport*> all;
    for (const auto& r : rep.reports)
        all.push_back(&r);
    s.summary = bound_summary(all);
    s.header = io::header_lines(info);
    s.header.emplace_back("kind", to_string(cfg.kind));
    s.header.emplace_back("p1", io::format_double(rep.p1));
    s.header.emplace_back("p2", io::format_double(rep.p2));
    s.header.emplace_back("sigma1", complex_text(rep.thresholds.sigma1));
    s.header.emplace_back("sigma2", complex_text(rep.thresholds.sigma2));
    s.header.emplace_back("sigma3", complex_text(rep.thresholds.sigma3));
    s.violations = rep.violations;
    return s;
}

SuiteOutput reconcile_suite(int draws, std::uint64_t seed)
{
    const auto rep = reconcile_closed_forms(draws, seed);
    SuiteOutput s;
    s.name = "reconcile";
    const io::HeaderInfo info{"reconcile", seed, std::nullopt};
    s.document = io::make_document(info, io::to_json(rep));
    s.full = io::reconciliation_table(rep);
    s.summary = io::reconciliation_summary_table(rep);
    s.header = io::header_lines(info);
    for (std::size_t i = 0; i < rep.notes.size(); ++i)
        s.header.emplace_back("note " + std::to_string(i + 1), rep.notes[i]);
    s.violations = rep.violations;
    return s;
}

SuiteOutput floor_suite()
{
    const auto rep = verify_real_part_floor(default_floor_grid());
    SuiteOutput s;
    s.name = "floor";
    const io::HeaderInfo info{"floor", std::nullopt, std::nullopt};
    s.document = io::make_document(info, io::to_json(rep));
    s.full = io::floor_table(rep);
    s.summary = s.full;
    s.header = io::header_lines(info);
    for (const auto& r : rep)
        s.violations += r.pass ? 0 : 1;
    return s;
}

int emit_suites(const Common& c, std::ostream& out, const std::vector<SuiteOutput>& suites)
{
    std::size_t violations = 0;
    for (const auto& s : suites)
        violations += s.violations;
    if (!c.out.empty()) {
        for (const auto& s : suites) {
            write_file(std::filesystem::path(c.out) / (s.name + ".json"), s.document.dump(2) + "\n");
            write_file(std::filesystem::path(c.out) / (s.name + ".csv"), io::render_csv(s.full, s.header));
        }
    }
    if (c.format == "json") {
        if (suites.size() == 1) {
            out << suites.front().document.dump(2) << '\n';
        } else {
            json all = json::object();
            for (const auto& s : suites)
                all[s.name] = s.document;
            out << json{{"suites", all}}.dump(2) << '\n';
        }
    } else if (c.format == "csv") {
        for (const auto& s : suites)
            out << io::render_csv(s.full, s.header);
    } else {
        for (const auto& s : suites) {
            out << io::render_table(s.summary, s.header);
            out << "violations: " << s.violations << "\n";
            out << "payload hash: " << io::payload_hash(s.document) << "\n\n";
        }
        out << "total violations: " << violations << "\n";
    }
    return violations == 0 ? kExitOk : kExitViolation;
}

void add_common(CLI::App* sub, Common& c, bool with_seed, bool with_prime)
{
    sub->add_option("--format", c.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
    sub->add_option("--out", c.out, "output file (directory for verify)");
    sub->add_option("--threads", c.threads, "thread cap, 0 = runtime default")->check(CLI::Range(0, 4096));
    if (with_seed)
        sub->add_option("--seed", c.seed, "seed (falls back to ERFQ_SEED, then 0)");
    if (with_prime)
        sub->add_option("--convex-prime", c.prime, "reading of the prime for convex kinds")
            ->check(CLI::IsMember({"ordinary", "q"}));
}

void add_class_args(CLI::App* sub, ClassArgs& a, bool with_kind)
{
    if (with_kind)
        sub->add_option("--kind", a.kind, "starlike-sub, convex-sub, starlike-quasi, convex-quasi")
            ->check(CLI::IsMember({"starlike-sub", "convex-sub", "starlike-quasi", "convex-quasi"}));
    sub->add_option("--k", a.k, "conic parameter k >= 0");
    sub->add_option("--alpha", a.alpha, "conic parameter 0 <= alpha < 1");
    sub->add_option("--beta", a.beta, "spiral angle, |beta| < pi/2");
    sub->add_option("--q", a.q, "0 < q < 1");
    sub->add_option("--b", a.b, "real b (nonzero)");
    sub->add_option("--b-re", a.b_re, "real part of b");
    sub->add_option("--b-im", a.b_im, "imaginary part of b");
    sub->add_option("--c1", a.c1, "outer coefficient c1 > 0 (replaces the conic target)");
    sub->add_option("--c2", a.c2, "outer coefficient c2");
    sub->add_option("--mu", a.mu, "mu as re or re,im (repeatable)");
}

// --- commands --------------------------------------------------------------

int cmd_pk(const Common& c, double k, double alpha, std::optional<int> taylor, const std::vector<std::string>& evals,
           std::ostream& out)
{
    const ConicParams params(k, alpha);
    const int order = taylor.value_or(evals.empty() ? kDefaultOrder : 0);
    if (taylor && (*taylor < 1 || *taylor > kMaxTaylorOrder))
        throw UsageError("--taylor must lie in [1, " + std::to_string(kMaxTaylorOrder) + "]");
    std::vector<cplx> zs;
    for (const auto& e : evals)
        zs.push_back(parse_complex(e));

    Table table;
    table.columns = {"item", "n", "z_re", "z_im", "re", "im"};
    json body;
    if (order > 0) {
        const auto coeffs = pk_taylor(params, order);
        body = io::to_json(params, coeffs);
        for (int n = 0; n <= order; ++n)
            table.rows.push_back({std::string("coeff"), std::int64_t{n}, 0.0, 0.0, coeffs[n].real(), coeffs[n].imag()});
    } else {
        body = io::to_json(params, TruncatedSeries(0));
        body["coeffs"] = nullptr;
    }
    json values = json::array();
    for (const auto z : zs) {
        const cplx p = eval_pk(params, z);
        values.push_back({{"z", io::to_json(z)}, {"p", io::to_json(p)}});
        table.rows.push_back({std::string("value"), std::int64_t{0}, z.real(), z.imag(), p.real(), p.imag()});
    }
    body["values"] = values;
    emit(c, out, {"pk", std::nullopt, std::nullopt}, body, table);
    return kExitOk;
}

std::string erf_rational(int n)
{
    return std::string(n % 2 == 0 ? "-" : "") + "1/" + std::to_string(normalized_erf_denominator(n));
}

int cmd_erf(const Common& c, int order, bool check, std::ostream& out)
{
    if (order < 1 || order > kMaxErfOrder)
        throw UsageError("--order must lie in [1, " + std::to_string(kMaxErfOrder) + "]");
    const auto s = normalized_erf_series(order);
    Table table;
    table.columns = {"n", "coefficient", "rational"};
    json rows = json::array();
    for (int n = 1; n <= order; ++n) {
        table.rows.push_back({std::int64_t{n}, s[n].real(), erf_rational(n)});
        rows.push_back({{"n", n}, {"coefficient", s[n].real()}, {"rational", erf_rational(n)}});
    }
    json body{{"series", io::to_json(s)}, {"coefficients", rows}};
    std::vector<std::pair<std::string, std::string>> extra;
    int status = kExitOk;
    if (check) {
        const auto back = recompose_normalized_erf(erf_series(2 * order + 1), order);
        const double err = max_abs_diff(back, s);
        body["recompose_error"] = err;
        body["recompose_tol"] = kRecomposeTol;
        extra.emplace_back("recompose_error", io::format_double(err, 3));
        if (!(err < kRecomposeTol))
            status = kExitViolation;
    }
    emit(c, out, {"erf", std::nullopt, std::nullopt}, body, table, extra);
    return status;
}

int cmd_bounds(const Common& c, const ClassArgs& a, std::ostream& out)
{
    const auto params = class_params(a, c);
    const auto kind = parse_class_kind(a.kind);
    const auto outer = class_outer(a);
    auto mus = parse_mus(a.mu);
    const double p1 = outer.c1(), p2 = outer.c2();
    const auto th = thresholds_for(params, kind, p1, p2);
    if (mus.empty())
        mus = default_mu_grid(th);

    auto sigma_cell = [&](cplx s) { return th.real ? Cell(s.real()) : Cell(complex_text(s)); };
    Table table;
    table.columns = {"mu_re", "mu_im", "regime", "bound", "sigma1", "sigma2", "sigma3"};
    json rows = json::array();
    for (const auto mu : mus) {
        std::string regime;
        double value = 0.0;
        json row{{"mu", io::to_json(mu)}};
        if (is_quasi(kind)) {
            const auto qb = quasi_bounds(params, kind, p1, p2, mu);
            regime = "Quasi";
            value = qb.fs;
            row["printed"] = qb.fs_printed;
        } else {
            const auto b = fs_bound(params, kind, p1, p2, mu);
            regime = to_string(b.regime);
            value = b.value;
            row["t"] = io::to_json(b.t);
        }
        row["regime"] = regime;
        row["bound"] = value;
        rows.push_back(row);
        table.rows.push_back(
            {mu.real(), mu.imag(), regime, value, sigma_cell(th.sigma1), sigma_cell(th.sigma2), sigma_cell(th.sigma3)});
    }
    json body{{"params", io::to_json(params)},
              {"kind", to_string(kind)},
              {"p1", p1},
              {"p2", p2},
              {"thresholds", io::to_json(th)},
              {"rows", rows}};
    std::vector<std::pair<std::string, std::string>> extra{
        {"kind", to_string(kind)},
        {"p1", io::format_double(p1)},
        {"p2", io::format_double(p2)},
        {"sigma1", complex_text(th.sigma1)},
        {"sigma2", complex_text(th.sigma2)},
        {"sigma3", complex_text(th.sigma3)},
        {"crossings (t = -1, 0, +1)",
         complex_text(th.lower) + " " + complex_text(th.zero) + " " + complex_text(th.upper)}};
    if (is_quasi(kind)) {
        const auto qb = quasi_bounds(params, kind, p1, p2, 0.0);
        body["a2_bound"] = qb.a2;
        body["a3_bound"] = qb.a3;
        body["a2_printed"] = qb.a2_printed;
        body["a3_printed"] = qb.a3_printed;
        extra.emplace_back("a2 bound", io::format_double(qb.a2));
        extra.emplace_back("a3 bound", io::format_double(qb.a3));
    }
    emit(c, out, {"bounds", std::nullopt, parse_convex_prime(c.prime)}, body, table, extra);
    return kExitOk;
}

ClassSweepConfig class_config(const ClassArgs& a, const Common& c, ClassKind kind, std::size_t budget, bool refine)
{
    ClassSweepConfig cfg;
    cfg.params = class_params(a, c);
    cfg.kind = kind;
    if (a.c1.has_value() != a.c2.has_value())
        throw UsageError("--c1 and --c2 go together");
    if (a.c1) {
        cfg.conic.reset();
        cfg.outer = OuterTarget::from_coeffs(*a.c1, *a.c2);
    } else {
        cfg.conic = ConicParams(a.k, a.alpha);
    }
    cfg.mus = parse_mus(a.mu);
    cfg.budget = budget;
    cfg.seed = resolve_seed(c);
    cfg.refine = refine;
    return cfg;
}

SchwarzSpec schwarz_from_flags(const std::string& variant, int power, double lambda,
                               const std::vector<std::string>& zeros, const std::vector<std::string>& coeffs,
                               double theta, double theta_inner)
{
    SchwarzSpec spec;
    if (variant == "monomial") {
        spec.form = Monomial{power};
    } else if (variant == "mobius-plus") {
        spec.form = MobiusPlus{lambda};
    } else if (variant == "mobius-minus") {
        spec.form = MobiusMinus{lambda};
    } else if (variant == "blaschke") {
        Blaschke b;
        for (const auto& z : zeros)
            b.zeros.push_back(parse_complex(z));
        spec.form = b;
    } else {
        std::vector<cplx> c{0.0};
        for (const auto& z : coeffs)
            c.push_back(parse_complex(z));
        spec.form = ExplicitSeries{TruncatedSeries(std::move(c))};
    }
    spec.theta = theta;
    spec.theta_inner = theta_inner;
    check_schwarz_spec(spec);
    return spec;
}

void schwarz_row(Table& table, json& rows, std::int64_t index, const SchwarzSpec& spec)
{
    const auto s = schwarz_series(spec, 2);
    const bool valid = validate_schwarz(spec);
    table.rows.push_back({index, variant_name(spec), spec.theta, spec.theta_inner,
                          static_cast<std::int64_t>(spec.seed), s[1].real(), s[1].imag(), s[2].real(), s[2].imag(),
                          valid});
    rows.push_back({{"index", index},
                    {"spec", io::to_json(spec)},
                    {"w1", io::to_json(s[1])},
                    {"w2", io::to_json(s[2])},
                    {"valid", valid}});
}

Table schwarz_table()
{
    Table t;
    t.columns = {"index", "variant", "theta", "theta_inner", "seed", "w1_re", "w1_im", "w2_re", "w2_im", "valid"};
    return t;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"erfq: coefficient bounds for spirallike q-starlike and q-convex error-function classes"};
    app.name("erfq");
    app.require_subcommand(1);
    app.set_version_flag("--version", "erfq 1.0.0");

    Common common;
    ClassArgs class_args;

    double pk_k = 0.0, pk_alpha = 0.0;
    std::optional<int> pk_taylor_order;
    std::vector<std::string> pk_eval;
    auto* pk = app.add_subcommand("pk", "p_{k,alpha}: Taylor coefficients and point values");
    pk->add_option("--k", pk_k, "k >= 0")->required();
    pk->add_option("--alpha", pk_alpha, "0 <= alpha < 1")->required();
    pk->add_option("--taylor", pk_taylor_order, "print coefficients 0..N");
    pk->add_option("--eval", pk_eval, "evaluate at re or re,im (repeatable)");
    add_common(pk, common, false, false);

    int erf_order = 6;
    bool erf_check = false;
    auto* erf = app.add_subcommand("erf", "coefficients of the normalized error function");
    erf->add_option("--order", erf_order, "highest power");
    erf->add_flag("--check", erf_check, "recompose through the sqrt(z) substitution");
    add_common(erf, common, false, false);

    auto* bounds = app.add_subcommand("bounds", "thresholds and Fekete-Szego bound against mu");
    add_class_args(bounds, class_args, true);
    add_common(bounds, common, false, true);

    auto* verify = app.add_subcommand("verify", "empirical verification suites");
    verify->require_subcommand(1);
    std::size_t samples = kLemmaSamples;
    std::size_t budget = kClassBudget;
    int draws = 100;
    bool no_refine = false;
    double t_min = -3.0, t_max = 3.0, t_step = 0.01;

    auto* v_lemma = verify->add_subcommand("lemma", "Schwarz-function lemma sweep over t");
    v_lemma->add_option("--samples", samples, "Schwarz samples")->check(CLI::PositiveNumber);
    v_lemma->add_option("--t-min", t_min);
    v_lemma->add_option("--t-max", t_max);
    v_lemma->add_option("--t-step", t_step);
    add_common(v_lemma, common, true, false);

    auto* v_class = verify->add_subcommand("class", "class bound sweep over mu");
    add_class_args(v_class, class_args, true);
    v_class->add_option("--budget", budget, "samples per mu")->check(CLI::PositiveNumber);
    v_class->add_flag("--no-refine", no_refine, "skip golden-section refinement");
    add_common(v_class, common, true, true);

    auto* v_reconcile = verify->add_subcommand("reconcile", "printed closed forms against the series solve");
    v_reconcile->add_option("--draws", draws, "random parameter draws")->check(CLI::PositiveNumber);
    add_common(v_reconcile, common, true, false);

    auto* v_floor = verify->add_subcommand("floor", "real-part floor of p_{k,alpha} on a polar grid");
    add_common(v_floor, common, false, false);

    auto* v_all = verify->add_subcommand("all", "every suite with the given budgets");
    add_class_args(v_all, class_args, false);
    v_all->add_option("--samples", samples, "lemma Schwarz samples")->check(CLI::PositiveNumber);
    v_all->add_option("--budget", budget, "class samples per mu")->check(CLI::PositiveNumber);
    v_all->add_option("--draws", draws, "reconciliation draws")->check(CLI::PositiveNumber);
    v_all->add_flag("--no-refine", no_refine, "skip golden-section refinement");
    add_common(v_all, common, true, true);

    auto* schwarz = app.add_subcommand("schwarz", "Schwarz function samples and checks");
    schwarz->require_subcommand(1);
    std::size_t count = 5;
    auto* s_sample = schwarz->add_subcommand("sample", "seeded random Blaschke specs");
    s_sample->add_option("--count", count, "number of specs")->check(CLI::PositiveNumber);
    add_common(s_sample, common, true, false);

    std::string variant = "monomial";
    int power = 1;
    double lambda = 0.0, theta = 0.0, theta_inner = 0.0;
    std::vector<std::string> zeros, coeffs;
    auto* s_check = schwarz->add_subcommand("check", "validate one spec on the boundary grid");
    s_check->add_option("--variant", variant)
        ->check(CLI::IsMember({"monomial", "mobius-plus", "mobius-minus", "blaschke", "explicit"}));
    s_check->add_option("--power", power);
    s_check->add_option("--lambda", lambda);
    s_check->add_option("--zero", zeros, "extra Blaschke zero re,im (repeatable)");
    s_check->add_option("--coeff", coeffs, "explicit coefficients c1, c2, ... as re,im (repeatable)");
    s_check->add_option("--theta", theta);
    s_check->add_option("--theta-inner", theta_inner);
    add_common(s_check, common, false, false);

    std::vector<const char*> argv{"erfq"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << "erfq 1.0.0\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "erfq: usage error: " << msg << '\n';
        return kExitUsage;
    }

    kernels::set_thread_cap(common.threads);

    if (pk->parsed())
        return cmd_pk(common, pk_k, pk_alpha, pk_taylor_order, pk_eval, out);
    if (erf->parsed())
        return cmd_erf(common, erf_order, erf_check, out);
    if (bounds->parsed())
        return cmd_bounds(common, class_args, out);
    if (verify->parsed()) {
        const auto seed = resolve_seed(common);
        std::vector<SuiteOutput> suites;
        LemmaConfig lemma_cfg;
        lemma_cfg.samples = samples;
        lemma_cfg.seed = seed;
        lemma_cfg.t_min = t_min;
        lemma_cfg.t_max = t_max;
        lemma_cfg.t_step = t_step;
        if (v_lemma->parsed()) {
            suites.push_back(lemma_suite(lemma_cfg, common));
        } else if (v_class->parsed()) {
            const auto kind = parse_class_kind(class_args.kind);
            const auto cfg = class_config(class_args, common, kind, budget, !no_refine);
            suites.push_back(class_suite(cfg, common, "class-" + to_string(kind)));
        } else if (v_reconcile->parsed()) {
            suites.push_back(reconcile_suite(draws, seed));
        } else if (v_floor->parsed()) {
            suites.push_back(floor_suite());
        } else {
            // validate every configuration before running anything
            std::vector<ClassSweepConfig> cfgs;
            for (auto kind :
                 {ClassKind::StarlikeSub, ClassKind::ConvexSub, ClassKind::StarlikeQuasi, ClassKind::ConvexQuasi})
                cfgs.push_back(class_config(class_args, common, kind, budget, !no_refine));
            (void)lemma_t_grid(lemma_cfg);
            suites.push_back(lemma_suite(lemma_cfg, common));
            for (const auto& cfg : cfgs)
                suites.push_back(class_suite(cfg, common, "class-" + to_string(cfg.kind)));
            suites.push_back(reconcile_suite(draws, seed));
            suites.push_back(floor_suite());
        }
        return emit_suites(common, out, suites);
    }
    if (s_sample->parsed()) {
        const auto seed = resolve_seed(common);
        const auto specs = sample_schwarz_batch(seed, count);
        Table table = schwarz_table();
        json rows = json::array();
        for (std::size_t i = 0; i < specs.size(); ++i)
            schwarz_row(table, rows, static_cast<std::int64_t>(i), specs[i]);
        emit(common, out, {"schwarz-sample", seed, std::nullopt}, json{{"specs", rows}}, table);
        return kExitOk;
    }
    const auto spec = schwarz_from_flags(variant, power, lambda, zeros, coeffs, theta, theta_inner);
    Table table = schwarz_table();
    json rows = json::array();
    schwarz_row(table, rows, 0, spec);
    emit(common, out, {"schwarz-check", std::nullopt, std::nullopt}, json{{"specs", rows}}, table);
    return rows[0]["valid"].get<bool>() ? kExitOk : kExitViolation;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    try {
        return run(args, out, err);
    } catch (const UsageError& e) {
        err << "erfq: usage error: " << e.what() << '\n';
    } catch (const Error& e) {
        err << "erfq: domain error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "erfq: error: " << e.what() << '\n';
    }
    kernels::set_thread_cap(0);
    return kExitUsage;
}

} // namespace erfq
