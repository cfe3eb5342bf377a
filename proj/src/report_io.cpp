#include "erfq/report_io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace erfq::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string cell_text(const Cell& c, int digits)
{
    return std::visit(overloaded{
                          [](const std::string& s) { return s; },
                          [&](double x) { return format_double(x, digits); },
                          [](std::int64_t i) { return std::to_string(i); },
                          [](bool b) { return std::string(b ? "true" : "false"); },
                      },
                      c);
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

std::int64_t as_int(std::size_t n) { return static_cast<std::int64_t>(n); }
std::int64_t as_int(std::uint64_t n, int) { return static_cast<std::int64_t>(n); }

} // namespace

std::string format_double(double x, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string payload_hash(const json& document)
{
    json copy = document;
    if (copy.is_object())
        copy.erase("timestamp");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(copy.dump())));
    return buf;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const TruncatedSeries& s)
{
    json re = json::array(), im = json::array();
    for (const auto& c : s.coeffs()) {
        re.push_back(c.real());
        im.push_back(c.imag());
    }
    return {{"order", s.order()}, {"re", re}, {"im", im}};
}

json to_json(const ConicParams& params, const TruncatedSeries& coeffs)
{
    json j{{"k", params.k()}, {"alpha", params.alpha()}, {"t", nullptr}, {"A", nullptr}};
    if (params.modulus())
        j["t"] = params.modulus()->t;
    if (params.A())
        j["A"] = *params.A();
    j["coeffs"] = to_json(coeffs);
    return j;
}

json to_json(const CoeffResult& r)
{
    return {{"a2", to_json(r.a2)}, {"a3", to_json(r.a3)}, {"source", to_string(r.source)}};
}

json to_json(const SchwarzSpec& spec)
{
    json params = std::visit(overloaded{
                                 [](const Monomial& m) { return json{{"power", m.power}}; },
                                 [](const MobiusPlus& m) { return json{{"lambda", m.lambda}}; },
                                 [](const MobiusMinus& m) { return json{{"lambda", m.lambda}}; },
                                 [](const Blaschke& b) {
                                     json zs = json::array();
                                     for (auto z : b.zeros)
                                         zs.push_back(to_json(z));
                                     return json{{"zeros", zs}};
                                 },
                                 [](const ExplicitSeries& e) { return json{{"series", to_json(e.series)}}; },
                             },
                             spec.form);
    return {{"variant", variant_name(spec)},
            {"params", params},
            {"theta", spec.theta},
            {"theta_inner", spec.theta_inner},
            {"seed", spec.seed}};
}

json to_json(const PhiSpec& spec)
{
    json params = std::visit(overloaded{
                                 [](const PhiConstant& c) { return json{{"d0", to_json(c.d0)}}; },
                                 [](const PhiMobius& m) {
                                     return json{{"a", to_json(m.a)}, {"rho", m.rho}, {"psi", m.psi}};
                                 },
                                 [](const PhiExplicit& e) { return json{{"series", to_json(e.series)}}; },
                             },
                             spec.form);
    return {{"variant", variant_name(spec)}, {"params", params}, {"seed", spec.seed}};
}

json to_json(const Witness& w)
{
    return {{"origin", w.origin},
            {"label", w.label},
            {"w", to_json(w.w)},
            {"phi", w.phi ? to_json(*w.phi) : json(nullptr)}};
}

json to_json(const BoundReport& r)
{
    json j{{"quantity", r.quantity}};
    if (r.quantity.rfind("lemma", 0) == 0)
        j["t"] = r.mu.real();
    else
        j["mu"] = to_json(r.mu);
    j["regime"] = r.regime;
    j["theoretical"] = r.theoretical;
    j["empirical_sup"] = r.empirical_sup;
    j["margin"] = r.margin;
    j["violation"] = r.violation;
    j["attainment_gap"] = r.attainment_gap;
    j["named_witness"] = r.named_witness;
    j["named_gap"] = r.named_gap;
    j["witness"] = to_json(r.witness);
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    return j;
}

json to_json(const Thresholds& th)
{
    return {{"sigma1", to_json(th.sigma1)}, {"sigma2", to_json(th.sigma2)}, {"sigma3", to_json(th.sigma3)},
            {"lower", to_json(th.lower)},   {"zero", to_json(th.zero)},     {"upper", to_json(th.upper)},
            {"real", th.real}};
}

json to_json(const ClassParams& params)
{
    return {{"beta", params.beta()},
            {"q", params.q()},
            {"b", to_json(params.b())},
            {"convex_prime", to_string(params.prime())}};
}

json to_json(const LemmaReport& r)
{
    json functional = json::array(), improved = json::array(), families = json::array();
    for (const auto& b : r.functional)
        functional.push_back(to_json(b));
    for (const auto& b : r.improved)
        improved.push_back(to_json(b));
    for (const auto& f : r.families)
        families.push_back({{"label", f.label}, {"t", f.t}, {"max_gap", f.max_gap}});
    return {{"config",
             {{"samples", r.config.samples},
              {"seed", r.config.seed},
              {"t_min", r.config.t_min},
              {"t_max", r.config.t_max},
              {"t_step", r.config.t_step}}},
            {"functional", functional},
            {"improved", improved},
            {"families", families},
            {"violations", r.violations}};
}

json to_json(const ClassSweepReport& r)
{
    json cfg{{"params", to_json(r.config.params)},
             {"kind", to_string(r.config.kind)},
             {"budget", r.config.budget},
             {"seed", r.config.seed},
             {"refine", r.config.refine}};
    if (r.config.conic)
        cfg["conic"] = {{"k", r.config.conic->k()}, {"alpha", r.config.conic->alpha()}};
    else if (r.config.outer)
        cfg["outer"] = to_json(r.config.outer->series());
    json reports = json::array();
    for (const auto& b : r.reports)
        reports.push_back(to_json(b));
    return {{"config", cfg},
            {"p1", r.p1},
            {"p2", r.p2},
            {"thresholds", to_json(r.thresholds)},
            {"reports", reports},
            {"violations", r.violations}};
}

json to_json(const ReconciliationReport& r)
{
    json entries = json::array(), summary = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"quantity", e.quantity},
                           {"role", e.role},
                           {"draw", e.draw},
                           {"printed_value", to_json(e.printed_value)},
                           {"engine_value", to_json(e.engine_value)},
                           {"agree", e.agree},
                           {"note", e.note}});
    for (const auto& s : r.summary)
        summary.push_back({{"quantity", s.quantity},
                           {"role", s.role},
                           {"draws", s.draws},
                           {"agreements", s.agreements},
                           {"max_rel_error", s.max_rel_error}});
    return {{"draws", r.draws}, {"seed", r.seed},         {"summary", summary},
            {"entries", entries}, {"notes", r.notes}, {"violations", r.violations}};
}

json to_json(const std::vector<FloorReport>& r)
{
    json rows = json::array();
    std::size_t failures = 0;
    for (const auto& f : r) {
        rows.push_back({{"k", f.k},
                        {"alpha", f.alpha},
                        {"floor", f.floor},
                        {"min_re", f.min_re},
                        {"argmin", to_json(f.argmin)},
                        {"slack", f.slack},
                        {"pass", f.pass}});
        failures += f.pass ? 0 : 1;
    }
    return {{"grid", rows}, {"violations", failures}};
}

json header_json(const HeaderInfo& info)
{
    json h{{"tool", "erfq"},
           {"suite", info.suite},
           {"seed", info.seed ? json(*info.seed) : json(nullptr)},
           {"defaults",
            {{"series_order", kDefaultOrder},
             {"cauchy_radius", 0.5},
             {"cauchy_samples", 256},
             {"lemma_samples", kLemmaSamples},
             {"class_budget", kClassBudget},
             {"mu_grid", "81 real points over [lower - 1, upper + 1] plus 16 points on |mu| = 2"},
             {"lambda_grid", kLambdaGrid},
             {"violation_tol", kViolationTol},
             {"attainment_tol", kAttainmentTol},
             {"agree_tol", kAgreeTol},
             {"bound_convention", "modulus: moduli of the prefactors with the engine-derived t"}}}};
    if (info.prime)
        h["convex_prime"] = to_string(*info.prime);
    return h;
}

std::vector<std::pair<std::string, std::string>> header_lines(const HeaderInfo& info)
{
    std::vector<std::pair<std::string, std::string>> out{{"tool", "erfq"}, {"suite", info.suite}};
    if (info.seed)
        out.emplace_back("seed", std::to_string(*info.seed));
    const auto h = header_json(info);
    for (const auto& [key, value] : h["defaults"].items())
        out.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
    if (info.prime)
        out.emplace_back("convex_prime", to_string(*info.prime));
    return out;
}

json make_document(const HeaderInfo& info, json body)
{
    json doc{{"header", header_json(info)}, {"timestamp", utc_timestamp()}};
    for (auto& [key, value] : body.items())
        doc[key] = value;
    return doc;
}

std::string render_csv(const Table& table, const std::vector<std::pair<std::string, std::string>>& header)
{
    std::ostringstream os;
    for (const auto& [k, v] : header)
        os << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << table.columns[i];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_escape(cell_text(row[i], 17));
        os << '\n';
    }
    return os.str();
}

std::string render_table(const Table& table, const std::vector<std::pair<std::string, std::string>>& header)
{
    std::ostringstream os;
    for (const auto& [k, v] : header)
        os << "# " << k << ": " << v << '\n';
    std::vector<std::vector<std::string>> text;
    std::vector<std::size_t> width(table.columns.size());
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        width[i] = table.columns[i].size();
    for (const auto& row : table.rows) {
        auto& line = text.emplace_back();
        for (std::size_t i = 0; i < row.size(); ++i) {
            line.push_back(cell_text(row[i], 12));
            width[i] = std::max(width[i], line.back().size());
        }
    }
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os << cells[i];
            if (i + 1 < cells.size())
                os << std::string(width[i] - cells[i].size() + 2, ' ');
        }
        os << '\n';
    };
    emit(table.columns);
    for (const auto& line : text)
        emit(line);
    return os.str();
}

namespace {

std::vector<Cell> bound_row(const BoundReport& r, bool lemma)
{
    std::vector<Cell> row{r.quantity};
    if (lemma) {
        row.emplace_back(r.mu.real());
    } else {
        row.emplace_back(r.mu.real());
        row.emplace_back(r.mu.imag());
    }
    row.insert(row.end(), {Cell(r.regime), Cell(r.theoretical), Cell(r.empirical_sup), Cell(r.margin),
                           Cell(r.violation), Cell(r.attainment_gap), Cell(r.named_witness), Cell(r.named_gap),
                           Cell(r.witness.origin), Cell(r.witness.label), Cell(variant_name(r.witness.w)),
                           Cell(as_int(r.samples)), Cell(as_int(r.seed, 0))});
    return row;
}

const std::vector<std::string> kBoundTail{"regime",        "theoretical",   "empirical_sup", "margin",
                                          "violation",     "attainment_gap", "named_witness", "named_gap",
                                          "witness_origin", "witness_label",  "witness_variant", "samples",
                                          "seed"};

} // namespace

Table lemma_table(const LemmaReport& r)
{
    Table t;
    t.columns = {"quantity", "t"};
    t.columns.insert(t.columns.end(), kBoundTail.begin(), kBoundTail.end());
    for (const auto& b : r.functional)
        t.rows.push_back(bound_row(b, true));
    for (const auto& b : r.improved)
        t.rows.push_back(bound_row(b, true));
    return t;
}

Table class_table(const ClassSweepReport& r)
{
    Table t;
    t.columns = {"quantity", "mu_re", "mu_im"};
    t.columns.insert(t.columns.end(), kBoundTail.begin(), kBoundTail.end());
    for (const auto& b : r.reports)
        t.rows.push_back(bound_row(b, false));
    return t;
}

Table reconciliation_table(const ReconciliationReport& r)
{
    Table t;
    t.columns = {"quantity", "role", "draw", "printed_re", "printed_im", "engine_re", "engine_im", "agree", "note"};
    for (const auto& e : r.entries)
        t.rows.push_back({e.quantity, e.role, std::int64_t{e.draw}, e.printed_value.real(), e.printed_value.imag(),
                          e.engine_value.real(), e.engine_value.imag(), e.agree, e.note});
    return t;
}

Table reconciliation_summary_table(const ReconciliationReport& r)
{
    Table t;
    t.columns = {"quantity", "role", "draws", "agreements", "max_rel_error"};
    for (const auto& s : r.summary)
        t.rows.push_back({s.quantity, s.role, std::int64_t{s.draws}, std::int64_t{s.agreements}, s.max_rel_error});
    return t;
}

Table floor_table(const std::vector<FloorReport>& r)
{
    Table t;
    t.columns = {"k", "alpha", "floor", "min_re", "argmin_re", "argmin_im", "slack", "pass"};
    for (const auto& f : r)
        t.rows.push_back({f.k, f.alpha, f.floor, f.min_re, f.argmin.real(), f.argmin.imag(), f.slack, f.pass});
    return t;
}

} // namespace erfq::io
