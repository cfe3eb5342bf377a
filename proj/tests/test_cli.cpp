#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "erfq/cli.hpp"
#include "erfq/report_io.hpp"

using namespace erfq;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else {
            cell += c;
        }
    }
    cells.push_back(cell);
    return cells;
}

struct Csv {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::size_t col(const std::string& name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name)
                return i;
        FAIL("missing column " << name);
        return 0;
    }
};

Csv parse_csv(const std::string& text)
{
    Csv csv;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (csv.columns.empty())
            csv.columns = split(line);
        else
            csv.rows.push_back(split(line));
    }
    return csv;
}

double num(const std::string& s) { return std::stod(s); }

} // namespace

TEST_CASE("exit-code matrix")
{
    struct Case {
        std::vector<std::string> args;
        int code;
    };
    const std::vector<Case> cases{
        {{}, 2},
        {{"nonsense"}, 2},
        {{"pk", "--k", "-1", "--alpha", "0"}, 2},
        {{"pk", "--k", "0", "--alpha", "1"}, 2},
        {{"pk", "--k", "0"}, 2},
        {{"pk", "--k", "abc", "--alpha", "0"}, 2},
        {{"pk", "--k", "0", "--alpha", "0", "--eval", "1"}, 2},
        {{"pk", "--k", "0", "--alpha", "0", "--eval", "0.5,x"}, 2},
        {{"pk", "--k", "0", "--alpha", "0", "--taylor", "0"}, 2},
        {{"pk", "--k", "0", "--alpha", "0", "--format", "xml"}, 2},
        {{"erf", "--order", "0"}, 2},
        {{"erf", "--order", "99"}, 2},
        {{"bounds", "--q", "1.5"}, 2},
        {{"bounds", "--q", "0"}, 2},
        {{"bounds", "--beta", "2"}, 2},
        {{"bounds", "--b", "0"}, 2},
        {{"bounds", "--b", "1", "--b-im", "1"}, 2},
        {{"bounds", "--kind", "spiral"}, 2},
        {{"bounds", "--c1", "2"}, 2},
        {{"bounds", "--c1", "-1", "--c2", "0"}, 2},
        {{"bounds", "--mu", "1,2,3"}, 2},
        {{"verify"}, 2},
        {{"verify", "lemma", "--samples", "0"}, 2},
        {{"verify", "lemma", "--t-step", "0", "--samples", "10"}, 2},
        {{"verify", "class", "--budget", "3"}, 2},
        {{"verify", "reconcile", "--draws", "0"}, 2},
        {{"verify", "class", "--k", "-2", "--budget", "100"}, 2},
        {{"verify", "lemma", "--seed", "-4"}, 2},
        {{"schwarz", "check", "--variant", "mobius-plus", "--lambda", "1.5"}, 2},
        {{"schwarz", "check", "--variant", "blaschke", "--zero", "2,0"}, 2},
        {{"schwarz", "check", "--variant", "explicit", "--coeff", "1.5"}, 1},
        {{"schwarz", "check", "--variant", "explicit", "--coeff", "0.5", "--coeff", "0.5"}, 0},
        {{"schwarz", "check", "--variant", "mobius-minus", "--lambda", "0.3"}, 0},
        {{"pk", "--k", "0", "--alpha", "0", "--taylor", "3"}, 0},
        {{"erf", "--order", "6", "--check"}, 0},
        {{"bounds"}, 0},
        {{"verify", "floor"}, 0},
        {{"verify", "reconcile", "--draws", "5"}, 0},
        {{"--help"}, 0},
    };
    for (const auto& c : cases) {
        const auto r = run(c.args);
        std::string joined;
        for (const auto& a : c.args)
            joined += a + " ";
        CHECK_MESSAGE(r.code == c.code, joined);
        if (c.code == 2) {
            // one-line diagnostic
            CHECK_MESSAGE(!r.err.empty(), joined);
            CHECK_MESSAGE(std::count(r.err.begin(), r.err.end(), '\n') == 1, joined);
        }
    }
}

TEST_CASE("ERFQ_SEED fallback")
{
    const std::vector<std::string> args{"schwarz", "sample", "--count", "3", "--format", "json"};
    setenv("ERFQ_SEED", "17", 1);
    const auto env = run(args);
    unsetenv("ERFQ_SEED");
    auto explicit_args = args;
    explicit_args.insert(explicit_args.end(), {"--seed", "17"});
    const auto flag = run(explicit_args);
    const auto zero = run(args);
    REQUIRE(env.code == 0);
    CHECK(io::payload_hash(json::parse(env.out)) == io::payload_hash(json::parse(flag.out)));
    CHECK(io::payload_hash(json::parse(env.out)) != io::payload_hash(json::parse(zero.out)));
    setenv("ERFQ_SEED", "abc", 1);
    CHECK(run(args).code == 2);
    unsetenv("ERFQ_SEED");
}

TEST_CASE("seeded runs are hash identical")
{
    const std::vector<std::string> args{"verify", "class", "--kind", "starlike-quasi", "--budget", "300",
                                        "--seed", "4",      "--format", "json"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    const auto ja = json::parse(a.out), jb = json::parse(b.out);
    CHECK(ja.contains("timestamp"));
    CHECK(io::payload_hash(ja) == io::payload_hash(jb));
    auto sa = ja, sb = jb;
    sa.erase("timestamp");
    sb.erase("timestamp");
    CHECK(sa.dump() == sb.dump());
    auto thread_args = args;
    thread_args.insert(thread_args.end(), {"--threads", "1"});
    CHECK(io::payload_hash(json::parse(run(thread_args).out)) == io::payload_hash(ja));
    auto other = args;
    other[7] = "5";
    CHECK(io::payload_hash(json::parse(run(other).out)) != io::payload_hash(ja));
}

TEST_CASE("bounds csv and json carry the same numbers")
{
    for (const std::string kind : {"starlike-sub", "convex-sub", "convex-quasi"}) {
        const auto j = run({"bounds", "--kind", kind, "--format", "json"});
        const auto c = run({"bounds", "--kind", kind, "--format", "csv"});
        REQUIRE(j.code == 0);
        REQUIRE(c.code == 0);
        const auto doc = json::parse(j.out);
        const auto csv = parse_csv(c.out);
        CHECK(csv.columns == std::vector<std::string>{"mu_re", "mu_im", "regime", "bound", "sigma1", "sigma2", "sigma3"});
        REQUIRE(csv.rows.size() == doc["rows"].size());
        for (std::size_t i = 0; i < csv.rows.size(); ++i) {
            const auto& row = doc["rows"][i];
            CHECK(num(csv.rows[i][0]) == row["mu"][0].get<double>());
            CHECK(num(csv.rows[i][1]) == row["mu"][1].get<double>());
            CHECK(csv.rows[i][2] == row["regime"].get<std::string>());
            CHECK(num(csv.rows[i][3]) == row["bound"].get<double>());
            CHECK(num(csv.rows[i][4]) == doc["thresholds"]["sigma1"][0].get<double>());
        }
    }
    const auto anchor = run({"bounds", "--kind", "starlike-sub", "--mu", "1", "--format", "json"});
    const auto doc = json::parse(anchor.out);
    CHECK(doc["thresholds"]["sigma1"][0].get<double>() == doctest::Approx(10.0 / 9.0).epsilon(1e-14));
    CHECK(doc["rows"][0]["bound"].get<double>() == doctest::Approx(80.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("verify csv and json carry the same numbers")
{
    const auto j = run({"verify", "class", "--budget", "200", "--seed", "2", "--format", "json"});
    const auto c = run({"verify", "class", "--budget", "200", "--seed", "2", "--format", "csv"});
    REQUIRE(j.code == 0);
    const auto doc = json::parse(j.out);
    const auto csv = parse_csv(c.out);
    REQUIRE(csv.rows.size() == doc["reports"].size());
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        const auto& r = doc["reports"][i];
        CHECK(num(csv.rows[i][csv.col("mu_re")]) == r["mu"][0].get<double>());
        CHECK(num(csv.rows[i][csv.col("mu_im")]) == r["mu"][1].get<double>());
        for (const std::string key : {"theoretical", "empirical_sup", "margin", "attainment_gap", "named_gap"})
            CHECK(num(csv.rows[i][csv.col(key)]) == r[key].get<double>());
        CHECK(csv.rows[i][csv.col("witness_label")] == r["witness"]["label"].get<std::string>());
    }

    const auto jr = run({"verify", "reconcile", "--draws", "4", "--format", "json"});
    const auto cr = run({"verify", "reconcile", "--draws", "4", "--format", "csv"});
    const auto rdoc = json::parse(jr.out);
    const auto rcsv = parse_csv(cr.out);
    REQUIRE(rcsv.rows.size() == rdoc["entries"].size());
    for (std::size_t i = 0; i < rcsv.rows.size(); ++i) {
        const auto& e = rdoc["entries"][i];
        CHECK(rcsv.rows[i][0] == e["quantity"].get<std::string>());
        CHECK(num(rcsv.rows[i][rcsv.col("printed_re")]) == e["printed_value"][0].get<double>());
        CHECK(num(rcsv.rows[i][rcsv.col("engine_im")]) == e["engine_value"][1].get<double>());
    }
}

TEST_CASE("pk and erf outputs")
{
    const auto p = json::parse(run({"pk", "--k", "0", "--alpha", "0", "--taylor", "5", "--format", "json"}).out);
    const std::vector<double> expected{1, 2, 2, 2, 2, 2};
    CHECK(p["coeffs"]["re"].get<std::vector<double>>() == expected);
    CHECK(p["t"].is_null());
    const auto p1 = json::parse(run({"pk", "--k", "1", "--alpha", "0", "--taylor", "2", "--format", "json"}).out);
    CHECK(p1["coeffs"]["re"][1].get<double>() == doctest::Approx(0.8105694691).epsilon(1e-9));
    const auto e = json::parse(run({"pk", "--k", "0.5", "--alpha", "0", "--eval", "0", "--format", "json"}).out);
    CHECK(e["values"][0]["p"][0].get<double>() == 1.0);
    const auto erf = run({"erf", "--order", "4"});
    CHECK(erf.out.find("-1/3") != std::string::npos);
    CHECK(erf.out.find("1/10") != std::string::npos);
    CHECK(erf.out.find("-1/42") != std::string::npos);
    const auto one = json::parse(run({"erf", "--order", "1", "--format", "json"}).out);
    CHECK(one["coefficients"].size() == 1);
    const auto chk = json::parse(run({"erf", "--order", "8", "--check", "--format", "json"}).out);
    CHECK(chk["recompose_error"].get<double>() < 1e-14);
}

TEST_CASE("verify writes report files")
{
    const auto dir = std::filesystem::temp_directory_path() / "erfq_cli_reports";
    std::filesystem::remove_all(dir);
    const auto r = run({"verify", "floor", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(dir / "floor.json"));
    CHECK(std::filesystem::exists(dir / "floor.csv"));
    std::ifstream f(dir / "floor.json");
    const auto doc = json::parse(f);
    CHECK(doc["grid"].size() == 12);
    CHECK(doc["header"]["defaults"]["series_order"] == 12);
    std::filesystem::remove_all(dir);
}
