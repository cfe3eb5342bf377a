#pragma once

// JSON documents and CSV/table renderings of the verifier reports. Every
// document carries a header with the run defaults and a top-level
// "timestamp" that the payload hash skips.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "erfq/bounds.hpp"
#include "erfq/coefficients.hpp"
#include "erfq/verifier.hpp"

namespace erfq::io {

using nlohmann::json;

json to_json(cplx z);
json to_json(const TruncatedSeries& s);
/// {"k","alpha","t","A","coeffs"}; t and A are null outside their branches.
json to_json(const ConicParams& params, const TruncatedSeries& coeffs);
json to_json(const CoeffResult& r);
json to_json(const SchwarzSpec& spec);
json to_json(const PhiSpec& spec);
json to_json(const Witness& w);
json to_json(const BoundReport& r);
json to_json(const Thresholds& th);
json to_json(const ClassParams& params);
json to_json(const LemmaReport& r);
json to_json(const ClassSweepReport& r);
json to_json(const ReconciliationReport& r);
json to_json(const std::vector<FloorReport>& r);

/// Defaults echoed in every report header.
struct HeaderInfo {
    std::string suite;
    std::optional<std::uint64_t> seed;
    std::optional<ConvexPrime> prime;
};
json header_json(const HeaderInfo& info);
/// key = value lines for table and CSV preambles.
std::vector<std::pair<std::string, std::string>> header_lines(const HeaderInfo& info);

/// {"header": ..., "timestamp": <UTC ISO-8601>, <body fields>}.
json make_document(const HeaderInfo& info, json body);

/// FNV-1a 64 of the compact dump with the top-level "timestamp" removed, as 16 hex digits.
std::string payload_hash(const json& document);
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

// --- tabular output --------------------------------------------------------

using Cell = std::variant<std::string, double, std::int64_t, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Header lines as "# key=value", then the column line, then rows; doubles as %.17g.
std::string render_csv(const Table& table, const std::vector<std::pair<std::string, std::string>>& header);
/// Aligned columns, doubles as %.12g, header lines prefixed by "# ".
std::string render_table(const Table& table, const std::vector<std::pair<std::string, std::string>>& header);

Table lemma_table(const LemmaReport& r);
Table class_table(const ClassSweepReport& r);
Table reconciliation_table(const ReconciliationReport& r);
Table reconciliation_summary_table(const ReconciliationReport& r);
Table floor_table(const std::vector<FloorReport>& r);

std::string format_double(double x, int digits = 17);

} // namespace erfq::io
