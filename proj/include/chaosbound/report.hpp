#pragma once

#include "chaosbound/fbm_bounds.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace chaosbound {

/// One line of the flat report table. Empty optionals print as empty cells.
struct ReportRow {
    std::string kind;
    std::optional<double> H;
    std::optional<std::int64_t> n;
    std::optional<int> q;
    std::optional<int> k;
    std::optional<int> d;
    double value = 0.0;
    std::optional<double> rate_normalized;
    std::string method = "exact";
    std::optional<double> std_error;
};

inline constexpr const char* kCsvHeader = "kind,H,n,q,k,d,value,rate_normalized,method,stderr";

/// 17 significant digits, '.' decimal point, independent of the locale.
[[nodiscard]] std::string format_double(double v);

[[nodiscard]] std::string csv_line(const ReportRow& row);
[[nodiscard]] nlohmann::json row_to_json(const ReportRow& row);

/// Main row plus one "<kind>:<name>" row per detail entry.
[[nodiscard]] std::vector<ReportRow> report_rows(const BoundReport& rep);
[[nodiscard]] nlohmann::json report_to_json(const BoundReport& rep);

}  // namespace chaosbound
