#include "chaosbound/report.hpp"

#include <charconv>
#include <cmath>

namespace chaosbound {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return {buf, res.ptr};
}

namespace {

template <class T>
std::string cell(const std::optional<T>& v) {
    if (!v) return {};
    if constexpr (std::is_floating_point_v<T>) {
        return format_double(*v);
    } else {
        return std::to_string(*v);
    }
}

template <class T>
nlohmann::json jval(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string csv_line(const ReportRow& row) {
    std::string out = row.kind;
    for (const std::string& c : {cell(row.H), cell(row.n), cell(row.q), cell(row.k), cell(row.d),
                                 format_double(row.value), cell(row.rate_normalized), row.method,
                                 cell(row.std_error)}) {
        out += ',';
        out += c;
    }
    return out;
}

nlohmann::json row_to_json(const ReportRow& row) {
    return nlohmann::json{{"kind", row.kind},
                          {"H", jval(row.H)},
                          {"n", jval(row.n)},
                          {"q", jval(row.q)},
                          {"k", jval(row.k)},
                          {"d", jval(row.d)},
                          {"value", row.value},
                          {"rate_normalized", jval(row.rate_normalized)},
                          {"method", row.method},
                          {"stderr", jval(row.std_error)}};
}

std::vector<ReportRow> report_rows(const BoundReport& rep) {
    ReportRow main;
    main.kind = to_string(rep.kind);
    main.H = rep.H;
    main.n = rep.n;
    main.q = rep.q;
    if (rep.k != 0) main.k = rep.k;
    main.d = rep.d;
    main.value = rep.value;
    main.rate_normalized = rep.rate_normalized;
    main.method = to_string(rep.method);
    main.std_error = rep.std_error;
    std::vector<ReportRow> rows{main};
    for (const auto& [name, v] : rep.details) {
        ReportRow r = main;
        r.kind = main.kind + ":" + name;
        r.value = v;
        r.rate_normalized.reset();
        r.std_error.reset();
        rows.push_back(r);
    }
    return rows;
}

nlohmann::json report_to_json(const BoundReport& rep) {
    nlohmann::json j{{"kind", to_string(rep.kind)},
                     {"H", rep.H},
                     {"n", rep.n},
                     {"q", rep.q},
                     {"k", rep.k != 0 ? nlohmann::json(rep.k) : nlohmann::json(nullptr)},
                     {"d", rep.d},
                     {"value", rep.value},
                     {"rate", rep.rate},
                     {"rate_normalized", rep.rate_normalized},
                     {"method", to_string(rep.method)},
                     {"stderr", jval(rep.std_error)}};
    nlohmann::json details = nlohmann::json::object();
    for (const auto& [name, v] : rep.details) details[name] = v;
    j["details"] = std::move(details);
    return j;
}

}  // namespace chaosbound
