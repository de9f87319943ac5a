#include "chaosbound/cli.hpp"
#include "chaosbound/fbm_bounds.hpp"

#include <doctest.h>
#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

using chaosbound::cli::run;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "chaosbound");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& s) {
    double v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    REQUIRE(r.ec == std::errc{});
    return v;
}

}  // namespace

TEST_CASE("bound example at H = 1/2, n = 12") {
    const auto r = invoke({"--no-timestamp", "bound", "--hurst", "0.5", "--n", "12", "--order", "2"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j.contains("generated_at") == false);
    const auto& rep = j["reports"][0];
    CHECK(rep["kind"] == "kolmogorov");
    CHECK(rep["value"].get<double>() == doctest::Approx(0.40825).epsilon(1e-5));
    bool found = false;
    for (const auto& row : j["rows"])
        if (row["kind"] == "kolmogorov:fourth_cumulant") {
            CHECK(row["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
            found = true;
        }
    CHECK(found);
}

TEST_CASE("non-Gaussian regime exits with the domain code") {
    const auto r = invoke({"bound", "--hurst", "0.8", "--n", "64"});
    CHECK(r.code == chaosbound::cli::kExitDomain);
    CHECK(r.err.find("non-central") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("usage errors") {
    CHECK(invoke({}).code == chaosbound::cli::kExitUsage);
    CHECK(invoke({"frobnicate"}).code == chaosbound::cli::kExitUsage);
    CHECK(invoke({"bound", "--bogus", "1"}).code == chaosbound::cli::kExitUsage);
    CHECK(invoke({"bound", "--hurst", "1.5"}).code == chaosbound::cli::kExitUsage);
    CHECK(invoke({"bound", "--n", "0"}).code == chaosbound::cli::kExitUsage);
    CHECK(invoke({"--format", "xml", "bound"}).code == chaosbound::cli::kExitUsage);
    CHECK(invoke({"simulate", "--kmax", "9"}).code == chaosbound::cli::kExitUsage);
    CHECK(invoke({"bound", "--partition", "0.5,1"}).code == chaosbound::cli::kExitUsage);
    const auto h = invoke({"bound", "--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("--hurst") != std::string::npos);
}

TEST_CASE("CSV cells equal the JSON values") {
    const std::vector<std::string> base{"--no-timestamp", "bound", "--hurst", "0.3,0.6,0.75", "--n", "17,256",
                                        "--moment-k", "3,5", "--partition", "0,0.5,1"};
    auto json_args = base;
    auto csv_args = base;
    csv_args.insert(csv_args.begin(), {"--format", "csv"});
    const auto rj = invoke(json_args), rc = invoke(csv_args);
    REQUIRE(rj.code == 0);
    REQUIRE(rc.code == 0);
    const auto rows = json::parse(rj.out)["rows"];
    const auto lines = split(rc.out, '\n');
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "kind,H,n,q,k,d,value,rate_normalized,method,stderr");
    std::size_t i = 0;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        if (lines[l].empty()) continue;
        const auto cells = split(lines[l], ',');
        REQUIRE(cells.size() == 10);
        REQUIRE(i < rows.size());
        const auto& row = rows[i++];
        CHECK(cells[0] == row["kind"].get<std::string>());
        CHECK(parse_double(cells[6]) == row["value"].get<double>());
        if (row.contains("rate_normalized") && !row["rate_normalized"].is_null())
            CHECK(parse_double(cells[7]) == row["rate_normalized"].get<double>());
        if (row.contains("H") && !row["H"].is_null()) CHECK(parse_double(cells[1]) == row["H"].get<double>());
    }
    CHECK(i == rows.size());
}

TEST_CASE("same arguments give byte-identical reports, regardless of threads") {
    const std::vector<std::string> tail{"mc-verify", "--hurst", "0.6", "--n", "64", "--reps", "20000", "--seed", "7"};
    std::vector<std::string> outs;
    for (const char* t : {"1", "3", "1"}) {
        std::vector<std::string> args{"--no-timestamp", "--threads", t};
        args.insert(args.end(), tail.begin(), tail.end());
        const auto r = invoke(args);
        CHECK(r.code == 0);
        outs.push_back(r.out);
    }
    CHECK(outs[0] == outs[1]);
    CHECK(outs[0] == outs[2]);
    const auto j = json::parse(outs[0]);
    CHECK(j["ok"] == true);
    CHECK(j["checks"].size() == 1);
}

TEST_CASE("simulate writes moments and a sample file") {
    const auto path = std::filesystem::temp_directory_path() / "chaosbound_cli.qvmc";
    const auto r = invoke({"--no-timestamp", "--format", "csv", "simulate", "--hurst", "0.7", "--n", "32", "--reps",
                           "2000", "--kmax", "3", "--samples-out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("mc-moment") != std::string::npos);
    CHECK(std::filesystem::file_size(path) == 32 + 8 * 2000);
    std::filesystem::remove(path);
    CHECK(invoke({"simulate", "--hurst", "0.6,0.7", "--samples-out", path.string()}).code ==
          chaosbound::cli::kExitUsage);
}

TEST_CASE("tensor selftest prints one line per identity and round-trips kernels") {
    const auto dump = std::filesystem::temp_directory_path() / "chaosbound_cases.json";
    const auto r = invoke({"tensor-selftest", "--seed", "3", "--cases", "24", "--dump-kernels", dump.string()});
    CHECK(r.code == 0);
    const auto lines = split(r.out, '\n');
    int pass = 0;
    for (const auto& l : lines)
        if (l.rfind("PASS ", 0) == 0) ++pass;
    CHECK(pass >= 8);
    CHECK(r.out.find("FAIL") == std::string::npos);
    const auto again = invoke({"tensor-selftest", "--load", dump.string()});
    CHECK(again.code == 0);
    CHECK(again.out == r.out);
    {
        std::ofstream os(dump);
        os << "{\"cases\": [ {\"dim\": 2, \"kernels\": [{\"order\": 1, \"dim\": 3, \"entries\": []}]} ]}";
    }
    CHECK(invoke({"tensor-selftest", "--load", dump.string()}).code == chaosbound::cli::kExitUsage);
    std::filesystem::remove(dump);
}

TEST_CASE("stein-eval table and checks") {
    const auto r = invoke({"--format", "csv", "stein-eval", "--z", "0,1", "--x-min", "-3", "--x-max", "3", "--points",
                           "7"});
    REQUIRE(r.code == 0);
    const auto lines = split(r.out, '\n');
    CHECK(lines[0] == "z,x,value,derivative,residual,at_kink");
    CHECK(lines.size() == 1 + 14 + 1);
    const auto j = json::parse(invoke({"--no-timestamp", "stein-eval", "--z", "0", "--points", "101"}).out);
    CHECK(j["ok"] == true);
    CHECK(j["checks"].size() == 3);
    CHECK(j["table"].size() == 101);
    CHECK(invoke({"stein-eval", "--points", "1"}).code == chaosbound::cli::kExitUsage);
}

TEST_CASE("output file") {
    const auto path = std::filesystem::temp_directory_path() / "chaosbound_report.json";
    const auto r = invoke({"--no-timestamp", "--output", path.string(), "bound", "--hurst", "0.4", "--n", "100"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream is(path);
    const auto j = json::parse(is);
    CHECK(j["reports"][0]["value"].get<double>() == chaosbound::kolmogorov_bound(100, 0.4).value);
    std::filesystem::remove(path);
}
