#include "chaosbound/cli.hpp"

#include "chaosbound/chaos_json.hpp"
#include "chaosbound/errors.hpp"
#include "chaosbound/fbm_bounds.hpp"
#include "chaosbound/normal.hpp"
#include "chaosbound/parallel.hpp"
#include "chaosbound/report.hpp"
#include "chaosbound/selftest.hpp"
#include "chaosbound/simulate.hpp"
#include "chaosbound/stein.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

namespace chaosbound::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct Common {
    unsigned threads = 0;
    bool no_timestamp = false;
    std::string format = "json";
    std::string output;
};

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

struct Document {
    std::string command;
    std::vector<json> reports;
    std::vector<ReportRow> rows;
    std::vector<Check> checks;
};

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit(const std::string& text, const Common& c, std::ostream& out) {
    if (c.output.empty()) {
        out << text;
        return;
    }
    std::ofstream os(c.output, std::ios::binary | std::ios::trunc);
    if (!os) throw ArgumentError("cannot open output file " + c.output);
    os << text;
}

void write_document(const Document& doc, const Common& c, std::ostream& out) {
    std::string text;
    if (c.format == "csv") {
        text = std::string(kCsvHeader) + "\n";
        for (const auto& r : doc.rows) text += csv_line(r) + "\n";
        for (const auto& ch : doc.checks) {
            ReportRow r;
            r.kind = "check:" + ch.name;
            r.value = ch.passed ? 1.0 : 0.0;
            r.method = "check";
            text += csv_line(r) + "\n";
        }
    } else {
        json j;
        j["tool"] = "chaosbound";
        j["version"] = kVersion;
        j["command"] = doc.command;
        if (!c.no_timestamp) j["generated_at"] = utc_now();
        j["reports"] = doc.reports;
        json rows = json::array();
        for (const auto& r : doc.rows) rows.push_back(row_to_json(r));
        j["rows"] = std::move(rows);
        json checks = json::array();
        bool ok = true;
        for (const auto& ch : doc.checks) {
            checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
            ok = ok && ch.passed;
        }
        j["checks"] = std::move(checks);
        j["ok"] = ok;
        text = j.dump(2) + "\n";
    }
    emit(text, c, out);
}

bool all_passed(const Document& doc) {
    return std::all_of(doc.checks.begin(), doc.checks.end(), [](const Check& c) { return c.passed; });
}

void add_report(Document& doc, const BoundReport& rep) {
    doc.reports.push_back(report_to_json(rep));
    const auto rows = report_rows(rep);
    doc.rows.insert(doc.rows.end(), rows.begin(), rows.end());
}

void check_grid(const std::vector<double>& hs, const std::vector<std::int64_t>& ns) {
    if (hs.empty() || ns.empty()) throw ArgumentError("parameter grids must be non-empty");
    for (double h : hs) {
        if (!(h > 0.0 && h < 1.0)) throw ArgumentError("--hurst values must lie in (0, 1)");
    }
    for (auto n : ns) {
        if (n < 1) throw ArgumentError("--n values must be >= 1");
    }
}

// --- bound --------------------------------------------------------------

struct BoundArgs {
    std::vector<double> hurst{0.5};
    std::vector<std::int64_t> n{64};
    int order = 2;
    std::vector<int> moment_k;
    std::vector<double> partition;
};

int cmd_bound(const BoundArgs& a, const Common& c, std::ostream& out) {
    check_grid(a.hurst, a.n);
    Document doc{"bound", {}, {}, {}};
    std::optional<TimePartition> part;
    if (!a.partition.empty()) part.emplace(a.partition);
    for (double H : a.hurst) {
        for (auto n : a.n) {
            add_report(doc, kolmogorov_bound(n, H, a.order));
            for (int k : a.moment_k) add_report(doc, moment_gap_report(k, n, H));
            if (part) add_report(doc, multidim_qv_bound(*part, n, H));
        }
    }
    write_document(doc, c, out);
    return kExitOk;
}

// --- simulate / mc-verify -----------------------------------------------

struct McArgs {
    std::vector<double> hurst{0.5};
    std::vector<std::int64_t> n{64};
    int order = 2;
    std::uint64_t reps = 100000;
    std::uint64_t seed = 1;
    int k_max = 4;
    std::string samples_out;
};

void add_mc_rows(Document& doc, const McRun& run, int k_max) {
    const auto& m = run.model;
    for (const auto& est : mc_moments(run, k_max)) {
        ReportRow r;
        r.kind = "mc-moment";
        r.H = m.H;
        r.n = m.n;
        r.q = m.q;
        r.k = est.k;
        r.d = 1;
        r.value = est.mean;
        r.method = "monte-carlo";
        r.std_error = est.std_error;
        doc.rows.push_back(r);
    }
}

ReportRow kolmogorov_row(const McRun& run, const std::string& kind, double value) {
    ReportRow r;
    r.kind = kind;
    r.H = run.model.H;
    r.n = run.model.n;
    r.q = run.model.q;
    r.d = 1;
    r.value = value;
    r.method = "monte-carlo";
    return r;
}

McModel model_for(double H, std::int64_t n, int order) {
    McModel m;
    m.kind = order == 2 ? StatisticKind::quadratic_variation : StatisticKind::hermite_variation;
    m.H = H;
    m.n = n;
    m.q = order;
    return m;
}

int cmd_simulate(const McArgs& a, const Common& c, std::ostream& out) {
    check_grid(a.hurst, a.n);
    if (a.order < 2) throw ArgumentError("--order must be >= 2");
    if (!a.samples_out.empty() && a.hurst.size() * a.n.size() != 1) {
        throw ArgumentError("--samples-out needs a single (H, n) grid point");
    }
    Document doc{"simulate", {}, {}, {}};
    for (double H : a.hurst) {
        for (auto n : a.n) {
            const auto run = run_monte_carlo(model_for(H, n, a.order), a.seed, a.reps);
            add_mc_rows(doc, run, a.k_max);
            if (run.replicates() >= 10000) {
                const auto kol = mc_kolmogorov(run);
                doc.rows.push_back(kolmogorov_row(run, "mc-kolmogorov", kol.distance));
                doc.rows.push_back(kolmogorov_row(run, "mc-kolmogorov:dkw_radius", kol.dkw_radius));
            }
            if (!a.samples_out.empty()) write_qvmc(a.samples_out, run);
        }
    }
    write_document(doc, c, out);
    return kExitOk;
}

int cmd_mc_verify(const McArgs& a, const Common& c, std::ostream& out) {
    check_grid(a.hurst, a.n);
    Document doc{"mc-verify", {}, {}, {}};
    for (double H : a.hurst) {
        for (auto n : a.n) {
            const auto rep = kolmogorov_bound(n, H, 2);
            add_report(doc, rep);
            const auto run = run_monte_carlo(model_for(H, n, 2), a.seed, a.reps);
            add_mc_rows(doc, run, a.k_max);
            const auto kol = mc_kolmogorov(run);
            doc.rows.push_back(kolmogorov_row(run, "mc-kolmogorov", kol.distance));
            doc.rows.push_back(kolmogorov_row(run, "mc-kolmogorov:dkw_radius", kol.dkw_radius));
            const bool ok = kol.distance <= rep.value + kol.dkw_radius;
            doc.checks.push_back({"domination H=" + format_double(H) + " n=" + std::to_string(n), ok,
                                  "empirical " + format_double(kol.distance) + " <= bound " + format_double(rep.value) +
                                      " + radius " + format_double(kol.dkw_radius)});
        }
    }
    write_document(doc, c, out);
    return all_passed(doc) ? kExitOk : kExitCheckFailed;
}

// --- tensor-selftest ------------------------------------------------------

struct SelftestArgs {
    std::uint64_t seed = 1;
    int cases = 200;
    double tolerance = 1e-10;
    std::string dump;
    std::string load;
};

std::vector<ChaosExpansion> load_cases(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ArgumentError("cannot open " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ArgumentError("invalid JSON in " + path + ": " + e.what());
    }
    const json& list = j.is_object() && j.contains("cases") ? j.at("cases") : j;
    if (!list.is_array()) throw ArgumentError(path + ": expected an array of expansions or {\"cases\": [...]}");
    std::vector<ChaosExpansion> out;
    for (const auto& e : list) out.push_back(expansion_from_json(e));
    if (out.empty()) throw ArgumentError(path + ": no expansions");
    return out;
}

int cmd_selftest(const SelftestArgs& a, const Common& c, std::ostream& out) {
    const auto cases = a.load.empty() ? selftest_cases(a.seed, a.cases) : load_cases(a.load);
    if (!a.dump.empty()) {
        json list = json::array();
        for (const auto& z : cases) list.push_back(expansion_to_json(z));
        std::ofstream os(a.dump, std::ios::trunc);
        if (!os) throw ArgumentError("cannot open " + a.dump);
        os << json{{"cases", list}}.dump(1) << "\n";
    }
    const auto results = run_identity_suite(cases, a.tolerance);
    Document doc{"tensor-selftest", {}, {}, {}};
    std::ostringstream lines;
    for (const auto& r : results) {
        const char* tag = r.checks == 0 ? "SKIP" : (r.passed ? "PASS" : "FAIL");
        lines << tag << " " << r.name << " checks=" << r.checks << " max_error=" << format_double(r.max_error)
              << "\n";
        doc.checks.push_back({r.name, r.passed, "checks=" + std::to_string(r.checks) +
                                                     " max_error=" + format_double(r.max_error)});
    }
    if (c.output.empty()) {
        out << lines.str();
    } else {
        out << lines.str();
        write_document(doc, c, out);
    }
    return all_passed(doc) ? kExitOk : kExitCheckFailed;
}

// --- stein-eval -------------------------------------------------------------

struct SteinArgs {
    std::vector<double> z{-2.0, -0.5, 0.0, 0.5, 2.0};
    double x_min = -8.0;
    double x_max = 8.0;
    std::int64_t points = 201;
};

int cmd_stein(const SteinArgs& a, const Common& c, std::ostream& out) {
    if (a.z.empty()) throw ArgumentError("--z must be non-empty");
    if (a.points < 2) throw ArgumentError("--points must be >= 2");
    if (!(a.x_min < a.x_max)) throw ArgumentError("--x-min must be below --x-max");
    std::string csv = "z,x,value,derivative,residual,at_kink\n";
    json table = json::array();
    double sup = 0.0;
    double lip = 0.0;
    double resid = 0.0;
    for (double z : a.z) {
        const SteinSolution f(z);
        double prev_x = 0.0;
        double prev_v = 0.0;
        for (std::int64_t i = 0; i < a.points; ++i) {
            const double x = a.x_min + (a.x_max - a.x_min) * static_cast<double>(i) / static_cast<double>(a.points - 1);
            const auto s = f(x);
            const double r = s.at_kink ? 0.0 : s.derivative - x * s.value - ((x <= z ? 1.0 : 0.0) - normal_cdf(z));
            sup = std::max(sup, std::abs(s.value));
            if (!s.at_kink) resid = std::max(resid, std::abs(r));
            if (i > 0) lip = std::max(lip, std::abs(s.value - prev_v) / (x - prev_x));
            prev_x = x;
            prev_v = s.value;
            csv += format_double(z) + "," + format_double(x) + "," + format_double(s.value) + "," +
                   format_double(s.derivative) + "," + format_double(r) + "," + (s.at_kink ? "1" : "0") + "\n";
            table.push_back({{"z", z}, {"x", x}, {"value", s.value}, {"derivative", s.derivative},
                             {"residual", r}, {"at_kink", s.at_kink}});
        }
    }
    const std::vector<Check> checks{
        {"sup-bound", sup <= SteinSolution::kSupBound + 1e-12, "max |f_z| = " + format_double(sup)},
        {"lipschitz", lip <= 1.0 + 1e-9, "max quotient = " + format_double(lip)},
        {"stein-equation", resid <= 1e-12, "max residual = " + format_double(resid)}};
    std::string text;
    if (c.format == "csv") {
        text = csv;
    } else {
        json j{{"tool", "chaosbound"}, {"version", kVersion}, {"command", "stein-eval"}};
        if (!c.no_timestamp) j["generated_at"] = utc_now();
        j["table"] = std::move(table);
        json cj = json::array();
        bool ok = true;
        for (const auto& ch : checks) {
            cj.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
            ok = ok && ch.passed;
        }
        j["checks"] = std::move(cj);
        j["ok"] = ok;
        text = j.dump(2) + "\n";
    }
    emit(text, c, out);
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& ch) { return ch.passed; });
    return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Normal-approximation bounds on Wiener chaos and fBm quadratic variations"};
    app.name(args.empty() ? "chaosbound" : args.front());
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--threads", common.threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();
    app.add_flag("--no-timestamp", common.no_timestamp, "Omit the generation time from JSON output");
    app.add_option("--format", common.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--output", common.output, "Write the report here instead of stdout");

    BoundArgs bound_args;
    auto* bound = app.add_subcommand("bound", "Exact Kolmogorov, moment-gap and multidimensional bounds over an (H, n) grid");
    bound->add_option("--hurst", bound_args.hurst, "Hurst indices (comma list)")->delimiter(',')->capture_default_str();
    bound->add_option("--n", bound_args.n, "Sample sizes (comma list)")->delimiter(',')->capture_default_str();
    bound->add_option("--order", bound_args.order, "Hermite order q (2 = quadratic variation)")
        ->check(CLI::Range(2, 8))
        ->capture_default_str();
    bound->add_option("--moment-k", bound_args.moment_k, "Also report moment-gap bounds for these k (comma list)")
        ->delimiter(',')
        ->check(CLI::Range(3, 30));
    bound->add_option("--partition", bound_args.partition, "Also report the multidimensional bound for 0,t1,...,td")
        ->delimiter(',');

    McArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo moments and Kolmogorov distance of the normalized variation");
    McArgs verify_args;
    auto* verify = app.add_subcommand("mc-verify", "Check that Monte Carlo Kolmogorov distances respect the exact bound");
    for (auto [cmd, a] : {std::pair{sim, &sim_args}, std::pair{verify, &verify_args}}) {
        cmd->add_option("--hurst", a->hurst, "Hurst indices (comma list)")->delimiter(',')->capture_default_str();
        cmd->add_option("--n", a->n, "Sample sizes (comma list)")->delimiter(',')->capture_default_str();
        cmd->add_option("--reps", a->reps, "Monte Carlo replicates")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--seed", a->seed, "Seed for every random draw")->capture_default_str();
        cmd->add_option("--kmax", a->k_max, "Highest moment estimated")->check(CLI::Range(1, 8))->capture_default_str();
    }
    sim->add_option("--order", sim_args.order, "Hermite order q (2 = quadratic variation)")
        ->check(CLI::Range(2, 8))
        ->capture_default_str();
    sim->add_option("--samples-out", sim_args.samples_out, "Write raw statistic values as a QVMC binary file");

    SelftestArgs st_args;
    auto* st = app.add_subcommand("tensor-selftest", "Check the exact chaos-algebra identities on random kernels");
    st->add_option("--seed", st_args.seed, "Seed for the random kernels")->capture_default_str();
    st->add_option("--cases", st_args.cases, "Number of random expansions")->check(CLI::Range(1, 100000))->capture_default_str();
    st->add_option("--tolerance", st_args.tolerance, "Relative tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    st->add_option("--dump-kernels", st_args.dump, "Write the test expansions as JSON");
    st->add_option("--load", st_args.load, "Read test expansions from JSON instead of generating them");

    SteinArgs stein_args;
    auto* stein = app.add_subcommand("stein-eval", "Tabulate the Stein solution f_z and its equation residual");
    stein->add_option("--z", stein_args.z, "Thresholds z (comma list)")->delimiter(',')->capture_default_str();
    stein->add_option("--x-min", stein_args.x_min, "Grid start")->capture_default_str();
    stein->add_option("--x-max", stein_args.x_max, "Grid end")->capture_default_str();
    stein->add_option("--points", stein_args.points, "Grid points per z")->capture_default_str();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << kVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "Run with --help for usage.\n";
        return kExitUsage;
    }

    set_worker_count(common.threads);
    try {
        if (bound->parsed()) return cmd_bound(bound_args, common, out);
        if (sim->parsed()) return cmd_simulate(sim_args, common, out);
        if (verify->parsed()) return cmd_mc_verify(verify_args, common, out);
        if (st->parsed()) return cmd_selftest(st_args, common, out);
        if (stein->parsed()) return cmd_stein(stein_args, common, out);
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace chaosbound::cli
