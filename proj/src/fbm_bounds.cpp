#include "chaosbound/fbm_bounds.hpp"

#include "chaosbound/errors.hpp"
#include "chaosbound/numeric.hpp"
#include "chaosbound/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace chaosbound {

const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::kolmogorov: return "kolmogorov";
        case BoundKind::multidim_smooth: return "multidim-smooth";
        case BoundKind::moment_gap: return "moment-gap";
    }
    return "unknown";
}

const char* to_string(Method m) { return m == Method::exact ? "exact" : "monte-carlo"; }

std::optional<double> BoundReport::detail(const std::string& name) const {
    for (const auto& [key, v] : details) {
        if (key == name) return v;
    }
    return std::nullopt;
}

namespace {

void check_n(std::int64_t n) {
    if (n < 1) throw ArgumentError("n must be >= 1, got " + std::to_string(n));
}

void check_critical(double H, int q) {
    const double critical = 1.0 - 1.0 / (2.0 * q);
    if (H > critical + kCriticalHurstTol) {
        throw DomainError("H = " + std::to_string(H) + " exceeds the critical value " + std::to_string(critical) +
                          " for q = " + std::to_string(q) +
                          ": the normalized variation does not converge to a Gaussian law (non-central "
                          "Hermite-distribution regime); no normal-approximation bound applies");
    }
}

std::vector<double> powered(const std::vector<double>& v, int p) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [p](double x) { return std::pow(x, p); });
    return out;
}

}  // namespace

double bm_rate(std::int64_t n, double H) {
    check_n(n);
    if (!(H > 0.0 && H < 1.0)) throw ArgumentError("Hurst index must lie in (0, 1)");
    check_critical(H, 2);
    const double nd = static_cast<double>(n);
    if (H <= 0.5) return 1.0 / std::sqrt(nd);
    if (H < 0.75 - kCriticalHurstTol) return std::pow(nd, 2.0 * H - 1.5);
    return n == 1 ? 1.0 : 1.0 / std::sqrt(std::log(nd));
}

double contraction_norm_sq(std::int64_t n, double H) {
    check_n(n);
    const FbmQVModel model(H, n);
    const auto r = model.rho();
    const double tr = toeplitz_trace_fourth(r);
    return tr / (model.sigma_sq() * model.sigma_sq());
}

double fourth_cumulant_exact(std::int64_t n, double H) { return 48.0 * contraction_norm_sq(n, H); }

BoundReport kolmogorov_bound(std::int64_t n, double H, int q) {
    check_n(n);
    if (q < 2) throw ArgumentError("kolmogorov_bound: q must be >= 2");
    if (!(H > 0.0 && H < 1.0)) throw ArgumentError("Hurst index must lie in (0, 1)");
    check_critical(H, q);

    BoundReport rep;
    rep.kind = BoundKind::kolmogorov;
    rep.H = H;
    rep.n = n;
    rep.q = q;
    rep.d = 1;
    rep.method = Method::exact;

    if (q == 2) {
        const double c = contraction_norm_sq(n, H);
        const double kappa4 = 48.0 * c;
        rep.value = std::sqrt(kappa4 / 6.0);
        rep.rate = bm_rate(n, H);
        rep.details = {{"fourth_cumulant", kappa4},
                       {"contraction_norm_sq", c},
                       {"direct_bound", std::sqrt(8.0 * c)},
                       {"sigma_sq", sigma_sq(n, H)}};
    } else {
        const double sig2 = hermite_variation_sigma_sq(n, H, q);
        const auto base = rho_table(n, H);
        CompensatedSum kappa;
        for (int r = 1; r < q; ++r) {
            const double tr = toeplitz_trace_abab(powered(base, r), powered(base, q - r));
            const double norm_sq = tr / (sig2 * sig2);
            const double rf = factorial(r);
            const double c = binomial(q, r);
            kappa.add(r * rf * rf * c * c * c * c * factorial(2 * q - 2 * r) * norm_sq);
        }
        const double kappa4 = 3.0 / q * kappa.value();
        rep.value = std::sqrt((q - 1.0) / (3.0 * q) * kappa4);
        rep.rate = 1.0;
        rep.details = {{"fourth_cumulant_upper", kappa4}, {"sigma_sq", sig2}};
    }
    rep.rate_normalized = rep.value / rep.rate;
    return rep;
}

double moment_gap_constant(int k, int q) {
    if (k < 3) throw ArgumentError("moment_gap_constant: k must be >= 3");
    if (q < 2) throw ArgumentError("moment_gap_constant: q must be >= 2");
    const double ln2 = std::log(2.0);
    const double first = std::exp(0.5 * (log_factorial(2 * k - 4) - (k - 2) * ln2 - log_factorial(k - 2)));
    const double second = std::exp((k * q / 2.0 - q) * std::log(2.0 * k - 5.0));
    return (k - 1.0) * std::exp((k - 2.5) * ln2) * std::sqrt((q - 1.0) / (3.0 * q)) * (first + second);
}

double moment_gap_bound(int k, int q, double fourth_gap) {
    if (!(fourth_gap >= 0.0)) throw ArgumentError("moment_gap_bound: fourth_gap must be >= 0");
    return moment_gap_constant(k, q) * std::sqrt(fourth_gap);
}

BoundReport moment_gap_report(int k, std::int64_t n, double H) {
    BoundReport rep;
    rep.kind = BoundKind::moment_gap;
    rep.H = H;
    rep.n = n;
    rep.q = 2;
    rep.k = k;
    rep.d = 1;
    const double kappa4 = fourth_cumulant_exact(n, H);
    rep.value = moment_gap_bound(k, 2, kappa4);
    rep.rate = bm_rate(n, H);
    rep.rate_normalized = rep.value / rep.rate;
    rep.details = {{"fourth_cumulant", kappa4}, {"constant", moment_gap_constant(k, 2)}};
    return rep;
}

namespace {

// sum over k in [a,b), l in [c,d) of rho^2(l - k).
double block_rho_sq_sum(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, double H) {
    CompensatedSum acc;
    for (std::int64_t r = c - b + 1; r <= d - a - 1; ++r) {
        const std::int64_t count = std::min(b, d - r) - std::max(a, c - r);
        if (count <= 0) continue;
        const double v = rho(r, H);
        acc.add(static_cast<double>(count) * v * v);
    }
    return acc.value();
}

}  // namespace

double cross_inner(const TimePartition& part, int i, int j, std::int64_t n, double H) {
    check_n(n);
    if (!(1 <= i && i < j && j <= part.blocks())) {
        throw ArgumentError("cross_inner: need 1 <= i < j <= d (ordered, non-overlapping blocks)");
    }
    const auto [a, b] = part.index_block(i, n);
    const auto [c, d] = part.index_block(j, n);
    if (c < b) throw ArgumentError("cross_inner: blocks overlap");
    const double s = block_rho_sq_sum(a, b, c, d, H);
    return s / (sigma_sq(n, H) * std::sqrt(part.width(i) * part.width(j)));
}

BoundReport multidim_qv_bound(const TimePartition& part, std::int64_t n, double H) {
    check_n(n);
    const double rate = bm_rate(n, H);
    const int d = part.blocks();
    const double sig2 = sigma_sq(n, H);

    std::vector<double> self_inner(static_cast<std::size_t>(d));
    std::vector<double> contraction(static_cast<std::size_t>(d));
    std::map<std::int64_t, std::pair<double, double>> by_length;  // m -> (sigma_m^2, trace(R_m^4))
    for (int i = 1; i <= d; ++i) {
        const auto [a, b] = part.index_block(i, n);
        const std::int64_t m = b - a;
        auto it = by_length.find(m);
        if (it == by_length.end()) {
            const FbmQVModel block(H, m);
            it = by_length.emplace(m, std::pair{block.sigma_sq(), toeplitz_trace_fourth(block.rho())}).first;
        }
        const double dt = part.width(i);
        self_inner[static_cast<std::size_t>(i - 1)] = it->second.first / (2.0 * sig2 * dt);
        contraction[static_cast<std::size_t>(i - 1)] = it->second.second / (sig2 * sig2 * dt * dt);
    }

    CompensatedSum diag;
    CompensatedSum off;
    for (int i = 1; i <= d; ++i) {
        for (int j = 1; j <= d; ++j) {
            const double inner = (i == j) ? self_inner[static_cast<std::size_t>(i - 1)]
                                          : cross_inner(part, std::min(i, j), std::max(i, j), n, H);
            const double a = (i == j ? 1.0 : 0.0) - 2.0 * inner;
            const double lm = a * a + 4.0 * (contraction[static_cast<std::size_t>(i - 1)] +
                                             contraction[static_cast<std::size_t>(j - 1)]);
            (i == j ? diag : off).add(0.5 * std::sqrt(lm));
        }
    }

    BoundReport rep;
    rep.kind = BoundKind::multidim_smooth;
    rep.H = H;
    rep.n = n;
    rep.q = 2;
    rep.d = d;
    rep.method = Method::exact;
    rep.value = diag.value() + off.value();
    rep.rate = rate;
    rep.rate_normalized = rep.value / rate;
    rep.details = {{"diagonal_part", diag.value()}, {"off_diagonal_part", off.value()}, {"sigma_sq", sig2}};
    return rep;
}

}  // namespace chaosbound
