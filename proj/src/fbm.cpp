#include "chaosbound/fbm.hpp"

#include "chaosbound/errors.hpp"
#include "chaosbound/numeric.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace chaosbound {

namespace {

void check_hurst(double H) {
    if (!(H > 0.0 && H < 1.0)) throw ArgumentError("Hurst index must lie in (0, 1), got " + std::to_string(H));
}

// For x = 1/r <= 1/2: (1+x)^a + (1-x)^a - 2 = 2 sum_{k>=1} C(a, 2k) x^{2k}.
// Every C(a, 2k) with 0 < a < 2 has the sign of a - 1, so the sum has no
// cancellation. Returns sum_{k>=1} C(a,2k) x^{2k}.
double even_binomial_series(double a, double x) {
    const double x2 = x * x;
    double coef = 1.0;  // C(a, m)
    double pw = 1.0;
    double sum = 0.0;
    for (int m = 0; m < 400; m += 2) {
        coef *= (a - m) / (m + 1.0);
        coef *= (a - m - 1.0) / (m + 2.0);
        pw *= x2;
        const double term = coef * pw;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum) || term == 0.0) break;
    }
    return sum;
}

}  // namespace

double rho(std::int64_t r, double H) {
    check_hurst(H);
    const double x = std::abs(static_cast<double>(r));
    if (x == 0.0) return 1.0;
    if (H == 0.5) return 0.0;
    const double a = 2.0 * H;
    if (x == 1.0) return std::expm1((a - 1.0) * std::log(2.0));
    if (x > static_cast<double>(kRhoCrossover)) {
        const double lead = H * (a - 1.0) * std::pow(x, a - 2.0);
        return lead * (1.0 + (a - 2.0) * (a - 3.0) / (12.0 * x * x));
    }
    return std::pow(x, a) * even_binomial_series(a, 1.0 / x);
}

std::vector<double> rho_table(std::int64_t n, double H) {
    check_hurst(H);
    if (n < 0) throw ArgumentError("rho_table: negative length");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (std::int64_t r = 0; r < n; ++r) out[static_cast<std::size_t>(r)] = rho(r, H);
    return out;
}

double sigma_sq(std::int64_t n, double H) { return hermite_variation_sigma_sq(n, H, 2); }

double hermite_variation_sigma_sq(std::int64_t n, double H, int q) {
    check_hurst(H);
    if (n < 1) throw ArgumentError("hermite_variation_sigma_sq: n must be >= 1");
    if (q < 2) throw ArgumentError("hermite_variation_sigma_sq: q must be >= 2");
    CompensatedSum acc;
    acc.add(static_cast<double>(n));
    if (H != 0.5) {
        for (std::int64_t r = 1; r < n; ++r) {
            acc.add(2.0 * static_cast<double>(n - r) * std::pow(rho(r, H), q));
        }
    }
    return factorial(q) * acc.value();
}

double sigma_sq_limit_series(double H, std::int64_t r_max) {
    check_hurst(H);
    CompensatedSum acc;
    acc.add(1.0);
    if (H != 0.5) {
        for (std::int64_t r = 1; r <= r_max; ++r) {
            const double v = rho(r, H);
            acc.add(2.0 * v * v);
        }
    }
    return 2.0 * acc.value();
}

FbmQVModel::FbmQVModel(double H, std::int64_t n) : H_(H), n_(n) {
    check_hurst(H);
    if (n < 1) throw ArgumentError("FbmQVModel: n must be >= 1");
    rho_ = rho_table(n, H);
    sigma_sq_ = chaosbound::sigma_sq(n, H);
}

TimePartition::TimePartition(std::vector<double> points) : t_(std::move(points)) {
    if (t_.size() < 2) throw ArgumentError("TimePartition: need at least t_0 and t_1");
    if (t_.front() != 0.0) throw ArgumentError("TimePartition: t_0 must be 0");
    for (std::size_t i = 1; i < t_.size(); ++i) {
        if (!std::isfinite(t_[i]) || !(t_[i] > t_[i - 1])) {
            throw ArgumentError("TimePartition: points must be finite and strictly increasing");
        }
    }
}

double TimePartition::width(int i) const {
    if (i < 1 || i > blocks()) throw ArgumentError("TimePartition: block index out of range");
    return t_[static_cast<std::size_t>(i)] - t_[static_cast<std::size_t>(i) - 1];
}

std::pair<std::int64_t, std::int64_t> TimePartition::index_block(int i, std::int64_t n) const {
    if (i < 1 || i > blocks()) throw ArgumentError("TimePartition: block index out of range");
    const double nd = static_cast<double>(n);
    const auto lo = static_cast<std::int64_t>(std::floor(nd * t_[static_cast<std::size_t>(i) - 1]));
    const auto hi = static_cast<std::int64_t>(std::floor(nd * t_[static_cast<std::size_t>(i)]));
    if (hi <= lo) {
        throw ArgumentError("TimePartition: block " + std::to_string(i) + " is empty at n = " + std::to_string(n));
    }
    return {lo, hi};
}

}  // namespace chaosbound
