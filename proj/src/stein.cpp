#include "chaosbound/stein.hpp"

#include "chaosbound/errors.hpp"
#include "chaosbound/normal.hpp"
#include "chaosbound/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace chaosbound {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrtHalfPi = 1.25331413731550025121;  // sqrt(pi/2)
constexpr double kKinkShift = 1e-12;

// f_z(x) for x <= z.
double value_left(double z, double x) {
    if (x < 0.0) {
        // e^{x^2/2} Phi(x) = erfcx(-x/sqrt2) / 2
        return kSqrtHalfPi * erfcx(-x * kInvSqrt2) * normal_sf(z);
    }
    // 0 <= x <= z: e^{x^2/2} (1 - Phi(z)) = erfcx(z/sqrt2) e^{(x^2 - z^2)/2} / 2
    return kSqrtHalfPi * normal_cdf(x) * erfcx(z * kInvSqrt2) * std::exp(0.5 * (x - z) * (x + z));
}

}  // namespace

SteinValue stein_solution_eval(double z, double x) {
    if (!std::isfinite(z) || !std::isfinite(x)) throw ArgumentError("stein_solution_eval: non-finite input");
    SteinValue out{};
    if (x <= z) {
        out.value = value_left(z, x);
        out.derivative = x * out.value + normal_sf(z);
        out.at_kink = (x == z);
    } else {
        // f_z(x) = f_{-z}(-x)
        out.value = value_left(-z, -x);
        out.derivative = x * out.value - normal_cdf(z);
        out.at_kink = false;
    }
    return out;
}

SteinSolution::SteinSolution(double z) : z_(z) {
    if (!std::isfinite(z)) throw ArgumentError("SteinSolution: non-finite z");
}

EmpiricalSample::EmpiricalSample(std::vector<double> values) : values_(std::move(values)) {
    if (std::any_of(values_.begin(), values_.end(), [](double v) { return !std::isfinite(v); })) {
        throw ArgumentError("EmpiricalSample: non-finite value");
    }
    std::sort(values_.begin(), values_.end());
}

double empirical_kolmogorov(const EmpiricalSample& sample) {
    if (sample.empty()) throw ArgumentError("empirical_kolmogorov: empty sample");
    const auto v = sample.values();
    const double m = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double phi = normal_cdf(v[i]);
        d = std::max(d, static_cast<double>(i + 1) / m - phi);
        d = std::max(d, phi - static_cast<double>(i) / m);
    }
    return d;
}

SteinResidual stein_residual_check(const EmpiricalSample& sample, double z,
                                   const std::function<double(double)>& law_cdf) {
    if (sample.empty()) throw ArgumentError("stein_residual_check: empty sample");
    const SteinSolution f(z);
    CompensatedSum sum;
    CompensatedSum sum_sq;
    std::size_t below = 0;
    for (double x : sample.values()) {
        if (x == z) x += kKinkShift;
        const auto fx = f(x);
        const double t = fx.derivative - x * fx.value;
        sum.add(t);
        sum_sq.add(t * t);
        if (x <= z) ++below;
    }
    const double m = static_cast<double>(sample.size());
    SteinResidual out{};
    out.lhs = sum.value() / m;
    const double var = std::max(0.0, sum_sq.value() / m - out.lhs * out.lhs);
    out.std_error = std::sqrt(var / m);
    const double p = law_cdf ? law_cdf(z) : static_cast<double>(below) / m;
    out.rhs = p - normal_cdf(z);
    out.gap = out.lhs - out.rhs;
    return out;
}

}  // namespace chaosbound
