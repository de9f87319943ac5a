#include "chaosbound/normal.hpp"

#include <cmath>
#include <numbers>

namespace chaosbound {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrtPi = 0.56418958354775628695;
// Beyond this, exp(y^2) overflows before erfc(y) underflows to subnormals.
constexpr double kDirectLimit = 6.0;

// Continued fraction exp(y^2) erfc(y) = (1/sqrt(pi)) / (y + (1/2)/(y + 1/(y + (3/2)/(y + ...)))),
// evaluated with the modified Lentz method. Converges quickly for y >= kDirectLimit.
double erfcx_continued_fraction(double y) {
    constexpr double tiny = 1e-300;
    double f = y;
    double c = y;
    double d = 0.0;
    for (int k = 1; k < 500; ++k) {
        const double a = 0.5 * k;
        d = y + a * d;
        if (d == 0.0) d = tiny;
        c = y + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return kInvSqrtPi / f;
}

}  // namespace

double erfcx(double y) {
    if (y < 0.0) return 2.0 * std::exp(y * y) - erfcx(-y);
    if (y < kDirectLimit) return std::exp(y * y) * std::erfc(y);
    return erfcx_continued_fraction(y);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double log_normal_cdf(double x) {
    if (x > -8.0) return std::log(normal_cdf(x));
    // Phi(x) = 0.5 erfcx(-x/sqrt2) exp(-x^2/2)
    return std::log(0.5 * erfcx(-x * kInvSqrt2)) - 0.5 * x * x;
}

}  // namespace chaosbound
