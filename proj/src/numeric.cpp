#include "chaosbound/numeric.hpp"

#include "chaosbound/errors.hpp"

#include <array>
#include <string>

namespace chaosbound {

namespace {

constexpr int kMaxBinomial = 67;

struct BinomialTable {
    std::array<std::array<std::uint64_t, kMaxBinomial + 1>, kMaxBinomial + 1> c{};
    constexpr BinomialTable() {
        for (int n = 0; n <= kMaxBinomial; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
        }
    }
};

constexpr BinomialTable kBinomials{};

}  // namespace

double factorial(int n) {
    if (n < 0) throw ArgumentError("factorial of negative integer");
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double log_factorial(int n) {
    if (n < 0) throw ArgumentError("factorial of negative integer");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

std::uint64_t binomial_u64(int n, int k) {
    if (n < 0 || n > kMaxBinomial) throw CapacityError("binomial argument out of table range: " + std::to_string(n));
    if (k < 0 || k > n) return 0;
    return kBinomials.c[n][k];
}

double binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0.0;
    if (n <= kMaxBinomial) return static_cast<double>(kBinomials.c[n][k]);
    return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

}  // namespace chaosbound
