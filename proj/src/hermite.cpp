#include "chaosbound/hermite.hpp"

#include "chaosbound/errors.hpp"

namespace chaosbound {

double hermite(int q, double x) {
    if (q < 0) throw ArgumentError("Hermite order must be non-negative");
    if (q == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for (int m = 1; m < q; ++m) {
        const double next = x * cur - m * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

void hermite_table(double x, std::span<double> out) {
    if (out.empty()) return;
    out[0] = 1.0;
    if (out.size() > 1) out[1] = x;
    for (std::size_t m = 1; m + 1 < out.size(); ++m) {
        out[m + 1] = x * out[m] - static_cast<double>(m) * out[m - 1];
    }
}

}  // namespace chaosbound
