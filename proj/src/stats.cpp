#include "chaosbound/stats.hpp"

#include "chaosbound/errors.hpp"
#include "chaosbound/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace chaosbound {

MeanEstimate batch_mean(std::span<const double> values, int batches) {
    if (values.empty()) throw ArgumentError("batch_mean: empty sample");
    if (batches < 2) throw ArgumentError("batch_mean: need at least 2 batches");
    const std::size_t m = values.size();
    const std::size_t b = std::min<std::size_t>(static_cast<std::size_t>(batches), m);
    const double mean = compensated_sum(values) / static_cast<double>(m);
    if (b < 2) return {mean, 0.0};
    std::vector<double> means(b);
    for (std::size_t j = 0; j < b; ++j) {
        const std::size_t lo = m * j / b;
        const std::size_t hi = m * (j + 1) / b;
        means[j] = compensated_sum(values.subspan(lo, hi - lo)) / static_cast<double>(hi - lo);
    }
    const double center = compensated_sum(means) / static_cast<double>(b);
    CompensatedSum ss;
    for (double v : means) ss.add((v - center) * (v - center));
    const double var_of_batch_mean = ss.value() / static_cast<double>(b - 1);
    return {mean, std::sqrt(var_of_batch_mean / static_cast<double>(b))};
}

double dkw_radius(double samples, double alpha) {
    if (!(samples > 0.0)) throw ArgumentError("dkw_radius: sample count must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("dkw_radius: alpha must lie in (0, 1)");
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * samples));
}

}  // namespace chaosbound
