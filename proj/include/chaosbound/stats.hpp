#pragma once

#include <span>

namespace chaosbound {

inline constexpr int kDefaultBatches = 32;

struct MeanEstimate {
    double mean;
    double std_error;
};

/// Sample mean with a batch-means standard error: the values are cut into
/// `batches` contiguous groups (sizes differ by at most one) and the spread
/// of the group means gives the error. Summation order is fixed.
[[nodiscard]] MeanEstimate batch_mean(std::span<const double> values, int batches = kDefaultBatches);

/// Dvoretzky-Kiefer-Wolfowitz radius sqrt(ln(2/alpha) / (2M)).
[[nodiscard]] double dkw_radius(double samples, double alpha = 0.01);

}  // namespace chaosbound
