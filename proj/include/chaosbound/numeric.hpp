#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace chaosbound {

// Neumaier-compensated accumulator. Order of add() calls fixes the result.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

[[nodiscard]] inline double compensated_sum(std::span<const double> xs) {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

[[nodiscard]] double factorial(int n);
[[nodiscard]] double log_factorial(int n);
[[nodiscard]] double binomial(int n, int k);
[[nodiscard]] std::uint64_t binomial_u64(int n, int k);

}  // namespace chaosbound
