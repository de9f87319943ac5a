#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace chaosbound {

/// Beyond this lag rho() switches to the asymptotic second-difference form.
inline constexpr std::int64_t kRhoCrossover = 10000;

/// Correlation of unit fractional Gaussian noise at lag r:
///   rho(r) = (|r+1|^{2H} + |r-1|^{2H} - 2|r|^{2H}) / 2.
/// Exactly 0 for H = 1/2 and r != 0. Throws ArgumentError unless 0 < H < 1.
[[nodiscard]] double rho(std::int64_t r, double H);

/// rho(0), ..., rho(n-1).
[[nodiscard]] std::vector<double> rho_table(std::int64_t n, double H);

/// sigma_n^2 = 2 sum_{k,l<n} rho^2(k-l), evaluated as 2 sum_{|r|<n} (n-|r|) rho^2(r).
[[nodiscard]] double sigma_sq(std::int64_t n, double H);

/// sigma_n^{(q)2} = q! sum_{k,l<n} rho^q(k-l), the variance of sum_k H_q(xi_k).
[[nodiscard]] double hermite_variation_sigma_sq(std::int64_t n, double H, int q);

/// 2 sum_{|r| <= r_max} rho^2(r): the n -> infinity limit of sigma_n^2 / n, truncated.
[[nodiscard]] double sigma_sq_limit_series(double H, std::int64_t r_max);

/// (H, n) with cached correlations and normalization.
class FbmQVModel {
public:
    FbmQVModel(double H, std::int64_t n);

    [[nodiscard]] double hurst() const { return H_; }
    [[nodiscard]] std::int64_t n() const { return n_; }
    /// rho(0..n-1); rho(n) is not needed by any consumer.
    [[nodiscard]] std::span<const double> rho() const { return rho_; }
    [[nodiscard]] double sigma_sq() const { return sigma_sq_; }

private:
    double H_;
    std::int64_t n_;
    std::vector<double> rho_;
    double sigma_sq_;
};

/// 0 = t_0 < t_1 < ... < t_d.
class TimePartition {
public:
    explicit TimePartition(std::vector<double> points);

    [[nodiscard]] int blocks() const { return static_cast<int>(t_.size()) - 1; }
    [[nodiscard]] std::span<const double> points() const { return t_; }
    /// Length t_i - t_{i-1}, 1-based i.
    [[nodiscard]] double width(int i) const;
    /// Increment indices [floor(n t_{i-1}), floor(n t_i)) of block i; throws
    /// ArgumentError when that range is empty.
    [[nodiscard]] std::pair<std::int64_t, std::int64_t> index_block(int i, std::int64_t n) const;

private:
    std::vector<double> t_;
};

}  // namespace chaosbound
