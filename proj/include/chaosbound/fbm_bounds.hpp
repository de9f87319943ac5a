#pragma once

#include "chaosbound/fbm.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chaosbound {

enum class BoundKind { kolmogorov, multidim_smooth, moment_gap };
enum class Method { exact, monte_carlo };

[[nodiscard]] const char* to_string(BoundKind k);
[[nodiscard]] const char* to_string(Method m);

struct BoundReport {
    BoundKind kind = BoundKind::kolmogorov;
    double value = 0.0;
    double rate = 1.0;
    double rate_normalized = 0.0;  // value / rate
    double H = 0.0;
    std::int64_t n = 0;
    int q = 0;
    int k = 0;
    int d = 0;
    Method method = Method::exact;
    std::optional<double> std_error;
    /// Named intermediate quantities, in insertion order.
    std::vector<std::pair<std::string, double>> details;

    [[nodiscard]] std::optional<double> detail(const std::string& name) const;
};

/// Tolerance used to recognize the critical value H = 3/4.
inline constexpr double kCriticalHurstTol = 1e-12;

/// Berry-Esseen rate for the quadratic variation: n^{-1/2} for H <= 1/2,
/// n^{2H-3/2} for 1/2 <= H < 3/4, 1/sqrt(log n) at H = 3/4 (1 when n = 1).
/// Throws DomainError for H > 3/4.
[[nodiscard]] double bm_rate(std::int64_t n, double H);

/// ||f_n ⊗_1 f_n||^2 = trace(R^4) / sigma_n^4 for the fGn covariance R.
[[nodiscard]] double contraction_norm_sq(std::int64_t n, double H);

/// E(Z_n^4) - 3 = 48 ||f_n ⊗_1 f_n||^2.
[[nodiscard]] double fourth_cumulant_exact(std::int64_t n, double H);

/// Kolmogorov bound sqrt((q-1)/(3q) (E Z^4 - 3)) for the normalized q-th
/// Hermite variation of fGn (q = 2 is the quadratic variation). For q >= 3
/// the contraction norms are replaced by their unsymmetrized upper bounds,
/// the result is still a valid bound, and no rate is attached (rate = 1).
/// Throws DomainError above the critical Hurst index (3/4 for q = 2,
/// 1 - 1/(2q) in general).
[[nodiscard]] BoundReport kolmogorov_bound(std::int64_t n, double H, int q = 2);

/// c_{k,q} of the moment-gap estimate |E Z^k - E N^k| <= c_{k,q} sqrt(E Z^4 - 3).
[[nodiscard]] double moment_gap_constant(int k, int q);
[[nodiscard]] double moment_gap_bound(int k, int q, double fourth_gap);
/// Moment-gap bound for the fGn quadratic variation at (n, H).
[[nodiscard]] BoundReport moment_gap_report(int k, std::int64_t n, double H);

/// <f_n^{(i)}, f_n^{(j)}> for the block kernels of the partition, 1 <= i < j <= d.
[[nodiscard]] double cross_inner(const TimePartition& part, int i, int j, std::int64_t n, double H);

/// Smooth-test bound (||phi''|| = 1) for the vector of normalized block
/// increments of Z_n(t), each pair term bounded through the p = q = 2 case of
/// the mixed-derivative second-moment estimate.
[[nodiscard]] BoundReport multidim_qv_bound(const TimePartition& part, std::int64_t n, double H);

}  // namespace chaosbound
