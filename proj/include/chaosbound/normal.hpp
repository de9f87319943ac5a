#pragma once

namespace chaosbound {

/// Standard normal CDF, via erfc (full relative accuracy in both tails).
[[nodiscard]] double normal_cdf(double x);
/// 1 - Phi(x) without cancellation.
[[nodiscard]] double normal_sf(double x);
/// log Phi(x); uses the scaled complementary error function in the far left tail.
[[nodiscard]] double log_normal_cdf(double x);
/// Scaled complementary error function exp(y^2) erfc(y), y >= 0 (any y accepted).
[[nodiscard]] double erfcx(double y);

}  // namespace chaosbound
