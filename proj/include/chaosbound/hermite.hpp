#pragma once

#include <span>

namespace chaosbound {

/// Probabilists' Hermite polynomial H_q(x) (monic; H_2(x) = x^2 - 1), by the
/// three-term recurrence H_{q+1} = x H_q - q H_{q-1}. Throws ArgumentError for q < 0.
[[nodiscard]] double hermite(int q, double x);

/// Fills out[m] = H_m(x) for m = 0 .. out.size()-1.
void hermite_table(double x, std::span<double> out);

}  // namespace chaosbound
