#pragma once

#include "chaosbound/chaos_expansion.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace chaosbound {

struct IdentityResult {
    std::string name;
    int checks = 0;
    double max_error = 0.0;  // relative, max(1, |lhs|, |rhs|) scaled
    bool passed = true;  // vacuously true when checks == 0
};

/// Random test inputs: even positions hold unit-variance single-chaos
/// elements, odd positions mixed expansions of orders 0..3; dims cycle
/// through 1..4 and chaos orders through 1..3.
[[nodiscard]] std::vector<ChaosExpansion> selftest_cases(std::uint64_t seed, int count);

/// Largest absolute coefficient difference between two expansions.
[[nodiscard]] double max_coefficient_gap(const ChaosExpansion& a, const ChaosExpansion& b);

/// Checks the exact chaos-algebra identities on every case: product against
/// pointwise polynomial values, the chaos expansion of the Stein kernel, the
/// fourth-cumulant and Stein-kernel-variance contraction sums and the
/// inequality between them, divergence of the derivative, L L^{-1}, and the
/// integration-by-parts formula for cubic test functions. Single-chaos
/// identities use cases living in one chaos (rescaled to unit variance).
[[nodiscard]] std::vector<IdentityResult> run_identity_suite(std::span<const ChaosExpansion> cases,
                                                             double tolerance = 1e-10);

}  // namespace chaosbound
