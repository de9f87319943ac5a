#pragma once

#include "chaosbound/chaos_expansion.hpp"
#include "chaosbound/symmetric_kernel.hpp"

#include <json.hpp>

namespace chaosbound {

// Kernel:    {"order": q, "dim": d, "entries": [[[i_1, ..., i_q], c], ...]}
// Expansion: {"dim": d, "kernels": [kernel, ...]}
// Indices are 0-based and listed non-decreasing; each multiset appears at
// most once and its coefficient is the common value of every permuted entry.
// Zero coefficients are omitted on output.

[[nodiscard]] nlohmann::json kernel_to_json(const SymmetricKernel& f);
[[nodiscard]] SymmetricKernel kernel_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json expansion_to_json(const ChaosExpansion& Z);
[[nodiscard]] ChaosExpansion expansion_from_json(const nlohmann::json& j);

}  // namespace chaosbound
