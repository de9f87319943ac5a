#pragma once

#include "chaosbound/chaos_expansion.hpp"
#include "chaosbound/symmetric_kernel.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace chaosbound {

/// Average of `raw` over all index permutations.
[[nodiscard]] SymmetricKernel symmetrize(const DenseTensor& raw);

/// f ⊗_r g as a dense tensor of order p+q-2r: the last r slots of f are
/// paired with the last r slots of g, free slots of f come first.
/// Throws ArgumentError unless 0 <= r <= min(p, q).
[[nodiscard]] DenseTensor contract(const SymmetricKernel& f, const SymmetricKernel& g, int r);

/// Symmetrized contraction f ⊗~_r g, computed directly in compressed storage.
[[nodiscard]] SymmetricKernel contract_symmetrized(const SymmetricKernel& f, const SymmetricKernel& g, int r);

/// ||f ⊗_r g||^2 of the (unsymmetrized) contraction.
[[nodiscard]] double contraction_norm_sq(const SymmetricKernel& f, const SymmetricKernel& g, int r);

/// Product of two expansions via the multiplication formula
/// I_p(f) I_q(g) = sum_r r! C(p,r) C(q,r) I_{p+q-2r}(f ⊗~_r g).
[[nodiscard]] ChaosExpansion multiply(const ChaosExpansion& F, const ChaosExpansion& G);

/// Evaluates a chaos expansion as a polynomial in (z_1, ..., z_d).
class PolynomialEvaluator {
public:
    explicit PolynomialEvaluator(const ChaosExpansion& Z);

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] double operator()(std::span<const double> z) const;

private:
    int dim_;
    int max_order_ = 0;
    std::vector<double> coeffs_;
    std::vector<std::uint8_t> exps_;  // dim_ entries per term
};

[[nodiscard]] PolynomialEvaluator chaos_to_polynomial(const ChaosExpansion& Z);

/// (D_1 Z, ..., D_d Z) with D_i Z = sum_q q I_{q-1}(f_q(., e_i)).
[[nodiscard]] std::vector<ChaosExpansion> malliavin_derivative(const ChaosExpansion& Z);

/// Ornstein-Uhlenbeck generator: f_q -> -q f_q.
[[nodiscard]] ChaosExpansion apply_L(const ChaosExpansion& Z);
/// Pseudo-inverse: f_q -> -f_q / q, order 0 dropped.
[[nodiscard]] ChaosExpansion apply_L_inverse(const ChaosExpansion& Z);

/// <DF, -DL^{-1}Z>_H as a chaos expansion. Requires |E(Z)| <= 1e-10.
[[nodiscard]] ChaosExpansion stein_kernel_inner(const ChaosExpansion& F, const ChaosExpansion& Z);

/// Largest allowed (order of Z) * k in exact_moment.
inline constexpr int kMaxMomentOrder = 32;

/// E(Z^k) by repeated multiplication. Throws CapacityError when
/// max_order(Z) * k > kMaxMomentOrder.
[[nodiscard]] double exact_moment(const ChaosExpansion& Z, int k);

/// For Z = I_q(f) with E(Z^2) = 1: Var((1/q)||DZ||^2) from the contraction sum
///   sum_{r=1}^{q-1} (r^2/q^2) r!^2 C(q,r)^4 (2q-2r)! ||f ⊗~_r f||^2.
[[nodiscard]] double variance_of_stein_kernel(const ChaosExpansion& Z);

/// For Z = I_q(f) with E(Z^2) = 1: E(Z^4) - 3 from the contraction sum
///   (3/q) sum_{r=1}^{q-1} r r!^2 C(q,r)^4 (2q-2r)! ||f ⊗~_r f||^2.
[[nodiscard]] double fourth_cumulant_single_chaos(const ChaosExpansion& Z);

/// Order q of a single-chaos element (ignoring zero kernels); -1 if mixed.
[[nodiscard]] int single_chaos_order(const ChaosExpansion& Z);

}  // namespace chaosbound
