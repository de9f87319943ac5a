#pragma once

#include "chaosbound/symmetric_kernel.hpp"

#include <map>
#include <span>

namespace chaosbound {

// Finite Wiener chaos expansion Z = sum_q I_q(f_q) over H = R^d, with
// I_q(e_{i_1} ⊙ ... ⊙ e_{i_q}) realized as prod_j H_{m_j}(z_j) for i.i.d.
// standard Gaussians z_1..z_d (m_j = multiplicity of index j).
class ChaosExpansion {
public:
    explicit ChaosExpansion(int dim);

    static ChaosExpansion constant(int dim, double c);
    static ChaosExpansion single(SymmetricKernel f);
    /// X(h) = I_1(h).
    static ChaosExpansion gaussian(std::span<const double> h);

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] const std::map<int, SymmetricKernel>& kernels() const { return kernels_; }
    [[nodiscard]] int max_order() const;
    [[nodiscard]] bool has_order(int q) const { return kernels_.contains(q); }
    /// Kernel of order q, or the zero kernel if absent.
    [[nodiscard]] SymmetricKernel kernel(int q) const;

    /// Adds I_q(f) to the expansion (accumulates onto an existing order-q term).
    void add(const SymmetricKernel& f);

    [[nodiscard]] double mean() const;
    /// E(Z^2) = sum_q q! ||f_q||^2.
    [[nodiscard]] double second_moment() const;
    [[nodiscard]] double variance() const;

    /// J_q Z.
    [[nodiscard]] ChaosExpansion projection(int q) const;
    /// True when every order >= 1 term lives in chaos q (order 0 ignored).
    [[nodiscard]] bool is_single_chaos(int q) const;

    ChaosExpansion& operator+=(const ChaosExpansion& other);
    ChaosExpansion& operator-=(const ChaosExpansion& other);
    ChaosExpansion& operator*=(double s);

private:
    int dim_;
    std::map<int, SymmetricKernel> kernels_;
};

[[nodiscard]] ChaosExpansion operator+(ChaosExpansion a, const ChaosExpansion& b);
[[nodiscard]] ChaosExpansion operator-(ChaosExpansion a, const ChaosExpansion& b);
[[nodiscard]] ChaosExpansion operator*(double s, ChaosExpansion a);

/// E(F G) = sum_q q! <f_q, g_q>: the order-0 coefficient of F*G.
[[nodiscard]] double expectation_of_product(const ChaosExpansion& F, const ChaosExpansion& G);

}  // namespace chaosbound
