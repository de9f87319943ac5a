#pragma once

#include "chaosbound/chaos_expansion.hpp"
#include "chaosbound/symmetric_kernel.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace chaosbound {

/// Centered Gaussian law N_d(0, C). C must be symmetric (to 1e-12 relative)
/// with eigenvalues >= -1e-12.
class GaussianVectorLaw {
public:
    GaussianVectorLaw(int dim, std::vector<double> covariance_row_major);
    static GaussianVectorLaw identity(int dim);

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] double at(int i, int j) const { return c_[static_cast<std::size_t>(i * dim_ + j)]; }
    [[nodiscard]] std::span<const double> covariance() const { return c_; }
    /// Eigenvalues in ascending order.
    [[nodiscard]] std::span<const double> eigenvalues() const { return eig_; }
    [[nodiscard]] double op_norm() const { return eig_.back(); }

private:
    int dim_;
    std::vector<double> c_;
    std::vector<double> eig_;
};

/// Smallest eigenvalue accepted as positive definite by majdist_bound.
inline constexpr double kPositiveDefiniteTol = 1e-10;

/// ||C^{-1}||_op ||C||_op^{1/2} sqrt(sum_ij E[(C_ij - <DZ_i, -DL^{-1} Z_j>)^2]),
/// all expectations exact. Throws DomainError when C is not positive definite.
[[nodiscard]] double majdist_bound(std::span<const ChaosExpansion> Z, const GaussianVectorLaw& C);

struct SmoothTestOptions {
    std::uint64_t seed = 0;
    std::uint64_t samples = 100000;
};

struct SmoothTestResult {
    /// (1/2) phi'' sum_ij E|C_ij - <DZ_j, -DL^{-1} Z_i>|, Monte Carlo.
    double estimate;
    double std_error;
    /// Same with E|W| replaced by the exact sqrt(E W^2) (an upper bound).
    double cauchy_schwarz_bound;
    std::uint64_t samples;
};

/// Smooth-test bound for C^2 test functions with sup ||phi''|| = phi_second_sup.
[[nodiscard]] SmoothTestResult smooth_test_bound(std::span<const ChaosExpansion> Z, const GaussianVectorLaw& C,
                                                 double phi_second_sup, const SmoothTestOptions& opts = {});

/// Exact E[(a - <DF, DG> / max(p, q))^2] for F = I_p(f), G = I_q(g), from the
/// symmetrized-contraction sums.
[[nodiscard]] double lm_control_exact(const SymmetricKernel& f, const SymmetricKernel& g, double a);

/// Upper bound for the same quantity using only ||f||, <f, g> and the
/// self-contractions of f and g (the p = q and p < q estimates; p > q swaps).
[[nodiscard]] double lm_control_bound(const SymmetricKernel& f, const SymmetricKernel& g, double a);

}  // namespace chaosbound
