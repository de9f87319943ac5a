#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace chaosbound {

struct SteinValue {
    double value;
    /// f_z'(x); at x == z this is the left limit and `at_kink` is set.
    double derivative;
    bool at_kink;
};

/// Solution f_z of the Stein equation f'(x) - x f(x) = 1{x <= z} - Phi(z),
///   f_z(x) = sqrt(2 pi) e^{x^2/2} Phi(min(x,z)) (1 - Phi(max(x,z))),
/// evaluated through the scaled complementary error function so that nothing
/// overflows for |x|, |z| <= 40. Throws ArgumentError on non-finite input.
[[nodiscard]] SteinValue stein_solution_eval(double z, double x);

class SteinSolution {
public:
    explicit SteinSolution(double z);
    [[nodiscard]] double z() const { return z_; }
    [[nodiscard]] SteinValue operator()(double x) const { return stein_solution_eval(z_, x); }

    /// sqrt(2 pi) / 4, the uniform bound on |f_z|.
    static constexpr double kSupBound = 0.62665706865775012560;

private:
    double z_;
};

/// Sorted sample with uniform weights; construction rejects non-finite values.
class EmpiricalSample {
public:
    explicit EmpiricalSample(std::vector<double> values);

    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] bool empty() const { return values_.empty(); }

private:
    std::vector<double> values_;
};

/// sup_x |F_M(x) - Phi(x)|, exact: both one-sided gaps checked at each sample point.
[[nodiscard]] double empirical_kolmogorov(const EmpiricalSample& sample);

struct SteinResidual {
    double lhs;     // mean of f_z'(Z) - Z f_z(Z)
    double rhs;     // P(Z <= z) - Phi(z)
    double gap;     // lhs - rhs
    double std_error;  // standard error of lhs as a sample mean
};

/// Compares both sides of the integrated Stein equation on a sample. When
/// `law_cdf` is given, P(Z <= z) is taken from it; otherwise the empirical
/// CDF is used (then the gap is pure rounding, since the identity holds
/// pointwise). Sample points equal to z are shifted by 1e-12.
[[nodiscard]] SteinResidual stein_residual_check(const EmpiricalSample& sample, double z,
                                                 const std::function<double(double)>& law_cdf = {});

}  // namespace chaosbound
