#include "chaosbound/multivariate.hpp"

#include "chaosbound/chaos_algebra.hpp"
#include "chaosbound/errors.hpp"
#include "chaosbound/numeric.hpp"
#include "chaosbound/parallel.hpp"
#include "chaosbound/philox.hpp"
#include "chaosbound/stats.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace chaosbound {

GaussianVectorLaw::GaussianVectorLaw(int dim, std::vector<double> covariance_row_major)
    : dim_(dim), c_(std::move(covariance_row_major)) {
    if (dim < 1) throw ArgumentError("GaussianVectorLaw: dim must be >= 1");
    const auto d = static_cast<std::size_t>(dim);
    if (c_.size() != d * d) throw ArgumentError("GaussianVectorLaw: covariance must have dim*dim entries");
    Eigen::MatrixXd m(dim, dim);
    double scale = 0.0;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const double v = at(i, j);
            if (!std::isfinite(v)) throw ArgumentError("GaussianVectorLaw: non-finite covariance entry");
            m(i, j) = v;
            scale = std::max(scale, std::abs(v));
        }
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            if (std::abs(at(i, j) - at(j, i)) > 1e-12 * std::max(1.0, scale)) {
                throw ArgumentError("GaussianVectorLaw: covariance is not symmetric");
            }
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ArgumentError("GaussianVectorLaw: eigenvalue solver failed");
    eig_.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);
    if (eig_.front() < -1e-12) {
        throw ArgumentError("GaussianVectorLaw: covariance has eigenvalue " + std::to_string(eig_.front()));
    }
}

GaussianVectorLaw GaussianVectorLaw::identity(int dim) {
    std::vector<double> c(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0.0);
    for (int i = 0; i < dim; ++i) c[static_cast<std::size_t>(i * dim + i)] = 1.0;
    return {dim, std::move(c)};
}

namespace {

void check_vector(std::span<const ChaosExpansion> Z, const GaussianVectorLaw& C, const char* who) {
    if (Z.empty()) throw ArgumentError(std::string(who) + ": empty vector");
    if (static_cast<int>(Z.size()) != C.dim()) {
        throw ArgumentError(std::string(who) + ": vector length does not match covariance dimension");
    }
    for (const auto& z : Z) {
        if (z.dim() != Z.front().dim()) throw ArgumentError(std::string(who) + ": components differ in dim");
    }
}

// W_ij = C_ij - <DZ_j, -DL^{-1} Z_i>, row-major.
std::vector<ChaosExpansion> gap_matrix(std::span<const ChaosExpansion> Z, const GaussianVectorLaw& C) {
    const int d = C.dim();
    const int hdim = Z.front().dim();
    std::vector<ChaosExpansion> W;
    W.reserve(static_cast<std::size_t>(d * d));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            W.push_back(ChaosExpansion::constant(hdim, C.at(i, j)) -
                        stein_kernel_inner(Z[static_cast<std::size_t>(j)], Z[static_cast<std::size_t>(i)]));
        }
    }
    return W;
}

}  // namespace

double majdist_bound(std::span<const ChaosExpansion> Z, const GaussianVectorLaw& C) {
    check_vector(Z, C, "majdist_bound");
    const double lmin = C.eigenvalues().front();
    if (lmin <= kPositiveDefiniteTol) {
        throw DomainError("majdist_bound: covariance is not positive definite (smallest eigenvalue " +
                          std::to_string(lmin) + "); use smooth_test_bound for degenerate covariances");
    }
    const int d = C.dim();
    const int hdim = Z.front().dim();
    CompensatedSum acc;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const ChaosExpansion w = ChaosExpansion::constant(hdim, C.at(i, j)) -
                                     stein_kernel_inner(Z[static_cast<std::size_t>(i)], Z[static_cast<std::size_t>(j)]);
            acc.add(expectation_of_product(w, w));
        }
    }
    return (1.0 / lmin) * std::sqrt(C.op_norm()) * std::sqrt(std::max(0.0, acc.value()));
}

SmoothTestResult smooth_test_bound(std::span<const ChaosExpansion> Z, const GaussianVectorLaw& C,
                                   double phi_second_sup, const SmoothTestOptions& opts) {
    check_vector(Z, C, "smooth_test_bound");
    if (!(phi_second_sup >= 0.0) || !std::isfinite(phi_second_sup)) {
        throw ArgumentError("smooth_test_bound: phi_second_sup must be finite and >= 0");
    }
    if (opts.samples < 2) throw ArgumentError("smooth_test_bound: need at least 2 samples");
    const auto W = gap_matrix(Z, C);

    CompensatedSum bracket;
    std::vector<PolynomialEvaluator> evals;
    evals.reserve(W.size());
    for (const auto& w : W) {
        bracket.add(std::sqrt(std::max(0.0, expectation_of_product(w, w))));
        evals.push_back(chaos_to_polynomial(w));
    }

    const int hdim = Z.front().dim();
    std::vector<double> per_rep(opts.samples);
    parallel_for_ranges(opts.samples, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> z(static_cast<std::size_t>(hdim));
        for (std::size_t rep = lo; rep < hi; ++rep) {
            GaussianStream gs(opts.seed, kStreamChaosMc, rep);
            for (auto& v : z) v = gs.next();
            double s = 0.0;
            for (const auto& e : evals) s += std::abs(e(z));
            per_rep[rep] = s;
        }
    });
    const auto est = batch_mean(per_rep);
    const double half = 0.5 * phi_second_sup;
    return {half * est.mean, half * est.std_error, half * bracket.value(), opts.samples};
}

namespace {

void check_lm_args(const SymmetricKernel& f, const SymmetricKernel& g) {
    if (f.order() < 1 || g.order() < 1) throw ArgumentError("lm_control: kernel orders must be >= 1");
    if (f.dim() != g.dim()) throw ArgumentError("lm_control: dimension mismatch");
}

double sq(double x) { return x * x; }

}  // namespace

double lm_control_exact(const SymmetricKernel& f_in, const SymmetricKernel& g_in, double a) {
    check_lm_args(f_in, g_in);
    const bool swap = f_in.order() > g_in.order();
    const SymmetricKernel& f = swap ? g_in : f_in;
    const SymmetricKernel& g = swap ? f_in : g_in;
    const int p = f.order();
    const int q = g.order();
    CompensatedSum acc;
    acc.add(p == q ? sq(a - factorial(p) * inner(f, g)) : a * a);
    const int rmax = (p == q) ? p - 1 : p;
    for (int r = 1; r <= rmax; ++r) {
        const double w = p * p * sq(factorial(r - 1) * binomial(p - 1, r - 1) * binomial(q - 1, r - 1)) *
                         factorial(p + q - 2 * r);
        acc.add(w * contract_symmetrized(f, g, r).norm_sq());
    }
    return acc.value();
}

double lm_control_bound(const SymmetricKernel& f_in, const SymmetricKernel& g_in, double a) {
    check_lm_args(f_in, g_in);
    const bool swap = f_in.order() > g_in.order();
    const SymmetricKernel& f = swap ? g_in : f_in;
    const SymmetricKernel& g = swap ? f_in : g_in;
    const int p = f.order();
    const int q = g.order();
    CompensatedSum acc;
    if (p == q) {
        acc.add(sq(a - factorial(p) * inner(f, g)));
        for (int r = 1; r <= p - 1; ++r) {
            const double c = binomial(p - 1, r - 1);
            const double w = 0.5 * p * p * sq(factorial(r - 1)) * c * c * c * c * factorial(2 * p - 2 * r);
            acc.add(w * (contraction_norm_sq(f, f, p - r) + contraction_norm_sq(g, g, p - r)));
        }
    } else {
        acc.add(a * a);
        acc.add(sq(factorial(p) * binomial(q - 1, p - 1)) * factorial(q - p) * f.norm_sq() *
                std::sqrt(contraction_norm_sq(g, g, q - p)));
        for (int r = 1; r <= p - 1; ++r) {
            const double w = 0.5 * p * p * sq(factorial(r - 1) * binomial(p - 1, r - 1) * binomial(q - 1, r - 1)) *
                             factorial(p + q - 2 * r);
            acc.add(w * (contraction_norm_sq(f, f, p - r) + contraction_norm_sq(g, g, q - r)));
        }
    }
    return acc.value();
}

}  // namespace chaosbound
