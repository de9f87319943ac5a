#include "chaosbound/selftest.hpp"

#include "chaosbound/chaos_algebra.hpp"
#include "chaosbound/errors.hpp"
#include "chaosbound/numeric.hpp"
#include "chaosbound/philox.hpp"

#include <algorithm>
#include <cmath>

namespace chaosbound {

namespace {

SymmetricKernel random_kernel(int order, int dim, GaussianStream& gs) {
    SymmetricKernel f(order, dim);
    for (auto& c : f.coeffs()) c = gs.next();
    return f;
}

double rel_gap(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// delta(sum_i u_i e_i) with u_i = sum_m I_m(g_{m,i}): sum_i sum_m I_{m+1}(sym(g_{m,i} ⊗ e_i)).
ChaosExpansion divergence(const std::vector<ChaosExpansion>& u) {
    const int dim = static_cast<int>(u.size());
    ChaosExpansion out(dim);
    std::vector<std::uint8_t> down(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        for (const auto& [m, g] : u[static_cast<std::size_t>(i)].kernels()) {
            SymmetricKernel h(m + 1, dim);
            const auto& hb = h.basis();
            for (std::size_t rank = 0; rank < hb.size(); ++rank) {
                const auto gamma = hb.exponents(rank);
                const int gi = gamma[static_cast<std::size_t>(i)];
                if (gi == 0) continue;
                std::copy(gamma.begin(), gamma.end(), down.begin());
                --down[static_cast<std::size_t>(i)];
                h.coeffs()[rank] = gi / (m + 1.0) * g.coeffs()[g.basis().rank_of_exponents(down)];
            }
            out.add(h);
        }
    }
    return out;
}

struct Tracker {
    IdentityResult r;
    double tol;
    void record(double err) {
        ++r.checks;
        r.max_error = std::max(r.max_error, err);
        if (!(err <= tol)) r.passed = false;
    }
};

}  // namespace

std::vector<ChaosExpansion> selftest_cases(std::uint64_t seed, int count) {
    if (count < 1) throw ArgumentError("selftest_cases: count must be >= 1");
    std::vector<ChaosExpansion> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) {
        GaussianStream gs(seed, kStreamSelftest, static_cast<std::uint64_t>(t));
        const int dim = 1 + (t / 2) % 4;
        if (t % 2 == 0) {
            const int q = 1 + (t / 8) % 3;
            auto f = random_kernel(q, dim, gs);
            const double var = factorial(q) * f.norm_sq();
            f *= 1.0 / std::sqrt(var);
            out.push_back(ChaosExpansion::single(std::move(f)));
        } else {
            ChaosExpansion z(dim);
            for (int q = 0; q <= 3; ++q) z.add(random_kernel(q, dim, gs));
            out.push_back(std::move(z));
        }
    }
    return out;
}

double max_coefficient_gap(const ChaosExpansion& a, const ChaosExpansion& b) {
    if (a.dim() != b.dim()) throw ArgumentError("max_coefficient_gap: dimension mismatch");
    double gap = 0.0;
    const int top = std::max(a.max_order(), b.max_order());
    for (int q = 0; q <= top; ++q) {
        const auto fa = a.kernel(q);
        const auto fb = b.kernel(q);
        for (std::size_t r = 0; r < fa.size(); ++r) gap = std::max(gap, std::abs(fa.coeffs()[r] - fb.coeffs()[r]));
    }
    return gap;
}

std::vector<IdentityResult> run_identity_suite(std::span<const ChaosExpansion> cases, double tolerance) {
    Tracker product{{"multiplication-formula"}, tolerance};
    Tracker commute{{"multiplication-commutes"}, tolerance};
    Tracker stein_exp{{"stein-kernel-chaos-expansion"}, tolerance};
    Tracker cumulant{{"fourth-cumulant-contractions"}, tolerance};
    Tracker variance{{"stein-kernel-variance"}, tolerance};
    Tracker inequality{{"variance-cumulant-inequality"}, tolerance};
    Tracker k1{{"divergence-of-derivative"}, tolerance};
    Tracker linv{{"generator-inverse"}, tolerance};
    Tracker ibp{{"integration-by-parts"}, tolerance};

    for (std::size_t t = 0; t < cases.size(); ++t) {
        const ChaosExpansion& X = cases[t];
        const ChaosExpansion& Y = (t + 1 < cases.size() && cases[t + 1].dim() == X.dim()) ? cases[t + 1] : X;
        const int dim = X.dim();
        GaussianStream gs(0, kStreamSelftest, 0x80000000u + t);

        // Product of expansions against the product of evaluated polynomials.
        if (X.max_order() + Y.max_order() <= kMaxMomentOrder) {
            const auto P = multiply(X, Y);
            const auto px = chaos_to_polynomial(X);
            const auto py = chaos_to_polynomial(Y);
            const auto pp = chaos_to_polynomial(P);
            std::vector<double> z(static_cast<std::size_t>(dim));
            for (int s = 0; s < 3; ++s) {
                for (auto& v : z) v = gs.next();
                product.record(rel_gap(pp(z), px(z) * py(z)));
            }
            const double scale = std::max(1.0, max_coefficient_gap(P, ChaosExpansion(dim)));
            commute.record(max_coefficient_gap(P, multiply(Y, X)) / scale);
        }

        // L L^{-1} Z = Z - E(Z); delta D Z = -L Z.
        {
            const auto centered = X - ChaosExpansion::constant(dim, X.mean());
            linv.record(max_coefficient_gap(apply_L(apply_L_inverse(X)), centered));
            k1.record(max_coefficient_gap(divergence(malliavin_derivative(X)), -1.0 * apply_L(X)));
        }

        // E[Z f(F)] = E[f'(F) <DF, -DL^{-1} Z>] for a random cubic f.
        {
            const auto Z = X - ChaosExpansion::constant(dim, X.mean());
            const auto& F = Y;
            const double c0 = gs.next(), c1 = gs.next(), c2 = gs.next(), c3 = gs.next();
            const auto F2 = multiply(F, F);
            const auto F3 = multiply(F2, F);
            const auto fF = ChaosExpansion::constant(dim, c0) + c1 * F + c2 * F2 + c3 * F3;
            const auto dfF = ChaosExpansion::constant(dim, c1) + (2.0 * c2) * F + (3.0 * c3) * F2;
            const double lhs = expectation_of_product(Z, fF);
            const double rhs = expectation_of_product(dfF, stein_kernel_inner(F, Z));
            ibp.record(rel_gap(lhs, rhs));
        }

        // Single-chaos identities.
        const int q = single_chaos_order(X);
        if (q >= 1 && std::abs(X.mean()) == 0.0) {
            ChaosExpansion Z = X;
            Z *= 1.0 / std::sqrt(Z.second_moment());
            const auto f = Z.kernel(q);

            const auto W = stein_kernel_inner(Z, Z);
            ChaosExpansion rhs = ChaosExpansion::constant(dim, 1.0);
            for (int r = 1; r <= q - 1; ++r) {
                const double c = q * factorial(r - 1) * std::pow(binomial(q - 1, r - 1), 2);
                rhs.add(c * contract_symmetrized(f, f, r));
            }
            stein_exp.record(max_coefficient_gap(W, rhs) / std::max(1.0, max_coefficient_gap(rhs, ChaosExpansion(dim))));

            const double kappa_direct = exact_moment(Z, 4) - 3.0;
            const double kappa_sum = fourth_cumulant_single_chaos(Z);
            cumulant.record(rel_gap(kappa_direct, kappa_sum));

            const double w_mean = W.mean();
            const double var_direct = expectation_of_product(W, W) - w_mean * w_mean;
            const double var_sum = variance_of_stein_kernel(Z);
            variance.record(rel_gap(var_direct, var_sum));

            const double bound = (q - 1.0) / (3.0 * q) * kappa_sum;
            inequality.record(std::max(0.0, var_sum - bound) / std::max(1.0, bound));
        }
    }
    std::vector<IdentityResult> out;
    for (Tracker* tr : {&product, &commute, &stein_exp, &cumulant, &variance, &inequality, &k1, &linv, &ibp}) {
        out.push_back(tr->r);
    }
    return out;
}

}  // namespace chaosbound
