#include "chaosbound/chaos_algebra.hpp"

#include "chaosbound/errors.hpp"
#include "chaosbound/hermite.hpp"
#include "chaosbound/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chaosbound {

namespace {

constexpr double kCenteringTolerance = 1e-10;
constexpr double kUnitVarianceTolerance = 1e-10;

using Exps = std::vector<std::uint8_t>;

// Calls fn(beta) for every exponent vector beta <= gamma (componentwise) with |beta| = size.
template <typename Fn>
void for_each_submultiset(std::span<const std::uint8_t> gamma, int size, Exps& beta, std::size_t j, Fn&& fn) {
    if (j == gamma.size()) {
        if (size == 0) fn(static_cast<const Exps&>(beta));
        return;
    }
    int tail = 0;
    for (std::size_t k = j + 1; k < gamma.size(); ++k) tail += gamma[k];
    const int hi = std::min<int>(gamma[j], size);
    const int lo = std::max(0, size - tail);
    for (int b = lo; b <= hi; ++b) {
        beta[j] = static_cast<std::uint8_t>(b);
        for_each_submultiset(gamma, size - b, beta, j + 1, fn);
    }
    beta[j] = 0;
}

void check_contraction_args(const SymmetricKernel& f, const SymmetricKernel& g, int r) {
    if (f.dim() != g.dim()) throw ArgumentError("contraction of kernels with different dimensions");
    if (r < 0 || r > std::min(f.order(), g.order())) {
        throw ArgumentError("contraction order " + std::to_string(r) + " outside [0, min(p, q)]");
    }
}

// sum_{kappa} mult(kappa) f[left + kappa] g[right + kappa]
double paired_sum(const SymmetricKernel& f, const SymmetricKernel& g, const MultisetBasis& kappas,
                  std::span<const std::uint8_t> left, std::span<const std::uint8_t> right, Exps& fa, Exps& ga) {
    const std::size_t d = left.size();
    CompensatedSum acc;
    for (std::size_t k = 0; k < kappas.size(); ++k) {
        const auto kap = kappas.exponents(k);
        for (std::size_t j = 0; j < d; ++j) {
            fa[j] = static_cast<std::uint8_t>(left[j] + kap[j]);
            ga[j] = static_cast<std::uint8_t>(right[j] + kap[j]);
        }
        const double fv = f.coeffs()[f.basis().rank_of_exponents(fa)];
        if (fv == 0.0) continue;
        const double gv = g.coeffs()[g.basis().rank_of_exponents(ga)];
        acc.add(kappas.multiplicity(k) * fv * gv);
    }
    return acc.value();
}

ChaosExpansion derivative_component(const ChaosExpansion& Z, int i) {
    ChaosExpansion out(Z.dim());
    Exps up(static_cast<std::size_t>(Z.dim()));
    for (const auto& [q, f] : Z.kernels()) {
        if (q == 0) continue;
        SymmetricKernel g(q - 1, Z.dim());
        const auto& gb = g.basis();
        for (std::size_t rank = 0; rank < gb.size(); ++rank) {
            const auto e = gb.exponents(rank);
            std::copy(e.begin(), e.end(), up.begin());
            ++up[static_cast<std::size_t>(i)];
            g.coeffs()[rank] = q * f.coeffs()[f.basis().rank_of_exponents(up)];
        }
        out.add(g);
    }
    return out;
}

}  // namespace

SymmetricKernel symmetrize(const DenseTensor& raw) {
    SymmetricKernel out(raw.order(), raw.dim());
    const auto& b = out.basis();
    const auto data = raw.data();
    std::vector<int> idx(static_cast<std::size_t>(raw.order()), 0);
    std::vector<double> sums(b.size(), 0.0);
    for (std::size_t off = 0; off < data.size(); ++off) {
        std::size_t rem = off;
        for (int k = raw.order() - 1; k >= 0; --k) {
            idx[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(raw.dim()));
            rem /= static_cast<std::size_t>(raw.dim());
        }
        sums[b.rank_of_indices(idx)] += data[off];
    }
    for (std::size_t r = 0; r < b.size(); ++r) out.coeffs()[r] = sums[r] / b.multiplicity(r);
    return out;
}

DenseTensor contract(const SymmetricKernel& f, const SymmetricKernel& g, int r) {
    check_contraction_args(f, g, r);
    const int d = f.dim();
    const int a = f.order() - r;
    const int b = g.order() - r;
    DenseTensor out(a + b, d);
    DenseTensor pairing(r, d);  // only used to walk the d^r paired tuples
    std::vector<int> fi(static_cast<std::size_t>(f.order()));
    std::vector<int> gi(static_cast<std::size_t>(g.order()));
    std::vector<int> oi(static_cast<std::size_t>(a + b));
    auto data = out.data();
    for (std::size_t off = 0; off < data.size(); ++off) {
        std::size_t rem = off;
        for (int k = a + b - 1; k >= 0; --k) {
            oi[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(d));
            rem /= static_cast<std::size_t>(d);
        }
        std::copy(oi.begin(), oi.begin() + a, fi.begin());
        std::copy(oi.begin() + a, oi.end(), gi.begin());
        double acc = 0.0;
        for (std::size_t p = 0; p < pairing.size(); ++p) {
            std::size_t prem = p;
            for (int k = r - 1; k >= 0; --k) {
                const int idx = static_cast<int>(prem % static_cast<std::size_t>(d));
                prem /= static_cast<std::size_t>(d);
                fi[static_cast<std::size_t>(a + k)] = idx;
                gi[static_cast<std::size_t>(b + k)] = idx;
            }
            acc += f.at(fi) * g.at(gi);
        }
        data[off] = acc;
    }
    return out;
}

SymmetricKernel contract_symmetrized(const SymmetricKernel& f, const SymmetricKernel& g, int r) {
    check_contraction_args(f, g, r);
    const int d = f.dim();
    const int a = f.order() - r;
    const int n_out = f.order() + g.order() - 2 * r;
    SymmetricKernel out(n_out, d);
    if (f.is_zero() || g.is_zero()) return out;

    const auto kappas = multiset_basis(d, r);
    const double norm = binomial(n_out, a);
    const auto& ob = out.basis();
    Exps beta(static_cast<std::size_t>(d), 0);
    Exps delta(static_cast<std::size_t>(d), 0);
    Exps fa(static_cast<std::size_t>(d), 0);
    Exps ga(static_cast<std::size_t>(d), 0);
    for (std::size_t rank = 0; rank < ob.size(); ++rank) {
        const auto gamma = ob.exponents(rank);
        CompensatedSum acc;
        for_each_submultiset(gamma, a, beta, 0, [&](const Exps& bt) {
            double w = 1.0;
            for (std::size_t j = 0; j < bt.size(); ++j) {
                w *= binomial(gamma[j], bt[j]);
                delta[j] = static_cast<std::uint8_t>(gamma[j] - bt[j]);
            }
            acc.add(w * paired_sum(f, g, *kappas, bt, delta, fa, ga));
        });
        out.coeffs()[rank] = acc.value() / norm;
    }
    return out;
}

double contraction_norm_sq(const SymmetricKernel& f, const SymmetricKernel& g, int r) {
    check_contraction_args(f, g, r);
    const int d = f.dim();
    const auto kappas = multiset_basis(d, r);
    const auto lefts = multiset_basis(d, f.order() - r);
    const auto rights = multiset_basis(d, g.order() - r);
    Exps fa(static_cast<std::size_t>(d), 0);
    Exps ga(static_cast<std::size_t>(d), 0);
    CompensatedSum acc;
    for (std::size_t t = 0; t < lefts->size(); ++t) {
        for (std::size_t s = 0; s < rights->size(); ++s) {
            const double v = paired_sum(f, g, *kappas, lefts->exponents(t), rights->exponents(s), fa, ga);
            acc.add(lefts->multiplicity(t) * rights->multiplicity(s) * v * v);
        }
    }
    return acc.value();
}

ChaosExpansion multiply(const ChaosExpansion& F, const ChaosExpansion& G) {
    if (F.dim() != G.dim()) throw ArgumentError("multiply: dimension mismatch");
    ChaosExpansion out(F.dim());
    for (const auto& [p, f] : F.kernels()) {
        if (f.is_zero()) continue;
        for (const auto& [q, g] : G.kernels()) {
            if (g.is_zero()) continue;
            for (int r = 0; r <= std::min(p, q); ++r) {
                const double c = factorial(r) * binomial(p, r) * binomial(q, r);
                out.add(c * contract_symmetrized(f, g, r));
            }
        }
    }
    return out;
}

PolynomialEvaluator::PolynomialEvaluator(const ChaosExpansion& Z) : dim_(Z.dim()) {
    for (const auto& [q, f] : Z.kernels()) {
        const auto& b = f.basis();
        for (std::size_t r = 0; r < b.size(); ++r) {
            const double c = f.coeffs()[r];
            if (c == 0.0) continue;
            coeffs_.push_back(b.multiplicity(r) * c);
            const auto e = b.exponents(r);
            exps_.insert(exps_.end(), e.begin(), e.end());
            max_order_ = std::max(max_order_, q);
        }
    }
}

double PolynomialEvaluator::operator()(std::span<const double> z) const {
    if (static_cast<int>(z.size()) != dim_) throw ArgumentError("evaluator: wrong number of coordinates");
    const std::size_t stride = static_cast<std::size_t>(max_order_) + 1;
    std::vector<double> table(stride * static_cast<std::size_t>(dim_));
    for (int j = 0; j < dim_; ++j) {
        hermite_table(z[static_cast<std::size_t>(j)], std::span<double>(table).subspan(j * stride, stride));
    }
    double total = 0.0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        double term = coeffs_[t];
        const std::uint8_t* e = exps_.data() + t * static_cast<std::size_t>(dim_);
        for (int j = 0; j < dim_; ++j) {
            if (e[j] != 0) term *= table[static_cast<std::size_t>(j) * stride + e[j]];
        }
        total += term;
    }
    return total;
}

PolynomialEvaluator chaos_to_polynomial(const ChaosExpansion& Z) { return PolynomialEvaluator(Z); }

std::vector<ChaosExpansion> malliavin_derivative(const ChaosExpansion& Z) {
    std::vector<ChaosExpansion> out;
    out.reserve(static_cast<std::size_t>(Z.dim()));
    for (int i = 0; i < Z.dim(); ++i) out.push_back(derivative_component(Z, i));
    return out;
}

ChaosExpansion apply_L(const ChaosExpansion& Z) {
    ChaosExpansion out(Z.dim());
    for (const auto& [q, f] : Z.kernels()) {
        if (q > 0) out.add(-static_cast<double>(q) * f);
    }
    return out;
}

ChaosExpansion apply_L_inverse(const ChaosExpansion& Z) {
    ChaosExpansion out(Z.dim());
    for (const auto& [q, f] : Z.kernels()) {
        if (q > 0) out.add((-1.0 / q) * f);
    }
    return out;
}

ChaosExpansion stein_kernel_inner(const ChaosExpansion& F, const ChaosExpansion& Z) {
    if (F.dim() != Z.dim()) throw ArgumentError("stein_kernel_inner: dimension mismatch");
    if (std::abs(Z.mean()) > kCenteringTolerance) throw ArgumentError("stein_kernel_inner: Z must be centered");
    const auto dF = malliavin_derivative(F);
    const auto dU = malliavin_derivative(-1.0 * apply_L_inverse(Z));
    ChaosExpansion out(F.dim());
    for (std::size_t i = 0; i < dF.size(); ++i) out += multiply(dF[i], dU[i]);
    return out;
}

double exact_moment(const ChaosExpansion& Z, int k) {
    if (k < 1) throw ArgumentError("moment order must be at least 1");
    if (Z.max_order() * k > kMaxMomentOrder) {
        throw CapacityError("exact_moment: order " + std::to_string(Z.max_order()) + " times k = " +
                            std::to_string(k) + " exceeds " + std::to_string(kMaxMomentOrder));
    }
    if (k == 1) return Z.mean();
    // E(Z^k) = E(Z^ceil(k/2) * Z^floor(k/2)): the order-0 term of the last product.
    const int hi = (k + 1) / 2;
    const int lo = k / 2;
    ChaosExpansion power = Z;
    ChaosExpansion low_power = Z;
    for (int j = 2; j <= hi; ++j) {
        power = multiply(power, Z);
        if (j == lo) low_power = power;
    }
    return expectation_of_product(power, low_power);
}

int single_chaos_order(const ChaosExpansion& Z) {
    int order = 0;
    for (const auto& [q, f] : Z.kernels()) {
        if (q == 0 || f.is_zero()) continue;
        if (order != 0) return -1;
        order = q;
    }
    return order;
}

namespace {

SymmetricKernel unit_variance_kernel(const ChaosExpansion& Z, const char* who) {
    const int q = single_chaos_order(Z);
    if (q < 0) throw ArgumentError(std::string(who) + ": expansion is not in a single chaos");
    if (std::abs(Z.mean()) > kCenteringTolerance) throw ArgumentError(std::string(who) + ": Z must be centered");
    if (std::abs(Z.second_moment() - 1.0) > kUnitVarianceTolerance) {
        throw ArgumentError(std::string(who) + ": E(Z^2) must equal 1");
    }
    return Z.kernel(q);
}

}  // namespace

double variance_of_stein_kernel(const ChaosExpansion& Z) {
    const auto f = unit_variance_kernel(Z, "variance_of_stein_kernel");
    const int q = f.order();
    CompensatedSum acc;
    for (int r = 1; r <= q - 1; ++r) {
        const double c = (static_cast<double>(r) * r) / (static_cast<double>(q) * q) * std::pow(factorial(r), 2) *
                         std::pow(binomial(q, r), 4) * factorial(2 * q - 2 * r);
        acc.add(c * contract_symmetrized(f, f, r).norm_sq());
    }
    return acc.value();
}

double fourth_cumulant_single_chaos(const ChaosExpansion& Z) {
    const auto f = unit_variance_kernel(Z, "fourth_cumulant_single_chaos");
    const int q = f.order();
    CompensatedSum acc;
    for (int r = 1; r <= q - 1; ++r) {
        const double c = 3.0 / q * r * std::pow(factorial(r), 2) * std::pow(binomial(q, r), 4) *
                         factorial(2 * q - 2 * r);
        acc.add(c * contract_symmetrized(f, f, r).norm_sq());
    }
    return acc.value();
}

}  // namespace chaosbound
