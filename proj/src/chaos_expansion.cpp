#include "chaosbound/chaos_expansion.hpp"

#include "chaosbound/errors.hpp"
#include "chaosbound/numeric.hpp"

#include <utility>

namespace chaosbound {

ChaosExpansion::ChaosExpansion(int dim) : dim_(dim) {
    if (dim < 1) throw ArgumentError("dimension must be positive");
}

ChaosExpansion ChaosExpansion::constant(int dim, double c) {
    ChaosExpansion z(dim);
    SymmetricKernel f(0, dim);
    f.coeffs()[0] = c;
    z.add(f);
    return z;
}

ChaosExpansion ChaosExpansion::single(SymmetricKernel f) {
    ChaosExpansion z(f.dim());
    z.add(f);
    return z;
}

ChaosExpansion ChaosExpansion::gaussian(std::span<const double> h) {
    return single(SymmetricKernel::from_vector(h));
}

int ChaosExpansion::max_order() const {
    return kernels_.empty() ? 0 : kernels_.rbegin()->first;
}

SymmetricKernel ChaosExpansion::kernel(int q) const {
    if (auto it = kernels_.find(q); it != kernels_.end()) return it->second;
    return SymmetricKernel(q, dim_);
}

void ChaosExpansion::add(const SymmetricKernel& f) {
    if (f.dim() != dim_) throw ArgumentError("kernel dimension does not match expansion");
    auto [it, inserted] = kernels_.try_emplace(f.order(), f);
    if (!inserted) it->second += f;
}

double ChaosExpansion::mean() const {
    auto it = kernels_.find(0);
    return it == kernels_.end() ? 0.0 : it->second.coeffs()[0];
}

double ChaosExpansion::second_moment() const {
    return expectation_of_product(*this, *this);
}

double ChaosExpansion::variance() const {
    CompensatedSum acc;
    for (const auto& [q, f] : kernels_) {
        if (q > 0) acc.add(factorial(q) * f.norm_sq());
    }
    return acc.value();
}

ChaosExpansion ChaosExpansion::projection(int q) const {
    ChaosExpansion out(dim_);
    if (auto it = kernels_.find(q); it != kernels_.end()) out.add(it->second);
    return out;
}

bool ChaosExpansion::is_single_chaos(int q) const {
    for (const auto& [order, f] : kernels_) {
        if (order != 0 && order != q && !f.is_zero()) return false;
    }
    return true;
}

ChaosExpansion& ChaosExpansion::operator+=(const ChaosExpansion& other) {
    if (other.dim_ != dim_) throw ArgumentError("dimension mismatch");
    for (const auto& [q, f] : other.kernels_) add(f);
    return *this;
}

ChaosExpansion& ChaosExpansion::operator-=(const ChaosExpansion& other) {
    if (other.dim_ != dim_) throw ArgumentError("dimension mismatch");
    for (const auto& [q, f] : other.kernels_) add(-1.0 * f);
    return *this;
}

ChaosExpansion& ChaosExpansion::operator*=(double s) {
    for (auto& [q, f] : kernels_) f *= s;
    return *this;
}

ChaosExpansion operator+(ChaosExpansion a, const ChaosExpansion& b) { return a += b; }
ChaosExpansion operator-(ChaosExpansion a, const ChaosExpansion& b) { return a -= b; }
ChaosExpansion operator*(double s, ChaosExpansion a) { return a *= s; }

double expectation_of_product(const ChaosExpansion& F, const ChaosExpansion& G) {
    if (F.dim() != G.dim()) throw ArgumentError("dimension mismatch");
    CompensatedSum acc;
    for (const auto& [q, f] : F.kernels()) {
        if (auto it = G.kernels().find(q); it != G.kernels().end()) {
            acc.add(factorial(q) * inner(f, it->second));
        }
    }
    return acc.value();
}

}  // namespace chaosbound
