#include "chaosbound/symmetric_kernel.hpp"

#include "chaosbound/errors.hpp"
#include "chaosbound/numeric.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace chaosbound {

namespace {

constexpr std::size_t kMaxBasisSize = std::size_t{1} << 24;
constexpr std::size_t kMaxDenseSize = std::size_t{1} << 26;
constexpr int kMaxOrder = 64;

void check_shape(int dim, int order) {
    if (dim < 1) throw ArgumentError("dimension must be positive");
    if (order < 0) throw ArgumentError("order must be non-negative");
    if (order > kMaxOrder) throw CapacityError("tensor order " + std::to_string(order) + " exceeds cap");
}

}  // namespace

MultisetBasis::MultisetBasis(int dim, int order) : dim_(dim), order_(order) {
    check_shape(dim, order);
    if (dim + order - 1 > 67) throw CapacityError("multiset basis too large");
    size_ = binomial_u64(dim + order - 1, order);
    if (size_ > kMaxBasisSize) throw CapacityError("multiset basis too large: " + std::to_string(size_));

    exps_.assign(size_ * static_cast<std::size_t>(dim), 0);
    multiplicity_.assign(size_, 0.0);

    // Walk non-decreasing sequences i_0 <= ... <= i_{q-1} in lexicographic order.
    std::vector<int> seq(static_cast<std::size_t>(order), 0);
    std::vector<std::uint8_t> exps(static_cast<std::size_t>(dim), 0);
    const double qfact = factorial(order);
    for (;;) {
        std::fill(exps.begin(), exps.end(), 0);
        for (int i : seq) ++exps[static_cast<std::size_t>(i)];
        const std::size_t r = rank_of_exponents(exps);
        std::copy(exps.begin(), exps.end(), exps_.begin() + static_cast<std::ptrdiff_t>(r * dim));
        double m = qfact;
        for (auto e : exps) m /= factorial(e);
        multiplicity_[r] = m;

        int pos = order - 1;
        while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == dim - 1) --pos;
        if (pos < 0) break;
        const int v = seq[static_cast<std::size_t>(pos)] + 1;
        for (int k = pos; k < order; ++k) seq[static_cast<std::size_t>(k)] = v;
    }
}

std::size_t MultisetBasis::rank_of_exponents(std::span<const std::uint8_t> exps) const {
    // colex rank of c_k = i_k + k
    std::size_t rank = 0;
    int k = 0;
    for (int j = 0; j < dim_; ++j) {
        for (int m = 0; m < exps[static_cast<std::size_t>(j)]; ++m, ++k) {
            rank += binomial_u64(j + k, k + 1);
        }
    }
    return rank;
}

std::size_t MultisetBasis::rank_of_indices(std::span<const int> indices) const {
    if (static_cast<int>(indices.size()) != order_) throw ArgumentError("index tuple has wrong length");
    std::vector<std::uint8_t> exps(static_cast<std::size_t>(dim_), 0);
    for (int i : indices) {
        if (i < 0 || i >= dim_) throw ArgumentError("index out of range");
        ++exps[static_cast<std::size_t>(i)];
    }
    return rank_of_exponents(exps);
}

std::shared_ptr<const MultisetBasis> multiset_basis(int dim, int order) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const MultisetBasis>> cache;
    check_shape(dim, order);
    const std::lock_guard lock(mutex);
    auto& slot = cache[{dim, order}];
    if (!slot) slot = std::make_shared<const MultisetBasis>(dim, order);
    return slot;
}

DenseTensor::DenseTensor(int order, int dim) : order_(order), dim_(dim) {
    check_shape(dim, order);
    std::size_t n = 1;
    for (int k = 0; k < order; ++k) {
        n *= static_cast<std::size_t>(dim);
        if (n > kMaxDenseSize) throw CapacityError("dense tensor too large");
    }
    data_.assign(n, 0.0);
}

std::size_t DenseTensor::offset(std::span<const int> indices) const {
    if (static_cast<int>(indices.size()) != order_) throw ArgumentError("index tuple has wrong length");
    std::size_t off = 0;
    for (int i : indices) {
        if (i < 0 || i >= dim_) throw ArgumentError("index out of range");
        off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return off;
}

double DenseTensor::norm_sq() const {
    CompensatedSum acc;
    for (double x : data_) acc.add(x * x);
    return acc.value();
}

SymmetricKernel::SymmetricKernel(int order, int dim)
    : basis_(multiset_basis(dim, order)), coeffs_(basis_->size(), 0.0) {}

SymmetricKernel SymmetricKernel::basis_vector(int dim, int i) {
    SymmetricKernel f(1, dim);
    const int idx[1] = {i};
    f.set(idx, 1.0);
    return f;
}

SymmetricKernel SymmetricKernel::from_vector(std::span<const double> h) {
    SymmetricKernel f(1, static_cast<int>(h.size()));
    std::copy(h.begin(), h.end(), f.coeffs_.begin());
    return f;
}

SymmetricKernel SymmetricKernel::tensor_power(std::span<const double> h, int order) {
    SymmetricKernel f(order, static_cast<int>(h.size()));
    const auto& b = f.basis();
    for (std::size_t r = 0; r < b.size(); ++r) {
        double v = 1.0;
        const auto e = b.exponents(r);
        for (std::size_t j = 0; j < e.size(); ++j) v *= std::pow(h[j], e[j]);
        f.coeffs_[r] = v;
    }
    return f;
}

double SymmetricKernel::at(std::span<const int> indices) const {
    return coeffs_[basis_->rank_of_indices(indices)];
}

void SymmetricKernel::set(std::span<const int> indices, double value) {
    coeffs_[basis_->rank_of_indices(indices)] = value;
}

double SymmetricKernel::norm_sq() const {
    CompensatedSum acc;
    for (std::size_t r = 0; r < coeffs_.size(); ++r) acc.add(basis_->multiplicity(r) * coeffs_[r] * coeffs_[r]);
    return acc.value();
}

bool SymmetricKernel::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

SymmetricKernel& SymmetricKernel::operator+=(const SymmetricKernel& other) {
    if (other.order() != order() || other.dim() != dim()) throw ArgumentError("kernel shape mismatch in addition");
    for (std::size_t r = 0; r < coeffs_.size(); ++r) coeffs_[r] += other.coeffs_[r];
    return *this;
}

SymmetricKernel& SymmetricKernel::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    return *this;
}

SymmetricKernel operator+(SymmetricKernel a, const SymmetricKernel& b) {
    a += b;
    return a;
}

SymmetricKernel operator*(double s, SymmetricKernel a) {
    a *= s;
    return a;
}

double inner(const SymmetricKernel& f, const SymmetricKernel& g) {
    if (f.order() != g.order() || f.dim() != g.dim()) throw ArgumentError("kernel shape mismatch in inner product");
    CompensatedSum acc;
    const auto& b = f.basis();
    for (std::size_t r = 0; r < f.size(); ++r) acc.add(b.multiplicity(r) * f.coeffs()[r] * g.coeffs()[r]);
    return acc.value();
}

DenseTensor to_dense(const SymmetricKernel& f) {
    DenseTensor t(f.order(), f.dim());
    std::vector<int> idx(static_cast<std::size_t>(f.order()), 0);
    auto data = t.data();
    for (std::size_t off = 0; off < data.size(); ++off) {
        std::size_t rem = off;
        for (int k = f.order() - 1; k >= 0; --k) {
            idx[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(f.dim()));
            rem /= static_cast<std::size_t>(f.dim());
        }
        data[off] = f.at(idx);
    }
    return t;
}

}  // namespace chaosbound
