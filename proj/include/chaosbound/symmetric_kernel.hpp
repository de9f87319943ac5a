#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace chaosbound {

// Enumeration of the multisets of size `order` drawn from {0, ..., dim-1}.
// A multiset is stored as its exponent vector (count of each basis index);
// position in the table is the colex rank of the sorted index sequence.
class MultisetBasis {
public:
    MultisetBasis(int dim, int order);

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] std::size_t size() const { return size_; }

    [[nodiscard]] std::span<const std::uint8_t> exponents(std::size_t rank) const {
        return {exps_.data() + rank * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    /// Number of ordered index tuples with this exponent vector: q! / prod(m_j!).
    [[nodiscard]] double multiplicity(std::size_t rank) const { return multiplicity_[rank]; }

    [[nodiscard]] std::size_t rank_of_exponents(std::span<const std::uint8_t> exps) const;
    [[nodiscard]] std::size_t rank_of_indices(std::span<const int> indices) const;

private:
    int dim_;
    int order_;
    std::size_t size_;
    std::vector<std::uint8_t> exps_;
    std::vector<double> multiplicity_;
};

/// Shared, immutable basis for (dim, order). Thread-safe.
[[nodiscard]] std::shared_ptr<const MultisetBasis> multiset_basis(int dim, int order);

/// Full (non-symmetric) tensor of order q over R^d, row-major.
class DenseTensor {
public:
    DenseTensor(int order, int dim);

    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] std::size_t size() const { return data_.size(); }
    [[nodiscard]] std::span<double> data() { return data_; }
    [[nodiscard]] std::span<const double> data() const { return data_; }

    [[nodiscard]] std::size_t offset(std::span<const int> indices) const;
    [[nodiscard]] double at(std::span<const int> indices) const { return data_[offset(indices)]; }
    double& at(std::span<const int> indices) { return data_[offset(indices)]; }

    [[nodiscard]] double norm_sq() const;

private:
    int order_;
    int dim_;
    std::vector<double> data_;
};

/// Element of the q-th symmetric tensor power of R^d. One coefficient per
/// multiset of indices; the coefficient is the (common) tensor entry of every
/// ordered tuple in that multiset.
class SymmetricKernel {
public:
    SymmetricKernel(int order, int dim);

    /// Unit vector e_i (order 1).
    static SymmetricKernel basis_vector(int dim, int i);
    static SymmetricKernel from_vector(std::span<const double> h);
    /// h ⊗ h ⊗ ... ⊗ h (order q).
    static SymmetricKernel tensor_power(std::span<const double> h, int order);

    [[nodiscard]] int order() const { return basis_->order(); }
    [[nodiscard]] int dim() const { return basis_->dim(); }
    [[nodiscard]] std::size_t size() const { return coeffs_.size(); }
    [[nodiscard]] const MultisetBasis& basis() const { return *basis_; }

    [[nodiscard]] std::span<const double> coeffs() const { return coeffs_; }
    [[nodiscard]] std::span<double> coeffs() { return coeffs_; }

    [[nodiscard]] double at(std::span<const int> indices) const;
    void set(std::span<const int> indices, double value);

    [[nodiscard]] double norm_sq() const;
    [[nodiscard]] bool is_zero() const;

    SymmetricKernel& operator+=(const SymmetricKernel& other);
    SymmetricKernel& operator*=(double s);

private:
    std::shared_ptr<const MultisetBasis> basis_;
    std::vector<double> coeffs_;
};

[[nodiscard]] SymmetricKernel operator+(SymmetricKernel a, const SymmetricKernel& b);
[[nodiscard]] SymmetricKernel operator*(double s, SymmetricKernel a);

/// <f, g> in the full tensor product (f, g of equal order and dim).
[[nodiscard]] double inner(const SymmetricKernel& f, const SymmetricKernel& g);

[[nodiscard]] DenseTensor to_dense(const SymmetricKernel& f);

}  // namespace chaosbound
