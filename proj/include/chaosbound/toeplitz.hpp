#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace chaosbound {

namespace detail {
class RealFft;
}

/// Symmetric Toeplitz matrix T_{kl} = c[|k-l|], applied through a circulant
/// embedding of length 2n. apply() is safe to call concurrently.
class SymmetricToeplitz {
public:
    explicit SymmetricToeplitz(std::vector<double> first_column);
    ~SymmetricToeplitz();
    SymmetricToeplitz(SymmetricToeplitz&&) noexcept;
    SymmetricToeplitz& operator=(SymmetricToeplitz&&) noexcept;

    [[nodiscard]] std::size_t size() const { return c_.size(); }
    [[nodiscard]] std::span<const double> first_column() const { return c_; }

    /// y = T x.
    void apply(std::span<const double> x, std::span<double> y) const;

    /// Scratch space for apply(); one per thread.
    class Workspace;
    struct WorkspaceDeleter {
        void operator()(Workspace* p) const;
    };
    using WorkspacePtr = std::unique_ptr<Workspace, WorkspaceDeleter>;
    [[nodiscard]] WorkspacePtr workspace() const;
    void apply(std::span<const double> x, std::span<double> y, Workspace& ws) const;

private:
    std::vector<double> c_;
    std::vector<double> eig_;  // circulant eigenvalues, already divided by 2n
    std::unique_ptr<detail::RealFft> fft_;
};

/// trace(T^4) = ||T^2||_F^2 for the symmetric Toeplitz matrix with first column c.
[[nodiscard]] double toeplitz_trace_fourth(std::span<const double> c);

/// trace(A B A B) for symmetric Toeplitz A, B with first columns a, b.
[[nodiscard]] double toeplitz_trace_abab(std::span<const double> a, std::span<const double> b);

}  // namespace chaosbound
