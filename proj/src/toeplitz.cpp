#include "chaosbound/toeplitz.hpp"

#include "chaosbound/errors.hpp"
#include "chaosbound/numeric.hpp"
#include "chaosbound/parallel.hpp"
#include "fft_plan.hpp"

#include <algorithm>

namespace chaosbound {

class SymmetricToeplitz::Workspace {
public:
    explicit Workspace(std::size_t m)
        : re(detail::fftw_real_buffer(m)), cx(detail::fftw_complex_buffer(m / 2 + 1)) {}
    detail::FftwBuffer<double> re;
    detail::FftwBuffer<fftw_complex> cx;
};

SymmetricToeplitz::SymmetricToeplitz(std::vector<double> first_column) : c_(std::move(first_column)) {
    if (c_.empty()) throw ArgumentError("SymmetricToeplitz: empty first column");
    const std::size_t n = c_.size();
    const std::size_t m = 2 * n;
    fft_ = std::make_unique<detail::RealFft>(m);
    Workspace ws(m);
    double* e = ws.re.get();
    for (std::size_t i = 0; i < n; ++i) e[i] = c_[i];
    e[n] = 0.0;
    for (std::size_t j = 1; j < n; ++j) e[n + j] = c_[n - j];
    fft_->forward(e, ws.cx.get());
    eig_.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) eig_[k] = ws.cx[k][0] / static_cast<double>(m);
}

SymmetricToeplitz::~SymmetricToeplitz() = default;
SymmetricToeplitz::SymmetricToeplitz(SymmetricToeplitz&&) noexcept = default;
SymmetricToeplitz& SymmetricToeplitz::operator=(SymmetricToeplitz&&) noexcept = default;

void SymmetricToeplitz::WorkspaceDeleter::operator()(Workspace* p) const { delete p; }

SymmetricToeplitz::WorkspacePtr SymmetricToeplitz::workspace() const {
    return WorkspacePtr(new Workspace(2 * c_.size()));
}

void SymmetricToeplitz::apply(std::span<const double> x, std::span<double> y) const {
    Workspace ws(2 * c_.size());
    apply(x, y, ws);
}

void SymmetricToeplitz::apply(std::span<const double> x, std::span<double> y, Workspace& ws) const {
    const std::size_t n = c_.size();
    if (x.size() != n || y.size() != n) throw ArgumentError("SymmetricToeplitz::apply: size mismatch");
    double* re = ws.re.get();
    fftw_complex* cx = ws.cx.get();
    std::copy(x.begin(), x.end(), re);
    std::fill(re + n, re + 2 * n, 0.0);
    fft_->forward(re, cx);
    for (std::size_t k = 0; k <= n; ++k) {
        cx[k][0] *= eig_[k];
        cx[k][1] *= eig_[k];
    }
    fft_->backward(cx, re);
    std::copy(re, re + n, y.begin());
}

namespace {

void column(std::span<const double> c, std::size_t j, std::span<double> out) {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) out[i] = c[i > j ? i - j : j - i];
}

// Sums term(j) over columns j, using term(j) == term(n-1-j) (both matrices
// are centrosymmetric). Per-column results are reduced in column order.
template <class Term>
double centrosymmetric_column_sum(std::size_t n, Term&& term) {
    const std::size_t half = (n + 1) / 2;
    std::vector<double> parts(half);
    parallel_for_ranges(half, [&](std::size_t lo, std::size_t hi) { term(lo, hi, parts); });
    CompensatedSum acc;
    for (std::size_t j = 0; j < half; ++j) {
        const bool middle = (n % 2 == 1) && (j == half - 1);
        acc.add(middle ? parts[j] : 2.0 * parts[j]);
    }
    return acc.value();
}

}  // namespace

double toeplitz_trace_fourth(std::span<const double> c) {
    const std::size_t n = c.size();
    if (n == 0) throw ArgumentError("toeplitz_trace_fourth: empty first column");
    const SymmetricToeplitz T(std::vector<double>(c.begin(), c.end()));
    return centrosymmetric_column_sum(n, [&](std::size_t lo, std::size_t hi, std::vector<double>& parts) {
        auto ws = T.workspace();
        std::vector<double> col(n);
        std::vector<double> y(n);
        for (std::size_t j = lo; j < hi; ++j) {
            column(c, j, col);
            T.apply(col, y, *ws);
            CompensatedSum s;
            for (double v : y) s.add(v * v);
            parts[j] = s.value();
        }
    });
}

double toeplitz_trace_abab(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    if (n == 0 || b.size() != n) throw ArgumentError("toeplitz_trace_abab: size mismatch");
    const SymmetricToeplitz A(std::vector<double>(a.begin(), a.end()));
    const SymmetricToeplitz B(std::vector<double>(b.begin(), b.end()));
    // trace((AB)^2) = sum_j <(AB) e_j, (AB)^T e_j> = sum_j <A b_j, B a_j>.
    return centrosymmetric_column_sum(n, [&](std::size_t lo, std::size_t hi, std::vector<double>& parts) {
        auto wa = A.workspace();
        auto wb = B.workspace();
        std::vector<double> col(n);
        std::vector<double> ab(n);
        std::vector<double> ba(n);
        for (std::size_t j = lo; j < hi; ++j) {
            column(b, j, col);
            A.apply(col, ab, *wa);
            column(a, j, col);
            B.apply(col, ba, *wb);
            CompensatedSum s;
            for (std::size_t i = 0; i < n; ++i) s.add(ab[i] * ba[i]);
            parts[j] = s.value();
        }
    });
}

}  // namespace chaosbound
