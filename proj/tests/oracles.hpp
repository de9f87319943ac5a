// Independent reference computations used only by the tests. Nothing here
// calls the routine it is meant to check.
#pragma once

#include "chaosbound/symmetric_kernel.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

using chaosbound::DenseTensor;
using chaosbound::SymmetricKernel;
using big = boost::multiprecision::cpp_bin_float_50;

// ---- dense tensors ------------------------------------------------------------

inline std::vector<int> unflatten(std::size_t flat, int order, int dim) {
    std::vector<int> idx(static_cast<std::size_t>(order));
    for (int s = order - 1; s >= 0; --s) {
        idx[static_cast<std::size_t>(s)] = static_cast<int>(flat % static_cast<std::size_t>(dim));
        flat /= static_cast<std::size_t>(dim);
    }
    return idx;
}

inline DenseTensor dense_of(const SymmetricKernel& f) {
    DenseTensor t(f.order(), f.dim());
    for (std::size_t i = 0; i < t.size(); ++i) t.data()[i] = f.at(unflatten(i, f.order(), f.dim()));
    return t;
}

/// Average over all q! slot permutations, by explicit enumeration.
inline DenseTensor permutation_average(const DenseTensor& raw) {
    const int q = raw.order();
    DenseTensor out(q, raw.dim());
    std::vector<int> perm(static_cast<std::size_t>(q));
    std::iota(perm.begin(), perm.end(), 0);
    double count = 0;
    std::vector<int> src(static_cast<std::size_t>(q));
    do {
        for (std::size_t i = 0; i < out.size(); ++i) {
            const auto idx = unflatten(i, q, raw.dim());
            for (int s = 0; s < q; ++s) src[static_cast<std::size_t>(s)] = idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])];
            out.data()[i] += raw.at(src);
        }
        count += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (auto& v : out.data()) v /= count;
    return out;
}

/// (f ⊗_r g)(a, b) = sum_c f(a, c) g(b, c) with c the last r slots, by loops.
inline DenseTensor naive_contract(const DenseTensor& f, const DenseTensor& g, int r) {
    const int p = f.order(), q = g.order(), d = f.dim();
    DenseTensor out(p + q - 2 * r, d);
    std::size_t nc = 1;
    for (int s = 0; s < r; ++s) nc *= static_cast<std::size_t>(d);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto idx = unflatten(i, p + q - 2 * r, d);
        double acc = 0;
        for (std::size_t c = 0; c < nc; ++c) {
            const auto cidx = unflatten(c, r, d);
            std::vector<int> fi(idx.begin(), idx.begin() + (p - r));
            fi.insert(fi.end(), cidx.begin(), cidx.end());
            std::vector<int> gi(idx.begin() + (p - r), idx.end());
            gi.insert(gi.end(), cidx.begin(), cidx.end());
            acc += f.at(fi) * g.at(gi);
        }
        out.data()[i] = acc;
    }
    return out;
}

inline double dense_norm_sq(const DenseTensor& t) {
    double s = 0;
    for (double v : t.data()) s += v * v;
    return s;
}

// ---- Hermite ------------------------------------------------------------------

/// H_q(x) = q! sum_m (-1)^m x^{q-2m} / (m! (q-2m)! 2^m), in 50-digit arithmetic.
inline double hermite_explicit(int q, double xd) {
    const big x = xd;
    big sum = 0;
    big qf = 1;
    for (int i = 2; i <= q; ++i) qf *= i;
    for (int m = 0; 2 * m <= q; ++m) {
        big mf = 1, rf = 1, p2 = 1;
        for (int i = 2; i <= m; ++i) mf *= i;
        for (int i = 2; i <= q - 2 * m; ++i) rf *= i;
        for (int i = 0; i < m; ++i) p2 *= 2;
        big term = qf / (mf * rf * p2) * pow(x, q - 2 * m);
        sum += (m % 2 == 0) ? term : big(-term);
    }
    return static_cast<double>(sum);
}

// ---- fGn ----------------------------------------------------------------------

inline double rho_big(std::int64_t r, double Hd) {
    const big H = Hd;
    const big x = big(r < 0 ? -r : r);
    const big e = 2 * H;
    auto pw = [&](const big& v) { return v == 0 ? big(0) : big(pow(v, e)); };
    return static_cast<double>((pw(x + 1) + pw(abs(x - 1)) - 2 * pw(x)) / 2);
}

inline double rho_plain(std::int64_t r, double H) {
    const double x = std::abs(static_cast<double>(r));
    return 0.5 * (std::pow(x + 1, 2 * H) + std::pow(std::abs(x - 1), 2 * H) - 2 * std::pow(x, 2 * H));
}

/// rho in long double; enough digits for truncated-series limits up to r ~ 10^6.
inline double rho_long(std::int64_t r, double Hd) {
    const long double H = Hd;
    const long double x = std::abs(static_cast<long double>(r));
    return static_cast<double>(0.5L * (std::pow(x + 1, 2 * H) + std::pow(std::abs(x - 1), 2 * H) - 2 * std::pow(x, 2 * H)));
}

/// rho_big(0..n-1), each lag evaluated once.
inline std::vector<double> rho_lags(int n, double H) {
    std::vector<double> r(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) r[static_cast<std::size_t>(t)] = rho_big(t, H);
    return r;
}

/// Increment covariance [rho(k-l)], row-major, from the 50-digit rho.
inline std::vector<double> covariance(int n, double H) {
    const auto r = rho_lags(n, H);
    std::vector<double> R(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R[static_cast<std::size_t>(i * n + j)] = r[static_cast<std::size_t>(std::abs(i - j))];
    return R;
}

/// 2 sum_{k,l<n} rho^2(k-l) by the double loop.
inline double sigma_sq_double_sum(int n, double H) {
    const auto r = rho_lags(n, H);
    long double s = 0;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const double v = r[static_cast<std::size_t>(std::abs(k - l))];
            s += v * v;
        }
    return static_cast<double>(2 * s);
}

/// sum_{k,l,i,j} rho(k-l) rho(i-j) rho(k-i) rho(l-j), the unreduced quadruple loop.
inline double quadruple_sum(int n, double H) {
    std::vector<double> r(static_cast<std::size_t>(2 * n));
    for (int t = 0; t < 2 * n; ++t) r[static_cast<std::size_t>(t)] = rho_big(t, H);
    auto rr = [&](int t) { return r[static_cast<std::size_t>(t < 0 ? -t : t)]; };
    long double s = 0;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const double a = rr(k - l);
            for (int i = 0; i < n; ++i) {
                double inner = 0;
                for (int j = 0; j < n; ++j) inner += rr(i - j) * rr(l - j);
                s += a * rr(k - i) * inner;
            }
        }
    return static_cast<double>(s);
}

// ---- Gaussian moments ---------------------------------------------------------

/// E[x_{i_1} ... x_{i_m}] for a centered Gaussian vector with covariance C
/// (row-major, dimension n), summing over every perfect matching of the
/// positions not yet in `used`. m <= 16.
inline double isserlis(const std::vector<double>& C, int n, const int* idx, int m, unsigned used = 0) {
    int first = -1;
    for (int i = 0; i < m; ++i) {
        if (!(used & (1u << i))) {
            first = i;
            break;
        }
    }
    if (first < 0) return 1.0;
    double total = 0;
    for (int j = first + 1; j < m; ++j) {
        if (used & (1u << j)) continue;
        const double c = C[static_cast<std::size_t>(idx[first] * n + idx[j])];
        if (c == 0.0) continue;
        total += c * isserlis(C, n, idx, m, used | (1u << first) | (1u << j));
    }
    return total;
}

inline double isserlis(const std::vector<double>& C, int n, const std::vector<int>& idx) {
    if (idx.size() % 2 == 1) return 0.0;
    return isserlis(C, n, idx.data(), static_cast<int>(idx.size()));
}

/// E[prod_a (x_{k_a}^2 - 1)] by expanding the product and applying Isserlis to each term.
inline double wick_square_product(const std::vector<double>& C, int n, const std::vector<int>& ks) {
    const std::size_t m = ks.size();
    double total = 0;
    int idx[16];
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        int len = 0;
        int dropped = 0;
        for (std::size_t a = 0; a < m; ++a) {
            if (mask & (1u << a)) {
                idx[len++] = ks[a];
                idx[len++] = ks[a];
            } else {
                ++dropped;
            }
        }
        total += ((dropped % 2) ? -1.0 : 1.0) * isserlis(C, n, idx, len);
    }
    return total;
}

/// E[(sum_k (x_k^2 - 1))^k] by brute force over non-decreasing index
/// tuples (weighted by their number of orderings).
inline double square_sum_moment_brute(const std::vector<double>& C, int n, int k) {
    long double total = 0;
    std::vector<int> ks(static_cast<std::size_t>(k), 0);
    double kf = 1;
    for (int i = 2; i <= k; ++i) kf *= i;
    while (true) {
        double w = kf;
        int run = 1;
        for (int t = 1; t <= k; ++t) {
            if (t < k && ks[static_cast<std::size_t>(t)] == ks[static_cast<std::size_t>(t - 1)]) {
                ++run;
            } else {
                for (int i = 2; i <= run; ++i) w /= i;
                run = 1;
            }
        }
        total += w * wick_square_product(C, n, ks);
        int pos = k - 1;
        while (pos >= 0 && ks[static_cast<std::size_t>(pos)] == n - 1) --pos;
        if (pos < 0) break;
        const int v = ks[static_cast<std::size_t>(pos)] + 1;
        for (int t = pos; t < k; ++t) ks[static_cast<std::size_t>(t)] = v;
    }
    return static_cast<double>(total);
}

inline double fourth_moment_brute(const std::vector<double>& C, int n) { return square_sum_moment_brute(C, n, 4); }

/// Block sums for the quadratic variation split over index blocks [lo, hi).
struct BlockSums {
    std::vector<double> lags;  // rho(0..N-1) in 50 digits

    BlockSums(int N, double H) : lags(rho_lags(N, H)) {}

    double r(int t) const { return lags[static_cast<std::size_t>(t < 0 ? -t : t)]; }

    /// sum_{k in A, l in B} rho(k-l)^2
    double cross(std::pair<int, int> A, std::pair<int, int> B) const {
        long double s = 0;
        for (int k = A.first; k < A.second; ++k)
            for (int l = B.first; l < B.second; ++l) s += r(k - l) * r(k - l);
        return static_cast<double>(s);
    }

    /// sum over k,l,i,j in A of rho(k-l) rho(i-j) rho(k-i) rho(l-j)
    double quadruple(std::pair<int, int> A) const {
        long double s = 0;
        for (int k = A.first; k < A.second; ++k)
            for (int l = A.first; l < A.second; ++l)
                for (int i = A.first; i < A.second; ++i) {
                    double inner = 0;
                    for (int j = A.first; j < A.second; ++j) inner += r(i - j) * r(l - j);
                    s += r(k - l) * r(k - i) * inner;
                }
        return static_cast<double>(s);
    }
};

inline std::vector<double> matmul(const std::vector<double>& A, const std::vector<double>& B, int n) {
    std::vector<double> out(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double a = A[static_cast<std::size_t>(i * n + k)];
            for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i * n + j)] += a * B[static_cast<std::size_t>(k * n + j)];
        }
    return out;
}

/// E[S^k] for S = sum_k (x_k^2 - 1) from the pairing structure of the Wick
/// expansion: each admissible pairing is a set partition of the k factors
/// into cycles of length l >= 2, and a labelled cycle contributes
/// (l-1)! 2^{l-1} trace(C^l).
inline double square_sum_moment(const std::vector<double>& C, int n, int k) {
    std::vector<double> tr(static_cast<std::size_t>(k + 1), 0.0);
    std::vector<double> P = C;
    for (int l = 1; l <= k; ++l) {
        if (l > 1) P = matmul(P, C, n);
        long double t = 0;
        for (int i = 0; i < n; ++i) t += P[static_cast<std::size_t>(i * n + i)];
        tr[static_cast<std::size_t>(l)] = static_cast<double>(t);
    }
    std::vector<double> cum(static_cast<std::size_t>(k + 1), 0.0);
    for (int l = 2; l <= k; ++l) {
        double f = 1;
        for (int i = 2; i < l; ++i) f *= i;
        cum[static_cast<std::size_t>(l)] = f * std::pow(2.0, l - 1) * tr[static_cast<std::size_t>(l)];
    }
    // Moments from cumulants (mean zero): m_j = sum_{l} C(j-1, l-1) cum_l m_{j-l}.
    std::vector<double> m(static_cast<std::size_t>(k + 1), 0.0);
    m[0] = 1;
    for (int j = 1; j <= k; ++j) {
        double s = 0;
        double binom = 1;  // C(j-1, l-1)
        for (int l = 1; l <= j; ++l) {
            if (l > 1) binom = binom * (j - l + 1) / (l - 1);
            s += binom * cum[static_cast<std::size_t>(l)] * m[static_cast<std::size_t>(j - l)];
        }
        m[static_cast<std::size_t>(j)] = s;
    }
    return m[static_cast<std::size_t>(k)];
}

/// E[N^k] for N ~ N(0,1).
inline double normal_moment(int k) {
    if (k % 2) return 0.0;
    double v = 1;
    for (int i = k - 1; i > 0; i -= 2) v *= i;
    return v;
}

/// Lower Cholesky factor of a positive definite row-major matrix.
inline std::vector<double> cholesky(const std::vector<double>& A, int n) {
    std::vector<double> L(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double s = A[static_cast<std::size_t>(i * n + j)];
            for (int k = 0; k < j; ++k) s -= L[static_cast<std::size_t>(i * n + k)] * L[static_cast<std::size_t>(j * n + k)];
            L[static_cast<std::size_t>(i * n + j)] = (i == j) ? std::sqrt(s) : s / L[static_cast<std::size_t>(j * n + j)];
        }
    return L;
}

}  // namespace oracle
