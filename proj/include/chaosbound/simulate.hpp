#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

namespace chaosbound {

namespace detail {
class RealFft;
}

/// Exact sampler of n consecutive increments of unit fractional Brownian
/// motion (fractional Gaussian noise) by circulant embedding of length 2n.
/// Replicate r of seed s is a fixed function of (s, r).
class FgnSampler {
public:
    FgnSampler(double H, std::int64_t n, std::uint64_t seed);
    ~FgnSampler();
    FgnSampler(FgnSampler&&) noexcept;
    FgnSampler& operator=(FgnSampler&&) noexcept;

    [[nodiscard]] double hurst() const { return H_; }
    [[nodiscard]] std::int64_t n() const { return n_; }
    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    /// Embedding eigenvalues that were slightly negative and clipped to 0.
    [[nodiscard]] int clipped_eigenvalues() const { return clipped_; }

    class Workspace;
    struct WorkspaceDeleter {
        void operator()(Workspace* p) const;
    };
    using WorkspacePtr = std::unique_ptr<Workspace, WorkspaceDeleter>;
    [[nodiscard]] WorkspacePtr workspace() const;
    void sample(std::uint64_t replicate, std::span<double> out, Workspace& ws) const;

private:
    double H_;
    std::int64_t n_;
    std::uint64_t seed_;
    int clipped_ = 0;
    std::vector<double> scale_;  // sqrt of eigenvalue / 2n, halved off the real bins
    std::unique_ptr<detail::RealFft> fft_;
};

[[nodiscard]] std::vector<double> sample_fgn(const FgnSampler& sampler, std::uint64_t replicate_id);

/// (1/sigma) sum_k (x_k^2 - 1).
[[nodiscard]] double qv_statistic(std::span<const double> increments, double sigma);
/// (1/sigma_q) sum_k H_q(x_k).
[[nodiscard]] double hermite_statistic(std::span<const double> increments, int q, double sigma_q);

enum class StatisticKind {
    quadratic_variation,  // Z_n
    hermite_variation,    // Z_n^{(q)}
    direct_normal,        // plain N(0,1) draws; a control for the machinery
};

struct McModel {
    StatisticKind kind = StatisticKind::quadratic_variation;
    double H = 0.5;
    std::int64_t n = 1;
    int q = 2;
};

struct McRun {
    McModel model;
    std::uint64_t seed = 0;
    int batches = 32;
    /// One statistic value per replicate, in replicate order.
    std::vector<double> values;

    [[nodiscard]] std::uint64_t replicates() const { return values.size(); }
};

/// Simulates `replicates` independent copies of the model statistic. Work is
/// spread over worker threads; values are identical for any worker count.
[[nodiscard]] McRun run_monte_carlo(const McModel& model, std::uint64_t seed, std::uint64_t replicates);

struct MomentEstimate {
    int k;
    double mean;
    double std_error;
};

/// Batch-mean estimates of E(Z^k), k = 1..k_max. Needs M >= 100, k_max <= 8.
[[nodiscard]] std::vector<MomentEstimate> mc_moments(const McRun& run, int k_max);

struct KolmogorovEstimate {
    double distance;
    double dkw_radius;  // 99% band
    std::uint64_t samples;
};

/// Empirical Kolmogorov distance to N(0,1). Needs M >= 10^4.
[[nodiscard]] KolmogorovEstimate mc_kolmogorov(const McRun& run);

struct QvmcData {
    double H;
    std::uint64_t n;
    std::vector<double> values;
};

/// Little-endian dump: "QVMC", u32 version, f64 H, u64 n, u64 M, M x f64.
void write_qvmc(const std::filesystem::path& path, const McRun& run);
[[nodiscard]] QvmcData read_qvmc(const std::filesystem::path& path);

inline constexpr std::uint32_t kQvmcVersion = 1;

}  // namespace chaosbound
