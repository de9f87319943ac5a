#include "chaosbound/simulate.hpp"

#include "chaosbound/errors.hpp"
#include "chaosbound/fbm.hpp"
#include "chaosbound/hermite.hpp"
#include "chaosbound/numeric.hpp"
#include "chaosbound/parallel.hpp"
#include "chaosbound/philox.hpp"
#include "chaosbound/stats.hpp"
#include "chaosbound/stein.hpp"
#include "fft_plan.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

namespace chaosbound {

class FgnSampler::Workspace {
public:
    explicit Workspace(std::size_t m)
        : re(detail::fftw_real_buffer(m)), cx(detail::fftw_complex_buffer(m / 2 + 1)) {}
    detail::FftwBuffer<double> re;
    detail::FftwBuffer<fftw_complex> cx;
};

FgnSampler::FgnSampler(double H, std::int64_t n, std::uint64_t seed) : H_(H), n_(n), seed_(seed) {
    if (n < 1) throw ArgumentError("FgnSampler: n must be >= 1");
    if (!(H > 0.0 && H < 1.0)) throw ArgumentError("FgnSampler: Hurst index must lie in (0, 1)");
    const auto nn = static_cast<std::size_t>(n);
    const std::size_t m = 2 * nn;
    fft_ = std::make_unique<detail::RealFft>(m);
    Workspace ws(m);
    double* c = ws.re.get();
    for (std::size_t k = 0; k <= nn; ++k) c[k] = rho(static_cast<std::int64_t>(k), H);
    for (std::size_t j = 1; j < nn; ++j) c[nn + j] = c[nn - j];
    fft_->forward(c, ws.cx.get());

    std::vector<double> lambda(nn + 1);
    double lmax = 0.0;
    for (std::size_t k = 0; k <= nn; ++k) {
        lambda[k] = ws.cx[k][0];
        lmax = std::max(lmax, lambda[k]);
    }
    scale_.resize(nn + 1);
    const double md = static_cast<double>(m);
    for (std::size_t k = 0; k <= nn; ++k) {
        double l = lambda[k];
        if (l < 0.0) {
            if (l < -1e-8 * lmax) {
                throw DomainError("FgnSampler: circulant embedding has eigenvalue " + std::to_string(l));
            }
            l = 0.0;
            ++clipped_;
        }
        const bool real_bin = (k == 0 || k == nn);
        scale_[k] = std::sqrt(l / (real_bin ? md : 2.0 * md));
    }
}

FgnSampler::~FgnSampler() = default;
FgnSampler::FgnSampler(FgnSampler&&) noexcept = default;
FgnSampler& FgnSampler::operator=(FgnSampler&&) noexcept = default;

void FgnSampler::WorkspaceDeleter::operator()(Workspace* p) const { delete p; }

FgnSampler::WorkspacePtr FgnSampler::workspace() const {
    return WorkspacePtr(new Workspace(2 * static_cast<std::size_t>(n_)));
}

void FgnSampler::sample(std::uint64_t replicate, std::span<double> out, Workspace& ws) const {
    const auto nn = static_cast<std::size_t>(n_);
    if (out.size() != nn) throw ArgumentError("FgnSampler::sample: output size must equal n");
    GaussianStream gs(seed_, kStreamFgn, replicate);
    fftw_complex* a = ws.cx.get();
    a[0][0] = scale_[0] * gs.next();
    a[0][1] = 0.0;
    for (std::size_t k = 1; k < nn; ++k) {
        a[k][0] = scale_[k] * gs.next();
        a[k][1] = scale_[k] * gs.next();
    }
    a[nn][0] = scale_[nn] * gs.next();
    a[nn][1] = 0.0;
    fft_->backward(a, ws.re.get());
    std::copy(ws.re.get(), ws.re.get() + nn, out.begin());
}

std::vector<double> sample_fgn(const FgnSampler& sampler, std::uint64_t replicate_id) {
    std::vector<double> out(static_cast<std::size_t>(sampler.n()));
    auto ws = sampler.workspace();
    sampler.sample(replicate_id, out, *ws);
    return out;
}

double qv_statistic(std::span<const double> increments, double sigma) {
    if (!(sigma > 0.0)) throw ArgumentError("qv_statistic: sigma must be > 0");
    CompensatedSum acc;
    for (double x : increments) acc.add(x * x - 1.0);
    return acc.value() / sigma;
}

double hermite_statistic(std::span<const double> increments, int q, double sigma_q) {
    if (q < 2) throw ArgumentError("hermite_statistic: q must be >= 2");
    if (!(sigma_q > 0.0)) throw ArgumentError("hermite_statistic: sigma_q must be > 0");
    CompensatedSum acc;
    for (double x : increments) acc.add(hermite(q, x));
    return acc.value() / sigma_q;
}

McRun run_monte_carlo(const McModel& model, std::uint64_t seed, std::uint64_t replicates) {
    if (replicates == 0) throw ArgumentError("run_monte_carlo: need at least one replicate");
    McRun run;
    run.model = model;
    run.seed = seed;
    run.values.assign(replicates, 0.0);

    if (model.kind == StatisticKind::direct_normal) {
        parallel_for(replicates, [&](std::size_t r) {
            GaussianStream gs(seed, kStreamDirect, r);
            run.values[r] = gs.next();
        });
        return run;
    }

    const bool qv = model.kind == StatisticKind::quadratic_variation;
    if (!qv && model.q < 2) throw ArgumentError("run_monte_carlo: Hermite order must be >= 2");
    const FgnSampler sampler(model.H, model.n, seed);
    const double sigma = std::sqrt(qv ? sigma_sq(model.n, model.H)
                                      : hermite_variation_sigma_sq(model.n, model.H, model.q));
    parallel_for_ranges(replicates, [&](std::size_t lo, std::size_t hi) {
        auto ws = sampler.workspace();
        std::vector<double> xs(static_cast<std::size_t>(model.n));
        for (std::size_t r = lo; r < hi; ++r) {
            sampler.sample(r, xs, *ws);
            run.values[r] = qv ? qv_statistic(xs, sigma) : hermite_statistic(xs, model.q, sigma);
        }
    });
    return run;
}

std::vector<MomentEstimate> mc_moments(const McRun& run, int k_max) {
    if (run.replicates() < 100) throw ArgumentError("mc_moments: need at least 100 replicates");
    if (k_max < 1 || k_max > 8) throw ArgumentError("mc_moments: k_max must lie in [1, 8]");
    std::vector<MomentEstimate> out;
    std::vector<double> powers(run.values.size());
    for (int k = 1; k <= k_max; ++k) {
        for (std::size_t i = 0; i < powers.size(); ++i) powers[i] = std::pow(run.values[i], k);
        const auto est = batch_mean(powers, run.batches);
        out.push_back({k, est.mean, est.std_error});
    }
    return out;
}

KolmogorovEstimate mc_kolmogorov(const McRun& run) {
    if (run.replicates() < 10000) throw ArgumentError("mc_kolmogorov: need at least 10^4 replicates");
    const EmpiricalSample sample(run.values);
    return {empirical_kolmogorov(sample), dkw_radius(static_cast<double>(run.replicates())), run.replicates()};
}

namespace {

template <class T>
void put_le(std::ofstream& os, T v) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    const auto u = std::bit_cast<U>(v);
    std::array<char, sizeof(U)> bytes{};
    for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((u >> (8 * i)) & 0xFFu);
    os.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::ifstream& is) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    std::array<unsigned char, sizeof(U)> bytes{};
    is.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (!is) throw ArgumentError("read_qvmc: truncated file");
    U u = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) u |= static_cast<U>(bytes[i]) << (8 * i);
    return std::bit_cast<T>(u);
}

}  // namespace

void write_qvmc(const std::filesystem::path& path, const McRun& run) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ArgumentError("write_qvmc: cannot open " + path.string());
    os.write("QVMC", 4);
    put_le<std::uint32_t>(os, kQvmcVersion);
    put_le<double>(os, run.model.H);
    put_le<std::uint64_t>(os, static_cast<std::uint64_t>(run.model.n));
    put_le<std::uint64_t>(os, run.replicates());
    for (double v : run.values) put_le<double>(os, v);
    if (!os) throw ArgumentError("write_qvmc: write failed for " + path.string());
}

QvmcData read_qvmc(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ArgumentError("read_qvmc: cannot open " + path.string());
    std::array<char, 4> magic{};
    is.read(magic.data(), 4);
    if (!is || std::memcmp(magic.data(), "QVMC", 4) != 0) throw ArgumentError("read_qvmc: bad magic");
    const auto version = get_le<std::uint32_t>(is);
    if (version != kQvmcVersion) throw ArgumentError("read_qvmc: unsupported version " + std::to_string(version));
    QvmcData out{};
    out.H = get_le<double>(is);
    out.n = get_le<std::uint64_t>(is);
    const auto m = get_le<std::uint64_t>(is);
    out.values.resize(m);
    for (auto& v : out.values) v = get_le<double>(is);
    return out;
}

}  // namespace chaosbound
