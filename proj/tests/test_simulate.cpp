#include "chaosbound/errors.hpp"
#include "chaosbound/fbm.hpp"
#include "chaosbound/fbm_bounds.hpp"
#include "chaosbound/hermite.hpp"
#include "chaosbound/parallel.hpp"
#include "chaosbound/simulate.hpp"
#include "chaosbound/stats.hpp"
#include "chaosbound/stein.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

using namespace chaosbound;

namespace {

/// Batch estimate of E[x_a x_b] over M replicates.
MeanEstimate product_mean(const FgnSampler& s, std::uint64_t M, std::size_t a, std::size_t b) {
    std::vector<double> v(M);
    auto ws = s.workspace();
    std::vector<double> x(static_cast<std::size_t>(s.n()));
    for (std::uint64_t r = 0; r < M; ++r) {
        s.sample(r, x, *ws);
        v[r] = x[a] * x[b];
    }
    return batch_mean(v);
}

}  // namespace

TEST_SUITE("sampler") {
    TEST_CASE("deterministic per replicate") {
        const FgnSampler s(0.7, 100, 42);
        CHECK(sample_fgn(s, 3) == sample_fgn(s, 3));
        CHECK(sample_fgn(s, 3) != sample_fgn(s, 4));
        CHECK(sample_fgn(FgnSampler(0.7, 100, 43), 3) != sample_fgn(s, 3));
        CHECK(s.clipped_eigenvalues() == 0);
    }

    TEST_CASE("H = 1/2 gives independent standard normals") {
        const FgnSampler s(0.5, 16, 1);
        std::vector<double> pooled;
        for (std::uint64_t r = 0; r < 20000; ++r) {
            const auto x = sample_fgn(s, r);
            pooled.insert(pooled.end(), x.begin(), x.end());
        }
        CHECK(empirical_kolmogorov(EmpiricalSample(pooled)) < dkw_radius(double(pooled.size()), 0.001));
        const auto lag = product_mean(s, 100000, 3, 4);
        CHECK(std::abs(lag.mean) < 5 * lag.std_error);
    }

    TEST_CASE("lag-one covariance at H = 0.7") {
        const FgnSampler s(0.7, 64, 2);
        const auto e = product_mean(s, 100000, 20, 21);
        CHECK(std::abs(e.mean - rho(1, 0.7)) < 5 * e.std_error);
        CHECK(rho(1, 0.7) == doctest::Approx(0.3195).epsilon(1e-3));
    }

    TEST_CASE("full covariance for n = 8") {
        const int n = 8;
        const std::uint64_t M = 1000000;
        const FgnSampler s(0.8, n, 3);
        std::vector<std::vector<double>> prods(n * (n + 1) / 2, std::vector<double>(M));
        auto ws = s.workspace();
        std::vector<double> x(n);
        for (std::uint64_t r = 0; r < M; ++r) {
            s.sample(r, x, *ws);
            std::size_t t = 0;
            for (int a = 0; a < n; ++a)
                for (int b = a; b < n; ++b) prods[t++][r] = x[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(b)];
        }
        std::size_t t = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                const auto e = batch_mean(prods[t++]);
                INFO("a=" << a << " b=" << b);
                CHECK(std::abs(e.mean - rho(b - a, 0.8)) < 5 * e.std_error);
            }
    }

    TEST_CASE("argument checks") {
        CHECK_THROWS_AS((void)FgnSampler(1.0, 10, 0), ArgumentError);
        CHECK_THROWS_AS((void)FgnSampler(0.5, 0, 0), ArgumentError);
        const FgnSampler s(0.3, 10, 0);
        std::vector<double> wrong(9);
        auto ws = s.workspace();
        CHECK_THROWS_AS(s.sample(0, wrong, *ws), ArgumentError);
    }

    TEST_CASE("n = 1") {
        const auto x = sample_fgn(FgnSampler(0.3, 1, 5), 0);
        REQUIRE(x.size() == 1);
        CHECK(std::isfinite(x[0]));
    }
}

TEST_SUITE("statistics") {
    TEST_CASE("quadratic variation examples") {
        const std::vector<double> zeros(10, 0.0), ones(10, 1.0);
        const double sig = std::sqrt(sigma_sq(10, 0.6));
        CHECK(qv_statistic(zeros, sig) == doctest::Approx(-10 / sig));
        CHECK(qv_statistic(ones, sig) == 0.0);
        CHECK_THROWS_AS((void)qv_statistic(ones, 0.0), ArgumentError);
    }

    TEST_CASE("Hermite variation examples") {
        const std::vector<double> x{0.3, -1.2, 2.5, 0.0};
        CHECK(hermite_statistic(x, 2, 1.7) == qv_statistic(x, 1.7));
        CHECK(hermite_statistic(std::vector<double>(5, 0.0), 3, 1.0) == 0.0);
        double s = 0;
        for (double v : x) s += hermite(4, v);
        CHECK(hermite_statistic(x, 4, 2.0) == doctest::Approx(s / 2));
        CHECK_THROWS_AS((void)hermite_statistic(x, 1, 1.0), ArgumentError);
        CHECK_THROWS_AS((void)hermite_statistic(x, 3, -1.0), ArgumentError);
    }

    TEST_CASE("normalization of Z_n by Monte Carlo") {
        const auto run = run_monte_carlo({StatisticKind::quadratic_variation, 0.6, 128, 2}, 11, 100000);
        const auto m = mc_moments(run, 2);
        CHECK(std::abs(m[0].mean) < 5 * m[0].std_error);
        CHECK(std::abs(m[1].mean - 1) < 5 * m[1].std_error);
    }

    TEST_CASE("normalization of Z_n^(3) by Monte Carlo") {
        const auto run = run_monte_carlo({StatisticKind::hermite_variation, 0.5, 128, 3}, 12, 100000);
        const auto m = mc_moments(run, 2);
        CHECK(std::abs(m[1].mean - 1) < 5 * m[1].std_error);
    }
}

TEST_SUITE("monte carlo") {
    TEST_CASE("fourth moment at H = 1/2, n = 12") {
        const auto run = run_monte_carlo({StatisticKind::quadratic_variation, 0.5, 12, 2}, 13, 1000000);
        const auto m = mc_moments(run, 4);
        REQUIRE(m.size() == 4);
        CHECK(std::abs(m[0].mean) < 5 * m[0].std_error);
        CHECK(std::abs(m[1].mean - 1) < 5 * m[1].std_error);
        CHECK(std::abs(m[3].mean - (3 + fourth_cumulant_exact(12, 0.5))) < 5 * m[3].std_error);
        CHECK(3 + fourth_cumulant_exact(12, 0.5) == doctest::Approx(4.0));
    }

    TEST_CASE("fourth moment at H = 0.7 against the exact cumulant") {
        const auto run = run_monte_carlo({StatisticKind::quadratic_variation, 0.7, 32, 2}, 14, 400000);
        const auto m = mc_moments(run, 4);
        CHECK(std::abs(m[3].mean - (3 + fourth_cumulant_exact(32, 0.7))) < 5 * m[3].std_error);
    }

    TEST_CASE("direct normal draws stay within the DKW radius") {
        const auto k = mc_kolmogorov(run_monte_carlo({StatisticKind::direct_normal, 0.5, 1, 2}, 15, 100000));
        CHECK(k.distance <= k.dkw_radius);
        CHECK(k.samples == 100000);
    }

    TEST_CASE("empirical distance dominated by bound plus radius") {
        const std::int64_t n = 4096;
        const auto k = mc_kolmogorov(run_monte_carlo({StatisticKind::quadratic_variation, 0.6, n, 2}, 16, 100000));
        CHECK(k.distance <= kolmogorov_bound(n, 0.6).value + k.dkw_radius);
    }

    TEST_CASE("radius shrinks by sqrt 2 when M doubles") {
        const McModel m{StatisticKind::direct_normal, 0.5, 1, 2};
        const auto a = mc_kolmogorov(run_monte_carlo(m, 1, 20000));
        const auto b = mc_kolmogorov(run_monte_carlo(m, 1, 40000));
        CHECK(a.dkw_radius / b.dkw_radius == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(a.dkw_radius == doctest::Approx(std::sqrt(std::log(2 / 0.01) / (2 * 20000))));
    }

    TEST_CASE("distance plus radius decreases along n") {
        int violations = 0;
        double prev = 1e300;
        for (std::int64_t n = 64; n <= 4096; n *= 4) {
            const auto k = mc_kolmogorov(run_monte_carlo({StatisticKind::quadratic_variation, 0.6, n, 2}, 17, 100000));
            const double v = k.distance + k.dkw_radius;
            if (v >= prev) ++violations;
            prev = v;
        }
        CHECK(violations <= 1);
    }

    TEST_CASE("bit-identical across worker counts") {
        const McModel m{StatisticKind::hermite_variation, 0.65, 300, 3};
        const unsigned saved = worker_count();
        set_worker_count(1);
        const auto a = run_monte_carlo(m, 99, 5000);
        set_worker_count(4);
        const auto b = run_monte_carlo(m, 99, 5000);
        set_worker_count(8);
        const auto c = run_monte_carlo(m, 99, 5000);
        set_worker_count(saved);
        REQUIRE(a.values.size() == 5000);
        CHECK(std::memcmp(a.values.data(), b.values.data(), 5000 * sizeof(double)) == 0);
        CHECK(std::memcmp(a.values.data(), c.values.data(), 5000 * sizeof(double)) == 0);
        const auto ma = mc_moments(a, 8), mc = mc_moments(c, 8);
        for (std::size_t i = 0; i < ma.size(); ++i) CHECK(ma[i].mean == mc[i].mean);
    }

    TEST_CASE("preconditions") {
        const auto small = run_monte_carlo({StatisticKind::direct_normal, 0.5, 1, 2}, 1, 99);
        CHECK_THROWS_AS((void)mc_moments(small, 2), ArgumentError);
        const auto mid = run_monte_carlo({StatisticKind::direct_normal, 0.5, 1, 2}, 1, 9999);
        CHECK_THROWS_AS((void)mc_moments(mid, 9), ArgumentError);
        CHECK_THROWS_AS((void)mc_kolmogorov(mid), ArgumentError);
        CHECK_THROWS_AS((void)run_monte_carlo({StatisticKind::quadratic_variation, 0.5, 4, 2}, 1, 0), ArgumentError);
    }
}

TEST_SUITE("sample file") {
    TEST_CASE("round trip and layout") {
        const auto path = std::filesystem::temp_directory_path() / "chaosbound_test.qvmc";
        const auto run = run_monte_carlo({StatisticKind::quadratic_variation, 0.6, 64, 2}, 5, 1000);
        write_qvmc(path, run);
        const auto back = read_qvmc(path);
        CHECK(back.H == 0.6);
        CHECK(back.n == 64);
        CHECK(back.values == run.values);
        CHECK(std::filesystem::file_size(path) == 4 + 4 + 8 + 8 + 8 + 8 * 1000);
        {
            std::ifstream is(path, std::ios::binary);
            char head[8];
            is.read(head, 8);
            CHECK(std::string(head, 4) == "QVMC");
            CHECK(static_cast<unsigned char>(head[4]) == kQvmcVersion);
        }
        {
            std::ofstream os(path, std::ios::binary);
            os << "NOPE0000";
        }
        CHECK_THROWS_AS((void)read_qvmc(path), ArgumentError);
        std::filesystem::remove(path);
    }
}
