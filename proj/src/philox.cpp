#include "chaosbound/philox.hpp"

#include "chaosbound/errors.hpp"


#include <cmath>

namespace chaosbound {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void round(Philox4x32::Counter& c, const Philox4x32::Key& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
    for (int i = 0; i < 10; ++i) {
        if (i > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        round(ctr, key);
    }
    return ctr;
}

GaussianStream::GaussianStream(std::uint64_t seed, std::uint32_t stream, std::uint64_t replicate)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      ctr_{0, 0, static_cast<std::uint32_t>(replicate), stream} {
    if (replicate >> 32) throw ArgumentError("replicate index exceeds 32 bits");
}

void GaussianStream::refill() {
    ctr_[0] = static_cast<std::uint32_t>(block_);
    ctr_[1] = static_cast<std::uint32_t>(block_ >> 32);
    ++block_;
    const auto out = Philox4x32::block(ctr_, key_);
    words_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    words_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    used_ = 0;
}

double GaussianStream::next_uniform() {
    if (used_ == 2) refill();
    const std::uint64_t w = words_[static_cast<std::size_t>(used_++)];
    // 53 random bits, centred in their cell: strictly inside (0, 1).
    return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianStream::next() { return normal_quantile(next_uniform()); }

namespace {

double poly(const double* c, int n, double x) {
    double s = c[n - 1];
    for (int i = n - 2; i >= 0; --i) s = s * x + c[i];
    return s;
}

// Wichura, Algorithm AS 241 (PPND16).
constexpr double kA[8] = {3.3871328727963666080e0, 1.3314166789178437745e+2, 1.9715909503065514427e+3,
                          1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
                          3.3430575583588128105e+4, 2.5090809287301226727e+3};
constexpr double kB[8] = {1.0, 4.2313330701600911252e+1, 6.8718700749205790830e+2, 5.3941960214247511077e+3,
                          2.1213794301586595867e+4, 3.9307895800092710610e+4, 2.8729085735721942674e+4,
                          5.2264952788528545610e+3};
constexpr double kC[8] = {1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
                          3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
                          2.27238449892691845833e-2, 7.74545014278341407640e-4};
constexpr double kD[8] = {1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
                          1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
                          1.05075007164441684324e-9};
constexpr double kE[8] = {6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
                          2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
                          2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr double kF[8] = {1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
                          7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
                          2.04426310338993978564e-15};

}  // namespace

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) throw ArgumentError("normal_quantile: argument outside (0, 1)");
    const double q = u - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(kA, 8, r) / poly(kB, 8, r);
    }
    double r = std::sqrt(-std::log(q < 0 ? u : 1.0 - u));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = poly(kC, 8, r) / poly(kD, 8, r);
    } else {
        r -= 5.0;
        x = poly(kE, 8, r) / poly(kF, 8, r);
    }
    return q < 0 ? -x : x;
}

}  // namespace chaosbound
