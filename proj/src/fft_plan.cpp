#include "fft_plan.hpp"

#include "chaosbound/errors.hpp"

#include <mutex>

namespace chaosbound::detail {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

FftwBuffer<double> fftw_real_buffer(std::size_t n) {
    auto* p = static_cast<double*>(fftw_malloc(sizeof(double) * (n == 0 ? 1 : n)));
    if (p == nullptr) throw CapacityError("fftw_malloc failed");
    return FftwBuffer<double>(p);
}

FftwBuffer<fftw_complex> fftw_complex_buffer(std::size_t n) {
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n == 0 ? 1 : n)));
    if (p == nullptr) throw CapacityError("fftw_malloc failed");
    return FftwBuffer<fftw_complex>(p);
}

RealFft::RealFft(std::size_t m) : m_(m) {
    if (m < 2) throw ArgumentError("RealFft: length must be >= 2");
    auto re = fftw_real_buffer(m);
    auto cx = fftw_complex_buffer(m / 2 + 1);
    const int len = static_cast<int>(m);
    std::lock_guard lock(planner_mutex());
    r2c_ = fftw_plan_dft_r2c_1d(len, re.get(), cx.get(), FFTW_ESTIMATE);
    c2r_ = fftw_plan_dft_c2r_1d(len, cx.get(), re.get(), FFTW_ESTIMATE);
    if (r2c_ == nullptr || c2r_ == nullptr) throw CapacityError("FFTW planning failed");
}

RealFft::~RealFft() {
    std::lock_guard lock(planner_mutex());
    if (r2c_ != nullptr) fftw_destroy_plan(r2c_);
    if (c2r_ != nullptr) fftw_destroy_plan(c2r_);
}

void RealFft::forward(double* in, fftw_complex* out) const { fftw_execute_dft_r2c(r2c_, in, out); }

void RealFft::backward(fftw_complex* in, double* out) const { fftw_execute_dft_c2r(c2r_, in, out); }

}  // namespace chaosbound::detail
