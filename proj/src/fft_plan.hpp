#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>

namespace chaosbound::detail {

struct FftwDeleter {
    void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter>;

[[nodiscard]] FftwBuffer<double> fftw_real_buffer(std::size_t n);
[[nodiscard]] FftwBuffer<fftw_complex> fftw_complex_buffer(std::size_t n);

// Real-to-complex and complex-to-real plans of a fixed length m, created
// with FFTW_ESTIMATE under a global mutex. Execution uses the new-array
// interface, which is thread-safe, on fftw_malloc'd buffers.
class RealFft {
public:
    explicit RealFft(std::size_t m);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    [[nodiscard]] std::size_t size() const { return m_; }
    /// in: m reals; out: m/2 + 1 complex.
    void forward(double* in, fftw_complex* out) const;
    /// in: m/2 + 1 complex (overwritten); out: m reals, unnormalized.
    void backward(fftw_complex* in, double* out) const;

private:
    std::size_t m_;
    fftw_plan r2c_ = nullptr;
    fftw_plan c2r_ = nullptr;
};

}  // namespace chaosbound::detail
