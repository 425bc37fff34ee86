#include "keen/fft.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <new>
#include <utility>

#include <fftw3.h>

namespace keen {

namespace {
// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
    assert(n > 0);
    real_ = fftw_alloc_real(n_);
    auto* freq = fftw_alloc_complex(n_ / 2 + 1);
    if (real_ == nullptr || freq == nullptr) throw std::bad_alloc{};
    spectrum_ = freq;
    std::lock_guard lock(planner_mutex());
    const int len = static_cast<int>(n_);
    forward_plan_ = fftw_plan_dft_r2c_1d(len, real_, freq, FFTW_ESTIMATE);
    inverse_plan_ = fftw_plan_dft_c2r_1d(len, freq, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() { release(); }

RealFft::RealFft(RealFft&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      real_(std::exchange(other.real_, nullptr)),
      spectrum_(std::exchange(other.spectrum_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      inverse_plan_(std::exchange(other.inverse_plan_, nullptr)) {}

RealFft& RealFft::operator=(RealFft&& other) noexcept {
    if (this != &other) {
        release();
        n_ = std::exchange(other.n_, 0);
        real_ = std::exchange(other.real_, nullptr);
        spectrum_ = std::exchange(other.spectrum_, nullptr);
        forward_plan_ = std::exchange(other.forward_plan_, nullptr);
        inverse_plan_ = std::exchange(other.inverse_plan_, nullptr);
    }
    return *this;
}

void RealFft::release() {
    std::lock_guard lock(planner_mutex());
    if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
    if (real_) fftw_free(real_);
    if (spectrum_) fftw_free(spectrum_);
    forward_plan_ = inverse_plan_ = nullptr;
    real_ = nullptr;
    spectrum_ = nullptr;
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) {
    assert(in.size() == n_ && out.size() == spectrum_size());
    std::copy(in.begin(), in.end(), real_);
    fftw_execute(static_cast<fftw_plan>(forward_plan_));
    const auto* freq = static_cast<const std::complex<double>*>(spectrum_);
    std::copy(freq, freq + spectrum_size(), out.begin());
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
    assert(in.size() == spectrum_size() && out.size() == n_);
    auto* freq = static_cast<std::complex<double>*>(spectrum_);
    std::copy(in.begin(), in.end(), freq);
    // c2r destroys its input; spectrum_ is scratch.
    fftw_execute(static_cast<fftw_plan>(inverse_plan_));
    std::copy(real_, real_ + n_, out.begin());
}

}  // namespace keen
