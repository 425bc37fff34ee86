#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace keen {

/// Real-to-complex DFT of fixed length backed by FFTW. Plans are built with
/// FFTW_ESTIMATE so that the algorithm, and hence the round-off, does not
/// depend on timing. Owns its buffers; one instance per thread.
class RealFft {
public:
    explicit RealFft(std::size_t n);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;
    RealFft(RealFft&& other) noexcept;
    RealFft& operator=(RealFft&& other) noexcept;

    std::size_t size() const { return n_; }
    std::size_t spectrum_size() const { return n_ / 2 + 1; }

    /// Unnormalized forward transform: X_k = sum_i x_i exp(-2 pi i k i / n).
    void forward(std::span<const double> in, std::span<std::complex<double>> out);
    /// Unnormalized inverse transform (no 1/n factor).
    void inverse(std::span<const std::complex<double>> in, std::span<double> out);

private:
    void release();

    std::size_t n_ = 0;
    double* real_ = nullptr;
    void* spectrum_ = nullptr;
    void* forward_plan_ = nullptr;
    void* inverse_plan_ = nullptr;
};

}  // namespace keen
