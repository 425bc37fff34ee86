#include "keen/poisson.hpp"

#include <cassert>
#include <numbers>

namespace keen {

void density_from_f(const PhaseSpaceState& state, std::span<double> rho) {
    assert(rho.size() == state.nx());
    const auto& h = state.v->widths();
    for (std::size_t i = 0; i < state.nx(); ++i) {
        const auto col = state.column(i);
        double sum = 0.0;
        for (std::size_t j = 0; j < col.size(); ++j) sum += col[j] * h[j];
        rho[i] = sum;
    }
}

std::vector<double> density_from_f(const PhaseSpaceState& state) {
    std::vector<double> rho(state.nx());
    density_from_f(state, rho);
    return rho;
}

PoissonSolver::PoissonSolver(UniformGrid grid)
    : grid_(grid), fft_(grid.size), spectrum_(grid.size / 2 + 1) {}

void PoissonSolver::solve(std::span<const double> rho, std::span<double> field) {
    const std::size_t n = grid_.size;
    assert(rho.size() == n && field.size() == n);
    fft_.forward(rho, spectrum_);
    const double wavenumber = 2.0 * std::numbers::pi / grid_.length;
    const double scale = 1.0 / static_cast<double>(n);
    spectrum_[0] = 0.0;
    for (std::size_t k = 1; k < spectrum_.size(); ++k) {
        const double kk = wavenumber * static_cast<double>(k);
        // rho_hat / (i k) = -i rho_hat / k
        spectrum_[k] = std::complex<double>(spectrum_[k].imag(), -spectrum_[k].real()) * (scale / kk);
    }
    if (n % 2 == 0) spectrum_[n / 2] = 0.0;
    fft_.inverse(spectrum_, field);
}

std::vector<double> PoissonSolver::solve(std::span<const double> rho) {
    std::vector<double> field(grid_.size);
    solve(rho, field);
    return field;
}

}  // namespace keen
