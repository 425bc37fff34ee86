#pragma once

#include <complex>
#include <span>
#include <vector>

#include "keen/fft.hpp"
#include "keen/phase_space.hpp"

namespace keen {

/// rho_i = sum_j f_{i,j+1/2} (v_{j+1} - v_j), summed in fixed order.
std::vector<double> density_from_f(const PhaseSpaceState& state);
void density_from_f(const PhaseSpaceState& state, std::span<double> rho);

/// Spectral solve of dE/dx = rho - mean(rho) on a periodic uniform grid.
///
/// E_hat_k = rho_hat_k / (i k_phys) for k != 0 with k_phys = 2 pi k / L;
/// the k = 0 mode (background and any mass drift) is discarded so E has zero
/// mean. For even N the Nyquist mode is dropped as well, since i k times a
/// real coefficient has no real-valued representation there.
class PoissonSolver {
public:
    explicit PoissonSolver(UniformGrid grid);

    const UniformGrid& grid() const { return grid_; }

    void solve(std::span<const double> rho, std::span<double> field);
    std::vector<double> solve(std::span<const double> rho);

private:
    UniformGrid grid_;
    RealFft fft_;
    std::vector<std::complex<double>> spectrum_;
};

}  // namespace keen
