#include "keen/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <omp.h>

#include "keen/errors.hpp"
#include "keen/lagrange.hpp"

namespace keen {

namespace {

// Base constants and dt-polynomial corrections of the sixth-order scheme.
constexpr double kA1 = 0.0490864609761162454914412;
constexpr double kA1c2 = 0.0000697287150553050840999;
constexpr double kA2 = 0.1687359505634374224481957;
constexpr double kA3 = 0.2641776098889767002001462;
constexpr double kA3c2 = 0.000625704827430047189169;
constexpr double kA3c4 = -2.91660045768984781644e-6;
constexpr double kA4 = 0.377851589220928303880766;
constexpr double kA5 = 0.1867359291349070543084126;
constexpr double kA5c2 = 0.00221308512404532556163;
constexpr double kA5c4 = 0.0000304848026170003878868;
constexpr double kA5c6 = 4.98554938787506812159e-7;
constexpr double kA6 = -0.0931750795687314526579244;

bool all_finite(const std::vector<double>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](double y) { return std::isfinite(y); });
}

}  // namespace

std::vector<double> coefficients_order6(double dt) {
    const double dt2 = dt * dt;
    const double dt4 = dt2 * dt2;
    const double dt6 = dt4 * dt2;
    const double a1 = kA1 - 2.0 * dt2 * kA1c2;
    const double a3 = kA3 - 2.0 * dt2 * kA3c2 + 4.0 * dt4 * kA3c4;
    const double a5 = kA5 - 2.0 * dt2 * kA5c2 + 4.0 * dt4 * kA5c4 - 8.0 * dt6 * kA5c6;
    const std::vector<double> half = {a1, kA2, a3, kA4, a5, kA6};
    std::vector<double> a(11);
    for (int i = 0; i < 6; ++i) a[i] = half[i];
    for (int i = 1; i <= 5; ++i) a[5 + i] = half[5 - i];
    return a;
}

SplittingScheme::SplittingScheme(Kind kind)
    : kind_(kind), name_(kind == Kind::Strang ? "strang" : "order6") {}

SplittingScheme SplittingScheme::strang() { return SplittingScheme(Kind::Strang); }
SplittingScheme SplittingScheme::order6() { return SplittingScheme(Kind::Order6); }

SplittingScheme SplittingScheme::from_name(const std::string& name) {
    if (name == "strang") return strang();
    if (name == "order6") return order6();
    throw std::invalid_argument("unknown scheme '" + name + "' (expected strang or order6)");
}

std::vector<double> SplittingScheme::coefficients(double dt) const {
    if (kind_ == Kind::Strang) return {0.5, 1.0, 0.5};
    return coefficients_order6(dt);
}

VlasovStepper::VlasovStepper(UniformGrid grid, std::shared_ptr<const VelocityMesh> mesh,
                             DriveParams drive, SplittingScheme scheme)
    : grid_(grid),
      mesh_(std::move(mesh)),
      drive_(drive),
      scheme_(std::move(scheme)),
      poisson_(grid),
      rho_(grid.size),
      field_(grid.size, 0.0),
      applied_(grid.size) {
    advectors_.emplace_back(*mesh_);
}

void VlasovStepper::step(PhaseSpaceState& state, double dt) {
    const auto a = scheme_.coefficients(dt);
    double t_star = state.t;
    int sigma = scheme_.sigma_init();
    for (double ak : a) {
        const double dtau = ak * dt;
        if (sigma == 0) {
            drift(state, dtau);
            t_star += dtau;
        } else {
            kick(state, dtau, t_star);
        }
        sigma = 1 - sigma;
    }
    state.t += dt;
}

void VlasovStepper::drift(PhaseSpaceState& state, double dtau) {
    const std::size_t nx = state.nx();
    const std::size_t nv = state.nv();
    const double dx = grid_.spacing();
    const auto& speed = mesh_->midpoints();
    const auto n = static_cast<long long>(nx);
    double* f = state.f.data();

#pragma omp parallel
    {
        std::vector<double> padded(nx + LagrangeStencil::points - 1);
        std::vector<double> line(nx);
#pragma omp for schedule(static)
        for (std::size_t j = 0; j < nv; ++j) {
            const auto stencil = LagrangeStencil::for_shift(speed[j] * dtau / dx);
            long long src = stencil.offset % n;
            if (src < 0) src += n;
            for (std::size_t k = 0; k < padded.size(); ++k) {
                padded[k] = f[static_cast<std::size_t>(src) * nv + j];
                if (++src == n) src = 0;
            }
            // Interpolating the fluctuation about the line mean keeps the
            // x-independent part of f free of weight-sum round-off.
            double mean = 0.0;
            if (!stencil.exact) {
                for (std::size_t i = 0; i < nx; ++i) mean += f[i * nv + j];
                mean /= static_cast<double>(nx);
                for (double& p : padded) p -= mean;
            }
            apply_stencil_padded(stencil, padded, line);
            for (std::size_t i = 0; i < nx; ++i) f[i * nv + j] = line[i] + mean;
        }
    }
}

void VlasovStepper::kick(PhaseSpaceState& state, double dtau, double t_star) {
    density_from_f(state, rho_);
    if (!all_finite(rho_)) {
        throw NumericalError("non-finite charge density at t = " + std::to_string(t_star));
    }
    poisson_.solve(rho_, field_);
    if (!all_finite(field_)) {
        throw NumericalError("non-finite electric field at t = " + std::to_string(t_star));
    }
    ponderomotive_field(drive_, t_star, grid_.spacing(), applied_);

    const auto threads = static_cast<std::size_t>(std::max(1, omp_get_max_threads()));
    while (advectors_.size() < threads) advectors_.emplace_back(*mesh_);

    const auto nx = static_cast<long long>(state.nx());
#pragma omp parallel num_threads(static_cast<int>(threads))
    {
        auto& advector = advectors_[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (long long i = 0; i < nx; ++i) {
            const auto ii = static_cast<std::size_t>(i);
            advector.advect(state.column(ii), (field_[ii] - applied_[ii]) * dtau);
        }
    }
}

}  // namespace keen
