#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "keen/velocity_mesh.hpp"

namespace keen {

/// Uniform periodic grid x_i = i * dx on [0, length).
struct UniformGrid {
    std::size_t size = 0;
    double length = 0.0;

    double spacing() const { return length / static_cast<double>(size); }
    double point(std::size_t i) const { return static_cast<double>(i) * spacing(); }
};

/// Distribution f(x_i, v_{j+1/2}): point values in x, cell averages in v.
/// Stored row-major with x outermost, f[i * N_v + j].
struct PhaseSpaceState {
    UniformGrid x;
    std::shared_ptr<const VelocityMesh> v;
    std::vector<double> f;
    double t = 0.0;

    PhaseSpaceState() = default;
    PhaseSpaceState(UniformGrid grid, std::shared_ptr<const VelocityMesh> mesh);

    std::size_t nx() const { return x.size; }
    std::size_t nv() const { return v->cells(); }
    double& operator()(std::size_t i, std::size_t j) { return f[i * nv() + j]; }
    double operator()(std::size_t i, std::size_t j) const { return f[i * nv() + j]; }
    std::span<double> column(std::size_t i) { return {f.data() + i * nv(), nv()}; }
    std::span<const double> column(std::size_t i) const { return {f.data() + i * nv(), nv()}; }

    /// sum_ij f_ij dx dv_j
    double mass() const;
    bool all_finite() const;
};

/// Standard normal density 1/sqrt(2 pi) exp(-v^2 / 2).
double maxwellian(double v);
/// Exact mean of the Maxwellian over [a, b], via the Gaussian CDF.
double maxwellian_cell_average(double a, double b);

enum class InitSampling { CellAverage, Midpoint };

/// Spatially uniform Maxwellian on the given grids.
PhaseSpaceState maxwellian_state(UniformGrid grid, std::shared_ptr<const VelocityMesh> mesh,
                                 InitSampling sampling = InitSampling::CellAverage);

/// Maxwellian profile in v only (one value per cell).
std::vector<double> maxwellian_profile(const VelocityMesh& mesh,
                                       InitSampling sampling = InitSampling::CellAverage);

}  // namespace keen
