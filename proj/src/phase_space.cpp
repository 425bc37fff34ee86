#include "keen/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace keen {

namespace {

// Upper tail P(X > v) of the standard normal; accurate for large |v|.
double upper_tail(double v) { return 0.5 * std::erfc(v / std::numbers::sqrt2); }

}  // namespace

PhaseSpaceState::PhaseSpaceState(UniformGrid grid, std::shared_ptr<const VelocityMesh> mesh)
    : x(grid), v(std::move(mesh)), f(x.size * v->cells(), 0.0) {}

double PhaseSpaceState::mass() const {
    const auto& h = v->widths();
    double total = 0.0;
    for (std::size_t i = 0; i < nx(); ++i) {
        const auto col = column(i);
        double m = 0.0;
        for (std::size_t j = 0; j < col.size(); ++j) m += col[j] * h[j];
        total += m;
    }
    return total * x.spacing();
}

bool PhaseSpaceState::all_finite() const {
    return std::all_of(f.begin(), f.end(), [](double y) { return std::isfinite(y); });
}

double maxwellian(double v) {
    return std::exp(-0.5 * v * v) / std::sqrt(2.0 * std::numbers::pi);
}

double maxwellian_cell_average(double a, double b) {
    // Integrate on the side of zero where the tail difference does not cancel.
    double mass;
    if (a >= 0.0) {
        mass = upper_tail(a) - upper_tail(b);
    } else if (b <= 0.0) {
        mass = upper_tail(-b) - upper_tail(-a);
    } else {
        mass = 1.0 - upper_tail(-a) - upper_tail(b);
    }
    return mass / (b - a);
}

std::vector<double> maxwellian_profile(const VelocityMesh& mesh, InitSampling sampling) {
    const auto& knots = mesh.knots();
    std::vector<double> profile(mesh.cells());
    for (std::size_t j = 0; j < profile.size(); ++j) {
        profile[j] = sampling == InitSampling::CellAverage
                         ? maxwellian_cell_average(knots[j], knots[j + 1])
                         : maxwellian(mesh.midpoints()[j]);
    }
    return profile;
}

PhaseSpaceState maxwellian_state(UniformGrid grid, std::shared_ptr<const VelocityMesh> mesh,
                                 InitSampling sampling) {
    PhaseSpaceState state(grid, std::move(mesh));
    const auto profile = maxwellian_profile(*state.v, sampling);
    for (std::size_t i = 0; i < state.nx(); ++i) {
        std::copy(profile.begin(), profile.end(), state.column(i).begin());
    }
    return state;
}

}  // namespace keen
