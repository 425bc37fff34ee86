#pragma once

#include <memory>
#include <string>
#include <vector>

#include "keen/drive.hpp"
#include "keen/phase_space.hpp"
#include "keen/poisson.hpp"
#include "keen/spline.hpp"

namespace keen {

/// Composition of x-drifts (operator 0) and v-kicks (operator 1).
/// Substep k advances the operator sigma by a_k(dt) * dt, then sigma flips.
class SplittingScheme {
public:
    enum class Kind { Strang, Order6 };

    static SplittingScheme strang();
    static SplittingScheme order6();
    /// `strang` or `order6`; throws std::invalid_argument otherwise.
    static SplittingScheme from_name(const std::string& name);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int stages() const { return kind_ == Kind::Strang ? 3 : 11; }
    int sigma_init() const { return 1; }

    /// a_1(dt) .. a_s(dt).
    std::vector<double> coefficients(double dt) const;

private:
    explicit SplittingScheme(Kind kind);
    Kind kind_;
    std::string name_;
};

/// a_1 .. a_11 of the 11-stage sixth-order Vlasov-Poisson splitting. The
/// kick coefficients a_1, a_3, a_5 (and mirrors) carry dt^2, dt^4, dt^6
/// corrections; a_{6+i} = a_{6-i}.
std::vector<double> coefficients_order6(double dt);

/// Applies drift and kick substeps to a phase-space state on fixed grids.
///
/// Drift: f(., v_{j+1/2}) advected in x at speed v_{j+1/2} with the degree-17
/// Lagrange kernel. Kick: E from the current density, then every column
/// advected in v at speed E(x_i) - E_pond(t*, x_i) with the conservative
/// spline kernel. Rows and columns are processed in parallel.
class VlasovStepper {
public:
    VlasovStepper(UniformGrid grid, std::shared_ptr<const VelocityMesh> mesh, DriveParams drive,
                  SplittingScheme scheme);

    const SplittingScheme& scheme() const { return scheme_; }
    const DriveParams& drive() const { return drive_; }

    /// One macro step of size dt from state.t; advances state.t by dt.
    void step(PhaseSpaceState& state, double dt);

    void drift(PhaseSpaceState& state, double dtau);
    /// Throws NumericalError if the density or field is not finite.
    void kick(PhaseSpaceState& state, double dtau, double t_star);

    /// Self-consistent field of the last kick.
    const std::vector<double>& field() const { return field_; }

private:
    UniformGrid grid_;
    std::shared_ptr<const VelocityMesh> mesh_;
    DriveParams drive_;
    SplittingScheme scheme_;
    PoissonSolver poisson_;
    std::vector<ConservativeSplineAdvector> advectors_;  // one per thread
    std::vector<double> rho_;
    std::vector<double> field_;
    std::vector<double> applied_;
};

}  // namespace keen
