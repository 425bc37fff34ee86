#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "keen/velocity_mesh.hpp"

namespace keen {

/// Periodic C2 cubic interpolant of the mean-free primitive of cell averages,
/// stored in Hermite form (knot values and knot derivatives).
///
/// For cell averages u_{j+1/2} the primitive is
///   U_j = sum_{k<j} (u_{k+1/2} - M) (v_{k+1} - v_k),
/// with M the mean value over the period so that U_0 = U_N = 0.
struct PeriodicSpline {
    const VelocityMesh* mesh = nullptr;
    double mean = 0.0;
    std::vector<double> values;       // U_0 .. U_N
    std::vector<double> derivatives;  // U'_0 .. U'_N, with U'_N = U'_0

    /// Interpolant at any v; the argument is wrapped into the period.
    double operator()(double v) const;
};

/// Solves the cyclic tridiagonal system for periodic cubic-spline knot
/// derivatives on a fixed mesh. The Thomas factorization and the
/// Sherman-Morrison correction vector depend only on the mesh and are
/// computed once.
class PeriodicSplineSolver {
public:
    explicit PeriodicSplineSolver(const VelocityMesh& mesh);

    const VelocityMesh& mesh() const { return *mesh_; }

    /// `slopes[j]` is the secant slope on cell j; `derivatives` receives
    /// N values. `scratch` must hold N values.
    void solve(std::span<const double> slopes, std::span<double> derivatives,
               std::span<double> scratch) const;

private:
    const VelocityMesh* mesh_;
    std::size_t n_;
    std::vector<double> inv_h_;
    // Tridiagonal part after the rank-1 split.
    std::vector<double> c_prime_;
    std::vector<double> inv_denom_;
    std::vector<double> z_;
    double corner_ = 0.0;  // A[N-1][0] = A[0][N-1]
    double gamma_ = 0.0;
    double correction_scale_ = 0.0;
    std::vector<double> dense_inverse_;  // used when N < 3
};

/// Primitive spline of cell averages `u` (one value per mesh cell).
PeriodicSpline build_primitive_spline(const VelocityMesh& mesh, std::span<const double> u);

/// Conservative semi-Lagrangian advection of cell averages on a periodic
/// non-uniform mesh: u_t + c u_v = 0 over one substep, displacement = c * dt.
/// Reusable per-thread workspace; not shareable between threads.
class ConservativeSplineAdvector {
public:
    explicit ConservativeSplineAdvector(const VelocityMesh& mesh);

    const VelocityMesh& mesh() const { return solver_.mesh(); }

    /// In-place update of one line of cell averages.
    void advect(std::span<double> u, double displacement);

    /// Copying overload.
    std::vector<double> operator()(std::span<const double> u, double displacement);

private:
    PeriodicSplineSolver solver_;
    std::vector<double> primitive_;
    std::vector<double> slopes_;
    std::vector<double> derivatives_;
    std::vector<double> scratch_;
    std::vector<double> shifted_;
};

}  // namespace keen
