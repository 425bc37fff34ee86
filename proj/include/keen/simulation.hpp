#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "keen/config.hpp"
#include "keen/diagnostics.hpp"
#include "keen/phase_space.hpp"
#include "keen/velocity_mesh.hpp"

namespace keen {

std::shared_ptr<const VelocityMesh> mesh_from_config(const RunConfig& config);

/// Spatially uniform Maxwellian at t = 0 on the configured grids.
PhaseSpaceState initialize(const RunConfig& config);

/// Consumers called between macro steps with a read-only state.
struct RunSinks {
    std::function<void(const DiagnosticsRecord&)> on_record;
    /// `f0` is the initial velocity profile, for forming f - f0.
    std::function<void(const PhaseSpaceState&, std::span<const double> f0)> on_snapshot;
    /// Called after every macro step with the step index (1-based).
    std::function<void(std::size_t step, const PhaseSpaceState&)> on_step;
};

struct RunResult {
    PhaseSpaceState state;
    std::vector<DiagnosticsRecord> records;
    std::size_t steps = 0;
    double wall_seconds = 0.0;  // stepping only, excludes setup
};

/// Steps indices (0..n) at which snapshots are taken: each requested time
/// rounded to the nearest step, clamped to the run, duplicates merged.
std::vector<std::size_t> snapshot_steps(const RunConfig& config);

/// Runs ceil(T / dt) macro steps. Records at step 0, every `sample_every`
/// steps and at the final step. Throws NumericalError if f stops being finite.
RunResult run(const RunConfig& config, const RunSinks& sinks = {});

/// Same, starting from a given state (its clock is reset to 0).
RunResult run_from(const RunConfig& config, PhaseSpaceState state, const RunSinks& sinks = {});

/// sqrt(sum_ij (f - g)_ij^2 dx dv_j) for states on the same grids.
double l2_distance(const PhaseSpaceState& a, const PhaseSpaceState& b);

struct ConvergenceRow {
    double dt = 0.0;
    double error = 0.0;
    double slope = 0.0;  // log2 ratio against the previous row, 0 for the first
};

/// Self-convergence in time: runs `config` with each dt and with a reference
/// step min(dts) / ref_factor, and reports the L2 distance of the final f to
/// the reference. Diagnostics and snapshots are not produced.
std::vector<ConvergenceRow> self_convergence(RunConfig config, std::span<const double> dts,
                                             double ref_factor = 64.0);

/// Least-squares slope of log(error) against log(dt).
double fitted_order(std::span<const ConvergenceRow> rows);

}  // namespace keen
