#include "keen/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <omp.h>

#include "keen/errors.hpp"
#include "keen/splitting.hpp"

namespace keen {

std::shared_ptr<const VelocityMesh> mesh_from_config(const RunConfig& config) {
    return std::make_shared<const VelocityMesh>(VelocityMesh::generate(config.mesh_request()));
}

PhaseSpaceState initialize(const RunConfig& config) {
    return maxwellian_state(config.x_grid(), mesh_from_config(config), config.init);
}

std::vector<std::size_t> snapshot_steps(const RunConfig& config) {
    const std::size_t n = config.step_count();
    std::vector<std::size_t> out;
    for (double t : config.snapshot_times) {
        const double q = std::nearbyint(t / config.dt);
        out.push_back(std::min(n, static_cast<std::size_t>(std::max(0.0, q))));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RunResult run(const RunConfig& config, const RunSinks& sinks) {
    config.validate();
    return run_from(config, initialize(config), sinks);
}

RunResult run_from(const RunConfig& config, PhaseSpaceState state, const RunSinks& sinks) {
    config.validate();
    if (config.threads > 0) omp_set_num_threads(config.threads);

    const std::size_t n = config.step_count();
    const auto snaps = snapshot_steps(config);
    const auto f0 = maxwellian_profile(*state.v, config.init);

    VlasovStepper stepper(state.x, state.v, config.drive(),
                          SplittingScheme::from_name(config.scheme));
    DiagnosticsEngine diag(state.nx());
    RunResult result;
    state.t = 0.0;

    auto observe = [&](std::size_t step) {
        if (step == 0 || step % config.sample_every == 0 || step == n) {
            auto rec = diag.record(state);
            if (sinks.on_record) sinks.on_record(rec);
            result.records.push_back(rec);
        }
        if (sinks.on_snapshot && std::binary_search(snaps.begin(), snaps.end(), step)) {
            sinks.on_snapshot(state, f0);
        }
    };

    observe(0);
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t s = 1; s <= n; ++s) {
        stepper.step(state, config.dt);
        // Avoid accumulated round-off in the clock.
        state.t = static_cast<double>(s) * config.dt;
        if (!state.all_finite()) {
            throw NumericalError("non-finite distribution function after step " +
                                 std::to_string(s) + " (t = " + std::to_string(state.t) + ")");
        }
        if (sinks.on_step) sinks.on_step(s, state);
        observe(s);
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.steps = n;
    result.state = std::move(state);
    return result;
}

double l2_distance(const PhaseSpaceState& a, const PhaseSpaceState& b) {
    const auto& h = a.v->widths();
    const std::size_t nv = a.nv();
    double total = 0.0;
    for (std::size_t i = 0; i < a.nx(); ++i) {
        for (std::size_t j = 0; j < nv; ++j) {
            const double d = a.f[i * nv + j] - b.f[i * nv + j];
            total += d * d * h[j];
        }
    }
    return std::sqrt(total * a.x.spacing());
}

std::vector<ConvergenceRow> self_convergence(RunConfig config, std::span<const double> dts,
                                             double ref_factor) {
    config.snapshot_times.clear();
    config.sample_every = std::numeric_limits<std::size_t>::max();
    const PhaseSpaceState initial = initialize(config);

    auto final_state = [&](double dt) {
        RunConfig c = config;
        c.dt = dt;
        return run_from(c, initial).state;
    };

    const double dt_min = *std::min_element(dts.begin(), dts.end());
    const PhaseSpaceState reference = final_state(dt_min / ref_factor);

    std::vector<ConvergenceRow> rows;
    for (double dt : dts) {
        ConvergenceRow row;
        row.dt = dt;
        row.error = l2_distance(final_state(dt), reference);
        if (!rows.empty()) {
            row.slope = std::log(rows.back().error / row.error) / std::log(rows.back().dt / dt);
        }
        rows.push_back(row);
    }
    return rows;
}

double fitted_order(std::span<const ConvergenceRow> rows) {
    const double n = static_cast<double>(rows.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& r : rows) {
        const double x = std::log(r.dt);
        const double y = std::log(r.error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace keen
