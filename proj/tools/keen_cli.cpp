#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "keen/config.hpp"
#include "keen/diagnostics.hpp"
#include "keen/errors.hpp"
#include "keen/simulation.hpp"
#include "keen/splitting.hpp"
#include "keen/velocity_mesh.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

struct RunOptions {
    std::string config_path;
    std::map<std::string, std::string> overrides;
    bool quiet = false;
};

std::string snapshot_name(std::size_t step) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "snapshot_%08zu.keensnap", step);
    return buf;
}

keen::RunConfig resolve_config(const RunOptions& opts) {
    keen::RunConfig config;
    if (!opts.config_path.empty()) config = keen::load_config(opts.config_path);
    keen::apply_entries(config, opts.overrides);
    config.validate();
    return config;
}

int cmd_run(const RunOptions& opts) {
    keen::RunConfig config;
    try {
        config = resolve_config(opts);
    } catch (const keen::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    std::unique_ptr<keen::DiagnosticsWriter> writer;
    try {
        fs::create_directories(config.outdir);
        std::ofstream echo(config.outdir / "config.txt");
        if (!echo) throw std::runtime_error("cannot write to '" + config.outdir.string() + "'");
        echo << config.echo();
        if (!echo.flush()) throw std::runtime_error("cannot write to '" + config.outdir.string() + "'");
        writer = std::make_unique<keen::DiagnosticsWriter>(config.outdir);
    } catch (const std::exception& e) {
        std::cerr << "output directory error: " << e.what() << '\n';
        return kExitConfig;
    }

    const std::size_t steps = config.step_count();
    keen::RunSinks sinks;
    sinks.on_record = [&](const keen::DiagnosticsRecord& rec) { writer->write(rec); };
    sinks.on_snapshot = [&](const keen::PhaseSpaceState& state, std::span<const double> f0) {
        const auto step = static_cast<std::size_t>(std::llround(state.t / config.dt));
        const auto snap = keen::delta_f_snapshot(state, f0, keen::SnapshotWindow::full(state));
        keen::write_snapshot(config.outdir / snapshot_name(step), snap);
    };
    const std::size_t progress_every = std::max<std::size_t>(1, steps / 20);
    if (!opts.quiet) {
        sinks.on_step = [&](std::size_t s, const keen::PhaseSpaceState& state) {
            if (s % progress_every == 0) {
                std::cerr << "  step " << s << "/" << steps << "  t=" << state.t << '\n';
            }
        };
    }

    keen::RunResult result;
    try {
        result = keen::run(config, sinks);
    } catch (const keen::NumericalError& e) {
        writer->flush();
        std::cerr << "numerical abort: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const keen::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    writer->flush();

    const auto scheme = keen::SplittingScheme::from_name(config.scheme);
    keen::EfficiencyInputs in;
    in.substeps = scheme.stages();
    in.nx = static_cast<double>(config.nx);
    in.nv = static_cast<double>(result.state.nv());
    in.steps = static_cast<double>(result.steps);
    in.wall_seconds = result.wall_seconds;
    in.processors = omp_get_max_threads();
    const double eff = result.steps > 0 && result.wall_seconds > 0.0 ? keen::efficiency(in) : 0.0;

    char line[256];
    std::snprintf(line, sizeof(line), "run %s: steps=%zu wall=%.3f eff=%.1f", config.name.c_str(),
                  result.steps, result.wall_seconds, eff);
    std::cout << line << '\n';
    return 0;
}

struct MeshOptions {
    std::size_t nv = 1024;
    double a = 1.2;
    double b = 1.6;
    int r = 32;
    double v_min = -6.0;
    double v_max = 6.0;
    std::string dump;
};

int cmd_mesh(const MeshOptions& opts) {
    keen::MeshRequest req;
    req.v_min = opts.v_min;
    req.v_max = opts.v_max;
    req.cells = opts.nv;
    req.a = opts.a;
    req.b = opts.b;
    req.r = opts.r;
    try {
        const auto mesh = keen::VelocityMesh::generate(req);
        std::cout.precision(17);
        if (mesh.is_uniform()) {
            std::cout << "uniform N=" << mesh.cells() << " dv=" << mesh.dv_coarse() << '\n';
        } else {
            std::cout << "N=" << mesh.cells() << " N_coarse=" << mesh.coarse_cells()
                      << " N_fine=" << mesh.fine_cells_equivalent() << " i1=" << mesh.i1()
                      << " i2=" << mesh.i2() << " ell=" << mesh.ell()
                      << " refined_cells=" << mesh.refined_cells() << '\n';
            std::cout << "dv_coarse=" << mesh.dv_coarse() << " dv_fine=" << mesh.dv_fine()
                      << " fine_region=[" << mesh.knots()[mesh.i1() ] << ", "
                      << mesh.knots()[mesh.i1() + mesh.refined_cells()] << "]\n";
        }
        if (opts.dump == "-") {
            mesh.write_dump(std::cout);
        } else if (!opts.dump.empty()) {
            std::ofstream os(opts.dump);
            if (!os) {
                std::cerr << "cannot write '" << opts.dump << "'\n";
                return kExitConfig;
            }
            mesh.write_dump(os);
        }
    } catch (const keen::MeshError& e) {
        std::cerr << "invalid mesh request: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}

int cmd_coeffs(const std::string& scheme_name, double dt) {
    keen::SplittingScheme scheme = keen::SplittingScheme::strang();
    try {
        scheme = keen::SplittingScheme::from_name(scheme_name);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    }
    const auto a = scheme.coefficients(dt);
    const auto base = scheme.coefficients(0.0);
    std::printf("scheme=%s dt=%.17g stages=%zu\n", scheme.name().c_str(), dt, a.size());
    double kick = 0.0, drift = 0.0, kick0 = 0.0, drift0 = 0.0;
    int sigma = scheme.sigma_init();
    for (std::size_t k = 0; k < a.size(); ++k) {
        std::printf("a%-2zu %-5s % .25g\n", k + 1, sigma == 1 ? "kick" : "drift", a[k]);
        (sigma == 1 ? kick : drift) += a[k];
        (sigma == 1 ? kick0 : drift0) += base[k];
        sigma = 1 - sigma;
    }
    // The dt-corrected kick weights do not sum to 1 away from dt = 0; the
    // unit-sum identities refer to the base constants.
    std::printf("kick_sum_residual=%.3e drift_sum_residual=%.3e\n", std::abs(kick0 - 1.0),
                std::abs(drift0 - 1.0));
    std::printf("kick_sum(dt)=%.17g drift_sum(dt)=%.17g\n", kick, drift);
    return 0;
}

struct ConvergenceOptions {
    RunOptions run;
    std::vector<std::string> schemes = {"strang", "order6"};
    std::vector<double> dts = {0.5, 0.25, 0.125, 0.0625};
    double ref_factor = 64.0;
};

int cmd_convergence(const ConvergenceOptions& opts) {
    keen::RunConfig config;
    try {
        RunOptions ro = opts.run;
        if (!ro.overrides.count("tfinal")) ro.overrides["tfinal"] = "10";
        if (!ro.overrides.count("nx")) ro.overrides["nx"] = "64";
        if (!ro.overrides.count("nv")) ro.overrides["nv"] = "256";
        config = resolve_config(ro);
    } catch (const keen::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    try {
        for (const auto& name : opts.schemes) {
            config.scheme = name;
            config.validate();
            const auto rows = keen::self_convergence(config, opts.dts, opts.ref_factor);
            std::printf("scheme=%s case=%s nx=%zu nv=%zu tfinal=%g ref_dt=dt_min/%g\n",
                        name.c_str(), config.case_name.c_str(), config.nx, config.nv,
                        config.t_final, opts.ref_factor);
            std::printf("%12s %14s %8s\n", "dt", "error", "slope");
            for (const auto& r : rows) {
                std::printf("%12.6g %14.6e %8.3f\n", r.dt, r.error, r.slope);
            }
            std::printf("fitted_order=%.3f\n", keen::fitted_order(rows));
        }
    } catch (const keen::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const keen::NumericalError& e) {
        std::cerr << "numerical abort: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}

void add_run_options(CLI::App* app, RunOptions& opts) {
    app->add_option("-c,--config", opts.config_path, "flat key = value configuration file")
        ->check(CLI::ExistingFile);
    app->add_flag("-q,--quiet", opts.quiet, "no progress output");
    for (const auto& key : keen::config_keys()) {
        app->add_option_function<std::string>(
            "--" + key, [&opts, key](const std::string& v) { opts.overrides[key] = v; },
            "override config key '" + key + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semi-Lagrangian Vlasov-Poisson solver for driven KEEN waves"};
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run = app.add_subcommand("run", "run a simulation and write diagnostics");
    add_run_options(run, run_opts);

    MeshOptions mesh_opts;
    auto* mesh = app.add_subcommand("mesh", "inspect a two-grid velocity mesh");
    mesh->add_option("--nv", mesh_opts.nv, "number of velocity cells")->capture_default_str();
    mesh->add_option("--a", mesh_opts.a, "refined region start")->capture_default_str();
    mesh->add_option("--b", mesh_opts.b, "refined region end")->capture_default_str();
    mesh->add_option("--r", mesh_opts.r, "refinement ratio (1: uniform)")->capture_default_str();
    mesh->add_option("--vmin", mesh_opts.v_min)->capture_default_str();
    mesh->add_option("--vmax", mesh_opts.v_max)->capture_default_str();
    mesh->add_option("--dump", mesh_opts.dump, "write knots to a file ('-' for stdout)");

    std::string coeff_scheme = "order6";
    double coeff_dt = 0.25;
    auto* coeffs = app.add_subcommand("coeffs", "print splitting coefficients");
    coeffs->add_option("--scheme", coeff_scheme, "strang or order6")->capture_default_str();
    coeffs->add_option("--dt", coeff_dt, "time step")->capture_default_str();

    ConvergenceOptions conv_opts;
    auto* conv = app.add_subcommand("convergence", "time self-convergence study");
    add_run_options(conv, conv_opts.run);
    conv->add_option("--schemes", conv_opts.schemes, "schemes to test")->delimiter(',');
    conv->add_option("--dts", conv_opts.dts, "time steps")->delimiter(',');
    conv->add_option("--ref-factor", conv_opts.ref_factor, "reference dt = min(dts) / factor")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }

    if (*run) return cmd_run(run_opts);
    if (*mesh) return cmd_mesh(mesh_opts);
    if (*coeffs) return cmd_coeffs(coeff_scheme, coeff_dt);
    if (*conv) return cmd_convergence(conv_opts);
    return kExitConfig;
}
