#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "keen/drive.hpp"
#include "keen/phase_space.hpp"
#include "keen/velocity_mesh.hpp"

namespace keen {

/// Everything needed to reproduce a run. Read from flat `key = value` text;
/// command-line flags use the same keys.
struct RunConfig {
    std::string name = "keen";
    std::string case_name = "canonical";
    std::string scheme = "order6";
    std::size_t nx = 256;
    std::size_t nv = 1024;
    double dt = 0.25;
    double t_final = 1000.0;
    double v_min = -6.0;
    double v_max = 6.0;
    std::optional<double> refine_a;  // defaults depend on the case
    std::optional<double> refine_b;
    int refine_r = 32;
    bool uniform = false;
    std::size_t sample_every = 1;  // macro steps between diagnostic records
    std::vector<double> snapshot_times;
    std::filesystem::path outdir = "keen_out";
    InitSampling init = InitSampling::CellAverage;
    int threads = 0;  // 0: OpenMP default
    // Drive overrides on top of the case preset.
    std::optional<double> a_dr;
    std::optional<double> t_dr;
    std::optional<double> k_dr;
    std::optional<double> w_dr;

    DriveParams drive() const;
    MeshRequest mesh_request() const;
    /// L_x = 2 pi / k_dr.
    UniformGrid x_grid() const;
    /// Number of macro steps, ceil(t_final / dt) with a rounding guard.
    std::size_t step_count() const;

    /// Throws ConfigError on an inconsistent configuration.
    void validate() const;

    /// Sets one key; throws ConfigError for unknown keys or bad values.
    void set(const std::string& key, const std::string& value);

    /// `key = value` lines that parse back to the same configuration.
    std::string echo() const;
};

/// Recognised keys, in --help order.
const std::vector<std::string>& config_keys();

/// Parses flat `key = value` text; `#` starts a comment. Throws ConfigError.
std::map<std::string, std::string> parse_config_text(const std::string& text);

RunConfig load_config(const std::filesystem::path& path);
void apply_entries(RunConfig& config, const std::map<std::string, std::string>& entries);

}  // namespace keen
