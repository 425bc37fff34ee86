#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "keen/fft.hpp"
#include "keen/phase_space.hpp"

namespace keen {

// All spatial Fourier diagnostics use the forward DFT divided by N_x, so a
// unit-amplitude cosine has magnitude 1/2 at its wavenumber.

inline constexpr std::array<int, 10> kModeRmsWavenumbers = {1, 2, 3, 4, 5, 6, 8, 12, 16, 20};

/// L2 norm of the Maxwellian on [0, L) x R: sqrt(L / (2 sqrt(pi))).
/// For L = 2 pi / 0.26 this is (sqrt(pi) / 0.26)^{1/2}.
double exact_maxwellian_l2(double length);

/// sqrt(sum_ij f_ij^2 dx dv_j)
double l2_norm(const PhaseSpaceState& state);
/// (||f|| - C) / C with C = exact_maxwellian_l2(L_x).
double l2_relative(const PhaseSpaceState& state);

struct DiagnosticsRecord {
    double t = 0.0;
    std::array<double, 5> rho_harmonics{};
    double l2_relative_error = 0.0;
    std::array<double, kModeRmsWavenumbers.size()> mode_rms{};
    double total_mass = 0.0;
};

/// Holds the transforms needed for one grid; not thread-safe.
class DiagnosticsEngine {
public:
    explicit DiagnosticsEngine(std::size_t nx);

    /// |rho_hat_k| for k = 1..5.
    std::array<double, 5> rho_harmonics(const PhaseSpaceState& state);
    /// sqrt(sum_j |f_hat_k(v_{j+1/2})|^2 dv_j); for k >= 1 identical for f
    /// and f - f0 since f0 is uniform in x. Requires 0 <= k <= N_x / 2.
    double mode_rms(const PhaseSpaceState& state, int k);
    /// Same for several k with one transform per velocity cell.
    std::vector<double> mode_rms(const PhaseSpaceState& state, std::span<const int> ks);

    DiagnosticsRecord record(const PhaseSpaceState& state);

private:
    RealFft fft_;
    std::vector<double> line_;
    std::vector<std::complex<double>> spectrum_;
};

struct EfficiencyInputs {
    int substeps = 0;
    double nx = 0.0;
    double nv = 0.0;
    double steps = 0.0;  // T / dt
    double wall_seconds = 0.0;
    double processors = 1.0;
};

/// (s N_x N_v T/dt) / (wall 10^6 proc)
double efficiency(const EfficiencyInputs& in);

/// Region of phase space, inclusive. Rows with x_lo <= x_i <= x_hi and
/// cells [v_j, v_{j+1}] contained in [v_lo, v_hi] are selected.
struct SnapshotWindow {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double v_lo = 0.0;
    double v_hi = 0.0;

    static SnapshotWindow full(const PhaseSpaceState& state);
};

/// Windowed f - f0 plus enough grid metadata to plot in physical or index
/// coordinates.
struct DeltaFSnapshot {
    double t = 0.0;
    double x_first = 0.0;
    double dx = 0.0;
    double length = 0.0;
    std::uint64_t nx_total = 0;
    std::uint64_t i_offset = 0;
    std::uint64_t nv_total = 0;
    std::uint64_t j_offset = 0;
    std::uint64_t nx = 0;
    std::uint64_t nv = 0;
    std::vector<double> knots;   // nv + 1
    std::vector<double> values;  // nx * nv, row-major in i

    friend bool operator==(const DeltaFSnapshot&, const DeltaFSnapshot&) = default;
};

inline constexpr std::uint32_t kSnapshotVersion = 1;

/// `f0_profile` is the initial distribution in v (one value per cell).
DeltaFSnapshot delta_f_snapshot(const PhaseSpaceState& state, std::span<const double> f0_profile,
                                const SnapshotWindow& window);

/// Little-endian binary: "KEENSNAP", u32 version, u64 nx, u64 nv, f64 t,
/// f64 x_first, f64 dx, f64 length, u64 i_offset, u64 nx_total, u64 j_offset,
/// u64 nv_total, (nv + 1) f64 knots, nx * nv f64 values.
/// Throws std::runtime_error with the path on I/O failure.
void write_snapshot(const std::filesystem::path& path, const DeltaFSnapshot& snap);
DeltaFSnapshot read_snapshot(const std::filesystem::path& path);

/// rho_harmonics.csv, l2norm.csv and mode_rms.csv in one directory.
class DiagnosticsWriter {
public:
    explicit DiagnosticsWriter(const std::filesystem::path& dir);
    void write(const DiagnosticsRecord& rec);
    void flush();

private:
    std::ofstream harmonics_;
    std::ofstream l2_;
    std::ofstream modes_;
};

}  // namespace keen
