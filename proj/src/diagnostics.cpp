#include "keen/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include "keen/poisson.hpp"

namespace keen {

double exact_maxwellian_l2(double length) {
    return std::sqrt(length / (2.0 * std::sqrt(std::numbers::pi)));
}

double l2_norm(const PhaseSpaceState& state) {
    const auto& h = state.v->widths();
    double total = 0.0;
    for (std::size_t i = 0; i < state.nx(); ++i) {
        const auto col = state.column(i);
        double s = 0.0;
        for (std::size_t j = 0; j < col.size(); ++j) s += col[j] * col[j] * h[j];
        total += s;
    }
    return std::sqrt(total * state.x.spacing());
}

double l2_relative(const PhaseSpaceState& state) {
    const double exact = exact_maxwellian_l2(state.x.length);
    return (l2_norm(state) - exact) / exact;
}

DiagnosticsEngine::DiagnosticsEngine(std::size_t nx)
    : fft_(nx), line_(nx), spectrum_(nx / 2 + 1) {}

std::array<double, 5> DiagnosticsEngine::rho_harmonics(const PhaseSpaceState& state) {
    density_from_f(state, line_);
    fft_.forward(line_, spectrum_);
    const double scale = 1.0 / static_cast<double>(state.nx());
    std::array<double, 5> out{};
    for (std::size_t k = 1; k <= out.size(); ++k) {
        out[k - 1] = k < spectrum_.size() ? std::abs(spectrum_[k]) * scale : 0.0;
    }
    return out;
}

std::vector<double> DiagnosticsEngine::mode_rms(const PhaseSpaceState& state,
                                                std::span<const int> ks) {
    const std::size_t nx = state.nx();
    const std::size_t nv = state.nv();
    const auto& h = state.v->widths();
    for (int k : ks) {
        if (k < 0 || static_cast<std::size_t>(k) >= spectrum_.size()) {
            throw std::out_of_range("mode_rms: wavenumber " + std::to_string(k) +
                                    " outside [0, N_x/2]");
        }
    }
    std::vector<double> sums(ks.size(), 0.0);
    const double scale = 1.0 / static_cast<double>(nx);
    for (std::size_t j = 0; j < nv; ++j) {
        for (std::size_t i = 0; i < nx; ++i) line_[i] = state.f[i * nv + j];
        fft_.forward(line_, spectrum_);
        for (std::size_t m = 0; m < ks.size(); ++m) {
            const double a = std::abs(spectrum_[static_cast<std::size_t>(ks[m])]) * scale;
            sums[m] += a * a * h[j];
        }
    }
    for (double& s : sums) s = std::sqrt(s);
    return sums;
}

double DiagnosticsEngine::mode_rms(const PhaseSpaceState& state, int k) {
    const int ks[] = {k};
    return mode_rms(state, ks)[0];
}

DiagnosticsRecord DiagnosticsEngine::record(const PhaseSpaceState& state) {
    DiagnosticsRecord rec;
    rec.t = state.t;
    rec.rho_harmonics = rho_harmonics(state);
    rec.l2_relative_error = l2_relative(state);
    // Wavenumbers above N_x/2 are not resolved on small grids; report 0.
    std::vector<int> ks;
    for (int k : kModeRmsWavenumbers) {
        if (static_cast<std::size_t>(k) < spectrum_.size()) ks.push_back(k);
    }
    const auto rms = mode_rms(state, ks);
    for (std::size_t m = 0; m < rms.size(); ++m) rec.mode_rms[m] = rms[m];
    rec.total_mass = state.mass();
    return rec;
}

double efficiency(const EfficiencyInputs& in) {
    return (in.substeps * in.nx * in.nv * in.steps) / (in.wall_seconds * 1e6 * in.processors);
}

SnapshotWindow SnapshotWindow::full(const PhaseSpaceState& state) {
    return {0.0, state.x.length, state.v->v_min(), state.v->v_max()};
}

DeltaFSnapshot delta_f_snapshot(const PhaseSpaceState& state, std::span<const double> f0_profile,
                                const SnapshotWindow& window) {
    const auto& knots = state.v->knots();
    const double dx = state.x.spacing();
    const double xtol = 1e-12 * state.x.length;
    const double vtol = 1e-12 * state.v->length();

    std::size_t i_begin = state.nx(), i_end = 0;
    for (std::size_t i = 0; i < state.nx(); ++i) {
        const double x = state.x.point(i);
        if (x >= window.x_lo - xtol && x <= window.x_hi + xtol) {
            i_begin = std::min(i_begin, i);
            i_end = i + 1;
        }
    }
    std::size_t j_begin = state.nv(), j_end = 0;
    for (std::size_t j = 0; j < state.nv(); ++j) {
        if (knots[j] >= window.v_lo - vtol && knots[j + 1] <= window.v_hi + vtol) {
            j_begin = std::min(j_begin, j);
            j_end = j + 1;
        }
    }
    if (i_end <= i_begin || j_end <= j_begin) {
        throw std::invalid_argument("snapshot window selects no grid cells");
    }

    DeltaFSnapshot snap;
    snap.t = state.t;
    snap.x_first = state.x.point(i_begin);
    snap.dx = dx;
    snap.length = state.x.length;
    snap.nx_total = state.nx();
    snap.i_offset = i_begin;
    snap.nv_total = state.nv();
    snap.j_offset = j_begin;
    snap.nx = i_end - i_begin;
    snap.nv = j_end - j_begin;
    snap.knots.assign(knots.begin() + static_cast<std::ptrdiff_t>(j_begin),
                      knots.begin() + static_cast<std::ptrdiff_t>(j_end + 1));
    snap.values.reserve(snap.nx * snap.nv);
    for (std::size_t i = i_begin; i < i_end; ++i) {
        for (std::size_t j = j_begin; j < j_end; ++j) {
            snap.values.push_back(state(i, j) - f0_profile[j]);
        }
    }
    return snap;
}

namespace {

constexpr char kMagic[8] = {'K', 'E', 'E', 'N', 'S', 'N', 'A', 'P'};

template <typename T>
T to_little(T value) {
    if constexpr (std::endian::native == std::endian::little) {
        return value;
    } else {
        unsigned char bytes[sizeof(T)];
        std::memcpy(bytes, &value, sizeof(T));
        for (std::size_t k = 0; k < sizeof(T) / 2; ++k) std::swap(bytes[k], bytes[sizeof(T) - 1 - k]);
        std::memcpy(&value, bytes, sizeof(T));
        return value;
    }
}

class BinaryWriter {
public:
    explicit BinaryWriter(const std::filesystem::path& path)
        : path_(path), os_(path, std::ios::binary | std::ios::trunc) {
        if (!os_) throw std::runtime_error("cannot open '" + path_.string() + "' for writing");
    }
    void bytes(const void* p, std::size_t n) { os_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); }
    template <typename T>
    void put(T v) {
        v = to_little(v);
        bytes(&v, sizeof(T));
    }
    void finish() {
        os_.flush();
        if (!os_) throw std::runtime_error("write failed for '" + path_.string() + "'");
    }

private:
    std::filesystem::path path_;
    std::ofstream os_;
};

class BinaryReader {
public:
    explicit BinaryReader(const std::filesystem::path& path)
        : path_(path), is_(path, std::ios::binary) {
        if (!is_) throw std::runtime_error("cannot open '" + path_.string() + "' for reading");
    }
    void bytes(void* p, std::size_t n) {
        is_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (!is_) throw std::runtime_error("truncated snapshot '" + path_.string() + "'");
    }
    template <typename T>
    T get() {
        T v;
        bytes(&v, sizeof(T));
        return to_little(v);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ifstream is_;
};

}  // namespace

void write_snapshot(const std::filesystem::path& path, const DeltaFSnapshot& snap) {
    assert(snap.knots.size() == snap.nv + 1 && snap.values.size() == snap.nx * snap.nv);
    BinaryWriter w(path);
    w.bytes(kMagic, sizeof(kMagic));
    w.put<std::uint32_t>(kSnapshotVersion);
    w.put<std::uint64_t>(snap.nx);
    w.put<std::uint64_t>(snap.nv);
    w.put<double>(snap.t);
    w.put<double>(snap.x_first);
    w.put<double>(snap.dx);
    w.put<double>(snap.length);
    w.put<std::uint64_t>(snap.i_offset);
    w.put<std::uint64_t>(snap.nx_total);
    w.put<std::uint64_t>(snap.j_offset);
    w.put<std::uint64_t>(snap.nv_total);
    for (double v : snap.knots) w.put<double>(v);
    for (double v : snap.values) w.put<double>(v);
    w.finish();
}

DeltaFSnapshot read_snapshot(const std::filesystem::path& path) {
    BinaryReader r(path);
    char magic[8];
    r.bytes(magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(magic)) != 0) {
        throw std::runtime_error("'" + path.string() + "' is not a KEENSNAP file");
    }
    const auto version = r.get<std::uint32_t>();
    if (version != kSnapshotVersion) {
        throw std::runtime_error("'" + path.string() + "' has unsupported snapshot version " +
                                 std::to_string(version));
    }
    DeltaFSnapshot s;
    s.nx = r.get<std::uint64_t>();
    s.nv = r.get<std::uint64_t>();
    s.t = r.get<double>();
    s.x_first = r.get<double>();
    s.dx = r.get<double>();
    s.length = r.get<double>();
    s.i_offset = r.get<std::uint64_t>();
    s.nx_total = r.get<std::uint64_t>();
    s.j_offset = r.get<std::uint64_t>();
    s.nv_total = r.get<std::uint64_t>();
    if (s.nx > s.nx_total || s.nv > s.nv_total) {
        throw std::runtime_error("'" + path.string() + "' has inconsistent snapshot dimensions");
    }
    s.knots.resize(s.nv + 1);
    for (double& v : s.knots) v = r.get<double>();
    s.values.resize(s.nx * s.nv);
    for (double& v : s.values) v = r.get<double>();
    return s;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path, const std::string& header) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    os.precision(17);
    os << header << '\n';
    return os;
}

}  // namespace

DiagnosticsWriter::DiagnosticsWriter(const std::filesystem::path& dir)
    : harmonics_(open_csv(dir / "rho_harmonics.csv", "t,h1,h2,h3,h4,h5")),
      l2_(open_csv(dir / "l2norm.csv", "t,l2_relative_error,total_mass")),
      modes_(open_csv(dir / "mode_rms.csv", "t,k1,k2,k3,k4,k5,k6,k8,k12,k16,k20")) {}

void DiagnosticsWriter::write(const DiagnosticsRecord& rec) {
    harmonics_ << rec.t;
    for (double h : rec.rho_harmonics) harmonics_ << ',' << h;
    harmonics_ << '\n';
    l2_ << rec.t << ',' << rec.l2_relative_error << ',' << rec.total_mass << '\n';
    modes_ << rec.t;
    for (double m : rec.mode_rms) modes_ << ',' << m;
    modes_ << '\n';
}

void DiagnosticsWriter::flush() {
    harmonics_.flush();
    l2_.flush();
    modes_.flush();
}

}  // namespace keen
