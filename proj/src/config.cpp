#include "keen/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "keen/errors.hpp"
#include "keen/splitting.hpp"

namespace keen {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (value.empty() || ec != std::errc{} || ptr != end || !std::isfinite(out)) {
        throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
    }
    return out;
}

long long parse_int(const std::string& key, const std::string& value) {
    long long out = 0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (value.empty() || ec != std::errc{} || ptr != end) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
    }
    return out;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    const long long v = parse_int(key, value);
    if (v <= 0) throw ConfigError("key '" + key + "' must be positive");
    return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes") return true;
    if (value == "0" || value == "false" || value == "no") return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "case",     "scheme",       "nx",    "nv",   "dt",      "tfinal",  "refine_a",
        "refine_b", "refine_r",     "uniform", "sample_every", "snapshot_times", "outdir",
        "name",     "init",         "threads", "vmin", "vmax",  "a_dr",    "t_dr",
        "k_dr",     "w_dr"};
    return keys;
}

DriveParams RunConfig::drive() const {
    DriveParams p;
    try {
        p = DriveParams::from_case(case_name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (a_dr) p.amplitude = *a_dr;
    if (t_dr) p.set_duration(*t_dr);
    if (k_dr) p.wavenumber = *k_dr;
    if (w_dr) p.frequency = *w_dr;
    return p;
}

MeshRequest RunConfig::mesh_request() const {
    MeshRequest req;
    req.v_min = v_min;
    req.v_max = v_max;
    req.cells = nv;
    if (uniform) {
        req.r = 1;
        return req;
    }
    const bool canonical = case_name == "canonical";
    req.a = refine_a.value_or(canonical ? 0.375 : 1.2);
    req.b = refine_b.value_or(canonical ? 2.25 : 1.6);
    req.r = refine_r;
    return req;
}

UniformGrid RunConfig::x_grid() const {
    return UniformGrid{nx, 2.0 * std::numbers::pi / drive().wavenumber};
}

std::size_t RunConfig::step_count() const {
    const double q = t_final / dt;
    const double nearest = std::nearbyint(q);
    if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, q)) return static_cast<std::size_t>(nearest);
    return static_cast<std::size_t>(std::ceil(q));
}

void RunConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(t_final >= 0.0)) throw ConfigError("tfinal must be non-negative");
    if (nx < 2 || nx % 2 != 0) throw ConfigError("nx must be even and at least 2");
    if (nv == 0) throw ConfigError("nv must be positive");
    if (sample_every == 0) throw ConfigError("sample_every must be positive");
    if (threads < 0) throw ConfigError("threads must be >= 0");
    if (!(drive().wavenumber > 0.0)) throw ConfigError("k_dr must be positive");
    try {
        SplittingScheme::from_name(scheme);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    for (double t : snapshot_times) {
        if (t < 0.0) throw ConfigError("snapshot_times must be non-negative");
    }
    try {
        VelocityMesh::generate(mesh_request());
    } catch (const MeshError& e) {
        throw ConfigError(std::string("velocity mesh: ") + e.what());
    }
}

void RunConfig::set(const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (key == "case") {
        case_name = value;
    } else if (key == "scheme") {
        scheme = value;
    } else if (key == "nx") {
        nx = parse_count(key, value);
    } else if (key == "nv") {
        nv = parse_count(key, value);
    } else if (key == "dt") {
        dt = parse_double(key, value);
    } else if (key == "tfinal") {
        t_final = parse_double(key, value);
    } else if (key == "refine_a") {
        refine_a = parse_double(key, value);
    } else if (key == "refine_b") {
        refine_b = parse_double(key, value);
    } else if (key == "refine_r") {
        refine_r = static_cast<int>(parse_int(key, value));
    } else if (key == "uniform") {
        uniform = parse_bool(key, value);
    } else if (key == "sample_every") {
        sample_every = parse_count(key, value);
    } else if (key == "snapshot_times") {
        snapshot_times = parse_list(key, value);
    } else if (key == "outdir") {
        outdir = value;
    } else if (key == "name") {
        name = value;
    } else if (key == "init") {
        if (value == "average") {
            init = InitSampling::CellAverage;
        } else if (value == "midpoint") {
            init = InitSampling::Midpoint;
        } else {
            throw ConfigError("key 'init': expected average or midpoint, got '" + value + "'");
        }
    } else if (key == "threads") {
        threads = static_cast<int>(parse_int(key, value));
    } else if (key == "vmin") {
        v_min = parse_double(key, value);
    } else if (key == "vmax") {
        v_max = parse_double(key, value);
    } else if (key == "a_dr") {
        a_dr = parse_double(key, value);
    } else if (key == "t_dr") {
        t_dr = parse_double(key, value);
    } else if (key == "k_dr") {
        k_dr = parse_double(key, value);
    } else if (key == "w_dr") {
        w_dr = parse_double(key, value);
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

std::string RunConfig::echo() const {
    std::ostringstream os;
    os << "name = " << name << '\n';
    os << "case = " << case_name << '\n';
    os << "scheme = " << scheme << '\n';
    os << "nx = " << nx << '\n';
    os << "nv = " << nv << '\n';
    os << "dt = " << format_double(dt) << '\n';
    os << "tfinal = " << format_double(t_final) << '\n';
    os << "vmin = " << format_double(v_min) << '\n';
    os << "vmax = " << format_double(v_max) << '\n';
    os << "uniform = " << (uniform ? "true" : "false") << '\n';
    if (!uniform) {
        const auto req = mesh_request();
        os << "refine_a = " << format_double(req.a) << '\n';
        os << "refine_b = " << format_double(req.b) << '\n';
        os << "refine_r = " << req.r << '\n';
    }
    os << "sample_every = " << sample_every << '\n';
    os << "snapshot_times = ";
    for (std::size_t k = 0; k < snapshot_times.size(); ++k) {
        os << (k ? "," : "") << format_double(snapshot_times[k]);
    }
    os << '\n';
    os << "outdir = " << outdir.string() << '\n';
    os << "init = " << (init == InitSampling::CellAverage ? "average" : "midpoint") << '\n';
    os << "threads = " << threads << '\n';
    if (a_dr) os << "a_dr = " << format_double(*a_dr) << '\n';
    if (t_dr) os << "t_dr = " << format_double(*t_dr) << '\n';
    if (k_dr) os << "k_dr = " << format_double(*k_dr) << '\n';
    if (w_dr) os << "w_dr = " << format_double(*w_dr) << '\n';
    return os.str();
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const auto& keys = config_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

void apply_entries(RunConfig& config, const std::map<std::string, std::string>& entries) {
    for (const auto& [key, value] : entries) config.set(key, value);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::stringstream buf;
    buf << is.rdbuf();
    RunConfig config;
    apply_entries(config, parse_config_text(buf.str()));
    return config;
}

}  // namespace keen
