#include "keen/drive.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace keen {

namespace {

constexpr double kRightOnsetBase = 207.0;

double switch_profile(const DriveParams& p, double t) {
    return 0.5 * (std::tanh((t - p.t_left) / p.tw_left) - std::tanh((t - p.t_right) / p.tw_right));
}

}  // namespace

DriveParams DriveParams::preset(double amplitude, double duration) {
    DriveParams p;
    p.amplitude = amplitude;
    p.set_duration(duration);
    return p;
}

DriveParams DriveParams::canonical() { return preset(0.2, 100.0); }
DriveParams DriveParams::weak() { return preset(0.00625, 200.0); }
DriveParams DriveParams::weak_with_duration(double duration) { return preset(0.00625, duration); }

void DriveParams::set_duration(double d) {
    duration = d;
    t_right = kRightOnsetBase + d;
}

DriveParams DriveParams::from_case(const std::string& name) {
    if (name == "canonical") return canonical();
    if (name == "weak") return weak();
    const std::string prefix = "weak-Tdr";
    if (name.rfind(prefix, 0) == 0) {
        const std::string digits = name.substr(prefix.size());
        double duration = 0.0;
        const auto* end = digits.data() + digits.size();
        auto [ptr, ec] = std::from_chars(digits.data(), end, duration);
        if (digits.empty() || ec != std::errc{} || ptr != end || !(duration > 0.0)) {
            throw std::invalid_argument("bad drive duration in case '" + name + "'");
        }
        return weak_with_duration(duration);
    }
    throw std::invalid_argument("unknown case '" + name + "' (expected canonical, weak or weak-Tdr<N>)");
}

double envelope(const DriveParams& p, double t) {
    const double g0 = switch_profile(p, p.t0);
    return (switch_profile(p, t) - g0) / (1.0 - g0);
}

double ponderomotive_field(const DriveParams& p, double t, double x) {
    return p.amplitude * p.wavenumber * envelope(p, t) * std::sin(p.wavenumber * x - p.frequency * t);
}

void ponderomotive_field(const DriveParams& p, double t, double dx, std::span<double> out) {
    const double scale = p.amplitude * p.wavenumber * envelope(p, t);
    const double phase = p.frequency * t;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = scale * std::sin(p.wavenumber * (static_cast<double>(i) * dx) - phase);
    }
}

}  // namespace keen
