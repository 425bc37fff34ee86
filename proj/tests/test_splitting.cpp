#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "keen/errors.hpp"
#include "keen/splitting.hpp"

using keen::DriveParams;
using keen::SplittingScheme;
using keen::UniformGrid;
using keen::VlasovStepper;

namespace {

constexpr double kPi = std::numbers::pi;

std::shared_ptr<const keen::VelocityMesh> two_grid(std::size_t n) {
    keen::MeshRequest req;
    req.cells = n;
    req.a = 0.375;
    req.b = 2.25;
    req.r = 32;
    return std::make_shared<const keen::VelocityMesh>(keen::VelocityMesh::generate(req));
}

UniformGrid x_grid(std::size_t nx) { return {nx, 2.0 * kPi / 0.26}; }

keen::PhaseSpaceState perturbed(std::size_t nx, std::size_t nv, double eps) {
    auto state = keen::maxwellian_state(x_grid(nx), two_grid(nv));
    for (std::size_t i = 0; i < nx; ++i) {
        const double c = 1.0 + eps * std::cos(0.26 * state.x.point(i));
        for (double& f : state.column(i)) f *= c;
    }
    return state;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double e = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) e = std::max(e, std::abs(a[k] - b[k]));
    return e;
}

// Linearized single-mode Vlasov-Poisson with an external field, advanced by
// the composition with exact substep flows. Drift multiplies by
// exp(-i k v tau); the kick adds -tau (E - E_ext(t*)) f0'(v), which leaves rho
// unchanged because f0' integrates to zero.
struct LinearMode {
    double k = 0.26;
    std::vector<double> v, w, df0;
    std::complex<double> lambda{0.1, -0.37};
    std::complex<double> ext_amp{0.0, 0.02};

    explicit LinearMode(std::size_t n) : v(n), w(n, 12.0 / n), df0(n) {
        for (std::size_t j = 0; j < n; ++j) {
            v[j] = -6.0 + (j + 0.5) * 12.0 / n;
            df0[j] = -v[j] * keen::maxwellian(v[j]);
        }
    }

    std::complex<double> field(const std::vector<std::complex<double>>& f) const {
        std::complex<double> rho = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) rho += f[j] * w[j];
        return rho / std::complex<double>(0.0, k);
    }

    std::vector<std::complex<double>> run(const SplittingScheme& scheme, double dt, double t_end) const {
        std::vector<std::complex<double>> f(v.size());
        for (std::size_t j = 0; j < f.size(); ++j) f[j] = 1e-3 * keen::maxwellian(v[j]);
        const auto steps = static_cast<long long>(std::llround(t_end / dt));
        for (long long s = 0; s < steps; ++s) {
            const auto a = scheme.coefficients(dt);
            double t_star = static_cast<double>(s) * dt;
            int sigma = scheme.sigma_init();
            for (double ak : a) {
                const double tau = ak * dt;
                if (sigma == 0) {
                    for (std::size_t j = 0; j < f.size(); ++j) f[j] *= std::polar(1.0, -k * v[j] * tau);
                    t_star += tau;
                } else {
                    const auto e = field(f) - ext_amp * std::exp(lambda * t_star);
                    for (std::size_t j = 0; j < f.size(); ++j) f[j] -= tau * e * df0[j];
                }
                sigma = 1 - sigma;
            }
        }
        return f;
    }
};

double distance(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a[j] - b[j]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("Strang coefficients") {
    const auto s = SplittingScheme::strang();
    CHECK(s.stages() == 3);
    CHECK(s.sigma_init() == 1);
    CHECK(s.coefficients(0.3) == std::vector<double>{0.5, 1.0, 0.5});
    CHECK(SplittingScheme::from_name("strang").kind() == SplittingScheme::Kind::Strang);
    CHECK_THROWS_AS(SplittingScheme::from_name("order4"), std::invalid_argument);
}

TEST_CASE("order-6 coefficients sum to one at dt -> 0") {
    const auto a = SplittingScheme::order6().coefficients(0.0);
    REQUIRE(a.size() == 11);
    double kick = 0.0, drift = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) (k % 2 == 0 ? kick : drift) += a[k];
    CHECK(std::abs(kick - 1.0) <= 1e-12);
    CHECK(std::abs(drift - 1.0) <= 1e-12);
    CHECK(a[5] < 0.0);
}

TEST_CASE("order-6 coefficients are palindromic and only kicks depend on dt") {
    const auto base = keen::coefficients_order6(0.0);
    for (double dt : {0.0, 1e-3, 0.0625, 0.125, 0.25, 0.5, 1.0, 2.0}) {
        const auto a = keen::coefficients_order6(dt);
        for (std::size_t k = 0; k < 11; ++k) CHECK(a[k] == a[10 - k]);
        for (std::size_t k = 1; k < 11; k += 2) CHECK(a[k] == base[k]);
        double drift = 0.0;
        for (std::size_t k = 1; k < 11; k += 2) drift += a[k];
        CHECK(std::abs(drift - 1.0) <= 1e-12);
    }
}

TEST_CASE("order-6 dt corrections re-evaluated independently") {
    const double dt = 0.25;
    const auto a = keen::coefficients_order6(dt);
    // Horner form in dt^2 against the expanded form.
    const double x = dt * dt;
    const double a1 = 0.0490864609761162454914412 + x * (-2.0 * 0.0000697287150553050840999);
    const double a3 = 0.2641776098889767002001462 +
                      x * (-2.0 * 0.000625704827430047189169 + x * (4.0 * -2.91660045768984781644e-6));
    const double a5 = 0.1867359291349070543084126 +
                      x * (-2.0 * 0.00221308512404532556163 +
                           x * (4.0 * 0.0000304848026170003878868 + x * (-8.0 * 4.98554938787506812159e-7)));
    CHECK(std::abs(a[0] - a1) <= 1e-16);
    CHECK(std::abs(a[2] - a3) <= 1e-16);
    CHECK(std::abs(a[4] - a5) <= 1e-16);
    CHECK(a[1] == 0.1687359505634374224481957);
    CHECK(a[3] == 0.377851589220928303880766);
    CHECK(a[5] == -0.0931750795687314526579244);
}

TEST_CASE("exact-flow linear composition reaches the design orders") {
    const LinearMode mode(96);
    const double t_end = 10.0;
    for (const auto& scheme : {SplittingScheme::strang(), SplittingScheme::order6()}) {
        // Order 6 reaches round-off near dt = 0.25, so it is fitted on larger steps.
        const std::vector<double> dts = scheme.kind() == SplittingScheme::Kind::Strang
                                            ? std::vector<double>{0.5, 0.25, 0.125, 0.0625}
                                            : std::vector<double>{2.0, 1.0, 0.5, 0.25};
        const auto ref = mode.run(scheme, dts.back() / 16.0, t_end);
        std::vector<double> err;
        for (double dt : dts) err.push_back(distance(mode.run(scheme, dt, t_end), ref));
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t q = 0; q < dts.size(); ++q) {
            const double lx = std::log(dts[q]), ly = std::log(err[q]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double n = static_cast<double>(dts.size());
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        MESSAGE(scheme.name() << ": errors " << err[0] << " " << err[1] << " " << err[2] << " "
                              << err[3] << " fitted order " << slope);
        if (scheme.kind() == SplittingScheme::Kind::Strang) {
            CHECK(slope == doctest::Approx(2.0).epsilon(0.1));
        } else {
            CHECK(slope >= 5.5);
        }
    }
}

TEST_CASE("one Strang step equals the hand-composed half-kick, drift, half-kick") {
    auto a = perturbed(32, 128, 0.05);
    a.t = 120.0;
    auto b = a;
    const double dt = 0.3;
    VlasovStepper stepper(a.x, a.v, DriveParams::canonical(), SplittingScheme::strang());
    stepper.step(a, dt);

    VlasovStepper manual(b.x, b.v, DriveParams::canonical(), SplittingScheme::strang());
    manual.kick(b, 0.5 * dt, 120.0);
    manual.drift(b, dt);
    manual.kick(b, 0.5 * dt, 120.0 + dt);
    CHECK(a.f == b.f);
    CHECK(a.t == doctest::Approx(120.3).epsilon(1e-15));
}

TEST_CASE("the Maxwellian without drive is a fixed point") {
    for (const auto& scheme : {SplittingScheme::strang(), SplittingScheme::order6()}) {
        auto state = keen::maxwellian_state(x_grid(32), two_grid(256));
        const auto f0 = state.f;
        VlasovStepper stepper(state.x, state.v, DriveParams::preset(0.0, 100.0), scheme);
        for (int s = 0; s < 20; ++s) stepper.step(state, 0.37);
        CHECK(max_abs_diff(state.f, f0) <= 1e-12);
        CHECK(state.t == doctest::Approx(20 * 0.37));
    }
}

TEST_CASE("mass is conserved per macro step under strong drive") {
    auto state = perturbed(64, 256, 0.1);
    state.t = 100.0;
    VlasovStepper stepper(state.x, state.v, DriveParams::canonical(), SplittingScheme::order6());
    double prev = state.mass();
    for (int s = 0; s < 10; ++s) {
        stepper.step(state, 0.5);
        const double m = state.mass();
        CHECK(std::abs(m - prev) <= 1e-11 * prev);
        prev = m;
    }
}

TEST_CASE("forward then backward Strang returns close to the start") {
    // The composition is symmetric, so only the spatial kernels leave a
    // residue; it shrinks quickly with resolution.
    std::vector<double> errors;
    // Uniform velocity meshes: doubling N on a two-grid mesh with r = 32 can
    // leave dv_coarse almost unchanged.
    for (std::size_t scale : {1, 2}) {
        auto state = keen::maxwellian_state(
            x_grid(32 * scale),
            std::make_shared<const keen::VelocityMesh>(keen::VelocityMesh::uniform(-6.0, 6.0, 128 * scale)));
        for (std::size_t i = 0; i < state.x.size; ++i) {
            const double c = 1.0 + 0.05 * std::cos(0.26 * state.x.point(i));
            for (double& f : state.column(i)) f *= c;
        }
        const auto start = state.f;
        VlasovStepper stepper(state.x, state.v, DriveParams::preset(0.0, 100.0),
                              SplittingScheme::strang());
        stepper.step(state, 0.4);
        stepper.step(state, -0.4);
        errors.push_back(max_abs_diff(state.f, start));
    }
    MESSAGE("reversal errors " << errors[0] << " " << errors[1]);
    CHECK(errors[0] <= 1e-5);
    CHECK(errors[1] < errors[0] / 8.0);
}

TEST_CASE("drive time advances only in drifts") {
    auto a = perturbed(16, 64, 0.02);
    a.t = 150.0;
    auto b = a;
    const double dt = 0.25;
    const auto scheme = SplittingScheme::order6();
    VlasovStepper stepper(a.x, a.v, DriveParams::canonical(), scheme);
    stepper.step(a, dt);
    VlasovStepper manual(b.x, b.v, DriveParams::canonical(), scheme);
    const auto c = scheme.coefficients(dt);
    double t_star = 150.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k % 2 == 0) {
            manual.kick(b, c[k] * dt, t_star);
        } else {
            manual.drift(b, c[k] * dt);
            t_star += c[k] * dt;
        }
    }
    CHECK(a.f == b.f);
    CHECK(t_star == doctest::Approx(150.25).epsilon(1e-14));
}

TEST_CASE("non-finite input raises a numerical error") {
    auto state = perturbed(16, 64, 0.0);
    state(3, 7) = std::nan("");
    VlasovStepper stepper(state.x, state.v, DriveParams::canonical(), SplittingScheme::strang());
    CHECK_THROWS_AS(stepper.step(state, 0.1), keen::NumericalError);
}
