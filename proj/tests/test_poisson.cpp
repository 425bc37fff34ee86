#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "keen/poisson.hpp"

using keen::PoissonSolver;
using keen::UniformGrid;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kK = 0.26;
const double kL = 2.0 * kPi / kK;

std::shared_ptr<const keen::VelocityMesh> mesh(std::size_t n, bool refined) {
    keen::MeshRequest req;
    req.cells = n;
    if (refined) {
        req.a = 0.375;
        req.b = 2.25;
        req.r = 32;
    }
    return std::make_shared<const keen::VelocityMesh>(keen::VelocityMesh::generate(req));
}

double max_abs(const std::vector<double>& a) {
    double e = 0.0;
    for (double x : a) e = std::max(e, std::abs(x));
    return e;
}

// Zero-mean antiderivative by direct O(N^2) Fourier sums, skipping k = 0
// and the Nyquist mode.
std::vector<double> direct_field(const std::vector<double>& rho, double L) {
    const std::size_t n = rho.size();
    std::vector<double> e(n, 0.0);
    for (std::size_t k = 1; k < (n + 1) / 2; ++k) {
        std::complex<double> c = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            c += rho[i] * std::polar(1.0, -2.0 * kPi * k * i / n);
        }
        c /= static_cast<double>(n);
        const double kk = 2.0 * kPi * k / L;
        const std::complex<double> ec = c / std::complex<double>(0.0, kk);
        for (std::size_t i = 0; i < n; ++i) {
            e[i] += 2.0 * (ec * std::polar(1.0, 2.0 * kPi * k * i / n)).real();
        }
    }
    return e;
}

}  // namespace

TEST_CASE("single cosine mode gives the analytic antiderivative") {
    for (std::size_t n : {16, 64, 256}) {
        const UniformGrid grid{n, kL};
        PoissonSolver solver(grid);
        const double eps = 1e-3;
        std::vector<double> rho(n);
        for (std::size_t i = 0; i < n; ++i) rho[i] = 1.0 + eps * std::cos(kK * grid.point(i));
        const auto e = solver.solve(rho);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            err = std::max(err, std::abs(e[i] - eps / kK * std::sin(kK * grid.point(i))));
        }
        CHECK(err <= 1e-12);
    }
}

TEST_CASE("neutral and offset densities") {
    const UniformGrid grid{64, kL};
    PoissonSolver solver(grid);
    CHECK(max_abs(solver.solve(std::vector<double>(64, 1.0))) == 0.0);

    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal;
    std::vector<double> rho(64), shifted(64);
    for (std::size_t i = 0; i < 64; ++i) {
        rho[i] = 1.0 + 0.01 * normal(rng);
        shifted[i] = rho[i] + 0.37;
    }
    const auto a = solver.solve(rho);
    const auto b = solver.solve(shifted);
    for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-14);
}

TEST_CASE("random densities: zero mean, linearity and direct Fourier sums") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> normal;
    for (std::size_t n : {8, 30, 64}) {
        const UniformGrid grid{n, kL};
        PoissonSolver solver(grid);
        std::vector<double> r1(n), r2(n), mix(n);
        for (std::size_t i = 0; i < n; ++i) {
            r1[i] = normal(rng);
            r2[i] = normal(rng);
            mix[i] = 2.5 * r1[i] - 0.75 * r2[i] + 4.0;
        }
        const auto e1 = solver.solve(r1);
        const auto e2 = solver.solve(r2);
        const auto em = solver.solve(mix);
        double mean = 0.0;
        for (double x : e1) mean += x;
        CHECK(std::abs(mean / n) <= 1e-14);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(em[i] - (2.5 * e1[i] - 0.75 * e2[i])) <= 1e-12);
        }
        const auto direct = direct_field(r1, kL);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(e1[i] - direct[i]) <= 1e-12);
    }
}

TEST_CASE("spectral derivative of E returns rho minus its mean") {
    // Without a Nyquist component the relation is exact in Fourier space.
    const std::size_t n = 32;
    const UniformGrid grid{n, kL};
    PoissonSolver solver(grid);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> normal;
    std::vector<double> rho(n, 1.0);
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double a = normal(rng) / k, b = normal(rng) / k;
        for (std::size_t i = 0; i < n; ++i) {
            rho[i] += a * std::cos(2 * kPi * k * i / n) + b * std::sin(2 * kPi * k * i / n);
        }
    }
    const auto e = solver.solve(rho);
    double mean = 0.0;
    for (double x : rho) mean += x / n;
    for (std::size_t i = 0; i < n; ++i) {
        // dE/dx by direct differentiation of the trigonometric interpolant.
        double d = 0.0;
        for (std::size_t k = 1; k < n / 2; ++k) {
            std::complex<double> c = 0.0;
            for (std::size_t q = 0; q < n; ++q) c += e[q] * std::polar(1.0, -2 * kPi * k * q / n);
            c /= static_cast<double>(n);
            const double kk = 2 * kPi * k / kL;
            d += 2.0 * (std::complex<double>(0.0, kk) * c * std::polar(1.0, 2 * kPi * k * i / n)).real();
        }
        CHECK(std::abs(d - (rho[i] - mean)) <= 1e-12);
    }
}

TEST_CASE("density of the initial Maxwellian") {
    const UniformGrid grid{16, kL};
    // Mass of the standard normal inside [-6, 6].
    const double inside = std::erf(6.0 / std::numbers::sqrt2);
    for (bool refined : {false, true}) {
        for (std::size_t nv : {256, 1024}) {
            const auto state = keen::maxwellian_state(grid, mesh(nv, refined));
            const auto rho = keen::density_from_f(state);
            for (double r : rho) {
                CHECK(std::abs(r - inside) <= 1e-13);
                CHECK(std::abs(r - 1.0) <= 2e-9);
            }
            CHECK(state.mass() == doctest::Approx(inside * kL).epsilon(1e-13));
        }
    }
    keen::PhaseSpaceState zero(grid, mesh(64, false));
    for (double r : keen::density_from_f(zero)) CHECK(r == 0.0);
}

TEST_CASE("cell averages of the Maxwellian") {
    CHECK(keen::maxwellian_cell_average(-1.0, 1.0) * 2.0 ==
          doctest::Approx(std::erf(1.0 / std::numbers::sqrt2)).epsilon(1e-15));
    // Far tail: erfc-based evaluation does not cancel to zero.
    const double tail = keen::maxwellian_cell_average(5.9, 6.0);
    const double mid = keen::maxwellian(5.95);
    CHECK(tail == doctest::Approx(mid).epsilon(1e-3));
    CHECK(keen::maxwellian_cell_average(-6.0, -5.9) == doctest::Approx(tail).epsilon(1e-14));
}
