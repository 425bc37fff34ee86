#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "keen/lagrange.hpp"

using keen::LagrangeStencil;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_line(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> u(n);
    for (double& x : u) x = normal(rng);
    return u;
}

double sine_error(std::size_t n, double shift_cells) {
    const double L = 2.0 * kPi;
    const double dx = L / static_cast<double>(n);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = std::sin(i * dx);
    const auto out = keen::advect_lagrange(u, dx, shift_cells * dx);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        e = std::max(e, std::abs(out[i] - std::sin(i * dx - shift_cells * dx)));
    }
    return e;
}

}  // namespace

TEST_CASE("integer shifts are bit-exact circular shifts") {
    const auto u = random_line(64, 1);
    const long long n = 64;
    for (long long k : {0LL, 1LL, -1LL, 5LL, -17LL, 63LL, 64LL, 130LL, -200LL}) {
        const auto s = LagrangeStencil::for_shift(static_cast<double>(k));
        CHECK(s.exact);
        std::vector<double> out(u.size());
        keen::apply_stencil(s, u, out);
        for (long long i = 0; i < n; ++i) {
            const long long src = ((i - k) % n + n) % n;
            REQUIRE(out[static_cast<std::size_t>(i)] == u[static_cast<std::size_t>(src)]);
        }
    }
    // Physical displacement that is an exact multiple of the spacing.
    const auto shifted = keen::advect_lagrange(u, 0.125, 3 * 0.125);
    for (std::size_t i = 0; i < 64; ++i) REQUIRE(shifted[i] == u[(i + 61) % 64]);
}

TEST_CASE("stencil places the foot between nodes 8 and 9") {
    CHECK(LagrangeStencil::left == 8);
    CHECK(LagrangeStencil::points == 18);
    for (double shift : {0.25, -0.25, 3.6, -7.4}) {
        const auto s = LagrangeStencil::for_shift(shift);
        CHECK_FALSE(s.exact);
        // Foot of node i is i - shift = i + offset + left + alpha with alpha in (0, 1).
        const double alpha = -shift - static_cast<double>(s.offset + LagrangeStencil::left);
        CHECK(alpha > 0.0);
        CHECK(alpha < 1.0);
        double sum = 0.0;
        for (double w : s.weights) sum += w;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("polynomials up to degree 17 are reproduced") {
    // Local test: a long line whose interior stencils never touch the wrap.
    const std::size_t n = 200;
    const double dx = 0.01;
    const double centre = 100 * dx;
    for (int degree : {0, 1, 5, 11, 17}) {
        std::vector<double> u(n);
        auto p = [&](double x) {
            const double y = (x - centre) / (20 * dx);
            double acc = 0.0;
            for (int k = degree; k >= 0; --k) acc = acc * y + (k % 3 == 0 ? 1.0 : -0.5);
            return acc;
        };
        for (std::size_t i = 0; i < n; ++i) u[i] = p(i * dx);
        for (double shift : {0.3, -0.77, 4.41}) {
            const auto out = keen::advect_lagrange(u, dx, shift * dx);
            for (std::size_t i = 40; i < n - 40; ++i) {
                const double exact = p(i * dx - shift * dx);
                REQUIRE(std::abs(out[i] - exact) <= 1e-11 * std::max(1.0, std::abs(exact)));
            }
        }
    }
}

TEST_CASE("shifted sine converges at high order") {
    const double shift = 0.4321;
    // Few points per wavelength, so the error stays above round-off.
    const double e1 = sine_error(8, shift);
    const double e2 = sine_error(12, shift);
    const double slope = std::log(e1 / e2) / std::log(12.0 / 8.0);
    MESSAGE("errors " << e1 << " " << e2 << " slope " << slope);
    CHECK(slope > 15.0);
    CHECK(sine_error(64, shift) <= 1e-13);
}

TEST_CASE("sum of values is conserved") {
    const auto u = random_line(256, 2);
    double before = 0.0, scale = 0.0;
    for (double x : u) {
        before += x;
        scale += std::abs(x);
    }
    for (double shift : {0.1, 0.5, -2.3, 17.9}) {
        const auto out = keen::advect_lagrange(u, 1.0, shift);
        double after = 0.0;
        for (double x : out) after += x;
        CHECK(std::abs(after - before) <= 1e-12 * scale);
    }
}

TEST_CASE("padded application agrees with the wrapping one") {
    const auto u = random_line(50, 3);
    const auto s = LagrangeStencil::for_shift(-3.3);
    std::vector<double> a(u.size()), b(u.size());
    keen::apply_stencil(s, u, a);
    std::vector<double> padded(u.size() + LagrangeStencil::points - 1);
    const long long n = 50;
    for (long long k = 0; k < static_cast<long long>(padded.size()); ++k) {
        padded[k] = u[static_cast<std::size_t>(((k + s.offset) % n + n) % n)];
    }
    keen::apply_stencil_padded(s, padded, b);
    CHECK(a == b);
}
