#include "keen/lagrange.hpp"

#include <cassert>
#include <cmath>

namespace keen {

namespace {

constexpr int kPoints = LagrangeStencil::points;

// Barycentric weights of equispaced nodes: (-1)^k C(degree, k).
constexpr std::array<double, kPoints> barycentric_lambdas() {
    std::array<double, kPoints> lambda{};
    double binom = 1.0;
    for (int k = 0; k < kPoints; ++k) {
        lambda[k] = (k % 2 == 0) ? binom : -binom;
        binom = binom * static_cast<double>(LagrangeStencil::degree - k) / static_cast<double>(k + 1);
    }
    return lambda;
}

constexpr auto kLambda = barycentric_lambdas();

long long wrap_index(long long k, long long n) {
    const long long m = k % n;
    return m < 0 ? m + n : m;
}

}  // namespace

LagrangeStencil LagrangeStencil::for_shift(double shift_cells) {
    LagrangeStencil s;
    const double q = std::floor(shift_cells);
    const double beta = shift_cells - q;
    const auto iq = static_cast<long long>(q);

    if (beta == 0.0) {
        s.exact = true;
        s.offset = -iq - left - 1;
        s.weights[left + 1] = 1.0;
        return s;
    }

    // Foot sits at alpha in (0, 1) between local nodes `left` and `left + 1`.
    const double alpha = 1.0 - beta;
    s.offset = -iq - 1 - left;
    std::array<double, kPoints> terms{};
    double denom = 0.0;
    for (int k = 0; k < kPoints; ++k) {
        const double diff = alpha - static_cast<double>(k - left);
        if (diff == 0.0) {
            s.exact = true;
            s.weights.fill(0.0);
            s.weights[k] = 1.0;
            return s;
        }
        terms[k] = kLambda[k] / diff;
        denom += terms[k];
    }
    for (int k = 0; k < kPoints; ++k) s.weights[k] = terms[k] / denom;
    return s;
}

void apply_stencil_padded(const LagrangeStencil& stencil, std::span<const double> padded,
                          std::span<double> out) {
    const std::size_t n = out.size();
    assert(padded.size() >= n + kPoints - 1);
    if (stencil.exact) {
        int hot = 0;
        while (stencil.weights[hot] != 1.0) ++hot;
        for (std::size_t i = 0; i < n; ++i) out[i] = padded[i + hot];
        return;
    }
    const auto& w = stencil.weights;
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = padded.data() + i;
        double acc = 0.0;
        for (int k = 0; k < kPoints; ++k) acc += w[k] * p[k];
        out[i] = acc;
    }
}

void apply_stencil(const LagrangeStencil& stencil, std::span<const double> in,
                   std::span<double> out) {
    const auto n = static_cast<long long>(in.size());
    assert(out.size() == in.size());
    std::vector<double> padded(in.size() + kPoints - 1);
    for (long long k = 0; k < static_cast<long long>(padded.size()); ++k) {
        padded[k] = in[wrap_index(k + stencil.offset, n)];
    }
    apply_stencil_padded(stencil, padded, out);
}

std::vector<double> advect_lagrange(std::span<const double> values, double spacing,
                                    double displacement) {
    std::vector<double> out(values.size());
    apply_stencil(LagrangeStencil::for_shift(displacement / spacing), values, out);
    return out;
}

}  // namespace keen
