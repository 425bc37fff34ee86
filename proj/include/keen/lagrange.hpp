#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace keen {

/// Periodic constant-coefficient advection on a uniform grid by Lagrange
/// interpolation of degree 17 (18-point stencil).
///
/// The foot x_i - d lies between stencil nodes 8 and 9 (zero-based), i.e.
/// the stencil is centred on the foot cell. All points of a line share the
/// same fractional offset, so weights are computed once per line.
struct LagrangeStencil {
    static constexpr int degree = 17;
    static constexpr int points = degree + 1;
    static constexpr int left = points / 2 - 1;  // nodes to the left of the foot cell

    /// Shift in units of the grid spacing (positive = values move right).
    static LagrangeStencil for_shift(double shift_cells);

    /// out[i] = sum_k weights[k] * in[(i + offset + k) mod N].
    long long offset = 0;
    std::array<double, points> weights{};
    /// Set when the foot coincides with a grid node; weights are one-hot.
    bool exact = false;
};

/// Applies a stencil to one periodic line; `in` and `out` must not alias.
void apply_stencil(const LagrangeStencil& stencil, std::span<const double> in,
                   std::span<double> out);

/// Same, reading from a pre-gathered buffer `padded` of length N + points - 1
/// where padded[k] = in[(k + stencil.offset) mod N].
void apply_stencil_padded(const LagrangeStencil& stencil, std::span<const double> padded,
                          std::span<double> out);

/// Advects point values sampled on a uniform periodic grid with spacing
/// `spacing` by `displacement` (physical units).
std::vector<double> advect_lagrange(std::span<const double> values, double spacing,
                                    double displacement);

}  // namespace keen
