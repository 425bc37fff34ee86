#include "keen/spline.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace keen {

namespace {

// Cubic Hermite interpolant on [v_k, v_k + h] at local coordinate t in [0, 1].
inline double hermite(double t, double h, double u0, double u1, double d0, double d1) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * u0 + h01 * u1 + h * (h10 * d0 + h11 * d1);
}

inline double wrap_into(double v, double v_min, double length) {
    double w = std::fmod(v - v_min, length);
    if (w < 0.0) w += length;
    return v_min + w;
}

inline double evaluate(const VelocityMesh& mesh, std::span<const double> values,
                       std::span<const double> derivatives, double v) {
    const std::size_t k = mesh.locate_cell(v);
    const double h = mesh.widths()[k];
    const double t = (v - mesh.knots()[k]) / h;
    return hermite(t, h, values[k], values[k + 1], derivatives[k], derivatives[k + 1]);
}

// Fills the mean-free primitive U_0..U_N and cell slopes; returns the mean.
double primitive_of(const VelocityMesh& mesh, std::span<const double> u,
                    std::span<double> primitive, std::span<double> slopes) {
    const auto& h = mesh.widths();
    const std::size_t n = h.size();
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) mass += u[j] * h[j];
    double mean = mass / mesh.length();
    auto accumulate = [&] {
        primitive[0] = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            slopes[j] = u[j] - mean;
            primitive[j + 1] = primitive[j] + slopes[j] * h[j];
        }
    };
    accumulate();
    // The rounded mean leaves U_N slightly off zero; forcing the closure
    // would put that residual into the last cell, so fold it into M instead.
    mean += primitive[n] / mesh.length();
    accumulate();
    primitive[n] = 0.0;
    return mean;
}

}  // namespace

PeriodicSplineSolver::PeriodicSplineSolver(const VelocityMesh& mesh)
    : mesh_(&mesh), n_(mesh.cells()) {
    const auto& h = mesh.widths();
    inv_h_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) inv_h_[j] = 1.0 / h[j];

    auto lower = [&](std::size_t j) { return inv_h_[(j + n_ - 1) % n_]; };
    auto upper = [&](std::size_t j) { return inv_h_[j]; };
    auto diag = [&](std::size_t j) { return 2.0 * (lower(j) + upper(j)); };

    if (n_ < 3) {
        // Neighbours coincide; assemble and invert the tiny dense system.
        std::vector<double> a(n_ * n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            a[j * n_ + (j + n_ - 1) % n_] += lower(j);
            a[j * n_ + j] += diag(j);
            a[j * n_ + (j + 1) % n_] += upper(j);
        }
        dense_inverse_.assign(n_ * n_, 0.0);
        if (n_ == 1) {
            dense_inverse_[0] = 1.0 / a[0];
        } else {
            const double det = a[0] * a[3] - a[1] * a[2];
            dense_inverse_ = {a[3] / det, -a[1] / det, -a[2] / det, a[0] / det};
        }
        return;
    }

    corner_ = inv_h_[n_ - 1];
    gamma_ = -diag(0);

    std::vector<double> b(n_);
    for (std::size_t j = 0; j < n_; ++j) b[j] = diag(j);
    b[0] -= gamma_;
    b[n_ - 1] -= corner_ * corner_ / gamma_;

    c_prime_.resize(n_);
    inv_denom_.resize(n_);
    inv_denom_[0] = 1.0 / b[0];
    c_prime_[0] = upper(0) * inv_denom_[0];
    for (std::size_t j = 1; j < n_; ++j) {
        inv_denom_[j] = 1.0 / (b[j] - lower(j) * c_prime_[j - 1]);
        c_prime_[j] = upper(j) * inv_denom_[j];
    }

    // z = T^{-1} u with u = (gamma, 0, ..., 0, corner).
    z_.assign(n_, 0.0);
    z_[0] = gamma_ * inv_denom_[0];
    for (std::size_t j = 1; j < n_; ++j) {
        const double rhs = (j == n_ - 1) ? corner_ : 0.0;
        z_[j] = (rhs - lower(j) * z_[j - 1]) * inv_denom_[j];
    }
    for (std::size_t j = n_ - 1; j-- > 0;) z_[j] -= c_prime_[j] * z_[j + 1];

    correction_scale_ = 1.0 / (1.0 + z_[0] + corner_ / gamma_ * z_[n_ - 1]);
}

void PeriodicSplineSolver::solve(std::span<const double> slopes, std::span<double> derivatives,
                                 std::span<double> scratch) const {
    assert(slopes.size() >= n_ && derivatives.size() >= n_ && scratch.size() >= n_);
    auto rhs = [&](std::size_t j) {
        const std::size_t jm = (j + n_ - 1) % n_;
        return 3.0 * (inv_h_[jm] * slopes[jm] + inv_h_[j] * slopes[j]);
    };

    if (n_ < 3) {
        for (std::size_t j = 0; j < n_; ++j) scratch[j] = rhs(j);
        for (std::size_t j = 0; j < n_; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n_; ++k) acc += dense_inverse_[j * n_ + k] * scratch[k];
            derivatives[j] = acc;
        }
        return;
    }

    auto& y = derivatives;
    y[0] = rhs(0) * inv_denom_[0];
    for (std::size_t j = 1; j < n_; ++j) {
        y[j] = (rhs(j) - inv_h_[j - 1] * y[j - 1]) * inv_denom_[j];
    }
    for (std::size_t j = n_ - 1; j-- > 0;) y[j] -= c_prime_[j] * y[j + 1];

    const double factor = (y[0] + corner_ / gamma_ * y[n_ - 1]) * correction_scale_;
    for (std::size_t j = 0; j < n_; ++j) y[j] -= factor * z_[j];
}

double PeriodicSpline::operator()(double v) const {
    const double w = wrap_into(v, mesh->v_min(), mesh->length());
    return evaluate(*mesh, values, derivatives, std::min(w, mesh->v_max()));
}

PeriodicSpline build_primitive_spline(const VelocityMesh& mesh, std::span<const double> u) {
    const std::size_t n = mesh.cells();
    assert(u.size() == n);
    PeriodicSpline s;
    s.mesh = &mesh;
    s.values.resize(n + 1);
    s.derivatives.resize(n + 1);
    std::vector<double> slopes(n), scratch(n);
    s.mean = primitive_of(mesh, u, s.values, slopes);
    PeriodicSplineSolver(mesh).solve(slopes, s.derivatives, scratch);
    s.derivatives[n] = s.derivatives[0];
    return s;
}

ConservativeSplineAdvector::ConservativeSplineAdvector(const VelocityMesh& mesh)
    : solver_(mesh),
      primitive_(mesh.cells() + 1),
      slopes_(mesh.cells()),
      derivatives_(mesh.cells() + 1),
      scratch_(mesh.cells()),
      shifted_(mesh.cells() + 1) {}

void ConservativeSplineAdvector::advect(std::span<double> u, double displacement) {
    const VelocityMesh& m = mesh();
    const std::size_t n = m.cells();
    assert(u.size() == n);
    if (displacement == 0.0) return;

    primitive_of(m, u, primitive_, slopes_);
    solver_.solve(slopes_, derivatives_, scratch_);
    derivatives_[n] = derivatives_[0];

    // Whole periods carry no net flux of the mean-free part.
    const double length = m.length();
    const double d = std::fmod(displacement, length);
    if (d == 0.0) return;

    const auto& knots = m.knots();
    const auto& h = m.widths();
    const double v_min = m.v_min();
    const double v_max = m.v_max();
    const auto& U = primitive_;
    const auto& D = derivatives_;
    const auto& s = slopes_;

    // Integral of (u - M) over the last tau * h of cell k, divided by h.
    auto right_part = [&](std::size_t k, double tau) {
        return tau * (D[k + 1] + tau * (3.0 * s[k] - D[k] - 2.0 * D[k + 1] +
                                        tau * (D[k] + D[k + 1] - 2.0 * s[k])));
    };
    // Same over the first t * h of cell k.
    auto left_part = [&](std::size_t k, double t) {
        return t * (D[k] + t * (3.0 * s[k] - 2.0 * D[k] - D[k + 1] +
                                t * (D[k] + D[k + 1] - 2.0 * s[k])));
    };

    // flux[j]: mass of (u - M) crossing knot j, i.e. U(v_j) - U(v_j - d).
    auto& flux = shifted_;
    if (d > 0.0) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t prev = (j + n - 1) % n;
            if (d <= h[prev]) {
                flux[j] = h[prev] * right_part(prev, d / h[prev]);
                continue;
            }
            double foot = knots[j] - d;
            const bool wrapped = foot < v_min;
            if (wrapped) foot += length;
            const std::size_t k = m.locate_cell(std::min(foot, v_max));
            const double gap = wrapped ? (knots[j] - v_min) + (v_max - knots[k + 1])
                                       : knots[j] - knots[k + 1];
            const double tau = std::clamp((d - gap) / h[k], 0.0, 1.0);
            flux[j] = (U[j] - U[k + 1]) + h[k] * right_part(k, tau);
        }
    } else {
        const double back = -d;
        for (std::size_t j = 0; j < n; ++j) {
            if (back <= h[j]) {
                flux[j] = -h[j] * left_part(j, back / h[j]);
                continue;
            }
            double foot = knots[j] + back;
            const bool wrapped = foot >= v_max;
            if (wrapped) foot -= length;
            const std::size_t k = m.locate_cell(std::max(foot, v_min));
            const double gap = wrapped ? (v_max - knots[j]) + (knots[k] - v_min)
                                       : knots[k] - knots[j];
            const double t = std::clamp((back - gap) / h[k], 0.0, 1.0);
            flux[j] = (U[j] - U[k]) - h[k] * left_part(k, t);
        }
    }
    flux[n] = flux[0];

    for (std::size_t j = 0; j < n; ++j) u[j] -= (flux[j + 1] - flux[j]) / h[j];
}

std::vector<double> ConservativeSplineAdvector::operator()(std::span<const double> u,
                                                           double displacement) {
    std::vector<double> out(u.begin(), u.end());
    advect(out, displacement);
    return out;
}

}  // namespace keen
