#include "keen/velocity_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace keen {

namespace detail {

long long robust_floor(double q) {
    const double nearest = std::nearbyint(q);
    const double tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(q));
    if (std::abs(q - nearest) <= tol) return static_cast<long long>(nearest);
    return static_cast<long long>(std::floor(q));
}

}  // namespace detail

VelocityMesh::VelocityMesh(double v_min, double v_max, std::size_t n_coarse, std::size_t i1,
                           std::size_t i2, int r)
    : n_coarse_(n_coarse),
      n_fine_(n_coarse * static_cast<std::size_t>(r)),
      n_f_((i2 - i1) * static_cast<std::size_t>(r)),
      i1_(i1),
      i2_(i2),
      r_(r),
      length_(v_max - v_min) {
    dv_coarse_ = length_ / static_cast<double>(n_coarse_);
    dv_fine_ = length_ / static_cast<double>(n_fine_);

    const std::size_t n = i1_ + n_f_ + n_coarse_ - i2_;
    const auto ru = static_cast<std::size_t>(r_);

    // Knot positions on the fine lattice.
    knots_.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        std::size_t p;
        if (j <= i1_) {
            p = ru * j;
        } else if (j <= i1_ + n_f_) {
            p = ru * i1_ + (j - i1_);
        } else {
            p = ru * (i2_ + (j - i1_ - n_f_));
        }
        knots_[j] = v_min + static_cast<double>(p) * dv_fine_;
    }
    knots_.back() = v_max;

    widths_.resize(n);
    midpoints_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        widths_[j] = knots_[j + 1] - knots_[j];
        midpoints_[j] = 0.5 * (knots_[j] + knots_[j + 1]);
    }
}

VelocityMesh VelocityMesh::uniform(double v_min, double v_max, std::size_t cells) {
    if (cells == 0) throw MeshError("velocity mesh needs at least one cell");
    if (!(v_min < v_max)) throw MeshError("velocity mesh needs v_min < v_max");
    return VelocityMesh(v_min, v_max, cells, 0, 0, 1);
}

VelocityMesh VelocityMesh::generate(const MeshRequest& req) {
    if (req.r == 1) return uniform(req.v_min, req.v_max, req.cells);
    if (req.r < 2) throw MeshError("refinement ratio must be 1 (uniform) or an integer >= 2");
    if (!(req.v_min < req.v_max)) throw MeshError("velocity mesh needs v_min < v_max");
    if (!(req.v_min <= req.a && req.a < req.b && req.b <= req.v_max)) {
        throw MeshError("refined interval must satisfy v_min <= a < b <= v_max");
    }
    if (req.a == req.v_min && req.b == req.v_max) {
        throw DegenerateRefinementError(
            "refined interval covers the whole velocity domain; request a uniform mesh (r = 1)");
    }
    const auto n = static_cast<long long>(req.cells);
    const long long r = req.r;
    if (n < r) throw MeshError("need at least r cells to refine one coarse cell");

    const double span = req.v_max - req.v_min;
    const double alpha = (req.a - req.v_min) / span;
    const double width_frac = (req.b - req.a) / span;

    const long long n_coarse_star = detail::robust_floor(
        static_cast<double>(n) / (1.0 + width_frac * static_cast<double>(r - 1)));
    const long long ell = (n - n_coarse_star) / (r - 1);
    if (ell <= 0) {
        throw MeshError("refined region degenerates (ell = 0): too few cells for the requested r and [a, b]");
    }
    const long long n_coarse = n - ell * (r - 1);
    const long long i1 = detail::robust_floor(alpha * static_cast<double>(n_coarse));
    const long long i2 = i1 + ell;
    if (i1 < 0 || i2 > n_coarse) {
        throw MeshError("refined region extends past the coarse mesh (i2 > N_coarse)");
    }
    return VelocityMesh(req.v_min, req.v_max, static_cast<std::size_t>(n_coarse),
                        static_cast<std::size_t>(i1), static_cast<std::size_t>(i2), req.r);
}

std::size_t VelocityMesh::locate_cell(double v) const {
    const std::size_t n = cells();
    const std::size_t fine_end = i1_ + n_f_;
    std::size_t j;
    if (v < knots_[i1_]) {
        const auto k = static_cast<std::size_t>(std::max(0.0, (v - knots_[0]) / dv_coarse_));
        j = std::min(k, i1_ - 1);
    } else if (v < knots_[fine_end]) {
        const auto k = static_cast<std::size_t>(std::max(0.0, (v - knots_[i1_]) / dv_fine_));
        j = i1_ + std::min(k, n_f_ - 1);
    } else {
        const auto k = static_cast<std::size_t>(std::max(0.0, (v - knots_[fine_end]) / dv_coarse_));
        j = std::min(fine_end + k, n - 1);
    }
    // Rounding in the division can put us one cell off.
    while (j > 0 && v < knots_[j]) --j;
    while (j + 1 < n && v >= knots_[j + 1]) ++j;
    return j;
}

void VelocityMesh::write_dump(std::ostream& os) const {
    os << cells() << ' ' << n_coarse_ << ' ' << n_fine_ << ' ' << i1_ << ' ' << i2_ << ' ' << r_
       << '\n';
    const auto old = os.precision(17);
    for (double v : knots_) os << v << '\n';
    os.precision(old);
}

}  // namespace keen
