#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace keen {

class MeshError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised for a refinement interval covering the whole domain; a uniform
/// mesh (r = 1) should be requested instead.
class DegenerateRefinementError : public MeshError {
public:
    using MeshError::MeshError;
};

/// Parameters of a two-grid velocity mesh. r = 1 requests a uniform mesh
/// and ignores [a, b].
struct MeshRequest {
    double v_min = -6.0;
    double v_max = 6.0;
    std::size_t cells = 0;
    double a = 0.0;
    double b = 0.0;
    int r = 1;
};

/// Coarse mesh with one uniformly refined interval [v_{i1}, v_{i1 + N_f}].
///
/// Knots are stored at integer positions on the fine lattice of spacing
/// dv_fine (coarse knots sit at multiples of r), which keeps every width
/// within rounding of dv_coarse or dv_fine. Immutable after construction.
class VelocityMesh {
public:
    static VelocityMesh generate(const MeshRequest& req);
    static VelocityMesh uniform(double v_min, double v_max, std::size_t cells);

    std::size_t cells() const { return widths_.size(); }
    std::size_t coarse_cells() const { return n_coarse_; }
    std::size_t fine_cells_equivalent() const { return n_fine_; }
    std::size_t refined_cells() const { return n_f_; }
    std::size_t i1() const { return i1_; }
    std::size_t i2() const { return i2_; }
    std::size_t ell() const { return i2_ - i1_; }
    int ratio() const { return r_; }
    double dv_coarse() const { return dv_coarse_; }
    double dv_fine() const { return dv_fine_; }
    double v_min() const { return knots_.front(); }
    double v_max() const { return knots_.back(); }
    double length() const { return length_; }
    bool is_uniform() const { return r_ == 1; }

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& midpoints() const { return midpoints_; }
    const std::vector<double>& widths() const { return widths_; }

    /// Cell j with v in [v_j, v_{j+1}); v_max maps to the last cell.
    /// Requires v_min <= v <= v_max.
    std::size_t locate_cell(double v) const;

    /// Header `N N_coarse N_fine i1 i2 r`, then one knot per line.
    void write_dump(std::ostream& os) const;

private:
    VelocityMesh(double v_min, double v_max, std::size_t n_coarse, std::size_t i1,
                 std::size_t i2, int r);

    std::size_t n_coarse_ = 0;
    std::size_t n_fine_ = 0;
    std::size_t n_f_ = 0;
    std::size_t i1_ = 0;
    std::size_t i2_ = 0;
    int r_ = 1;
    double length_ = 0.0;
    double dv_coarse_ = 0.0;
    double dv_fine_ = 0.0;
    std::vector<double> knots_;
    std::vector<double> midpoints_;
    std::vector<double> widths_;
};

namespace detail {
// floor(q), except that q within a few ulps of an integer rounds to it.
long long robust_floor(double q);
}  // namespace detail

}  // namespace keen
