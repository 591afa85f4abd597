#pragma once

#include "avlab/types.hpp"

#include <array>
#include <functional>
#include <memory>
#include <vector>

namespace avlab {

/// Analytic description of a bounded open set in R^2 or R^3.
struct DomainSpec {
    enum class Kind { Rectangle, Ball, Ellipse, Polygon };

    Kind kind = Kind::Ball;
    int dim = 2;
    Vec center;                          // rectangle/ball/ellipse
    Vec half_axes;                       // rectangle half sides or ellipse semi-axes; ball: [radius]
    std::vector<Eigen::Vector2d> vertices;  // polygon, 2D only

    static DomainSpec rectangle(const Vec& center, const Vec& half_axes);
    static DomainSpec ball(const Vec& center, double radius);
    static DomainSpec ellipse(const Vec& center, const Vec& half_axes);
    static DomainSpec polygon(std::vector<Eigen::Vector2d> vertices);

    void validate() const;

    /// Strict interior test; points on the analytic boundary are outside.
    bool inside(const Vec& x) const;

    void bounding_box(Vec& lo, Vec& hi) const;

    /// Analytic volume where available (used by grid sanity checks).
    double volume() const;
};

/// Uniform Cartesian grid over a bounded open set. Nodes strictly inside the
/// set are interior (unmasked); all other nodal values are pinned to zero,
/// which encodes the zero-trace boundary condition. The integration region is
/// the union of lattice cells whose centroid lies strictly inside.
struct GridDomain {
    int dim = 0;
    Vec origin;                  // position of node (0,..,0)
    double h = 0.0;              // uniform spacing
    std::array<Index, 3> shape = {0, 0, 1};  // node counts (shape[2] = 1 in 2D)
    std::vector<std::uint8_t> inside_mask;   // per node, 1 = interior
    std::vector<std::uint8_t> cell_inside;   // per lattice cell, 1 = integration cell

    Mat cell_centroids;              // dim x ncells (interior cells only)
    Eigen::MatrixXi cell_corners;    // 2^dim x ncells, flat node indices
    double cell_volume = 0.0;        // h^dim

    /// Analytic membership when the grid came from a DomainSpec; composes
    /// under linear transforms. May be empty (discrete-only grids).
    std::function<bool(const Vec&)> membership;

    Index node_count() const { return shape[0] * shape[1] * shape[2]; }
    Index interior_cell_count() const { return cell_centroids.cols(); }
    double volume() const { return cell_volume * static_cast<double>(interior_cell_count()); }

    Index flat_index(Index ix, Index iy, Index iz) const {
        return (ix * shape[1] + iy) * shape[2] + iz;
    }
    Vec node_position(Index flat) const;

    /// True if x lies in an interior cell of this grid.
    bool covers(const Vec& x) const;

    bool same_layout(const GridDomain& other) const {
        return dim == other.dim && h == other.h && shape == other.shape &&
               (origin - other.origin).cwiseAbs().maxCoeff() == 0.0;
    }
};

/// Build the grid for a validated spec. Throws EmptyDomain when no node falls
/// strictly inside.
std::shared_ptr<const GridDomain> build_grid(const DomainSpec& spec, double h);

/// Grid over T^{-1}(Omega), remeshed at the same spacing. Membership is the
/// analytic one composed with T when available, otherwise the cell indicator
/// of the source grid.
std::shared_ptr<const GridDomain> transform_domain(const GridDomain& dom, const Mat& T);

/// Boundary-normal test (x - center) . nu > 0 over sampled boundary points.
/// Polygons are oriented edge by edge via the even-odd membership rule; throws
/// UnsupportedShape when an edge normal cannot be oriented.
bool is_star_shaped(const DomainSpec& spec, const Vec& center);

}  // namespace avlab
