#pragma once

#include "avlab/geometry.hpp"

#include <memory>
#include <utility>

namespace avlab {

/// Nodal values on a GridDomain. Masked (non-interior) nodes hold exactly 0,
/// which is the zero-trace convention used everywhere.
struct ScalarField {
    std::shared_ptr<const GridDomain> dom;
    Vec values;  // node_count entries

    double max_abs() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
};

/// Zero field on a domain.
ScalarField make_field(std::shared_ptr<const GridDomain> dom);

/// Sample fn at interior nodes (masked nodes stay 0). Throws NonFinite when a
/// sampled value is not finite.
ScalarField field_from(std::shared_ptr<const GridDomain> dom,
                       const std::function<double(const Vec&)>& fn);

/// Enforce the mask: zero out every non-interior node in place.
void apply_mask(ScalarField& u);

/// Constant gradient of the multilinear interpolant per interior cell,
/// evaluated at the cell centroid.
struct CellGradients {
    std::shared_ptr<const GridDomain> dom;
    Mat g;  // dim x ncells
};

CellGradients gradients(const ScalarField& u);

/// Interpolant value at each interior cell centroid (= average of the 2^dim
/// corner values). All volume integrals use these one-point values.
Vec cell_means(const ScalarField& u);

/// ( sum_cells vol |u(centroid)|^q )^{1/q}; requires q >= 1.
double lq_norm(const ScalarField& u, double q);

/// Nodewise truncation at level h > 0: T_h(s) = clamp(s, -h, h) and the
/// remainder R_h(s) = s - T_h(s). The sum reproduces u bit-exactly.
std::pair<ScalarField, ScalarField> truncate(const ScalarField& u, double level);

ScalarField abs_field(const ScalarField& u);

/// Multilinear interpolation of u at x; 0 outside the node bounding box.
double interpolate(const ScalarField& u, const Vec& x);

/// (u o T) sampled on the target grid over T^{-1}(Omega).
ScalarField pullback(const ScalarField& u, const Mat& T,
                     std::shared_ptr<const GridDomain> target);

/// Band-limited noise: seeded nodal Gaussians followed by masked Jacobi
/// smoothing sweeps, normalized to max |u| = 1. Deterministic in the seed.
ScalarField random_smooth_field(std::shared_ptr<const GridDomain> dom, std::uint64_t seed,
                                int sweeps = 10);

/// Radial statistics of a field about a center: per-ring means plus scatter
/// (rms and max deviation from ring means, relative to max |u|).
struct RadialProfile {
    Vec radius;        // ring centers
    Vec mean;          // ring means
    double scatter_rms = 0.0;
    double scatter_max = 0.0;
};

RadialProfile radial_profile(const ScalarField& u, const Vec& center,
                             double max_radius_fraction = 1.0);

}  // namespace avlab
