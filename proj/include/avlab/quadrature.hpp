#pragma once

#include "avlab/types.hpp"

namespace avlab {

/// Quadrature rule on the unit sphere S^{n-1} approximating the surface
/// measure: unit directions xi_j with positive weights w_j, sum w_j = n w_n.
struct DirectionSet {
    int dim = 0;
    Mat dirs;     // dim x m, unit columns
    Vec weights;  // m, strictly positive

    Index size() const { return weights.size(); }
};

/// n = 2: m equally spaced angles, w_j = 2pi/m.
/// n = 3: Gauss-Legendre in cos(theta) times a uniform azimuthal rule with an
/// even node count; the realized node count is the closest product value to m.
/// Both rules are antipodally symmetric and have strictly positive weights.
DirectionSet directions(int n, int m);

/// Sum_j w_j |xi0 . xi_j|^p. For p = 0 this is the total measure n w_n.
double moment_integral(const DirectionSet& ds, double p, const Vec& xi0);

/// Relative error of the moment-based route to alpha_{n,p},
/// (n w_n)^{(n+p)/(np)} (moment)^{-1/p}, against the closed form.
double alpha_consistency(int n, double p, int m);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int k, Vec& nodes, Vec& weights);

}  // namespace avlab
