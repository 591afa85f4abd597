#pragma once

#include "avlab/fields.hpp"

#include <vector>

namespace avlab {

/// One-dimensional profiles u(r) on [0, R] for radial problems on balls, where
/// the affine operator coincides with the classical p-Laplacian. Profiles hold
/// nodes+1 values at r_i = i R / nodes with the boundary value pinned to 0.
struct RadialConfig {
    int n = 3;
    double p = 2.0;
    double q = 0.0;      // 0 selects the critical exponent np/(n-p)
    double lambda = 0.0;
    double R = 1.0;
    int nodes = 2000;
    int max_iter = 30000;
    double tol_rel = 1e-10;
};

struct RadialResult {
    Vec profile;     // nodes+1 values
    double level = 0.0;
    std::vector<double> trace;
    bool converged = false;
};

/// Quotient (nw_n int r^{n-1}|u'|^p - lambda nw_n int r^{n-1}|u|^p) /
/// (nw_n int r^{n-1}|u|^q)^{p/q} at a profile.
double radial_quotient(const RadialConfig& cfg, const Vec& profile);

/// Multi-start descent on the radial quotient; initial profiles are the
/// parabolic bump and boundary-corrected extremal bubbles at several scales.
/// Extra initial profiles may be supplied (used by warm-started scans).
RadialResult radial_least_energy(const RadialConfig& cfg,
                                 const std::vector<Vec>& extra_inits = {});

/// Least radial quotient at the critical exponent q = p*; an upper bound for
/// the least energy level on the ball.
double radial_critical_level(int n, double p, double lambda, double R, int nodes);

/// Classical radial principal eigenvalue on the ball (q = p branch).
double radial_principal_eigenvalue(int n, double p, double R, int nodes);

struct ScanRow {
    double lambda = 0.0;
    double level = 0.0;
    bool below_threshold = false;  // level < K_{n,p}^{-p}
};

/// Critical-level sweep over lambda, warm-starting each stage from the
/// previous minimizer (which makes the reported levels nonincreasing).
std::vector<ScanRow> scan_lambda(int n, double p, double R, int nodes, double lambda_lo,
                                 double lambda_hi, int count);

/// Relative defect of the boundary-flux identity
///   (1/p - 1) nw_n R^n |u'(R)|^p = (n/p - 1) int u f(u) - n int F(u),
/// f(t) = t^{q-1} + lambda t^{p-1}, for a radial solution profile on the ball.
double pohozaev_residual(const Vec& profile, int n, double p, double q, double lambda, double R);

/// Field variant: extracts the radial profile about the center first and
/// throws NotRadial when the ring scatter exceeds `scatter_tol`.
double pohozaev_residual(const ScalarField& u, const Vec& center, double p, double q,
                         double lambda, double R, double scatter_tol = 0.05);

}  // namespace avlab
