#pragma once

#include "avlab/energy.hpp"

#include <cstdint>
#include <vector>

namespace avlab {

/// Shared configuration for the grid quotient solvers.
struct SolveConfig {
    std::shared_ptr<const GridDomain> grid;
    double p = 2.0;
    double q = 0.0;       // least_energy only; 0 selects the critical exponent
    double lambda = 0.0;
    int m = 0;            // direction count; 0 -> 128 (2D) / 266 request (3D)
    int max_iter = 20000;
    double tol_rel = 1e-8;
    int restarts = 5;     // random restarts in addition to the bump start
    std::uint64_t seed = 12345;
    bool classical = false;        // replace E^p by the gradient-norm energy
    bool allow_critical = false;   // experimental full-grid q = p* mode

    DirectionSet make_directions() const;
};

struct EigenResult {
    double eigenvalue = 0.0;
    ScalarField eigenfunction;  // nonnegative, ||.||_p = 1
    std::vector<double> trace;
    std::vector<double> restart_levels;
};

struct SolveResult {
    ScalarField minimizer;         // nonnegative, ||.||_q = 1
    double level = 0.0;            // least energy level estimate
    ScalarField rescaled_solution; // level^{1/(q-p)} * minimizer
    double el_residual = 0.0;
    std::vector<double> trace;
    std::vector<double> restart_levels;
    bool positivity_ok = false;
    double positivity_fraction = 0.0;
};

/// inf { E^p(u) : ||u||_p = 1 } by multi-start quotient descent. The returned
/// value is an upper estimate of the infimum (best over restarts).
EigenResult principal_eigen(const SolveConfig& cfg);

/// Minimizes (E^p(u) - lambda ||u||_p^p) / ||u||_q^p for p < q <= p*.
/// Throws NonPositiveLevel when the computed level is not positive (the
/// lambda >= lambda_1 regime, where no least energy solution exists).
SolveResult least_energy(const SolveConfig& cfg);

/// Quotient value at the principal eigenfunction normalized in L^q: equal to
/// (lambda_1 - lambda) ||phi||_p^p / ||phi||_q^p, the nonexistence witness.
double nonexistence_witness(const SolveConfig& cfg, const EigenResult& eig);

/// lambda_* = lambda_1 - K_{n,p}^{-p} ||phi||_{L^p}^{-p} with the
/// eigenfunction normalized to unit critical norm.
double lambda_star(const SolveConfig& cfg);
double lambda_star(const SolveConfig& cfg, const EigenResult& eig);

/// Parabolic bump about the interior centroid; the deterministic restart.
ScalarField bump_field(std::shared_ptr<const GridDomain> dom);

}  // namespace avlab
