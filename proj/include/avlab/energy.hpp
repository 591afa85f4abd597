#pragma once

#include "avlab/fields.hpp"
#include "avlab/quadrature.hpp"

namespace avlab {

/// Below this floor a direction integral Psi_xi counts as vanishing; the field
/// is then treated as zero and the energy reported as 0.
inline constexpr double kPsiFloor = 1e-30;

struct EnergyReport {
    Vec psi;            // per-direction Psi_xi(u)
    double energy = 0.0;     // E_{p,Omega}(u)
    double grad_norm = 0.0;  // || grad u ||_{L^p}
    double min_psi = 0.0;
    bool degenerate = false;
};

/// Psi_j = sum_cells vol |g_cell . xi_j|^p. Accepts p >= 1.
Vec psi_values(const ScalarField& u, const DirectionSet& ds, double p);
Vec psi_values(const CellGradients& cg, const DirectionSet& ds, double p);

/// E = alpha_{n,p} ( sum_j w_j Psi_j^{-n/p} )^{-1/n}, evaluated in log space.
/// Degenerate fields (some Psi_j < kPsiFloor) report energy 0.
EnergyReport energy_report(const ScalarField& u, const DirectionSet& ds, double p);

double affine_energy(const ScalarField& u, const DirectionSet& ds, double p);

/// Discrete measure weights of the anisotropic norm H_u:
/// c_j = alpha^{-n} E^{n+p} Psi_j^{-(n+p)/p} w_j, so that
/// H_u^p(zeta) = sum_j c_j |xi_j . zeta|^p.
struct KernelCoefficients {
    Vec coeff;
    double energy = 0.0;    // E_{p,Omega}(u)
    double energy_p = 0.0;  // E^p
    double p = 0.0;
    int dim = 0;
    Index directions = 0;
};

/// Requires a non-degenerate field; throws DegenerateDirection otherwise
/// (a field with a vanishing Psi_xi is the zero field).
KernelCoefficients kernel(const ScalarField& u, const DirectionSet& ds, double p);

double kernel_value(const KernelCoefficients& kc, const DirectionSet& ds, const Vec& zeta);

/// int_Omega H_u^{p-1}(grad u) grad H_u(grad u) . grad phi dx in discrete form.
/// Equals (1/p) d/dt E^p(u + t phi) at t = 0.
double weak_form(const ScalarField& u, const DirectionSet& ds, double p, const ScalarField& phi);
double weak_form(const ScalarField& u, const DirectionSet& ds, const KernelCoefficients& kc,
                 const ScalarField& phi);

/// Nodal gradient of E^p: g_i = p * weak_form(u, ..., basis_i), assembled in
/// one sweep over cells. Masked nodes get 0.
Vec energy_gradient(const ScalarField& u, const DirectionSet& ds, double p);
Vec energy_gradient(const ScalarField& u, const DirectionSet& ds, const KernelCoefficients& kc);

/// E^p(u) - E^p(T_h u) - E^p(R_h u) with the truncates evaluated through the
/// same Psi path. Nonnegative up to the O(h) interpolation defect.
double superadditivity_gap(const ScalarField& u, const DirectionSet& ds, double p, double level);

/// sum_cells vol |u|^{s-1} sgn(u) phi with one-point cell values; the source
/// pairing used by the Euler-Lagrange residual.
double source_pairing(const ScalarField& u, const ScalarField& phi, double s);

}  // namespace avlab
