#include "avlab/energy.hpp"

#include "avlab/constants.hpp"

#include <cmath>

namespace avlab {

namespace {

void check_dims(const GridDomain& g, const DirectionSet& ds) {
    if (g.dim != ds.dim) throw GridMismatch("direction set dimension does not match the grid");
}

// |t|^{p-1} sgn(t), regularized for 1 < p < 2 as (t^2 + eps^2)^{(p-1)/2} sgn(t).
Eigen::ArrayXd signed_power(const Eigen::ArrayXd& t, double p, double eps) {
    if (p >= 2.0) {
        if (p == 2.0) return t;
        return t.abs().pow(p - 2.0) * t;
    }
    return (t.square() + eps * eps).pow((p - 1.0) / 2.0) * t.sign();
}

struct EnergyParts {
    double log_sum = 0.0;  // log( sum_j w_j Psi_j^{-n/p} )
    double energy = 0.0;
    bool degenerate = false;
};

EnergyParts reduce_energy(const Vec& psi, const Vec& weights, int n, double p) {
    EnergyParts parts;
    const Index m = psi.size();
    for (Index j = 0; j < m; ++j)
        if (!std::isfinite(psi[j])) throw NonFinite("energy: non-finite direction integral");
    if (psi.minCoeff() < kPsiFloor) {
        parts.degenerate = true;
        return parts;
    }
    // log-sum-exp of log w_j - (n/p) log Psi_j
    Eigen::ArrayXd logs = weights.array().log() - (static_cast<double>(n) / p) * psi.array().log();
    const double mx = logs.maxCoeff();
    Eigen::ArrayXd e = (logs - mx).exp();
    parts.log_sum = mx + std::log(pairwise_sum(e));
    parts.energy = alpha_np(n, p) * std::exp(-parts.log_sum / n);
    return parts;
}

}  // namespace

Vec psi_values(const CellGradients& cg, const DirectionSet& ds, double p) {
    check_dims(*cg.dom, ds);
    if (p < 1.0) throw OutOfRange("psi: p must be >= 1");
    const Index m = ds.size();
    const double vol = cg.dom->cell_volume;
    Vec psi(m);
    Eigen::ArrayXd t;
    for (Index j = 0; j < m; ++j) {
        t = (ds.dirs.col(j).transpose() * cg.g).transpose().array();
        pow_abs_inplace(t, p);
        psi[j] = vol * pairwise_sum(t);
    }
    return psi;
}

Vec psi_values(const ScalarField& u, const DirectionSet& ds, double p) {
    return psi_values(gradients(u), ds, p);
}

EnergyReport energy_report(const ScalarField& u, const DirectionSet& ds, double p) {
    const CellGradients cg = gradients(u);
    EnergyReport rep;
    rep.psi = psi_values(cg, ds, p);
    rep.min_psi = rep.psi.minCoeff();

    Eigen::ArrayXd gn = cg.g.colwise().norm().transpose().array();
    pow_abs_inplace(gn, p);
    rep.grad_norm = std::pow(cg.dom->cell_volume * pairwise_sum(gn), 1.0 / p);

    const EnergyParts parts = reduce_energy(rep.psi, ds.weights, u.dom->dim, p);
    rep.degenerate = parts.degenerate;
    rep.energy = parts.degenerate ? 0.0 : parts.energy;
    return rep;
}

double affine_energy(const ScalarField& u, const DirectionSet& ds, double p) {
    const Vec psi = psi_values(u, ds, p);
    const EnergyParts parts = reduce_energy(psi, ds.weights, u.dom->dim, p);
    return parts.degenerate ? 0.0 : parts.energy;
}

KernelCoefficients kernel(const ScalarField& u, const DirectionSet& ds, double p) {
    check_dims(*u.dom, ds);
    if (p <= 1.0) throw OutOfRange("kernel: p must exceed 1");
    const int n = u.dom->dim;
    const Vec psi = psi_values(u, ds, p);
    const EnergyParts parts = reduce_energy(psi, ds.weights, n, p);
    if (parts.degenerate)
        throw DegenerateDirection("kernel: a direction integral vanishes, the field is zero");

    KernelCoefficients kc;
    kc.p = p;
    kc.dim = n;
    kc.directions = ds.size();
    kc.energy = parts.energy;
    kc.energy_p = std::pow(parts.energy, p);
    // log c_j = -n log alpha + (n+p) log E - ((n+p)/p) log Psi_j + log w_j
    const double base = -n * std::log(alpha_np(n, p)) + (n + p) * std::log(parts.energy);
    kc.coeff = (base - ((n + p) / p) * psi.array().log() + ds.weights.array().log()).exp();
    return kc;
}

double kernel_value(const KernelCoefficients& kc, const DirectionSet& ds, const Vec& zeta) {
    if (ds.size() != kc.directions || ds.dim != kc.dim)
        throw GridMismatch("kernel_value: direction set does not match the kernel");
    Eigen::ArrayXd t = (zeta.transpose() * ds.dirs).transpose().array();
    pow_abs_inplace(t, kc.p);
    t *= kc.coeff.array();
    return pairwise_sum(t);
}

double weak_form(const ScalarField& u, const DirectionSet& ds, const KernelCoefficients& kc,
                 const ScalarField& phi) {
    if (u.dom.get() != phi.dom.get() && !u.dom->same_layout(*phi.dom))
        throw GridMismatch("weak_form: fields live on different grids");
    const double p = kc.p;
    const CellGradients gu = gradients(u);
    const CellGradients gphi = gradients(phi);
    const double vol = u.dom->cell_volume;
    const double eps = p < 2.0 ? 1e-9 * gu.g.colwise().norm().maxCoeff() : 0.0;

    const Index m = ds.size();
    Vec acc(m);
    Eigen::ArrayXd t, s;
    for (Index j = 0; j < m; ++j) {
        t = (ds.dirs.col(j).transpose() * gu.g).transpose().array();
        s = (ds.dirs.col(j).transpose() * gphi.g).transpose().array();
        t = signed_power(t, p, eps) * s;
        acc[j] = vol * kc.coeff[j] * pairwise_sum(t);
    }
    return pairwise_sum(acc);
}

double weak_form(const ScalarField& u, const DirectionSet& ds, double p, const ScalarField& phi) {
    return weak_form(u, ds, kernel(u, ds, p), phi);
}

Vec energy_gradient(const ScalarField& u, const DirectionSet& ds, const KernelCoefficients& kc) {
    const double p = kc.p;
    const GridDomain& g = *u.dom;
    const CellGradients gu = gradients(u);
    const double vol = g.cell_volume;
    const double eps = p < 2.0 ? 1e-9 * gu.g.colwise().norm().maxCoeff() : 0.0;

    // A = sum_j (p vol c_j) phi_p(g . xi_j) xi_j, one dim-vector per cell
    const Index nc = g.interior_cell_count();
    Mat acc = Mat::Zero(g.dim, nc);
    Eigen::ArrayXd t;
    for (Index j = 0; j < ds.size(); ++j) {
        t = (ds.dirs.col(j).transpose() * gu.g).transpose().array();
        t = signed_power(t, p, eps) * (p * vol * kc.coeff[j]);
        acc.noalias() += ds.dirs.col(j) * t.matrix().transpose();
    }

    Vec grad = Vec::Zero(g.node_count());
    const int corners = 1 << g.dim;
    const double denom = std::pow(2.0, g.dim - 1) * g.h;
    for (Index c = 0; c < nc; ++c) {
        for (int k = 0; k < corners; ++k) {
            double s = 0.0;
            for (int d = 0; d < g.dim; ++d)
                s += (((k >> d) & 1) ? 1.0 : -1.0) * acc(d, c);
            grad[g.cell_corners(k, c)] += s / denom;
        }
    }
    for (Index i = 0; i < grad.size(); ++i)
        if (!g.inside_mask[static_cast<std::size_t>(i)]) grad[i] = 0.0;
    return grad;
}

Vec energy_gradient(const ScalarField& u, const DirectionSet& ds, double p) {
    return energy_gradient(u, ds, kernel(u, ds, p));
}

double superadditivity_gap(const ScalarField& u, const DirectionSet& ds, double p, double level) {
    const auto [t, r] = truncate(u, level);
    const double ep = std::pow(affine_energy(u, ds, p), p);
    const double et = std::pow(affine_energy(t, ds, p), p);
    const double er = std::pow(affine_energy(r, ds, p), p);
    return ep - et - er;
}

double source_pairing(const ScalarField& u, const ScalarField& phi, double s) {
    if (u.dom.get() != phi.dom.get() && !u.dom->same_layout(*phi.dom))
        throw GridMismatch("source_pairing: fields live on different grids");
    // (1/s) < d ||u||_s^s, phi >: |u| is averaged nodewise like lq_norm, so
    // the sign lives at the nodes
    const GridDomain& g = *u.dom;
    const Eigen::ArrayXd am = cell_means(abs_field(u)).array();
    const int corners = 1 << g.dim;
    Vec signed_phi(am.size());
    for (Index c = 0; c < am.size(); ++c) {
        double t = 0.0;
        for (int k = 0; k < corners; ++k) {
            const double uv = u.values[g.cell_corners(k, c)];
            const double sg = uv > 0.0 ? 1.0 : (uv < 0.0 ? -1.0 : 0.0);
            t += sg * phi.values[g.cell_corners(k, c)];
        }
        signed_phi[c] = t / corners;
    }
    Eigen::ArrayXd t = am.pow(s - 1.0) * signed_phi.array();
    return g.cell_volume * pairwise_sum(t);
}

}  // namespace avlab
