#include "avlab/quadrature.hpp"

#include "avlab/constants.hpp"

#include <cmath>

namespace avlab {

void gauss_legendre(int k, Vec& nodes, Vec& weights) {
    if (k < 1) throw BadCount("gauss_legendre: order must be >= 1");
    nodes.resize(k);
    weights.resize(k);
    for (int i = 0; i < k; ++i) {
        // Chebyshev initial guess, then Newton on P_k.
        double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= k; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

DirectionSet directions(int n, int m) {
    if (n != 2 && n != 3) throw OutOfRange("directions: dimension must be 2 or 3");
    if (m < 4) throw BadCount("directions: need at least 4 nodes");

    DirectionSet ds;
    ds.dim = n;
    if (n == 2) {
        ds.dirs.resize(2, m);
        ds.weights = Vec::Constant(m, 2.0 * M_PI / m);
        for (int j = 0; j < m; ++j) {
            const double th = 2.0 * M_PI * j / m;
            ds.dirs(0, j) = std::cos(th);
            ds.dirs(1, j) = std::sin(th);
        }
        return ds;
    }

    // Product rule: k polar Gauss nodes, 2*round(m/(2k)) azimuthal nodes.
    const int ntheta = std::max(2, static_cast<int>(std::lround(std::sqrt(m / 2.0))));
    const int nphi = 2 * std::max(2, static_cast<int>(std::lround(m / (2.0 * ntheta))));
    Vec ct, wt;
    gauss_legendre(ntheta, ct, wt);

    const int total = ntheta * nphi;
    ds.dirs.resize(3, total);
    ds.weights.resize(total);
    int idx = 0;
    for (int i = 0; i < ntheta; ++i) {
        const double c = ct[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * M_PI * j / nphi;
            ds.dirs(0, idx) = s * std::cos(phi);
            ds.dirs(1, idx) = s * std::sin(phi);
            ds.dirs(2, idx) = c;
            ds.weights[idx] = wt[i] * (2.0 * M_PI / nphi);
            ++idx;
        }
    }
    return ds;
}

double moment_integral(const DirectionSet& ds, double p, const Vec& xi0) {
    if (xi0.size() != ds.dim) throw GridMismatch("moment_integral: direction dimension mismatch");
    if (std::abs(xi0.norm() - 1.0) > 1e-12)
        throw ValidationError("moment_integral: xi0 must be a unit vector");
    Eigen::ArrayXd t = (xi0.transpose() * ds.dirs).transpose().array();
    if (p == 0.0) return pairwise_sum(ds.weights);
    pow_abs_inplace(t, p);
    t *= ds.weights.array();
    return pairwise_sum(t);
}

double alpha_consistency(int n, double p, int m) {
    const DirectionSet ds = directions(n, m);
    Vec xi0 = Vec::Zero(n);
    xi0[0] = 1.0;
    const double mom = moment_integral(ds, p, xi0);
    const double nwn = n * omega(n);
    const double via_moment = std::pow(nwn, (n + p) / (n * p)) * std::pow(mom, -1.0 / p);
    const double closed = alpha_np(n, p);
    return std::abs(via_moment - closed) / closed;
}

}  // namespace avlab
