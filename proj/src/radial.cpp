#include "avlab/radial.hpp"

#include "avlab/constants.hpp"
#include "avlab/lbfgs.hpp"

#include <cmath>

namespace avlab {

namespace {

double critical_exponent(int n, double p) { return n * p / (n - p); }

struct RadialWork {
    int n;
    double p, q, lambda, R, dr;
    Index N;     // cells
    Vec w;       // nw_n r_mid^{n-1} dr
    double nwn;

    explicit RadialWork(const RadialConfig& cfg) {
        n = cfg.n;
        p = cfg.p;
        q = cfg.q > 0.0 ? cfg.q : critical_exponent(cfg.n, cfg.p);
        lambda = cfg.lambda;
        R = cfg.R;
        N = cfg.nodes;
        dr = cfg.R / static_cast<double>(cfg.nodes);
        nwn = n * omega(n);
        w.resize(N);
        for (Index i = 0; i < N; ++i)
            w[i] = nwn * std::pow((i + 0.5) * dr, n - 1) * dr;
    }

    // objective on the free values u_0..u_{N-1} (u_N = 0)
    double eval(const Vec& x, Vec& grad) const {
        Eigen::ArrayXd du(N), um(N);
        for (Index i = 0; i < N; ++i) {
            const double right = i + 1 < N ? x[i + 1] : 0.0;
            du[i] = (right - x[i]) / dr;
            um[i] = 0.5 * (x[i] + right);
        }
        Eigen::ArrayXd adup = du, aump = um, aumq = um;
        pow_abs_inplace(adup, p);
        pow_abs_inplace(aump, p);
        pow_abs_inplace(aumq, q);
        const double A = pairwise_sum((w.array() * adup).eval());
        const double B = pairwise_sum((w.array() * aump).eval());
        const double C = pairwise_sum((w.array() * aumq).eval());
        if (!(C > 0.0)) return std::numeric_limits<double>::infinity();
        const double phi = A - lambda * B;
        const double f = phi / std::pow(C, p / q);

        const double eps = p < 2.0 ? 1e-9 * du.abs().maxCoeff() : 0.0;
        auto spow = [&](const Eigen::ArrayXd& t, double s) -> Eigen::ArrayXd {
            if (s >= 2.0) {
                if (s == 2.0) return t;
                return t.abs().pow(s - 2.0) * t;
            }
            return (t.square() + eps * eps).pow((s - 1.0) / 2.0) * t.sign();
        };

        const Eigen::ArrayXd tA = w.array() * p * spow(du, p) / dr;
        const Eigen::ArrayXd tB = w.array() * p * spow(um, p) * 0.5;
        const Eigen::ArrayXd tC = w.array() * q * spow(um, q) * 0.5;

        grad.setZero(N);
        const double cq = std::pow(C, p / q);
        const double cc = (p / q) * phi / (cq * C);
        for (Index i = 0; i < N; ++i) {
            double gA = -tA[i], gB = tB[i], gC = tC[i];
            if (i > 0) {
                gA += tA[i - 1];
                gB += tB[i - 1];
                gC += tC[i - 1];
            }
            grad[i] = (gA - lambda * gB) / cq - cc * gC;
        }
        return f;
    }

    Vec bump() const {
        Vec u(N);
        for (Index i = 0; i < N; ++i) {
            const double r = i * dr / R;
            u[i] = 1.0 - r * r;
        }
        return u;
    }

    Vec bn_bubble(double b) const {
        Vec u(N);
        const double edge = bubble_radial(b, n, p, R);
        for (Index i = 0; i < N; ++i)
            u[i] = std::max(0.0, bubble_radial(b, n, p, i * dr) - edge);
        return u;
    }
};

}  // namespace

double radial_quotient(const RadialConfig& cfg, const Vec& profile) {
    if (profile.size() != cfg.nodes + 1)
        throw GridMismatch("radial_quotient: profile length does not match the grid");
    RadialWork work(cfg);
    Vec x = profile.head(cfg.nodes);
    Vec g;
    return work.eval(x, g);
}

RadialResult radial_least_energy(const RadialConfig& cfg, const std::vector<Vec>& extra_inits) {
    if (cfg.n != 2 && cfg.n != 3) throw OutOfRange("radial: dimension must be 2 or 3");
    if (!(cfg.p > 1.0 && cfg.p < cfg.n)) throw OutOfRange("radial: requires 1 < p < n");
    if (cfg.nodes < 8) throw BadCount("radial: too few nodes");
    RadialWork work(cfg);
    if (work.q < cfg.p) throw ValidationError("radial: q must be >= p");
    if (work.q > critical_exponent(cfg.n, cfg.p) + 1e-12)
        throw ValidationError("radial: q exceeds the critical exponent");

    std::vector<Vec> inits;
    for (const Vec& e : extra_inits) {
        if (e.size() == cfg.nodes + 1)
            inits.push_back(e.head(cfg.nodes));
        else if (e.size() == cfg.nodes)
            inits.push_back(e);
        else
            throw GridMismatch("radial: initial profile length mismatch");
    }
    inits.push_back(work.bump());
    const bool critical = std::abs(work.q - critical_exponent(cfg.n, cfg.p)) < 1e-12;
    for (double b : critical ? std::vector<double>{10.0, 100.0, 1000.0, 10000.0}
                             : std::vector<double>{10.0, 100.0})
        inits.push_back(work.bn_bubble(b));

    DescentOptions opt;
    opt.max_iter = cfg.max_iter;
    opt.tol_rel = cfg.tol_rel;
    opt.patience = 40;

    RadialResult best;
    bool any = false;
    for (const Vec& x0 : inits) {
        auto fg = [&work](const Vec& x, Vec& g) { return work.eval(x, g); };
        DescentResult r = minimize_descent(fg, x0, opt);
        if (!any || r.f < best.level) {
            any = true;
            best.level = r.f;
            best.converged = r.converged;
            best.trace = std::move(r.trace);
            best.profile.resize(cfg.nodes + 1);
            best.profile.head(cfg.nodes) = r.x.cwiseAbs();
            best.profile[cfg.nodes] = 0.0;
        }
    }
    if (!best.converged) throw NoConvergence("radial: descent did not reach tolerance");
    return best;
}

double radial_critical_level(int n, double p, double lambda, double R, int nodes) {
    RadialConfig cfg;
    cfg.n = n;
    cfg.p = p;
    cfg.q = 0.0;
    cfg.lambda = lambda;
    cfg.R = R;
    cfg.nodes = nodes;
    return radial_least_energy(cfg).level;
}

double radial_principal_eigenvalue(int n, double p, double R, int nodes) {
    RadialConfig cfg;
    cfg.n = n;
    cfg.p = p;
    cfg.q = p;  // quotient degenerates to the Rayleigh quotient
    cfg.lambda = 0.0;
    cfg.R = R;
    cfg.nodes = nodes;
    return radial_least_energy(cfg).level;
}

std::vector<ScanRow> scan_lambda(int n, double p, double R, int nodes, double lambda_lo,
                                 double lambda_hi, int count) {
    if (count < 2) throw BadCount("scan_lambda: need at least 2 points");
    const double threshold = std::pow(k_np(n, p), -p);
    std::vector<ScanRow> rows;
    RadialConfig cfg;
    cfg.n = n;
    cfg.p = p;
    cfg.q = 0.0;
    cfg.R = R;
    cfg.nodes = nodes;

    std::vector<Vec> warm;
    for (int i = 0; i < count; ++i) {
        cfg.lambda = lambda_lo + (lambda_hi - lambda_lo) * i / (count - 1);
        RadialResult r = radial_least_energy(cfg, warm);
        warm = {r.profile};
        rows.push_back({cfg.lambda, r.level, r.level < threshold});
    }
    return rows;
}

double pohozaev_residual(const Vec& profile, int n, double p, double q, double lambda, double R) {
    const Index N = profile.size() - 1;
    if (N < 8) throw BadCount("pohozaev: too few profile nodes");
    if (profile.cwiseAbs().maxCoeff() < 1e-14)
        throw NotRadial("pohozaev: zero profile has no boundary flux");
    const double dr = R / static_cast<double>(N);
    const double nwn = n * omega(n);

    // second-order one-sided derivative at the boundary node
    const double duR =
        (3.0 * profile[N] - 4.0 * profile[N - 1] + profile[N - 2]) / (2.0 * dr);
    const double lhs = (1.0 / p - 1.0) * nwn * std::pow(R, n) * std::pow(std::abs(duR), p);

    double rhs = 0.0;
    for (Index i = 0; i < N; ++i) {
        const double rm = (i + 0.5) * dr;
        const double um = 0.5 * (profile[i] + profile[i + 1]);
        const double w = nwn * std::pow(rm, n - 1) * dr;
        const double uq = std::pow(std::abs(um), q);
        const double up = std::pow(std::abs(um), p);
        rhs += w * ((n / p - 1.0) * (uq + lambda * up) - n * (uq / q + lambda * up / p));
    }
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-12});
}

double pohozaev_residual(const ScalarField& u, const Vec& center, double p, double q,
                         double lambda, double R, double scatter_tol) {
    const RadialProfile prof = radial_profile(u, center);
    if (prof.scatter_rms > scatter_tol)
        throw NotRadial("pohozaev: field is not radial about the given center");
    // resample ring means onto a uniform radial grid
    const Index N = prof.radius.size();
    Vec profile(N + 1);
    for (Index i = 0; i < N; ++i) profile[i] = prof.mean[i];
    profile[N] = 0.0;
    return pohozaev_residual(profile, u.dom->dim, p, q, lambda, R);
}

}  // namespace avlab
