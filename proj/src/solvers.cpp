#include "avlab/solvers.hpp"

#include "avlab/constants.hpp"
#include "avlab/lbfgs.hpp"

#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <thread>
#include <tuple>

namespace avlab {

namespace {

int worker_cap() {
    if (const char* s = std::getenv("AFFINE_VLAB_THREADS")) {
        const int v = std::atoi(s);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

double critical_exponent(int n, double p) { return n * p / (n - p); }

struct DofMap {
    std::vector<Index> free;

    explicit DofMap(const GridDomain& g) {
        for (Index i = 0; i < g.node_count(); ++i)
            if (g.inside_mask[static_cast<std::size_t>(i)]) free.push_back(i);
    }
    Vec pack(const Vec& full) const {
        Vec x(static_cast<Index>(free.size()));
        for (std::size_t k = 0; k < free.size(); ++k) x[static_cast<Index>(k)] = full[free[k]];
        return x;
    }
    void unpack(const Vec& x, Vec& full) const {
        full.setZero();
        for (std::size_t k = 0; k < free.size(); ++k) full[free[k]] = x[static_cast<Index>(k)];
    }
};

// sum_cells vol |u(centroid)|^s and its nodal gradient
std::pair<double, Vec> norm_power(const ScalarField& u, double s) {
    const GridDomain& g = *u.dom;
    Eigen::ArrayXd m = cell_means(u).array();
    Eigen::ArrayXd mp = m;
    pow_abs_inplace(mp, s);
    const double val = g.cell_volume * pairwise_sum(mp);

    Eigen::ArrayXd t = m.abs().pow(s - 1.0) * m.sign() *
                       (g.cell_volume * s / static_cast<double>(1 << g.dim));
    Vec grad = Vec::Zero(g.node_count());
    const int corners = 1 << g.dim;
    for (Index c = 0; c < t.size(); ++c)
        for (int k = 0; k < corners; ++k) grad[g.cell_corners(k, c)] += t[c];
    for (Index i = 0; i < grad.size(); ++i)
        if (!g.inside_mask[static_cast<std::size_t>(i)]) grad[i] = 0.0;
    return {val, std::move(grad)};
}

// || grad u ||_p^p and its nodal gradient (the classical reference energy)
std::pair<double, Vec> classical_power(const ScalarField& u, double p) {
    const GridDomain& g = *u.dom;
    const CellGradients cg = gradients(u);
    Eigen::ArrayXd gn = cg.g.colwise().norm().transpose().array();
    Eigen::ArrayXd gnp = gn;
    pow_abs_inplace(gnp, p);
    const double val = g.cell_volume * pairwise_sum(gnp);

    const double eps = p < 2.0 ? 1e-9 * gn.maxCoeff() : 0.0;
    // d/dg of |g|^p = p |g|^{p-2} g, regularized below p = 2
    Eigen::ArrayXd fac = (gn.square() + eps * eps).pow((p - 2.0) / 2.0) * (p * g.cell_volume);
    Vec grad = Vec::Zero(g.node_count());
    const int corners = 1 << g.dim;
    const double denom = std::pow(2.0, g.dim - 1) * g.h;
    for (Index c = 0; c < cg.g.cols(); ++c) {
        for (int k = 0; k < corners; ++k) {
            double s = 0.0;
            for (int d = 0; d < g.dim; ++d)
                s += (((k >> d) & 1) ? 1.0 : -1.0) * fac[c] * cg.g(d, c);
            grad[g.cell_corners(k, c)] += s / denom;
        }
    }
    for (Index i = 0; i < grad.size(); ++i)
        if (!g.inside_mask[static_cast<std::size_t>(i)]) grad[i] = 0.0;
    return {val, std::move(grad)};
}

enum class Mode { Eigenvalue, LeastEnergy };

struct QuotientObjective {
    const SolveConfig& cfg;
    const DirectionSet& ds;
    const DofMap& dofs;
    Mode mode;
    double q;  // resolved exponent

    mutable ScalarField u;  // scratch field

    QuotientObjective(const SolveConfig& c, const DirectionSet& d, const DofMap& m, Mode mo,
                      double qq)
        : cfg(c), ds(d), dofs(m), mode(mo), q(qq) {
        u = make_field(cfg.grid);
    }

    double operator()(const Vec& x, Vec& grad) const {
        dofs.unpack(x, u.values);
        double ep;
        Vec gep;
        try {
            if (cfg.classical) {
                std::tie(ep, gep) = classical_power(u, cfg.p);
            } else {
                const KernelCoefficients kc = kernel(u, ds, cfg.p);
                ep = kc.energy_p;
                gep = energy_gradient(u, ds, kc);
            }
        } catch (const DegenerateDirection&) {
            grad.setZero(x.size());
            return std::numeric_limits<double>::infinity();
        }

        double f;
        Vec gfull;
        if (mode == Mode::Eigenvalue) {
            auto [np, gnp] = norm_power(u, cfg.p);
            if (!(np > 0.0)) {
                grad.setZero(x.size());
                return std::numeric_limits<double>::infinity();
            }
            f = ep / np;
            gfull = (gep - f * gnp) / np;
        } else {
            auto [np, gnp] = norm_power(u, cfg.p);
            auto [nq, gnq] = norm_power(u, q);
            if (!(nq > 0.0)) {
                grad.setZero(x.size());
                return std::numeric_limits<double>::infinity();
            }
            const double denom = std::pow(nq, cfg.p / q);
            const double phi = ep - cfg.lambda * np;
            f = phi / denom;
            gfull = (gep - cfg.lambda * gnp - (cfg.p / q) * (phi / nq) * gnq) / denom;
        }
        grad = dofs.pack(gfull);
        return f;
    }
};

struct RestartOutcome {
    Vec x;
    double level = std::numeric_limits<double>::infinity();
    std::vector<double> trace;
    bool converged = false;
};

std::vector<RestartOutcome> run_restarts(const QuotientObjective& obj, const SolveConfig& cfg,
                                         const DofMap& dofs) {
    std::vector<Vec> inits;
    inits.push_back(dofs.pack(bump_field(cfg.grid).values));
    for (int r = 0; r < cfg.restarts; ++r) {
        const std::uint64_t s = cfg.seed + 0x51ed2701ull * static_cast<std::uint64_t>(r + 1);
        inits.push_back(dofs.pack(random_smooth_field(cfg.grid, s).values));
    }

    DescentOptions opt;
    opt.max_iter = cfg.max_iter;
    opt.tol_rel = cfg.tol_rel;

    auto solve_one = [&](const Vec& x0) {
        QuotientObjective local = obj;  // private scratch per worker
        DescentResult r = minimize_descent(
            [&local](const Vec& x, Vec& g) { return local(x, g); }, x0, opt);
        RestartOutcome out;
        out.x = std::move(r.x);
        out.level = r.f;
        out.trace = std::move(r.trace);
        out.converged = r.converged;
        return out;
    };

    std::vector<RestartOutcome> outs(inits.size());
    const std::size_t cap = static_cast<std::size_t>(worker_cap());
    if (cap <= 1 || inits.size() == 1) {
        for (std::size_t i = 0; i < inits.size(); ++i) outs[i] = solve_one(inits[i]);
        return outs;
    }
    // batches of at most `cap` concurrent solves; selection stays by index
    for (std::size_t i0 = 0; i0 < inits.size(); i0 += cap) {
        const std::size_t i1 = std::min(inits.size(), i0 + cap);
        std::vector<std::future<RestartOutcome>> fut;
        for (std::size_t i = i0; i < i1; ++i)
            fut.push_back(std::async(std::launch::async, solve_one, inits[i]));
        for (std::size_t i = i0; i < i1; ++i) outs[i] = fut[i - i0].get();
    }
    return outs;
}

std::size_t best_index(const std::vector<RestartOutcome>& outs) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < outs.size(); ++i)
        if (outs[i].level < outs[best].level) best = i;
    return best;
}

}  // namespace

DirectionSet SolveConfig::make_directions() const {
    const int n = grid->dim;
    const int count = m > 0 ? m : (n == 2 ? 128 : 266);
    return directions(n, count);
}

ScalarField bump_field(std::shared_ptr<const GridDomain> dom) {
    const GridDomain& g = *dom;
    Vec c = Vec::Zero(g.dim);
    Index k = 0;
    for (Index i = 0; i < g.node_count(); ++i)
        if (g.inside_mask[static_cast<std::size_t>(i)]) {
            c += g.node_position(i);
            ++k;
        }
    if (k == 0) throw EmptyDomain("bump_field: no interior nodes");
    c /= static_cast<double>(k);
    double r = 0.0;
    for (Index i = 0; i < g.node_count(); ++i)
        if (g.inside_mask[static_cast<std::size_t>(i)])
            r = std::max(r, (g.node_position(i) - c).norm());
    auto dom_copy = dom;
    return field_from(std::move(dom_copy), [c, r](const Vec& x) {
        const double t = (x - c).squaredNorm() / (r * r);
        return std::max(0.0, 1.0 - t);
    });
}

EigenResult principal_eigen(const SolveConfig& cfg) {
    if (!cfg.grid) throw ValidationError("principal_eigen: missing grid");
    if (!(cfg.p > 1.0)) throw ValidationError("principal_eigen: requires p > 1");
    const DirectionSet ds = cfg.make_directions();
    const DofMap dofs(*cfg.grid);
    QuotientObjective obj(cfg, ds, dofs, Mode::Eigenvalue, cfg.p);

    auto outs = run_restarts(obj, cfg, dofs);
    const std::size_t bi = best_index(outs);
    if (!outs[bi].converged)
        throw NoConvergence("principal_eigen: descent did not reach tolerance");

    EigenResult res;
    for (const auto& o : outs) res.restart_levels.push_back(o.level);
    res.trace = outs[bi].trace;

    ScalarField phi = make_field(cfg.grid);
    dofs.unpack(outs[bi].x, phi.values);
    phi = abs_field(phi);  // cannot increase the quotient; re-evaluate below
    Vec dummy;
    res.eigenvalue = obj(dofs.pack(phi.values), dummy);
    res.trace.push_back(res.eigenvalue);

    const double np = lq_norm(phi, cfg.p);
    if (np > 0.0) phi.values /= np;
    res.eigenfunction = std::move(phi);
    return res;
}

SolveResult least_energy(const SolveConfig& cfg) {
    if (!cfg.grid) throw ValidationError("least_energy: missing grid");
    const int n = cfg.grid->dim;
    if (!(cfg.p > 1.0 && cfg.p < n))
        throw ValidationError("least_energy: requires 1 < p < n");
    const double pstar = critical_exponent(n, cfg.p);
    const double q = cfg.q > 0.0 ? cfg.q : pstar;
    if (!(q > cfg.p))
        throw ValidationError("least_energy: requires q > p");
    if (q > pstar + 1e-12)
        throw ValidationError("least_energy: q exceeds p* = np/(n-p)");
    if (std::abs(q - pstar) < 1e-12 && !cfg.allow_critical)
        throw ValidationError(
            "least_energy: full-grid critical mode is experimental; use the radial solver "
            "or set allow_critical");

    const DirectionSet ds = cfg.make_directions();
    const DofMap dofs(*cfg.grid);
    QuotientObjective obj(cfg, ds, dofs, Mode::LeastEnergy, q);

    auto outs = run_restarts(obj, cfg, dofs);
    const std::size_t bi = best_index(outs);
    if (!outs[bi].converged) throw NoConvergence("least_energy: descent did not reach tolerance");

    SolveResult res;
    for (const auto& o : outs) res.restart_levels.push_back(o.level);
    res.trace = outs[bi].trace;

    ScalarField u = make_field(cfg.grid);
    dofs.unpack(outs[bi].x, u.values);
    u = abs_field(u);
    Vec dummy;
    res.level = obj(dofs.pack(u.values), dummy);
    res.trace.push_back(res.level);
    if (!(res.level > 0.0))
        throw NonPositiveLevel("least_energy: computed level is not positive (lambda above the "
                               "principal eigenvalue)");

    const double nq = lq_norm(u, q);
    u.values /= nq;
    res.minimizer = u;

    ScalarField v = u;
    v.values *= std::pow(res.level, 1.0 / (q - cfg.p));
    res.rescaled_solution = v;

    // Euler-Lagrange residual of the rescaled solution over a bank of smooth
    // test fields
    const KernelCoefficients kc = kernel(v, ds, cfg.p);
    double worst = 0.0;
    for (int k = 0; k < 32; ++k) {
        const ScalarField phi =
            random_smooth_field(cfg.grid, cfg.seed + 0x7f4a7c15ull + static_cast<std::uint64_t>(k), 8);
        const double wf = weak_form(v, ds, kc, phi);
        const double sq = source_pairing(v, phi, q);
        const double sp = cfg.lambda != 0.0 ? source_pairing(v, phi, cfg.p) : 0.0;
        const double rhs = sq + cfg.lambda * sp;
        const double scale =
            std::abs(wf) + std::abs(sq) + std::abs(cfg.lambda * sp) + 1e-300;
        worst = std::max(worst, std::abs(wf - rhs) / scale);
    }
    res.el_residual = worst;

    Index pos = 0, interior = 0;
    for (Index i = 0; i < u.values.size(); ++i) {
        if (!cfg.grid->inside_mask[static_cast<std::size_t>(i)]) continue;
        ++interior;
        if (u.values[i] > 0.0) ++pos;
    }
    res.positivity_fraction = interior ? static_cast<double>(pos) / interior : 0.0;
    res.positivity_ok = res.positivity_fraction >= 0.99;
    return res;
}

double nonexistence_witness(const SolveConfig& cfg, const EigenResult& eig) {
    const int n = cfg.grid->dim;
    const double q = cfg.q > 0.0 ? cfg.q : critical_exponent(n, cfg.p);
    ScalarField phi = eig.eigenfunction;
    const double nq = lq_norm(phi, q);
    if (!(nq > 0.0)) throw DegenerateDirection("nonexistence_witness: zero eigenfunction");
    phi.values /= nq;

    const DirectionSet ds = cfg.make_directions();
    const double ep = std::pow(affine_energy(phi, ds, cfg.p), cfg.p);
    const double np = std::pow(lq_norm(phi, cfg.p), cfg.p);
    return ep - cfg.lambda * np;  // ||phi||_q = 1
}

double lambda_star(const SolveConfig& cfg, const EigenResult& eig) {
    const int n = cfg.grid->dim;
    const double pstar = critical_exponent(n, cfg.p);
    ScalarField phi = eig.eigenfunction;
    const double ns = lq_norm(phi, pstar);
    if (!(ns > 0.0)) throw DegenerateDirection("lambda_star: zero eigenfunction");
    phi.values /= ns;
    const double np = lq_norm(phi, cfg.p);
    const double k = k_np(n, cfg.p);
    return eig.eigenvalue - std::pow(k, -cfg.p) * std::pow(np, -cfg.p);
}

double lambda_star(const SolveConfig& cfg) {
    return lambda_star(cfg, principal_eigen(cfg));
}

}  // namespace avlab
