#include "avlab/verify.hpp"

#include "avlab/constants.hpp"
#include "avlab/energy.hpp"
#include "avlab/radial.hpp"
#include "avlab/solvers.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

namespace avlab {

namespace {

// ---------------------------------------------------------------------------
// Shared suite context: domains, direction sets, corpus fields and the
// expensive solver artifacts, all built lazily and reused across checks.
// ---------------------------------------------------------------------------

struct Ctx {
    SuiteOptions opts;

    std::shared_ptr<const GridDomain> disk, square, ellipse, rect, ball;
    std::optional<DirectionSet> ds2, ds3;
    std::vector<ScalarField> corpus;  // all 2D domains merged

    std::optional<EigenResult> eig_disk_p2, eig_disk_p15, eig_square, eig_rect;
    std::optional<double> eig_disk_classical, eig_square_classical, eig_rect_classical;
    std::optional<SolveResult> solve_p15;

    const DirectionSet& dirs2() {
        if (!ds2) ds2 = directions(2, 128);
        return *ds2;
    }
    const DirectionSet& dirs3() {
        if (!ds3) ds3 = directions(3, 266);
        return *ds3;
    }

    std::shared_ptr<const GridDomain> get_disk() {
        if (!disk) disk = build_grid(DomainSpec::ball(Vec::Zero(2), 1.0), 1.0 / 16);
        return disk;
    }
    std::shared_ptr<const GridDomain> get_square() {
        if (!square)
            square = build_grid(
                DomainSpec::rectangle(Vec::Constant(2, 0.5), Vec::Constant(2, 0.5)), 1.0 / 32);
        return square;
    }
    std::shared_ptr<const GridDomain> get_ellipse() {
        if (!ellipse) {
            Vec ax(2);
            ax << 1.0, 0.6;
            ellipse = build_grid(DomainSpec::ellipse(Vec::Zero(2), ax), 1.0 / 16);
        }
        return ellipse;
    }
    std::shared_ptr<const GridDomain> get_rect() {
        if (!rect) {
            Mat T(2, 2);
            T << 2.0, 0.0, 0.0, 0.5;
            rect = transform_domain(*get_square(), T);
        }
        return rect;
    }
    std::shared_ptr<const GridDomain> get_ball() {
        if (!ball) ball = build_grid(DomainSpec::ball(Vec::Zero(3), 1.0), 1.0 / 10);
        return ball;
    }

    ScalarField sheared_bump(std::shared_ptr<const GridDomain> dom, double shear) const {
        Mat A(2, 2);
        A << 1.0, shear, 0.0, 1.0;
        return field_from(std::move(dom), [A](const Vec& x) {
            const Vec y = A * x;
            return std::max(0.0, 1.0 - 4.0 * y.squaredNorm());
        });
    }

    ScalarField radial_bump(std::shared_ptr<const GridDomain> dom, double width) const {
        return field_from(std::move(dom), [width](const Vec& x) {
            return std::max(0.0, 1.0 - x.squaredNorm() / (width * width));
        });
    }

    const std::vector<ScalarField>& get_corpus() {
        if (!corpus.empty()) return corpus;
        const std::array<std::shared_ptr<const GridDomain>, 3> doms = {get_disk(), get_square(),
                                                                       get_ellipse()};
        int k = 0;
        for (const auto& d : doms) {
            for (int i = 0; i < 20; ++i)
                corpus.push_back(random_smooth_field(d, opts.seed + 1000 * (k + 1) + i));
            Vec c = Vec::Zero(2);
            for (double w : {0.9, 0.6, 0.3}) {
                ScalarField b = make_field(d);
                // recenter bumps inside the square (its centroid is (0.5,0.5))
                const Vec ctr = k == 1 ? Vec::Constant(2, 0.5) : c;
                b = field_from(d, [ctr, w](const Vec& x) {
                    return std::max(0.0, 1.0 - (x - ctr).squaredNorm() / (w * w * 0.25));
                });
                corpus.push_back(std::move(b));
            }
            for (double s : {0.3, 0.6, 1.0}) {
                if (k == 1) {
                    Mat A(2, 2);
                    A << 1.0, s, 0.0, 1.0;
                    const Vec ctr = Vec::Constant(2, 0.5);
                    corpus.push_back(field_from(d, [A, ctr](const Vec& x) {
                        const Vec y = A * (x - ctr);
                        return std::max(0.0, 1.0 - 8.0 * y.squaredNorm());
                    }));
                } else {
                    corpus.push_back(sheared_bump(d, s));
                }
            }
            ++k;
        }
        return corpus;
    }

    SolveConfig eigen_cfg(std::shared_ptr<const GridDomain> g, double p) const {
        SolveConfig cfg;
        cfg.grid = std::move(g);
        cfg.p = p;
        cfg.m = 128;
        cfg.restarts = 3;
        cfg.seed = opts.seed;
        cfg.max_iter = 6000;
        return cfg;
    }

    const EigenResult& get_eig_disk_p2() {
        if (!eig_disk_p2) eig_disk_p2 = principal_eigen(eigen_cfg(get_disk(), 2.0));
        return *eig_disk_p2;
    }
    const EigenResult& get_eig_disk_p15() {
        if (!eig_disk_p15) eig_disk_p15 = principal_eigen(eigen_cfg(get_disk(), 1.5));
        return *eig_disk_p15;
    }
    const EigenResult& get_eig_square() {
        if (!eig_square) eig_square = principal_eigen(eigen_cfg(get_square(), 2.0));
        return *eig_square;
    }
    const EigenResult& get_eig_rect() {
        if (!eig_rect) eig_rect = principal_eigen(eigen_cfg(get_rect(), 2.0));
        return *eig_rect;
    }
    double get_eig_disk_classical() {
        if (!eig_disk_classical) {
            SolveConfig cfg = eigen_cfg(get_disk(), 2.0);
            cfg.classical = true;
            eig_disk_classical = principal_eigen(cfg).eigenvalue;
        }
        return *eig_disk_classical;
    }
    double get_eig_square_classical() {
        if (!eig_square_classical) {
            SolveConfig cfg = eigen_cfg(get_square(), 2.0);
            cfg.classical = true;
            eig_square_classical = principal_eigen(cfg).eigenvalue;
        }
        return *eig_square_classical;
    }
    double get_eig_rect_classical() {
        if (!eig_rect_classical) {
            SolveConfig cfg = eigen_cfg(get_rect(), 2.0);
            cfg.classical = true;
            eig_rect_classical = principal_eigen(cfg).eigenvalue;
        }
        return *eig_rect_classical;
    }
    const SolveResult& get_solve_p15() {
        if (!solve_p15) {
            SolveConfig cfg;
            cfg.grid = get_disk();
            cfg.p = 1.5;
            cfg.q = 3.0;
            cfg.lambda = 0.0;
            cfg.m = 128;
            cfg.restarts = 3;
            cfg.seed = opts.seed;
            cfg.max_iter = 20000;
            solve_p15 = least_energy(cfg);
        }
        return *solve_p15;
    }
};

struct Entry {
    const char* name;
    const char* statement;
    bool full_only;
    std::function<void(Ctx&, CheckReport&)> fn;
};

void set(CheckReport& r, double measured, double tol, bool pass_if_leq = true) {
    r.measured = measured;
    r.tolerance = tol;
    r.pass = pass_if_leq ? measured <= tol : measured >= tol;
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = {
        {"comp-inequality-p2",
         "E_{p,Omega}(u) <= ||grad u||_p for p = 2 (moment-exact rule)", false,
         [](Ctx& c, CheckReport& r) {
             double worst = -1.0;
             for (const ScalarField& u : c.get_corpus()) {
                 const EnergyReport e = energy_report(u, c.dirs2(), 2.0);
                 if (e.degenerate) continue;
                 worst = std::max(worst, e.energy / e.grad_norm - 1.0);
             }
             set(r, worst, 1e-12);
         }},
        {"comp-inequality-p15",
         "E_{p,Omega}(u) <= ||grad u||_p for p = 1.5 (rule anisotropy bound)", false,
         [](Ctx& c, CheckReport& r) {
             double worst = -1.0;
             for (const ScalarField& u : c.get_corpus()) {
                 const EnergyReport e = energy_report(u, c.dirs2(), 1.5);
                 if (e.degenerate) continue;
                 worst = std::max(worst, e.energy / e.grad_norm - 1.0);
             }
             set(r, worst, 2e-5);  // covers the m = 128 moment anisotropy at p = 1.5
         }},
        {"trichotomy",
         "u = 0 iff E_{p,Omega}(u) = 0 iff Psi_xi(u) = 0 for some xi", false,
         [](Ctx& c, CheckReport& r) {
             const auto dom = c.get_disk();
             const EnergyReport ez = energy_report(make_field(dom), c.dirs2(), 2.0);
             bool ok = ez.degenerate && ez.energy == 0.0 && ez.min_psi < kPsiFloor;
             const EnergyReport en =
                 energy_report(c.radial_bump(dom, 0.8), c.dirs2(), 2.0);
             ok = ok && !en.degenerate && en.energy > 0.0 && en.min_psi >= kPsiFloor;
             set(r, ok ? 0.0 : 1.0, 0.5);
         }},
        {"homogeneity", "E(c u) = |c| E(u) for c in {-2, 0.5, 10}", false,
         [](Ctx& c, CheckReport& r) {
             const ScalarField u = c.get_corpus().front();
             const double e1 = affine_energy(u, c.dirs2(), 2.0);
             double worst = 0.0;
             for (double s : {-2.0, 0.5, 10.0}) {
                 ScalarField v = u;
                 v.values *= s;
                 const double es = affine_energy(v, c.dirs2(), 2.0);
                 worst = std::max(worst, std::abs(es - std::abs(s) * e1) / (std::abs(s) * e1));
             }
             set(r, worst, 1e-12);
         }},
        {"superadditivity", "E^p(u) >= E^p(T_h u) + E^p(R_h u)", false,
         [](Ctx& c, CheckReport& r) {
             double worst = 0.0;  // most negative gap
             for (const ScalarField& u : c.get_corpus()) {
                 const double mx = u.max_abs();
                 if (mx == 0.0) continue;
                 for (double f : {0.25, 0.5}) {
                     const double gap = superadditivity_gap(u, c.dirs2(), 2.0, f * mx);
                     worst = std::min(worst, gap);
                 }
             }
             set(r, -worst, 1e-8);
         }},
        {"truncation-decomposition",
         "Psi_xi(u) = Psi_xi(T_h u) + Psi_xi(R_h u) within O(h) for radial u", false,
         [](Ctx& c, CheckReport& r) {
             const auto dom = c.get_disk();
             const ScalarField u = c.radial_bump(dom, 0.95);
             const auto [t, rm] = truncate(u, 0.5 * u.max_abs());
             const Vec pu = psi_values(u, c.dirs2(), 2.0);
             const Vec pt = psi_values(t, c.dirs2(), 2.0);
             const Vec pr = psi_values(rm, c.dirs2(), 2.0);
             const double defect =
                 ((pu - pt - pr).cwiseAbs().maxCoeff()) / pu.maxCoeff();
             set(r, defect, 4.0 * dom->h);
         }},
        {"radial-equality", "E_p(u) = ||grad u||_p for radial fields", false,
         [](Ctx& c, CheckReport& r) {
             const EnergyReport e =
                 energy_report(c.radial_bump(c.get_disk(), 0.95), c.dirs2(), 2.0);
             set(r, std::abs(e.energy - e.grad_norm) / e.grad_norm, 0.01);
         }},
        {"alpha-identity-2d",
         "alpha_{n,p} = (n w_n)^{(n+p)/(np)} (int |xi0.xi|^p)^{-1/p}, n = 2", false,
         [](Ctx&, CheckReport& r) { set(r, alpha_consistency(2, 2.0, 256), 1e-12); }},
        {"kernel-identity", "sum_cells vol H_u^p(grad u) = E^p", false,
         [](Ctx& c, CheckReport& r) {
             double worst = 0.0;
             for (const ScalarField& u : c.get_corpus()) {
                 const KernelCoefficients kc = kernel(u, c.dirs2(), 2.0);
                 const CellGradients cg = gradients(u);
                 Vec acc(c.dirs2().size());
                 Eigen::ArrayXd t;
                 for (Index j = 0; j < c.dirs2().size(); ++j) {
                     t = (c.dirs2().dirs.col(j).transpose() * cg.g).transpose().array();
                     pow_abs_inplace(t, 2.0);
                     acc[j] = kc.coeff[j] * pairwise_sum(t) * u.dom->cell_volume;
                 }
                 const double lhs = pairwise_sum(acc);
                 worst = std::max(worst, std::abs(lhs - kc.energy_p) / kc.energy_p);
             }
             set(r, worst, 1e-10);
         }},
        {"weakform-self-pairing", "weak_form(u, u) = E^p (1-homogeneity of H_u)", false,
         [](Ctx& c, CheckReport& r) {
             double worst = 0.0;
             for (const ScalarField& u : c.get_corpus()) {
                 const KernelCoefficients kc = kernel(u, c.dirs2(), 2.0);
                 const double wf = weak_form(u, c.dirs2(), kc, u);
                 worst = std::max(worst, std::abs(wf - kc.energy_p) / kc.energy_p);
             }
             set(r, worst, 1e-10);
         }},
        {"gradient-fd-p2", "grad E^p vs central differences, p = 2", false,
         [](Ctx& c, CheckReport& r) {
             double worst = 0.0;
             for (int f = 0; f < 5; ++f) {
                 const ScalarField& u = c.get_corpus()[static_cast<std::size_t>(f)];
                 const Vec g = energy_gradient(u, c.dirs2(), 2.0);
                 const double scale = g.cwiseAbs().maxCoeff();
                 std::uint64_t st = c.opts.seed + 77 + static_cast<std::uint64_t>(f);
                 for (int k = 0; k < 20; ++k) {
                     st = st * 6364136223846793005ull + 1442695040888963407ull;
                     Index i = static_cast<Index>(st % static_cast<std::uint64_t>(u.values.size()));
                     if (!u.dom->inside_mask[static_cast<std::size_t>(i)]) continue;
                     const double t = 1e-5 * std::max(1.0, u.max_abs());
                     ScalarField up = u, um = u;
                     up.values[i] += t;
                     um.values[i] -= t;
                     const double fd = (std::pow(affine_energy(up, c.dirs2(), 2.0), 2.0) -
                                        std::pow(affine_energy(um, c.dirs2(), 2.0), 2.0)) /
                                       (2.0 * t);
                     worst = std::max(worst, std::abs(fd - g[i]) / scale);
                 }
             }
             set(r, worst, 1e-5);
         }},
        {"gradient-fd-p15", "grad E^p vs central differences, p = 1.5", false,
         [](Ctx& c, CheckReport& r) {
             double worst = 0.0;
             for (int f = 0; f < 3; ++f) {
                 const ScalarField& u = c.get_corpus()[static_cast<std::size_t>(f)];
                 const Vec g = energy_gradient(u, c.dirs2(), 1.5);
                 const double scale = g.cwiseAbs().maxCoeff();
                 std::uint64_t st = c.opts.seed + 177 + static_cast<std::uint64_t>(f);
                 for (int k = 0; k < 20; ++k) {
                     st = st * 6364136223846793005ull + 1442695040888963407ull;
                     Index i = static_cast<Index>(st % static_cast<std::uint64_t>(u.values.size()));
                     if (!u.dom->inside_mask[static_cast<std::size_t>(i)]) continue;
                     const double t = 1e-5 * std::max(1.0, u.max_abs());
                     ScalarField up = u, um = u;
                     up.values[i] += t;
                     um.values[i] -= t;
                     const double fd = (std::pow(affine_energy(up, c.dirs2(), 1.5), 1.5) -
                                        std::pow(affine_energy(um, c.dirs2(), 1.5), 1.5)) /
                                       (2.0 * t);
                     worst = std::max(worst, std::abs(fd - g[i]) / scale);
                 }
             }
             set(r, worst, 1e-4);
         }},
        {"kato", "Psi_xi(|u|) <= Psi_xi(u) per direction on the corpus", false,
         [](Ctx& c, CheckReport& r) {
             double worst = 0.0;
             for (const ScalarField& u : c.get_corpus()) {
                 const Vec pu = psi_values(u, c.dirs2(), 2.0);
                 const Vec pa = psi_values(abs_field(u), c.dirs2(), 2.0);
                 worst = std::max(worst, ((pa - pu).array() / pu.array()).maxCoeff());
             }
             set(r, worst, 1e-12);
         }},
        {"sl2-invariance-energy", "E(u o T) = E(u) for T in SL(2)", false,
         [](Ctx& c, CheckReport& r) {
             Mat T(2, 2);
             T << 2.0, 0.0, 0.0, 0.5;
             const ScalarField u = c.sheared_bump(c.get_square(), 0.0);
             ScalarField v = pullback(u, T, c.get_rect());
             double worst = 0.0;
             for (double p : {1.5, 2.0}) {
                 const double e0 = affine_energy(u, c.dirs2(), p);
                 const double e1 = affine_energy(v, c.dirs2(), p);
                 worst = std::max(worst, std::abs(e1 - e0) / e0);
             }
             set(r, worst, 0.03);
         }},
        {"sl2-invariance-eigen",
         "lambda_1 agrees between a square and its SL(2) image while the "
         "classical values differ strongly", false,
         [](Ctx& c, CheckReport& r) {
             const double a = c.get_eig_square().eigenvalue;
             const double b = c.get_eig_rect().eigenvalue;
             const double rel = std::abs(a - b) / std::min(a, b);
             const double ca = c.get_eig_square_classical();
             const double cb = c.get_eig_rect_classical();
             const double crel = std::abs(ca - cb) / std::min(ca, cb);
             set(r, rel, 0.03);
             if (crel < 0.55) r.pass = false;
             r.note = "classical split " + std::to_string(crel);
         }},
        {"talenti-agreement",
         "K_{n,p} (Gamma form) equals the sharp Sobolev constant", false,
         [](Ctx&, CheckReport& r) {
             double worst = 0.0;
             for (auto [n, p] : std::vector<std::pair<int, double>>{
                      {3, 2.0}, {3, 1.5}, {4, 2.0}, {5, 2.0}}) {
                 const double a = k_np(n, p);
                 // independent arrangement of the same Gamma expression
                 const double nn = n;
                 const double b = std::pow(M_PI, -0.5) * std::pow(nn, -1.0 / p) *
                                  std::pow((p - 1.0) / (nn - p), 1.0 - 1.0 / p) *
                                  std::pow(std::tgamma(1.0 + nn / 2.0), 1.0 / nn) *
                                  std::pow(std::tgamma(nn), 1.0 / nn) /
                                  (std::pow(std::tgamma(nn / p), 1.0 / nn) *
                                   std::pow(std::tgamma(1.0 + nn - nn / p), 1.0 / nn));
                 worst = std::max(worst, std::abs(a - b) / b);
             }
             set(r, worst, 1e-12);
         }},
        {"eigen-upper-bound",
         "lambda_1^{affine}(disk) <= j_{0,1}^2 (1 + 2%), descent trace monotone", false,
         [](Ctx& c, CheckReport& r) {
             const EigenResult& e = c.get_eig_disk_p2();
             const double j01sq = 5.783185962946785;
             bool monotone = true;
             for (std::size_t i = 1; i < e.trace.size(); ++i)
                 if (e.trace[i] > e.trace[i - 1] + 1e-12 * std::abs(e.trace[i - 1]))
                     monotone = false;
             set(r, e.eigenvalue, j01sq * 1.02);
             if (!monotone) r.pass = false;
         }},
        {"eigen-vs-classical", "lambda_1^{affine} <= lambda_1^{classical} on the disk", false,
         [](Ctx& c, CheckReport& r) {
             const double a = c.get_eig_disk_p2().eigenvalue;
             const double cl = c.get_eig_disk_classical();
             set(r, a, cl * (1.0 + 1e-6));
         }},
        {"subcritical-level-positivity",
         "c_A >= (lambda_1 - lambda) ||u_0||_p^p for lambda < lambda_1", false,
         [](Ctx& c, CheckReport& r) {
             const SolveResult& s = c.get_solve_p15();
             const double lam1 = c.get_eig_disk_p15().eigenvalue;
             const double np = std::pow(lq_norm(s.minimizer, 1.5), 1.5);
             // lambda = 0 here; allow solver slack
             set(r, lam1 * np * (1.0 - 1e-6) - s.level, 1e-8);
         }},
        {"subcritical-el-residual",
         "weak residual of Delta_p^A u = u^{q-1} + lambda u^{p-1} at the solution", false,
         [](Ctx& c, CheckReport& r) { set(r, c.get_solve_p15().el_residual, 1e-4); }},
        {"corollary-mu-cA",
         "mu_{p,q} = c_A^{1/p}: the Poincare-Sobolev constant from the level", false,
         [](Ctx& c, CheckReport& r) {
             const SolveResult& s = c.get_solve_p15();
             // with ||u||_q = 1 the level equals E^p at the minimizer, so the
             // two routes to mu agree by construction; check the arithmetic
             const double mu_a = std::pow(s.level, 1.0 / 1.5);
             const double e = affine_energy(s.minimizer, c.dirs2(), 1.5);
             set(r, std::abs(mu_a - e) / e, 1e-6);
         }},
        {"pohozaev-radial",
         "(1/p - 1) int_bdry H^p (x.nu) = (n/p - 1) int u f(u) - n int F(u)", false,
         [](Ctx&, CheckReport& r) {
             RadialConfig cfg;
             cfg.n = 3;
             cfg.p = 2.0;
             cfg.q = 4.0;
             cfg.lambda = 0.0;
             cfg.nodes = 2000;
             const RadialResult sol = radial_least_energy(cfg);
             Vec v = sol.profile * std::pow(sol.level, 1.0 / (4.0 - 2.0));
             set(r, pohozaev_residual(v, 3, 2.0, 4.0, 0.0, 1.0), 0.02);
         }},
        {"witness-signs",
         "Q(phi_1) = (lambda_1 - lambda)||phi_1||_p^p: zero at lambda_1, sign flips", false,
         [](Ctx& c, CheckReport& r) {
             const EigenResult& e = c.get_eig_disk_p2();
             SolveConfig cfg = c.eigen_cfg(c.get_disk(), 2.0);
             cfg.q = 4.0;
             cfg.lambda = e.eigenvalue;
             const double at = nonexistence_witness(cfg, e);
             cfg.lambda = e.eigenvalue + 1.0;
             const double above = nonexistence_witness(cfg, e);
             cfg.lambda = e.eigenvalue - 1.0;
             const double below = nonexistence_witness(cfg, e);
             set(r, std::abs(at), 1e-8);
             if (!(above < 0.0 && below > 0.0)) r.pass = false;
         }},
        {"lambda-star-positive",
         "lambda_* = lambda_1 - K^{-p}||phi_1||_p^{-p} > 0 when E^p(phi_1) > K^{-p}", false,
         [](Ctx& c, CheckReport& r) {
             const EigenResult& e = c.get_eig_disk_p15();
             SolveConfig cfg = c.eigen_cfg(c.get_disk(), 1.5);
             const double ls = lambda_star(cfg, e);
             // consistency: sign matches the computed strict inequality
             ScalarField phi = e.eigenfunction;
             phi.values /= lq_norm(phi, 6.0);  // p* = 6 for n=2, p=1.5
             const double ep = std::pow(affine_energy(phi, c.dirs2(), 1.5), 1.5);
             const double thr = std::pow(k_np(2, 1.5), -1.5);
             const bool want_positive = ep > thr;
             set(r, want_positive ? (ls > 0.0 ? 0.0 : 1.0) : 0.0, 0.5);
             r.note = "lambda_* = " + std::to_string(ls);
         }},
        {"radial-critical-lower-bound",
         "radial level >= (1 - lambda/lambda_1) K^{-p} on the ball", false,
         [](Ctx&, CheckReport& r) {
             const double lam1 = M_PI * M_PI;  // radial p = 2 value on the unit ball
             const double K2 = std::pow(k_np(3, 2.0), -2.0);
             const double lam = 0.5 * lam1;
             const double level = radial_critical_level(3, 2.0, lam, 1.0, 1200);
             const double bound = (1.0 - lam / lam1) * K2;
             set(r, bound * (1.0 - 1e-6) - level, 1e-8);
         }},
        {"restart-determinism", "identical seed gives a bit-identical solve", false,
         [](Ctx& c, CheckReport& r) {
             SolveConfig cfg = c.eigen_cfg(c.get_square(), 2.0);
             cfg.m = 32;
             cfg.restarts = 2;
             cfg.max_iter = 600;
             cfg.tol_rel = 1e-6;
             EigenResult a;
             EigenResult b;
             try {
                 a = principal_eigen(cfg);
                 b = principal_eigen(cfg);
             } catch (const NoConvergence&) {
                 // determinism is judged on the trajectory, rerun with the
                 // convergence requirement relaxed via more iterations
                 cfg.max_iter = 6000;
                 a = principal_eigen(cfg);
                 b = principal_eigen(cfg);
             }
             const bool same = a.eigenvalue == b.eigenvalue &&
                               (a.eigenfunction.values - b.eigenfunction.values)
                                       .cwiseAbs()
                                       .maxCoeff() == 0.0;
             set(r, same ? 0.0 : 1.0, 0.5);
         }},
        // ------------------------------------------------------------------
        // full level
        // ------------------------------------------------------------------
        {"alpha-identity-3d",
         "alpha_{n,p} moment identity, n = 3", true,
         [](Ctx&, CheckReport& r) { set(r, alpha_consistency(3, 2.0, 266), 1e-6); }},
        {"comp-inequality-3d", "E <= ||grad u||_p on the ball, p = 2", true,
         [](Ctx& c, CheckReport& r) {
             double worst = -1.0;
             for (int i = 0; i < 6; ++i) {
                 const ScalarField u = random_smooth_field(c.get_ball(), c.opts.seed + 40 + i, 6);
                 const EnergyReport e = energy_report(u, c.dirs3(), 2.0);
                 if (e.degenerate) continue;
                 worst = std::max(worst, e.energy / e.grad_norm - 1.0);
             }
             set(r, worst, 1e-12);
         }},
        {"radial-equality-3d", "E_p(u) = ||grad u||_p for a radial bump on the ball", true,
         [](Ctx& c, CheckReport& r) {
             const ScalarField u = field_from(c.get_ball(), [](const Vec& x) {
                 return std::max(0.0, 1.0 - x.squaredNorm());
             });
             const EnergyReport e = energy_report(u, c.dirs3(), 2.0);
             set(r, std::abs(e.energy - e.grad_norm) / e.grad_norm, 0.01);
         }},
        {"kernel-isotropy-3d", "H_u(zeta) = |zeta| for radial u (ball, p = 2)", true,
         [](Ctx& c, CheckReport& r) {
             const ScalarField u = field_from(c.get_ball(), [](const Vec& x) {
                 return std::max(0.0, 1.0 - x.squaredNorm());
             });
             const KernelCoefficients kc = kernel(u, c.dirs3(), 2.0);
             double worst = 0.0;
             for (int t = 0; t < 8; ++t) {
                 Vec z(3);
                 z << std::cos(0.7 * t), std::sin(1.3 * t), std::cos(2.1 * t + 0.5);
                 z.normalize();
                 worst = std::max(worst, std::abs(kernel_value(kc, c.dirs3(), z) - 1.0));
             }
             set(r, worst, 0.02);
         }},
        {"lambda-scan-monotone",
         "critical level is nonincreasing in lambda (warm-started scan)", true,
         [](Ctx&, CheckReport& r) {
             const auto rows = scan_lambda(3, 2.0, 1.0, 1200, 0.0, 0.9 * M_PI * M_PI, 10);
             double worst = 0.0;
             for (std::size_t i = 1; i < rows.size(); ++i)
                 worst = std::max(worst, rows[i].level - rows[i - 1].level);
             set(r, worst, 1e-8);
             if (!rows.back().below_threshold) r.pass = false;
         }},
        {"eigen-ball-radial",
         "ball eigenfunction is radial within 2% rms ring scatter", true,
         [](Ctx& c, CheckReport& r) {
             SolveConfig cfg;
             cfg.grid = c.get_ball();
             cfg.p = 2.0;
             cfg.m = 266;
             cfg.restarts = 0;  // radial bump start
             cfg.seed = c.opts.seed;
             cfg.max_iter = 4000;
             const EigenResult e = principal_eigen(cfg);
             const RadialProfile prof =
                 radial_profile(e.eigenfunction, Vec::Zero(3), 0.95);
             set(r, prof.scatter_rms, 0.02);
         }},
    };
    return entries;
}

}  // namespace

std::size_t registry_size(SuiteLevel level) {
    std::size_t n = 0;
    for (const Entry& e : registry())
        if (level == SuiteLevel::Full || !e.full_only) ++n;
    return n;
}

std::vector<CheckReport> run_suite(const SuiteOptions& opts) {
    Ctx ctx;
    ctx.opts = opts;
    std::vector<CheckReport> reports;
    for (const Entry& e : registry()) {
        if (e.full_only && opts.level != SuiteLevel::Full) continue;
        CheckReport r;
        r.name = e.name;
        r.statement = e.statement;
        try {
            e.fn(ctx, r);
        } catch (const NonFinite& ex) {
            r.pass = false;
            r.note = std::string("NonFinite: ") + ex.what();
        } catch (const Error& ex) {
            r.pass = false;
            r.note = ex.what();
        }
        reports.push_back(std::move(r));
    }
    if (opts.corrupt_fixture) {
        CheckReport r;
        r.name = "corrupt-fixture";
        r.statement = "energy of a NaN-injected field raises NonFinite";
        try {
            auto dom = build_grid(DomainSpec::ball(Vec::Zero(2), 1.0), 1.0 / 8);
            ScalarField u = bump_field(dom);
            for (Index i = 0; i < u.values.size(); ++i)
                if (u.dom->inside_mask[static_cast<std::size_t>(i)]) {
                    u.values[i] = std::numeric_limits<double>::quiet_NaN();
                    break;
                }
            energy_report(u, directions(2, 32), 2.0);
            r.pass = false;
            r.note = "no error raised";
        } catch (const NonFinite&) {
            r.pass = false;  // failure is data: the fixture is corrupt
            r.note = "NonFinite";
        }
        reports.push_back(std::move(r));
    }
    return reports;
}

bool all_pass(const std::vector<CheckReport>& reports) {
    for (const CheckReport& r : reports)
        if (!r.pass) return false;
    return true;
}

}  // namespace avlab
