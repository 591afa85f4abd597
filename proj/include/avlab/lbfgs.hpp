#pragma once

#include "avlab/types.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <vector>

namespace avlab {

/// Limited-memory quasi-Newton descent with a backtracking Armijo line search.
/// Deterministic: no randomness, fixed evaluation order.
struct DescentOptions {
    int max_iter = 20000;
    int memory = 20;
    double tol_rel = 1e-8;   // relative objective change ...
    int patience = 10;       // ... sustained over this many accepted steps
    double grad_tol = 1e-10; // ||g||_inf <= grad_tol * max(1, |f|)
    int max_backtracks = 60;
    double armijo = 1e-4;
};

struct DescentResult {
    Vec x;
    double f = std::numeric_limits<double>::infinity();
    std::vector<double> trace;  // accepted objective values, nonincreasing
    int iterations = 0;
    bool converged = false;
};

/// fg(x, g) evaluates the objective and writes its gradient; it may return
/// +infinity to reject a point (the line search then backtracks).
template <class F>
DescentResult minimize_descent(F&& fg, Vec x0, const DescentOptions& opt) {
    DescentResult res;
    const Index n = x0.size();
    Vec g(n), g_new(n), d(n), x_new(n);
    double f = fg(x0, g);
    if (!std::isfinite(f)) throw NonFinite("descent: initial objective is not finite");

    std::deque<Vec> s_hist, y_hist;
    std::deque<double> rho_hist;
    double gamma = 1.0;

    res.trace.push_back(f);
    int calm = 0;
    Vec x = std::move(x0);

    for (int it = 0; it < opt.max_iter; ++it) {
        if (g.cwiseAbs().maxCoeff() <= opt.grad_tol * std::max(1.0, std::abs(f))) {
            res.converged = true;
            break;
        }

        // two-loop recursion
        d = -g;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t i = s_hist.size(); i-- > 0;) {
            alpha[i] = rho_hist[i] * s_hist[i].dot(d);
            d -= alpha[i] * y_hist[i];
        }
        d *= gamma;
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            const double beta = rho_hist[i] * y_hist[i].dot(d);
            d += (alpha[i] - beta) * s_hist[i];
        }
        double slope = g.dot(d);
        if (!(slope < 0.0)) {  // fall back to steepest descent
            d = -g * gamma;
            slope = g.dot(d);
            if (!(slope < 0.0)) break;
        }

        double step = 1.0;
        bool accepted = false;
        double f_new = f;
        for (int bt = 0; bt < opt.max_backtracks; ++bt) {
            x_new = x + step * d;
            f_new = fg(x_new, g_new);
            if (std::isfinite(f_new) && f_new <= f + opt.armijo * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            res.converged = true;  // no admissible decrease left at machine scale
            break;
        }

        const Vec s = x_new - x;
        const Vec y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            s_hist.push_back(s);
            y_hist.push_back(y);
            rho_hist.push_back(1.0 / sy);
            gamma = sy / y.dot(y);
            if (static_cast<int>(s_hist.size()) > opt.memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }

        const double drop = std::abs(f - f_new);
        x.swap(x_new);
        g.swap(g_new);
        f = f_new;
        res.trace.push_back(f);
        res.iterations = it + 1;

        calm = drop <= opt.tol_rel * std::max(1e-300, std::abs(f)) ? calm + 1 : 0;
        if (calm >= opt.patience) {
            res.converged = true;
            break;
        }
    }

    res.x = std::move(x);
    res.f = f;
    return res;
}

}  // namespace avlab
