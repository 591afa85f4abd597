#pragma once

#include "avlab/types.hpp"

namespace avlab {

/// Volume of the unit Euclidean ball in R^k; fractional k is allowed.
double omega(double k);

/// Normalization constant of the affine L^p energy,
/// alpha_{n,p} = (2 w_{n+p-2})^{-1/p} (n w_n w_{p-1})^{1/p} (n w_n)^{1/n}.
double alpha_np(int n, double p);

/// Sharp constant of the L^p Sobolev inequality ||u||_{p*} <= K ||grad u||_p,
/// in its Gamma-function closed form. Requires 1 <= p < n.
double k_np(int n, double p);

/// Optimal constant of the critical Poincare-Sobolev inequality, mu = 1/K_{n,p}.
double mu_critical(int n, double p);

/// Member of the extremal family a (1 + b |A (x - x0)|^{p/(p-1)})^{1 - n/p}.
/// A must have det A = 1 within 1e-12.
struct ExtremalBubble {
    double amplitude = 1.0;  // a
    double scale = 1.0;      // b > 0
    Vec center;              // x0
    Mat shape_matrix;        // A, det 1

    static ExtremalBubble standard(int n);
};

double bubble_value(const ExtremalBubble& e, int n, double p, const Vec& x);

/// Radial bubble profile at radius r >= 0 (center 0, A = I, a = 1).
double bubble_radial(double b, int n, double p, double r);

}  // namespace avlab
