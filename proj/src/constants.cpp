#include "avlab/constants.hpp"

#include <cmath>

namespace avlab {

double omega(double k) {
    if (k < 0.0) throw OutOfRange("omega: negative dimension");
    return std::pow(M_PI, k / 2.0) / std::tgamma(k / 2.0 + 1.0);
}

double alpha_np(int n, double p) {
    if (n < 2) throw OutOfRange("alpha_np: n must be >= 2");
    if (p < 1.0) throw OutOfRange("alpha_np: p must be >= 1");
    const double nwn = n * omega(n);
    return std::pow(2.0 * omega(n + p - 2.0), -1.0 / p) * std::pow(nwn * omega(p - 1.0), 1.0 / p) *
           std::pow(nwn, 1.0 / n);
}

double k_np(int n, double p) {
    if (p < 1.0 || p >= static_cast<double>(n))
        throw OutOfRange("k_np: requires 1 <= p < n");
    if (p == 1.0)
        return std::pow(M_PI, -0.5) / n * std::pow(std::tgamma(n / 2.0 + 1.0), 1.0 / n);
    const double nn = n;
    const double g = std::tgamma(nn / 2.0 + 1.0) * std::tgamma(nn) /
                     (std::tgamma(nn - nn / p + 1.0) * std::tgamma(nn / p));
    return std::pow(M_PI, -0.5) * std::pow(nn, -1.0 / p) *
           std::pow((p - 1.0) / (nn - p), 1.0 - 1.0 / p) * std::pow(g, 1.0 / nn);
}

double mu_critical(int n, double p) { return 1.0 / k_np(n, p); }

ExtremalBubble ExtremalBubble::standard(int n) {
    ExtremalBubble e;
    e.center = Vec::Zero(n);
    e.shape_matrix = Mat::Identity(n, n);
    return e;
}

double bubble_value(const ExtremalBubble& e, int n, double p, const Vec& x) {
    if (!(p > 1.0 && p < static_cast<double>(n)))
        throw OutOfRange("bubble_value: requires 1 < p < n");
    if (e.scale <= 0.0) throw OutOfRange("bubble_value: scale b must be positive");
    if (std::abs(std::abs(e.shape_matrix.determinant()) - 1.0) > 1e-12)
        throw ValidationError("bubble_value: shape matrix must have |det| = 1");
    const double r = (e.shape_matrix * (x - e.center)).norm();
    return e.amplitude * std::pow(1.0 + e.scale * std::pow(r, p / (p - 1.0)), 1.0 - n / p);
}

double bubble_radial(double b, int n, double p, double r) {
    return std::pow(1.0 + b * std::pow(r, p / (p - 1.0)), 1.0 - n / p);
}

}  // namespace avlab
