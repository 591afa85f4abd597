#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace avlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Error hierarchy. Every failure mode carries a distinct type so that the CLI
// can map it to a stable exit code.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyDomain : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct UnsupportedShape : Error { using Error::Error; };
struct BadCount : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };
struct DegenerateDirection : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NotRadial : Error { using Error::Error; };
struct NonPositiveLevel : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

struct ParseError : Error {
    int line = 0;
    ParseError(const std::string& msg, int line_number)
        : Error(msg + " (line " + std::to_string(line_number) + ")"), line(line_number) {}
};

// ---------------------------------------------------------------------------
// Deterministic reductions. Cell and direction sums are accumulated pairwise
// in a fixed order so results do not depend on the worker count.
// ---------------------------------------------------------------------------

inline double pairwise_sum(const double* x, Index n) {
    if (n <= 16) {
        double s = 0.0;
        for (Index i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const Index half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

inline double pairwise_sum(const Eigen::ArrayXd& a) { return pairwise_sum(a.data(), a.size()); }
inline double pairwise_sum(const Vec& a) { return pairwise_sum(a.data(), a.size()); }

// |t|^p for t an array expression; hot path, so the common exponents avoid pow.
inline void pow_abs_inplace(Eigen::ArrayXd& t, double p) {
    if (p == 2.0) {
        t = t.square();
    } else if (p == 1.0) {
        t = t.abs();
    } else if (p == 1.5) {
        t = t.abs();
        t *= t.sqrt();
    } else if (p == 3.0) {
        t = t.abs() * t.square();
    } else {
        t = t.abs().pow(p);
    }
}

}  // namespace avlab
