#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "avlab/constants.hpp"
#include "avlab/radial.hpp"

#include <cmath>

using namespace avlab;

namespace {

// Shooting oracle for the Lane-Emden problem on the unit ball (n = 3, p = 2,
// q = 4): integrate w'' + (2/r) w' + w^3 = 0 from w(0) = 1, w'(0) = 0 to its
// first zero r0; the ball solution is v(r) = r0 w(r0 r) and the least energy
// level equals (int_B v^4)^{1/2}.
struct ShootingOracle {
    double r0 = 0.0;
    double level = 0.0;      // c_A
    double boundary_slope = 0.0;  // v'(1)

    ShootingOracle() {
        const int N = 200000;
        const double rmax = 10.0;
        const double dr = rmax / N;
        auto f = [](double r, double w, double z, double& dw, double& dz) {
            dw = z;
            dz = r < 1e-12 ? -w * w * w / 3.0 : -w * w * w - 2.0 * z / r;
        };
        std::vector<double> ws;
        ws.reserve(N);
        double w = 1.0, z = 0.0, r = 0.0;
        while (r < rmax) {
            ws.push_back(w);
            double k1w, k1z, k2w, k2z, k3w, k3z, k4w, k4z;
            f(r, w, z, k1w, k1z);
            f(r + dr / 2, w + dr / 2 * k1w, z + dr / 2 * k1z, k2w, k2z);
            f(r + dr / 2, w + dr / 2 * k2w, z + dr / 2 * k2z, k3w, k3z);
            f(r + dr, w + dr * k3w, z + dr * k3z, k4w, k4z);
            const double wn = w + dr / 6 * (k1w + 2 * k2w + 2 * k3w + k4w);
            const double zn = z + dr / 6 * (k1z + 2 * k2z + 2 * k3z + k4z);
            if (wn <= 0.0) {
                r0 = r + dr * w / (w - wn);
                boundary_slope = r0 * r0 * zn;
                break;
            }
            w = wn;
            z = zn;
            r += dr;
        }
        // int_B v^4 dx = 4 pi r0 int_0^{r0} s^2 w(s)^4 ds
        double I4 = 0.0;
        const std::size_t M = ws.size();
        for (std::size_t i = 0; i + 1 < M; ++i) {
            const double sm = (i + 0.5) * dr;
            const double wm = 0.5 * (ws[i] + ws[i + 1]);
            I4 += sm * sm * wm * wm * wm * wm * dr;
        }
        I4 *= 4.0 * M_PI * r0;
        level = std::sqrt(I4);
    }
};

const ShootingOracle& oracle() {
    static const ShootingOracle o;
    return o;
}

}  // namespace

TEST_CASE("shooting oracle sanity") {
    // the oracle itself satisfies the boundary-flux identity
    const double lhs = 2.0 * M_PI * oracle().boundary_slope * oracle().boundary_slope;
    const double rhs = 0.25 * oracle().level * oracle().level;  // (1/4) int v^4
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-4));
    CHECK(oracle().r0 == doctest::Approx(6.897).epsilon(1e-3));
}

TEST_CASE("subcritical radial level matches the shooting oracle") {
    RadialConfig cfg;
    cfg.n = 3;
    cfg.p = 2.0;
    cfg.q = 4.0;
    cfg.nodes = 2000;
    const RadialResult res = radial_least_energy(cfg);
    CHECK(res.level == doctest::Approx(oracle().level).epsilon(2e-3));

    SUBCASE("descent trace is nonincreasing") {
        for (std::size_t i = 1; i < res.trace.size(); ++i)
            CHECK(res.trace[i] <= res.trace[i - 1] + 1e-12 * std::abs(res.trace[i - 1]));
    }
    SUBCASE("rescaled solution satisfies the boundary-flux identity") {
        Vec v = res.profile * std::pow(res.level, 1.0 / (4.0 - 2.0));
        CHECK(pohozaev_residual(v, 3, 2.0, 4.0, 0.0, 1.0) <= 0.02);
    }
}

TEST_CASE("critical exponent arithmetic is exactly balanced") {
    // (n - p)/p - n/p* must vanish identically at q = p*
    const int n = 3;
    const double p = 2.0;
    const double pstar = n * p / (n - p);
    CHECK((n - p) / p - n / pstar == 0.0);  // bit-exact
}

TEST_CASE("critical radial levels on the unit ball") {
    const double S = std::pow(k_np(3, 2.0), -2.0);
    const double lam1 = M_PI * M_PI;

    SUBCASE("lambda = 0 sits above the Sobolev threshold") {
        const double level = radial_critical_level(3, 2.0, 0.0, 1.0, 2000);
        CHECK(level >= 0.99 * S);
    }
    SUBCASE("lambda = lambda_1 / 2 dips below the threshold") {
        const double level = radial_critical_level(3, 2.0, 0.5 * lam1, 1.0, 2000);
        CHECK(level <= 0.98 * S);
        CHECK(level > 0.0);
    }
    SUBCASE("level vanishes as lambda approaches lambda_1") {
        const double level = radial_critical_level(3, 2.0, 0.98 * lam1, 1.0, 800);
        CHECK(level < 0.1 * S);
        CHECK(level > -1e-8);
    }
}

TEST_CASE("radial eigenvalue of the ball") {
    // p = 2 radial principal eigenvalue of the unit 3-ball is pi^2
    const double lam = radial_principal_eigenvalue(3, 2.0, 1.0, 1500);
    CHECK(lam == doctest::Approx(M_PI * M_PI).epsilon(2e-3));
}

TEST_CASE("lambda scan is monotone and crosses the threshold") {
    const auto rows = scan_lambda(3, 2.0, 1.0, 1000, 0.0, 0.9 * M_PI * M_PI, 10);
    REQUIRE(rows.size() == 10);
    const double S = std::pow(k_np(3, 2.0), -2.0);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].level <= rows[i - 1].level + 1e-8);
    CHECK_FALSE(rows.front().below_threshold);
    CHECK(rows.back().below_threshold);
    CHECK(rows.front().level > S);
    CHECK(rows.back().level < S);
}

TEST_CASE("pohozaev rejects degenerate input") {
    Vec zeros = Vec::Zero(101);
    CHECK_THROWS_AS(pohozaev_residual(zeros, 3, 2.0, 4.0, 0.0, 1.0), NotRadial);
}
