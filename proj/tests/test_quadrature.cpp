#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "avlab/constants.hpp"
#include "avlab/quadrature.hpp"

#include <cmath>

using namespace avlab;

namespace {

// closed-form moment integral over the sphere (test-side oracle):
//   n = 2: 2 sqrt(pi) Gamma((p+1)/2) / Gamma(p/2 + 1)
//   n = 3: 4 pi / (p + 1)
double moment_exact(int n, double p) {
    if (n == 2) return 2.0 * std::sqrt(M_PI) * std::tgamma((p + 1.0) / 2.0) /
                        std::tgamma(p / 2.0 + 1.0);
    return 4.0 * M_PI / (p + 1.0);
}

}  // namespace

TEST_CASE("circle rule basics") {
    const DirectionSet ds = directions(2, 8);
    REQUIRE(ds.size() == 8);
    for (Index j = 0; j < 8; ++j) {
        CHECK(std::abs(ds.dirs.col(j).norm() - 1.0) < 1e-14);
        CHECK(ds.weights[j] == doctest::Approx(2.0 * M_PI / 8).epsilon(1e-15));
        const double th = 2.0 * M_PI * j / 8;
        CHECK(ds.dirs(0, j) == doctest::Approx(std::cos(th)).epsilon(1e-15));
        CHECK(ds.dirs(1, j) == doctest::Approx(std::sin(th)).epsilon(1e-15));
    }
    CHECK(pairwise_sum(ds.weights) == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
}

TEST_CASE("sphere rule weights") {
    for (int m : {26, 266, 590}) {
        const DirectionSet ds = directions(3, m);
        CHECK((ds.weights.array() > 0.0).all());
        CHECK(std::abs(pairwise_sum(ds.weights) - 4.0 * M_PI) < 1e-12);
        for (Index j = 0; j < ds.size(); ++j)
            CHECK(std::abs(ds.dirs.col(j).norm() - 1.0) < 1e-14);
        // antipodal closure: -xi is a node for every xi
        for (Index j = 0; j < ds.size(); ++j) {
            double best = 2.0;
            for (Index k = 0; k < ds.size(); ++k)
                best = std::min(best, (ds.dirs.col(j) + ds.dirs.col(k)).norm());
            CHECK(best < 1e-12);
        }
    }
}

TEST_CASE("bad counts") {
    CHECK_THROWS_AS(directions(2, 3), BadCount);
    CHECK_THROWS_AS(directions(4, 16), OutOfRange);
}

TEST_CASE("moment integral on the circle") {
    Vec e1(2);
    e1 << 1.0, 0.0;

    SUBCASE("p = 2 is exact: sum cos^2 over 8 nodes is 4") {
        const DirectionSet ds = directions(2, 8);
        CHECK(moment_integral(ds, 2.0, e1) == doctest::Approx(M_PI).epsilon(1e-14));
    }
    SUBCASE("p = 0 gives the total measure") {
        const DirectionSet ds = directions(2, 16);
        CHECK(moment_integral(ds, 0.0, e1) == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    }
    SUBCASE("rotation invariance at p = 2") {
        const DirectionSet ds = directions(2, 64);
        Vec xi(2);
        xi << std::cos(0.37), std::sin(0.37);
        CHECK(std::abs(moment_integral(ds, 2.0, e1) - moment_integral(ds, 2.0, xi)) < 1e-12);
    }
    SUBCASE("converges to the closed form") {
        const DirectionSet ds = directions(2, 512);
        CHECK(moment_integral(ds, 1.5, e1) ==
              doctest::Approx(moment_exact(2, 1.5)).epsilon(1e-6));
    }
    SUBCASE("unit vector required") {
        Vec bad(2);
        bad << 2.0, 0.0;
        const DirectionSet ds = directions(2, 8);
        CHECK_THROWS_AS(moment_integral(ds, 2.0, bad), ValidationError);
    }
}

TEST_CASE("moment integral on the sphere") {
    const DirectionSet ds = directions(3, 266);
    Vec e1 = Vec::Zero(3), mid = Vec::Ones(3) / std::sqrt(3.0);
    e1[0] = 1.0;
    // p = 2 polynomial integrand: exact for the product rule
    CHECK(moment_integral(ds, 2.0, e1) ==
          doctest::Approx(moment_exact(3, 2.0)).epsilon(1e-13));
    CHECK(moment_integral(ds, 2.0, mid) ==
          doctest::Approx(moment_exact(3, 2.0)).epsilon(1e-13));
    // kinked integrand still lands close at this node count
    CHECK(moment_integral(ds, 1.5, e1) ==
          doctest::Approx(moment_exact(3, 1.5)).epsilon(2e-4));
}

TEST_CASE("alpha identity via moments") {
    CHECK(alpha_consistency(2, 2.0, 256) <= 1e-12);
    // kink-limited convergence of the uniform rule (measured bound)
    CHECK(alpha_consistency(2, 1.5, 512) <= 1e-7);
    CHECK(alpha_consistency(3, 2.0, 266) <= 1e-13);
    CHECK(alpha_consistency(3, 2.0, 590) <= 1e-13);

    SUBCASE("doubling the node count does not regress") {
        double prev = std::max(alpha_consistency(2, 1.5, 64), 1e-13);
        for (int m : {128, 256, 512}) {
            const double cur = std::max(alpha_consistency(2, 1.5, m), 1e-13);
            CHECK(cur <= 2.0 * prev);
            prev = cur;
        }
    }
}
