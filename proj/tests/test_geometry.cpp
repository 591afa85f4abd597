#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "avlab/geometry.hpp"

#include <cmath>

using namespace avlab;

namespace {

DomainSpec unit_square() {
    return DomainSpec::rectangle(Vec::Constant(2, 0.5), Vec::Constant(2, 0.5));
}

}  // namespace

TEST_CASE("unit square at h = 0.5 has exactly one interior node") {
    auto g = build_grid(unit_square(), 0.5);
    Index interior = 0;
    Index the_node = -1;
    for (Index i = 0; i < g->node_count(); ++i)
        if (g->inside_mask[static_cast<std::size_t>(i)]) {
            ++interior;
            the_node = i;
        }
    REQUIRE(interior == 1);
    const Vec x = g->node_position(the_node);
    CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("disk cell volumes approximate the area") {
    auto g = build_grid(DomainSpec::ball(Vec::Zero(2), 1.0), 0.01);
    CHECK(std::abs(g->volume() - M_PI) / M_PI < 0.02);
    // tighter at this spacing with centroid cells (measured ~4e-4)
    CHECK(std::abs(g->volume() - M_PI) / M_PI < 0.005);
}

TEST_CASE("degenerate domains") {
    Vec ax(2);
    ax << 1.0, 0.0;  // zero side
    CHECK_THROWS_AS(build_grid(DomainSpec::rectangle(Vec::Zero(2), ax), 0.1), EmptyDomain);
    ax << 1.0, -1.0;
    CHECK_THROWS_AS(build_grid(DomainSpec::rectangle(Vec::Zero(2), ax), 0.1), ValidationError);
    CHECK_THROWS_AS(build_grid(unit_square(), 0.0), ValidationError);
}

TEST_CASE("grids are deterministic") {
    auto a = build_grid(DomainSpec::ball(Vec::Zero(2), 1.0), 0.05);
    auto b = build_grid(DomainSpec::ball(Vec::Zero(2), 1.0), 0.05);
    REQUIRE(a->node_count() == b->node_count());
    CHECK(a->inside_mask == b->inside_mask);
    CHECK(a->cell_inside == b->cell_inside);
}

TEST_CASE("transform_domain") {
    auto sq = build_grid(unit_square(), 1.0 / 48);

    SUBCASE("identity keeps the volume") {
        auto t = transform_domain(*sq, Mat::Identity(2, 2));
        CHECK(std::abs(t->volume() - sq->volume()) / sq->volume() < 0.02);
    }
    SUBCASE("shear preserves volume") {
        Mat T(2, 2);
        T << 1.0, 1.0, 0.0, 1.0;
        auto t = transform_domain(*sq, T);
        CHECK(std::abs(t->volume() - 1.0) < 0.02);
    }
    SUBCASE("SL(2) stretch preserves volume") {
        Mat T(2, 2);
        T << 2.0, 0.0, 0.0, 0.5;
        auto t = transform_domain(*sq, T);
        CHECK(std::abs(t->volume() - 1.0) < 0.02);
        // image is the box (0, 1/2) x (0, 2)
        bool hit = false;
        for (Index i = 0; i < t->node_count(); ++i)
            if (t->inside_mask[static_cast<std::size_t>(i)]) {
                const Vec x = t->node_position(i);
                CHECK(x[0] > 0.0);
                CHECK(x[0] < 0.5);
                CHECK(x[1] > 0.0);
                CHECK(x[1] < 2.0);
                hit = true;
            }
        CHECK(hit);
    }
    SUBCASE("singular matrix rejected") {
        Mat T = Mat::Zero(2, 2);
        T(0, 0) = 1.0;
        CHECK_THROWS_AS(transform_domain(*sq, T), SingularMatrix);
    }
}

TEST_CASE("3D ball grid") {
    auto g = build_grid(DomainSpec::ball(Vec::Zero(3), 1.0), 0.08);
    const double vol = 4.0 * M_PI / 3.0;
    CHECK(std::abs(g->volume() - vol) / vol < 0.02);
}

TEST_CASE("star-shapedness") {
    SUBCASE("disk about its center") {
        CHECK(is_star_shaped(DomainSpec::ball(Vec::Zero(2), 1.0), Vec::Zero(2)));
    }
    SUBCASE("square about its centroid") {
        CHECK(is_star_shaped(unit_square(), Vec::Constant(2, 0.5)));
    }
    SUBCASE("square about an outside point") {
        CHECK_FALSE(is_star_shaped(unit_square(), Vec::Constant(2, 3.0)));
    }
    SUBCASE("ellipse and ellipsoid") {
        Vec ax(2);
        ax << 2.0, 0.5;
        CHECK(is_star_shaped(DomainSpec::ellipse(Vec::Zero(2), ax), Vec::Zero(2)));
        CHECK(is_star_shaped(DomainSpec::ball(Vec::Zero(3), 1.0), Vec::Zero(3)));
    }
    SUBCASE("annulus-like polygon fails the inner-boundary test") {
        // outer square with a deep notch reaching around an inner hole
        std::vector<Eigen::Vector2d> v = {
            {-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {0.05, 1.0},  {0.05, -0.5},
            {-0.5, -0.5}, {-0.5, 0.5}, {0.0, 0.5}, {0.0, 1.0},   {-1.0, 1.0}};
        CHECK_FALSE(is_star_shaped(DomainSpec::polygon(v), Vec::Zero(2)));
    }
    SUBCASE("convex polygon about its centroid") {
        std::vector<Eigen::Vector2d> tri = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
        Vec c(2);
        c << 0.3, 0.3;
        CHECK(is_star_shaped(DomainSpec::polygon(tri), c));
    }
    SUBCASE("degenerate slit polygon cannot be oriented") {
        std::vector<Eigen::Vector2d> v = {
            {0.0, 0.0}, {1.0, 0.0}, {0.5, 0.5}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
        CHECK_THROWS_AS(is_star_shaped(DomainSpec::polygon(v), Vec::Zero(2)), UnsupportedShape);
    }
}
