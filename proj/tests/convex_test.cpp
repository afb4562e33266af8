#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helstrom/convex.hpp"
#include "helstrom/errors.hpp"
#include "support.hpp"

using helstrom::ConvexStateSpace;
using helstrom::Point;
using helstrom::ValidationError;
using helstrom::Vec;
namespace test = helstrom::test;

namespace {

ConvexStateSpace unit_square() {
    return ConvexStateSpace({{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}});
}

ConvexStateSpace triangle() {
    return ConvexStateSpace({{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}});
}

}  // namespace

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(ConvexStateSpace({}), ValidationError);
    CHECK_THROWS_AS(ConvexStateSpace({{1.0}, {1.0, 2.0}}), ValidationError);
    CHECK_THROWS_AS(ConvexStateSpace({{0.0, 0.0}, {0.0, 0.0}}), ValidationError);
    CHECK_THROWS_AS(ConvexStateSpace({{std::nan(""), 0.0}}), ValidationError);
    // A point inside the hull of the others is rejected.
    CHECK_THROWS_AS(
        ConvexStateSpace({{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}, {0.5, 0.5}}),
        ValidationError);
    // A point on an edge of the hull is rejected too.
    CHECK_THROWS_AS(ConvexStateSpace({{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.0}}), ValidationError);
    CHECK_NOTHROW(unit_square());
    CHECK_NOTHROW(ConvexStateSpace({{2.0, 3.0}}));
}

TEST_CASE("membership with certificate") {
    auto tri = triangle();
    auto got = contains(tri, {0.25, 0.25});
    REQUIRE(got.has_value());
    // The certificate must reproduce the point; for this triangle it is unique.
    const Vec& w = got->weights;
    REQUIRE(w.size() == 3);
    CHECK(w[0] == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(w[1] == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(w[2] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_FALSE(contains(tri, {0.6, 0.6}).has_value());
    CHECK(contains(tri, {0.0, 0.0}).has_value());
    CHECK(contains(tri, {0.5, 0.5}).has_value());
    CHECK_FALSE(contains(tri, {-1e-3, 0.5}).has_value());
    CHECK_THROWS_AS(contains(tri, {0.1, 0.1, 0.1}), ValidationError);
}

TEST_CASE("ray to boundary in the square") {
    auto sq = unit_square();
    auto hit = ray_to_boundary(sq, {0.2, 0.5}, {0.5, 0.5});
    CHECK(hit.mu == doctest::Approx(8.0 / 3.0).epsilon(1e-9));
    CHECK(hit.boundary_point[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(hit.boundary_point[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("ray to boundary in the triangle") {
    auto tri = triangle();
    auto hit = ray_to_boundary(tri, {1.0, 0.0}, {1.0 / 3.0, 1.0 / 3.0});
    CHECK(hit.mu == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(hit.boundary_point[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(hit.boundary_point[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("ray input validation") {
    auto sq = unit_square();
    CHECK_THROWS_AS(ray_to_boundary(sq, {0.5, 0.5}, {0.5, 0.5}), ValidationError);
    CHECK_THROWS_AS(ray_to_boundary(sq, {2.0, 0.5}, {0.5, 0.5}), ValidationError);
    CHECK_THROWS_AS(ray_to_boundary(sq, {0.5, 0.5}, {2.0, 0.5}), ValidationError);
}

TEST_CASE("interpolation ratio") {
    CHECK(helstrom::interpolation_ratio({0.2, 0.5}, {0.45, 0.5}, {1.0, 0.5}) ==
          doctest::Approx(0.6875).epsilon(1e-12));
    CHECK(helstrom::interpolation_ratio({0.0, 0.0}, {0.0, 0.0}, {1.0, 1.0}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(helstrom::interpolation_ratio({0.0, 0.0}, {1.0, 1.0}, {1.0, 1.0}) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(helstrom::interpolation_ratio({0.0, 0.0}, {0.5, 0.6}, {1.0, 1.0}),
                    ValidationError);
    CHECK_THROWS_AS(helstrom::interpolation_ratio({0.0, 0.0}, {2.0, 2.0}, {1.0, 1.0}),
                    ValidationError);
    CHECK_THROWS_AS(helstrom::interpolation_ratio({1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}),
                    ValidationError);
}

TEST_CASE("random polytopes: membership") {
    auto rng = test::make_rng(91);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
        const std::size_t m = std::uniform_int_distribution<std::size_t>(d + 1, 8)(rng);
        auto verts = test::random_sphere_points(rng, d, m);
        ConvexStateSpace space(verts);
        // Interior mixtures are members and the certificate reconstructs them.
        const Vec w = test::random_convex_weights(rng, m);
        const Point x = test::mix(verts, w);
        auto got = contains(space, x);
        REQUIRE(got.has_value());
        const Point back = test::mix(verts, got->weights);
        CHECK(helstrom::dist2(back, x) < 1e-8);
        double wsum = 0.0;
        for (double v : got->weights) {
            CHECK(v >= 0.0);
            wsum += v;
        }
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
        // Pushing past an extreme point leaves the space.
        const Point c = space.centroid();
        const Point out = helstrom::lincomb(1.5, verts[0], -0.5, c);
        CHECK_FALSE(contains(space, out).has_value());
    }
}

TEST_CASE("random polytopes: rays") {
    auto rng = test::make_rng(92);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t d = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
        const std::size_t m = std::uniform_int_distribution<std::size_t>(d + 1, 7)(rng);
        auto verts = test::random_sphere_points(rng, d, m);
        ConvexStateSpace space(verts);
        const Point a = test::mix(verts, test::random_convex_weights(rng, m));
        const Point b = test::mix(verts, test::random_convex_weights(rng, m));
        if (helstrom::dist2(a, b) < 1e-4) continue;
        auto hit = ray_to_boundary(space, a, b);
        CHECK(hit.mu >= 1.0 - 1e-9);
        CHECK(contains(space, hit.boundary_point).has_value());
        // Any further along the ray is outside.
        const Vec dir = helstrom::sub(b, a);
        const Point past = helstrom::lincomb(1.0, hit.boundary_point,
                                             1e-2 / helstrom::norm2(dir), dir);
        CHECK_FALSE(contains(space, past).has_value());
        // The recovered ratio places the origin between through-point extremes.
        const double q = helstrom::interpolation_ratio(a, a, hit.boundary_point);
        CHECK(q == doctest::Approx(1.0).epsilon(1e-9));
    }
}
