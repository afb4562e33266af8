#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "helstrom/discrimination.hpp"
#include "helstrom/errors.hpp"
#include "support.hpp"

using namespace helstrom;
namespace test = helstrom::test;

namespace {

ConvexStateSpace unit_square() {
    return ConvexStateSpace({{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}});
}

ConvexStateSpace bit_space() { return ConvexStateSpace({{1.0, 0.0}, {0.0, 1.0}}); }

// Measurement tailored to the four corner states of the square.
Observable corner_observable() {
    Observable obs;
    obs.effects = {
        Effect{{-0.25, -0.25}, 0.5},   // (2 - x - y) / 4
        Effect{{-0.25, 0.25}, 0.25},   // (1 - x + y) / 4
        Effect{{0.25, -0.25}, 0.25},   // (1 + x - y) / 4
        Effect{{0.25, 0.25}, 0.0},     // (x + y) / 4
    };
    return obs;
}

}  // namespace

TEST_CASE("effect evaluation") {
    Effect e{{0.5, -1.0}, 0.25};
    CHECK(e({1.0, 0.5}) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(unit_effect(3)({0.1, 0.2, 0.3}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(zero_effect(2)({5.0, 5.0}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("observable validation") {
    auto sq = unit_square();
    CHECK_NOTHROW(validate_observable(sq, corner_observable()));
    Observable two;
    two.effects = {Effect{{1.0, 0.0}, 0.0}, Effect{{-1.0, 0.0}, 1.0}};  // e = x, 1 - x
    CHECK_NOTHROW(validate_observable(sq, two));

    Observable bad_sum;
    bad_sum.effects = {Effect{{1.0, 0.0}, 0.0}, Effect{{-1.0, 0.0}, 0.5}};
    CHECK_THROWS_AS(validate_observable(sq, bad_sum), ValidationError);

    Observable out_of_range;
    out_of_range.effects = {Effect{{2.0, 0.0}, 0.0}, Effect{{-2.0, 0.0}, 1.0}};
    CHECK_THROWS_AS(validate_observable(sq, out_of_range), ValidationError);

    Observable wrong_dim;
    wrong_dim.effects = {Effect{{1.0}, 0.0}};
    CHECK_THROWS_AS(validate_observable(sq, wrong_dim), ValidationError);
}

TEST_CASE("instance validation") {
    auto sq = unit_square();
    CHECK_NOTHROW(DiscriminationInstance(sq, {{0.2, 0.5}, {0.7, 0.5}}, {0.5, 0.5}));
    CHECK_THROWS_AS(DiscriminationInstance(sq, {{0.2, 0.5}}, {1.0}), ValidationError);
    CHECK_THROWS_AS(DiscriminationInstance(sq, {{0.2, 0.5}, {1.7, 0.5}}, {0.5, 0.5}),
                    ValidationError);
    CHECK_THROWS_AS(DiscriminationInstance(sq, {{0.2, 0.5}, {0.7, 0.5}}, {0.8, 0.1}),
                    ValidationError);
    CHECK_THROWS_AS(DiscriminationInstance(sq, {{0.2, 0.5}, {0.7, 0.5}}, {1.2, -0.2}),
                    ValidationError);
    CHECK_THROWS_AS(DiscriminationInstance(sq, {{0.2, 0.5}, {0.2, 0.5}}, {0.5, 0.5}),
                    ValidationError);
}

TEST_CASE("success probability of the corner measurement") {
    auto sq = unit_square();
    DiscriminationInstance inst(sq, {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}},
                                {0.25, 0.25, 0.25, 0.25});
    CHECK(success_probability(inst, corner_observable()) == doctest::Approx(0.5).epsilon(1e-12));
    Observable wrong_count;
    wrong_count.effects = {unit_effect(2)};
    CHECK_THROWS_AS(success_probability(inst, wrong_count), ValidationError);
}

TEST_CASE("bound on a classical bit") {
    DiscriminationInstance inst(bit_space(), {{0.7, 0.3}, {0.2, 0.8}}, {0.4, 0.6});
    auto r = helstrom_bound_lp(inst);
    CHECK(r.value == doctest::Approx(0.76).epsilon(1e-9));
    CHECK(binary_bound_form(inst) == doctest::Approx(0.76).epsilon(1e-9));
    CHECK(success_probability(inst, r.observable) == doctest::Approx(0.76).epsilon(1e-9));
}

TEST_CASE("bound on square pairs") {
    auto sq = unit_square();
    DiscriminationInstance a(sq, {{0.2, 0.5}, {0.7, 0.5}}, {0.5, 0.5});
    CHECK(helstrom_bound_lp(a).value == doctest::Approx(0.75).epsilon(1e-9));
    DiscriminationInstance b(sq, {{0.5, 0.1}, {0.5, 0.9}}, {0.5, 0.5});
    CHECK(helstrom_bound_lp(b).value == doctest::Approx(0.9).epsilon(1e-9));
}

TEST_CASE("four square corners are discriminated at one half") {
    auto sq = unit_square();
    DiscriminationInstance inst(sq, {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}},
                                {0.25, 0.25, 0.25, 0.25});
    auto r = helstrom_bound_lp(inst);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("perfectly distinguishable pairs reach one") {
    auto sq = unit_square();
    DiscriminationInstance inst(sq, {{0.0, 0.3}, {1.0, 0.7}}, {0.5, 0.5});
    CHECK(helstrom_bound_lp(inst).value == doctest::Approx(1.0).epsilon(1e-9));
    DiscriminationInstance corners(sq, {{0.0, 0.0}, {1.0, 1.0}}, {0.5, 0.5});
    CHECK(helstrom_bound_lp(corners).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("distinguishability certificates") {
    auto sq = unit_square();
    auto e = distinguishable(sq, {0.0, 0.5}, {1.0, 0.5});
    REQUIRE(e.has_value());
    CHECK((*e)({0.0, 0.5}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((*e)({1.0, 0.5}) == doctest::Approx(0.0).epsilon(1e-9));
    // Swapping the roles flips the certificate but keeps existence.
    CHECK(distinguishable(sq, {1.0, 0.5}, {0.0, 0.5}).has_value());
    // An interior point can never be flagged with certainty.
    CHECK_FALSE(distinguishable(sq, {0.5, 0.5}, {0.9, 0.9}).has_value());
    CHECK_FALSE(distinguishable(sq, {0.0, 0.5}, {0.5, 0.5}).has_value());
    CHECK_THROWS_AS(distinguishable(sq, {2.0, 0.5}, {0.5, 0.5}), ValidationError);
}

TEST_CASE("relabeling invariance") {
    auto rng = test::make_rng(314);
    auto sq = unit_square();
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
        std::vector<Point> states;
        while (states.size() < n) {
            Point s = {u(rng), u(rng)};
            bool ok = true;
            for (const auto& t : states)
                if (dist2(s, t) < 1e-3) ok = false;
            if (ok) states.push_back(s);
        }
        Vec priors = test::random_convex_weights(rng, n);
        DiscriminationInstance inst(sq, states, priors);
        const double base = helstrom_bound_lp(inst).value;

        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Point> ps(n);
        Vec pp(n);
        for (std::size_t i = 0; i < n; ++i) {
            ps[i] = states[perm[i]];
            pp[i] = priors[perm[i]];
        }
        DiscriminationInstance relabeled(sq, ps, pp);
        CHECK(std::abs(helstrom_bound_lp(relabeled).value - base) < 1e-9);
        // Sanity limits: at least blind guessing, at most certainty.
        const double guess = *std::max_element(priors.begin(), priors.end());
        CHECK(base >= guess - 1e-9);
        CHECK(base <= 1.0 + 1e-9);
    }
}

TEST_CASE("binary form agrees with the general program") {
    auto rng = test::make_rng(271828);
    auto sq = unit_square();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Point s1 = {u(rng), u(rng)};
        Point s2 = {u(rng), u(rng)};
        if (dist2(s1, s2) < 1e-3) continue;
        double p1 = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
        DiscriminationInstance inst(sq, {s1, s2}, {p1, 1.0 - p1});
        const double a = helstrom_bound_lp(inst).value;
        const double b = binary_bound_form(inst);
        CHECK(std::abs(a - b) < 1e-9);
    }
    DiscriminationInstance three(sq, {{0.1, 0.1}, {0.9, 0.1}, {0.5, 0.9}},
                                 {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK_THROWS_AS(binary_bound_form(three), ValidationError);
}
