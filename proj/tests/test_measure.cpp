#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bislat/measure.hpp"
#include "bislat/rng.hpp"

using namespace bislat;

TEST_CASE("make_space validates masses and kinds") {
    CHECK_NOTHROW(make_space({0.5, 0.5}, MeasureKind::probability));
    CHECK_NOTHROW(make_space({1, 1, 1}, MeasureKind::counting));
    CHECK_NOTHROW(make_space({0.2, 3.0}, MeasureKind::finite));

    CHECK_THROWS_AS(make_space({}, MeasureKind::finite), std::invalid_argument);
    CHECK_THROWS_AS(make_space({0.5, -0.1}, MeasureKind::probability), std::invalid_argument);
    CHECK_THROWS_AS(make_space({0.5, 0.0}, MeasureKind::finite), std::invalid_argument);
    CHECK_THROWS_AS(make_space({0.5, 0.6}, MeasureKind::probability), std::invalid_argument);
    CHECK_THROWS_AS(make_space({1.0, 2.0}, MeasureKind::counting), std::invalid_argument);
}

TEST_CASE("indicator") {
    SpacePtr two = make_space({0.5, 0.5}, MeasureKind::probability);
    SpacePtr three = make_space({1, 1, 1}, MeasureKind::counting);

    CHECK(indicator(two, {0, 1}).values == std::vector<double>{1, 1});
    CHECK(indicator(two, {}).values == std::vector<double>{0, 0});
    CHECK(indicator(three, {1}).values == std::vector<double>{0, 1, 0});
    CHECK_THROWS_AS(indicator(two, {2}), std::invalid_argument);
}

TEST_CASE("distribution function") {
    SpacePtr sp = make_space({1, 1, 1}, MeasureKind::counting);
    FunctionVector x = make_vector(sp, {3, 1, 2});
    CHECK(distribution_function(x, 1.5) == doctest::Approx(2.0));
    CHECK(distribution_function(x, 3.0) == 0.0);  // strict inequality

    SpacePtr half = make_space({0.5, 0.5}, MeasureKind::probability);
    FunctionVector y = make_vector(half, {2, 2});
    CHECK(distribution_function(y, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("distribution function is non-increasing in the threshold") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int n = rng.int_range(1, 6);
        std::vector<double> masses(n);
        for (double& m : masses) m = rng.uniform(0.1, 2.0);
        SpacePtr sp = make_space(masses, MeasureKind::finite);
        std::vector<double> vals(n);
        for (double& v : vals) v = rng.normal();
        FunctionVector x = make_vector(sp, vals);
        double prev = distribution_function(x, -10.0);
        for (double s = -10.0; s <= 10.0; s += 0.25) {
            double cur = distribution_function(x, s);
            CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
    }
}

TEST_CASE("rearrangement sorts, merges ties, and conserves mass") {
    SpacePtr sp = make_space({1, 1, 1}, MeasureKind::counting);
    StepFunction s = rearrangement(make_vector(sp, {1, -3, 2}));
    CHECK(s.levels == std::vector<double>{3, 2, 1});
    CHECK(s.widths == std::vector<double>{1, 1, 1});
    CHECK(s.breakpoints() == std::vector<double>{0, 1, 2, 3});

    SpacePtr q = make_space({0.5, 0.25, 0.25}, MeasureKind::probability);
    StepFunction t = rearrangement(make_vector(q, {1, 2, 2}));
    CHECK(t.levels == std::vector<double>{2, 1});
    CHECK(t.widths == std::vector<double>{0.5, 0.5});

    StepFunction full = rearrangement(indicator(q, {0, 1, 2}));
    CHECK(full.levels == std::vector<double>{1});
    CHECK(full.widths == std::vector<double>{1.0});
}

TEST_CASE("rearrangement depends only on |x| and conserves the integral") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        int n = rng.int_range(1, 6);
        SpacePtr sp = make_space(std::vector<double>(n, 1.0), MeasureKind::counting);
        std::vector<double> vals(n);
        for (double& v : vals) v = rng.normal();
        FunctionVector x = make_vector(sp, vals);

        std::vector<double> flipped = vals;
        for (double& v : flipped) v = -v;
        CHECK(rearrangement(x) == rearrangement(make_vector(sp, flipped)));

        // permutation invariance (equal masses)
        std::vector<double> perm = vals;
        for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.index(i + 1)]);
        CHECK(rearrangement(x) == rearrangement(make_vector(sp, perm)));

        StepFunction s = rearrangement(x);
        double integral = 0.0;
        for (std::size_t i = 0; i < s.levels.size(); ++i) integral += s.levels[i] * s.widths[i];
        double mass = 0.0;
        for (double v : vals) mass += std::abs(v);
        CHECK(integral == doctest::Approx(mass).epsilon(1e-12));

        for (std::size_t i = 1; i < s.levels.size(); ++i) CHECK(s.levels[i] < s.levels[i - 1]);
    }
}

TEST_CASE("equimeasurable") {
    SpacePtr sp = make_space({1, 1}, MeasureKind::counting);
    CHECK(equimeasurable(make_vector(sp, {1, 2}), make_vector(sp, {2, 1})));
    CHECK(equimeasurable(make_vector(sp, {1, 2}), make_vector(sp, {-2, 1})));
    CHECK_FALSE(equimeasurable(make_vector(sp, {1, 2}), make_vector(sp, {1, 1})));

    SpacePtr other = make_space({2, 2}, MeasureKind::finite);
    CHECK_THROWS_AS(equimeasurable(make_vector(sp, {1, 2}), make_vector(other, {1, 2})),
                    std::invalid_argument);
}

TEST_CASE("pairing uses the measure weights") {
    SpacePtr sp = make_space({0.5, 0.5}, MeasureKind::probability);
    CHECK(pairing(make_vector(sp, {1, 1}), make_vector(sp, {1, 1})) == doctest::Approx(1.0));
    CHECK(pairing(make_vector(sp, {2, 0}), make_vector(sp, {3, 5})) == doctest::Approx(3.0));
}
