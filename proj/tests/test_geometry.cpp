#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "bklab/geometry.hpp"
#include "bklab/numerics.hpp"
#include "doctest.h"

using namespace bklab;

TEST_CASE("hyperbolic density") {
    CHECK(hyp_density(HPoint(0.0, 1.0)) == doctest::Approx(1.0));
    CHECK(hyp_density(HPoint(0.3, 2.0)) == doctest::Approx(0.25));
    // no x dependence
    CHECK(hyp_density(HPoint(0.0, 1.0)) == hyp_density(HPoint(0.7, 1.0)));
    CHECK_THROWS_AS(HPoint(0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(HPoint(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("volume density on products") {
    CHECK(hypn_volume_density(HnPoint({HPoint(0, 1), HPoint(0, 1)})) == doctest::Approx(1.0));
    CHECK(hypn_volume_density(HnPoint({HPoint(0, 2), HPoint(0, 1)})) == doctest::Approx(0.25));
    // symmetric under permutation of the factors
    const HnPoint a({HPoint(0.1, 0.7), HPoint(-2.0, 3.1), HPoint(0.5, 1.9)});
    const HnPoint b({HPoint(0.5, 1.9), HPoint(0.1, 0.7), HPoint(-2.0, 3.1)});
    CHECK(hypn_volume_density(a) == doctest::Approx(hypn_volume_density(b)));
}

TEST_CASE("density transforms with |dgamma/dz|^2 under the generators") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const double x = rng.uniform(-2.0, 2.0);
        const double y = rng.uniform(0.05, 8.0);
        // T: z -> z + 1, |T'| = 1
        CHECK(hyp_density(HPoint(x + 1.0, y)) ==
              doctest::Approx(hyp_density(HPoint(x, y))).epsilon(1e-12));
        // S: z -> -1/z, |S'(z)| = 1/|z|^2
        const double n = x * x + y * y;
        const double jac = 1.0 / n;
        CHECK(hyp_density(HPoint(-x / n, y / n)) * jac * jac ==
              doctest::Approx(hyp_density(HPoint(x, y))).epsilon(1e-12));
    }
}

TEST_CASE("curvature constants per factor") {
    const HnPoint z({HPoint(0.2, 1.4), HPoint(-1.0, 0.6)});
    SUBCASE("w = 1/2 gives 1/(8 pi)") {
        const auto c = curvature_density(CurvatureSpec(Rational(1, 2), 2), z);
        for (double v : c) CHECK(v == doctest::Approx(1.0 / (8.0 * kPi)).epsilon(1e-15));
    }
    SUBCASE("w = 2 gives 1/(2 pi)") {
        const auto c = curvature_density(CurvatureSpec(Rational(2), 2), z);
        for (double v : c) CHECK(v == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-15));
    }
    SUBCASE("w = 0 is flat") {
        const auto c = curvature_density(CurvatureSpec(Rational(0), 2), z);
        for (double v : c) CHECK(v == 0.0);
    }
    SUBCASE("independent of the evaluation point") {
        Rng rng(11);
        const CurvatureSpec spec(Rational(1, 2), 3);
        double first = -1.0;
        for (int i = 0; i < 20; ++i) {
            std::vector<HPoint> coords;
            for (int j = 0; j < 3; ++j)
                coords.emplace_back(rng.uniform(-3.0, 3.0), rng.uniform(0.1, 9.0));
            const auto c = curvature_density(spec, HnPoint(coords));
            if (first < 0) first = c[0];
            for (double v : c) CHECK(v == first);
        }
    }
}

TEST_CASE("determinant is the n-th power of the factor coefficient") {
    CHECK(det_curvature(CurvatureSpec(Rational(1, 2), 1)) ==
          doctest::Approx(1.0 / (8.0 * kPi)).epsilon(1e-15));
    CHECK(det_curvature(CurvatureSpec(Rational(2), 2)) ==
          doctest::Approx(1.0 / (2.0 * kPi) / (2.0 * kPi)).epsilon(1e-15));
    CHECK(det_curvature(CurvatureSpec(Rational(1, 2), 3)) ==
          doctest::Approx(std::pow(1.0 / (8.0 * kPi), 3)).epsilon(1e-15));
    for (int n = 1; n <= 4; ++n) {
        const CurvatureSpec spec(Rational(3, 7), n);
        const auto c = curvature_density(spec, HnPoint(std::vector<HPoint>(n, HPoint(0, 1))));
        CHECK(det_curvature(spec) == doctest::Approx(std::pow(c[0], n)).epsilon(1e-15));
    }
}

TEST_CASE("finite differences recover the curvature coefficient") {
    SUBCASE("w = 1/2 at unit height") {
        const auto v = fd_curvature_check(CurvatureSpec(Rational(1, 2), 1),
                                          HnPoint({HPoint(0, 1)}), 1e-3);
        CHECK(std::abs(v[0] - 1.0 / (8.0 * kPi)) / (1.0 / (8.0 * kPi)) < 1e-6);
    }
    SUBCASE("w = 2 on two factors") {
        const auto v = fd_curvature_check(CurvatureSpec(Rational(2), 2),
                                          HnPoint({HPoint(0, 3), HPoint(0, 0.5)}), 1e-3);
        for (double c : v) CHECK(std::abs(c - 1.0 / (2.0 * kPi)) / (1.0 / (2.0 * kPi)) < 1e-6);
    }
    SUBCASE("w = 0 is exactly flat up to roundoff") {
        const auto v = fd_curvature_check(CurvatureSpec(Rational(0), 1),
                                          HnPoint({HPoint(0.3, 2.0)}), 1e-3);
        CHECK(std::abs(v[0]) < 1e-12);
    }
    SUBCASE("empirical order of the pre-extrapolation stencil is 2") {
        // Raw central differences at h and h/2 against the closed value.
        const double target = 2.0 / (4.0 * kPi);
        auto raw = [&](double h) {
            const double w = 2.0, y = 1.3;
            const double lap = -w * (std::log(y + h) - 2.0 * std::log(y) + std::log(y - h)) / (h * h);
            return y * y * lap / (4.0 * kPi);
        };
        const double e1 = std::abs(raw(0.02) - target);
        const double e2 = std::abs(raw(0.01) - target);
        const double order = std::log2(e1 / e2);
        CHECK(order > 1.8);
        CHECK(order < 2.2);
    }
    SUBCASE("step errors") {
        CHECK_THROWS_AS(fd_curvature_check(CurvatureSpec(Rational(1, 2), 1),
                                           HnPoint({HPoint(0, 1)}), 0.2),
                        std::invalid_argument);  // violates h < y/10
        CHECK_THROWS_AS(fd_curvature_check(CurvatureSpec(Rational(1, 2), 1),
                                           HnPoint({HPoint(0, 1)}), 1e-9),
                        StepTooSmall);
        CHECK_THROWS_AS(fd_curvature_check(CurvatureSpec(Rational(1, 2), 1),
                                           HnPoint({HPoint(0, 2)}), 0.19, 1e-12),
                        StepTooLarge);
    }
}
