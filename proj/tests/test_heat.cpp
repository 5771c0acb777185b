#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "bklab/heat_model.hpp"
#include "bklab/numerics.hpp"
#include "doctest.h"

using namespace bklab;

namespace {

SyntheticSpectrum random_spectrum(Rng& rng) {
    std::vector<SyntheticSpectrum::Mode> modes;
    const long zeros = rng.below(3);
    for (long i = 0; i < zeros; ++i) modes.push_back({0.0, rng.uniform(0.0, 3.0)});
    const double k = rng.uniform(2.0, 40.0);
    double lambda = 0.0;
    const long pos = 1 + rng.below(10);
    for (long i = 0; i < pos; ++i) {
        lambda += rng.uniform(0.1, 3.0) * k;
        modes.push_back({lambda, rng.uniform(0.0, 3.0)});
    }
    return SyntheticSpectrum(modes, k);
}

}  // namespace

TEST_CASE("model density basics") {
    SUBCASE("heat-trace normalization as t -> 0") {
        const SpectrumModel m({1.0});
        const double t = 1e-4;
        CHECK(std::abs(4.0 * kPi * t * bouche_density(m, t).value - 1.0) < 1e-8);
    }
    SUBCASE("closed value at alpha = 1, t = 1") {
        // 1/(4 pi sinh 1), evaluated independently at high precision
        const double expected = 0.067713913137895659;
        CHECK(bouche_density(SpectrumModel({1.0}), 1.0).value ==
              doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("product structure over factors") {
        const double one = bouche_density(SpectrumModel({1.0}), 1.0).value;
        const double two = bouche_density(SpectrumModel({1.0, 1.0}), 1.0).value;
        CHECK(two == doctest::Approx(one * one).epsilon(1e-14));
    }
    SUBCASE("overflow guard flags an exact zero") {
        const auto r = bouche_density(SpectrumModel({2.0}), 400.0);
        CHECK(r.value == 0.0);
        CHECK(r.underflow);
    }
    SUBCASE("strictly decreasing in t and in alpha") {
        double prev = std::numeric_limits<double>::infinity();
        for (double t = 0.25; t <= 4.0; t += 0.25) {
            const double v = bouche_density(SpectrumModel({0.7, 1.9}), t).value;
            CHECK(v < prev);
            prev = v;
        }
        prev = std::numeric_limits<double>::infinity();
        for (double a = 0.5; a <= 6.0; a += 0.5) {
            const double v = bouche_density(SpectrumModel({a}), 2.0).value;
            CHECK(v < prev);  // alpha/sinh(alpha t) decreases once t alpha > 1-ish
            prev = v;
        }
    }
    SUBCASE("small-t law on a grid of spectra") {
        Rng rng(3);
        for (int n = 1; n <= 3; ++n) {
            for (int rep = 0; rep < 10; ++rep) {
                std::vector<double> alphas;
                for (int j = 0; j < n; ++j) alphas.push_back(rng.uniform(0.2, 2.5));
                const double t = 1e-3;
                const double v =
                    std::pow(4.0 * kPi * t, n) * bouche_density(SpectrumModel(alphas), t).value;
                CHECK(std::abs(v - 1.0) < 1e-4);
            }
        }
    }
}

TEST_CASE("synthetic spectra") {
    SUBCASE("zero mode only") {
        const SyntheticSpectrum s({{0.0, 3.0}}, 2.0);
        CHECK(synthetic_heat(s, 0.5) == doctest::Approx(3.0));
        CHECK(synthetic_heat(s, 50.0) == doctest::Approx(3.0));
        CHECK(bergman_from_spectrum(s) == doctest::Approx(3.0));
    }
    SUBCASE("two modes give 1 + e^{-t}") {
        const double k = 8.0;
        const SyntheticSpectrum s({{0.0, 1.0}, {k / 2.0, 1.0}}, k);
        for (double t : {0.3, 1.0, 2.5})
            CHECK(synthetic_heat(s, t) == doctest::Approx(1.0 + std::exp(-t)).epsilon(1e-14));
    }
    SUBCASE("no zero modes means zero holomorphic mass") {
        const SyntheticSpectrum s({{0.5, 1.0}, {5.0, 7.0}}, 3.0);
        CHECK(bergman_from_spectrum(s) == 0.0);
    }
    SUBCASE("invalid inputs") {
        CHECK_THROWS_AS(SyntheticSpectrum({{1.0, 1.0}, {0.5, 1.0}}, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(SyntheticSpectrum({{0.0, -1.0}}, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(SyntheticSpectrum({{0.0, 1.0}}, 0.0), std::invalid_argument);
    }
}

TEST_CASE("inequality structure over random spectra") {
    Rng rng(20260810);
    for (int rep = 0; rep < 100; ++rep) {
        const SyntheticSpectrum s = random_spectrum(rng);
        const double berg = bergman_from_spectrum(s);
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 20; ++i) {
            const double t = 0.01 * std::pow(100.0 / 0.01, i / 19.0);
            const double h = synthetic_heat(s, t);
            CHECK(berg <= h * (1.0 + 1e-13) + 1e-300);
            CHECK(h <= prev * (1.0 + 1e-13));
            prev = h;
        }
        // analytic tail bound at large t, plus a roundoff allowance on the
        // floating-point gap itself
        double mass = 0.0;
        for (const auto& m : s.modes) mass += m.mass;
        const double gap = synthetic_heat(s, 50.0) - berg;
        CHECK(gap <= heat_tail_bound(s, 50.0) * (1.0 + 1e-12) + 1e-13 * mass);
        CHECK(gap >= -1e-13 * mass);
    }
}
