#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numeric>

#include "bklab/modforms.hpp"
#include "bklab/numerics.hpp"
#include "doctest.h"

using namespace bklab;

TEST_CASE("Bernoulli numbers from the binomial recurrence") {
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(6) == Rational(1, 42));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(7) == 0);
}

TEST_CASE("Eisenstein expansions") {
    const QExpansion e4 = eisenstein(4, 12);
    const QExpansion e6 = eisenstein(6, 12);
    CHECK(e4.a(0) == 1);
    CHECK(e6.a(0) == 1);
    CHECK(e4.a(1) == 240);       // -2*4/B_4, B_4 = -1/30
    CHECK(e6.a(1) == -504);      // -2*6/B_6, B_6 = 1/42
    CHECK(e4.a(2) == 240 * 9);   // sigma_3(2) = 9
    CHECK(eisenstein(8, 4).a(0) == 1);
    CHECK(eisenstein(10, 4).a(0) == 1);
    CHECK_THROWS_AS(eisenstein(5, 4), std::invalid_argument);
    CHECK_THROWS_AS(eisenstein(2, 4), std::invalid_argument);
}

TEST_CASE("discriminant form") {
    const QExpansion d = delta(24);
    CHECK(d.a(0) == 0);
    CHECK(d.a(1) == 1);
    CHECK(d.a(2) == -24);
    CHECK(d.a(3) == 252);
    CHECK(d.a(4) == -1472);
    SUBCASE("coefficient multiplicativity on coprime pairs") {
        for (int n = 2; n <= 20; ++n)
            for (int m = 2; m * n <= 24; ++m) {
                if (std::gcd(n, m) != 1) continue;
                CHECK(d.a(n * m) == d.a(n) * d.a(m));
            }
    }
}

TEST_CASE("cusp dimensions against the brute-force rank oracle") {
    // Oracle: echelonize the cusp projections of all monomials E4^a E6^b of
    // weight k and count the rank. Independent of the closed formula.
    auto rank_oracle = [](int k) {
        const int order = k / 6 + 8;
        std::vector<QExpansion> monomials;
        for (int a = 0; 4 * a <= k; ++a) {
            if ((k - 4 * a) % 6 != 0) continue;
            const int b = (k - 4 * a) / 6;
            QExpansion m(0, order);
            m.a(0) = 1;
            if (a > 0) m = mul(m, pow(eisenstein(4, order), a));
            if (b > 0) m = mul(m, pow(eisenstein(6, order), b));
            monomials.push_back(m);
        }
        if (monomials.empty()) return 0;
        // subtract the Eisenstein direction: cusp candidates f - a_0(f) * g
        // against a fixed constant-term-1 reference g
        std::vector<std::vector<Rational>> rows;
        const QExpansion& ref = monomials.front();
        for (const auto& m : monomials) {
            std::vector<Rational> row;
            for (int n = 0; n <= order; ++n) row.push_back(m.a(n) - m.a(0) * ref.a(n));
            rows.push_back(row);
        }
        int rank = 0;
        for (int col = 0; col <= order && rank < static_cast<int>(rows.size()); ++col) {
            int sel = -1;
            for (int r = rank; r < static_cast<int>(rows.size()); ++r)
                if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                    sel = r;
                    break;
                }
            if (sel < 0) continue;
            std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(sel)]);
            const auto& prow = rows[static_cast<std::size_t>(rank)];
            for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
                if (r == rank) continue;
                auto& row = rows[static_cast<std::size_t>(r)];
                if (row[static_cast<std::size_t>(col)] == 0) continue;
                const Rational f = row[static_cast<std::size_t>(col)] / prow[static_cast<std::size_t>(col)];
                for (int c2 = 0; c2 <= order; ++c2)
                    row[static_cast<std::size_t>(c2)] -= f * prow[static_cast<std::size_t>(c2)];
            }
            ++rank;
        }
        return rank;
    };

    for (int k = 0; k <= 60; k += 2) CHECK(dim_cusp(k) == rank_oracle(k));
    CHECK(dim_cusp(12) == 1);
    CHECK(dim_cusp(24) == 2);
    CHECK(dim_cusp(2) == 0);
    CHECK_THROWS_AS(dim_cusp(13), std::invalid_argument);
}

TEST_CASE("echelon basis") {
    SUBCASE("weight 12 is the discriminant form") {
        const CuspBasis b = miller_basis(12, 10);
        REQUIRE(b.dim() == 1);
        const QExpansion d = delta(10);
        for (int n = 0; n <= 10; ++n) CHECK(b.forms[0].a(n) == d.a(n));
    }
    SUBCASE("weight 16 leading coefficients") {
        const CuspBasis b = miller_basis(16, 10);
        REQUIRE(b.dim() == 1);
        CHECK(b.forms[0].a(0) == 0);
        CHECK(b.forms[0].a(1) == 1);
        // Delta * E4: a_2 = -24 + 240
        CHECK(b.forms[0].a(2) == 216);
    }
    SUBCASE("echelon identity up to weight 100") {
        for (int k = 12; k <= 100; k += 2) {
            const int d = dim_cusp(k);
            if (d == 0) continue;
            const CuspBasis b = miller_basis(k, 2 * d + 4);
            REQUIRE(b.dim() == d);
            for (int j = 0; j < d; ++j)
                for (int i = 1; i <= d; ++i)
                    CHECK(b.forms[static_cast<std::size_t>(j)].a(i) == ((i == j + 1) ? 1 : 0));
        }
    }
    SUBCASE("insufficient truncation reports the needed order") {
        try {
            miller_basis(24, 1);
            FAIL("expected a throw");
        } catch (const InsufficientTruncation& e) {
            CHECK(e.required_order == 2);
        }
    }
}

TEST_CASE("pointwise evaluation") {
    const QExpansion d = delta(recommended_truncation(12));
    SUBCASE("value at i is real and positive") {
        const auto v = evaluate(d, HPoint(0.0, 1.0), 1e-12);
        CHECK(std::abs(v.imag()) < 1e-16);
        CHECK(v.real() > 0.0);
        // leading behavior e^{-2 pi}(1 - 24 e^{-2 pi} + ...)
        CHECK(v.real() == doctest::Approx(0.0017853698506421112).epsilon(1e-10));
    }
    SUBCASE("periodicity under z -> z + 1") {
        const auto a = evaluate(d, HPoint(0.3, 1.2), 1e-12);
        const auto b = evaluate(d, HPoint(-0.7, 1.2), 1e-12);
        CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
    }
    SUBCASE("Petersson density is invariant under the inversion") {
        const HPoint z(0.2, 1.3);
        const double n = z.x * z.x + z.y * z.y;
        const HPoint w(-z.x / n, z.y / n);
        const double dz = std::norm(evaluate_scaled(d, z, 1e-12));
        const double dw = std::norm(evaluate_scaled(d, w, 1e-12));
        CHECK(std::abs(dz - dw) / dz < 1e-9);
    }
    SUBCASE("weight-12 modularity for every level-one basis element") {
        for (int k : {12, 16, 18, 20, 22, 24, 26}) {
            const CuspBasis basis = miller_basis(k, recommended_truncation(k));
            for (const auto& f : basis.forms) {
                const HPoint z(0.37, 1.1);
                const double nz = z.x * z.x + z.y * z.y;
                const HPoint w(-z.x / nz, z.y / nz);
                const double a = std::norm(evaluate_scaled(f, z, 1e-10));
                const double b = std::norm(evaluate_scaled(f, w, 1e-10));
                CHECK(std::abs(a - b) <= 1e-9 * std::max(a, 1e-30));
                const double c = std::norm(evaluate_scaled(f, HPoint(z.x - 1.0, z.y), 1e-10));
                CHECK(std::abs(a - c) <= 1e-9 * std::max(a, 1e-30));
            }
        }
    }
    SUBCASE("evaluation floor reports a certified order") {
        const QExpansion short_d = delta(6);
        try {
            evaluate(short_d, HPoint(0.0, 0.05), 1e-10);
            FAIL("expected a throw");
        } catch (const InsufficientTruncation& e) {
            CHECK(e.required_order > 6);
        }
    }
}

TEST_CASE("JSON round trip is exact") {
    const CuspBasis b = miller_basis(24, 30);
    for (const auto& f : b.forms) {
        const QExpansion g = qexpansion_from_json(to_json(f));
        CHECK(g.weight == f.weight);
        CHECK(g.order == f.order);
        for (int n = 0; n <= f.order; ++n) CHECK(g.a(n) == f.a(n));
    }
}
