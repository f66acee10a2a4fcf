#include <gtest/gtest.h>

#include <qdiff/ring.hpp>

#include "test_support.hpp"

#include <algorithm>
#include <random>

using namespace qdiff;
using fixtures::kC2T1;
using fixtures::kC2T2;

namespace {

LaurentPoly Y(int a, int h, int e = 1) { return LaurentPoly::var(Yv(a, h), e); }

} // namespace

TEST(Ring, AdditiveInverseIsZero) {
    auto p = Y(1, 0);
    EXPECT_TRUE((p + (-p)).is_zero());
    EXPECT_EQ((p - p).to_text(), "0");
}

TEST(Ring, DifferenceOfSquares) {
    auto y = Y(1, 0);
    auto prod = (y + 1) * (y - 1);
    EXPECT_EQ(prod, y * y - 1);
    EXPECT_EQ(prod.to_text(), "-1 + 1 * Y[1](u)^2");
}

TEST(Ring, ProductOfC2FundamentalsMatchesDistributiveExpansion) {
    auto t1 = parse_poly(kC2T1);
    auto t2 = parse_poly(kC2T2);
    ASSERT_EQ(t1.size(), 4u);
    ASSERT_EQ(t2.size(), 5u);
    auto prod = t1 * t2;
    EXPECT_EQ(prod, fixtures::naive_product(t1, t2));
    // All twenty products of term pairs have distinct exponents here.
    EXPECT_EQ(prod.size(), 20u);
}

TEST(Ring, ShiftBasics) {
    EXPECT_EQ(Y(1, 0).shifted(2), Y(1, 2));
    EXPECT_TRUE(LaurentPoly().shifted(5).is_zero());
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto p = fixtures::random_y_poly(rng, 3);
        EXPECT_EQ(p.shifted(3).shifted(-3), p);
        EXPECT_EQ((p * p).shifted(1), p.shifted(1) * p.shifted(1));
    }
}

TEST(Ring, ShiftOfMiddleXTemplate) {
    for (int n = 2; n <= 4; ++n) {
        VariableTable vt(AlgebraSpec(Series::C, n));
        auto shifted = vt.x(n + 1).shifted(1);
        auto expected =
            LaurentPoly::monomial(1, {{Qv(n, n + 1), 1}, {Qv(n, n + 5), 1}, {Qv(n, n + 3), -2}});
        EXPECT_EQ(shifted, expected);
    }
}

TEST(Ring, YToQOnC2) {
    CartanData c(AlgebraSpec(Series::C, 2));
    EXPECT_EQ(y_to_q(Y(1, 0), c), LaurentPoly::monomial(1, {{Qv(1, -1), 1}, {Qv(1, 1), -1}}));
    EXPECT_EQ(y_to_q(Y(2, 0), c), LaurentPoly::monomial(1, {{Qv(2, -2), 1}, {Qv(2, 2), -1}}));
    EXPECT_EQ(y_to_q(LaurentPoly(1), c), LaurentPoly(1));
    EXPECT_THROW(y_to_q(LaurentPoly::var(Qv(1, 0)), c), std::domain_error);
    EXPECT_THROW(y_to_q(LaurentPoly::var({Family::ELambda, 1, 0}), c), std::domain_error);
}

TEST(Ring, YToQIsHomomorphismAndInjective) {
    CartanData c(AlgebraSpec(Series::C, 3));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        auto p = fixtures::random_y_poly(rng, 3);
        auto q = fixtures::random_y_poly(rng, 3);
        EXPECT_EQ(y_to_q(p * q, c), y_to_q(p, c) * y_to_q(q, c));
        EXPECT_EQ(y_to_q(p + q, c), y_to_q(p, c) + y_to_q(q, c));
        EXPECT_EQ(y_to_q(p, c) == y_to_q(q, c), p == q);
    }
}

TEST(Ring, EvaluateRational) {
    std::map<VarKey, mpq_class> assign{{Yv(1, 0), mpq_class(3, 2)}};
    EXPECT_EQ(eval_rational(Y(1, 0, -1), assign), mpq_class(2, 3));
    EXPECT_EQ(eval_rational(LaurentPoly(), assign), 0);
    try {
        eval_rational(Y(2, 1), assign);
        FAIL() << "missing assignment not reported";
    } catch (const MissingAssignment& e) {
        EXPECT_EQ(e.var(), Yv(2, 1));
        EXPECT_NE(std::string(e.what()).find("Y[2](u+1/2)"), std::string::npos);
    }
}

TEST(Ring, EvaluationIsTermwiseAndMultiplicative) {
    auto t1 = parse_poly(kC2T1);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::map<VarKey, mpq_class> assign;
        for (int a = 1; a <= 2; ++a)
            for (int h = -2; h <= 12; ++h) assign[Yv(a, h)] = fixtures::random_rational(rng);
        mpq_class termwise = 0;
        for (const auto& t : t1.terms()) {
            mpq_class v = t.coeff;
            for (const auto& [k, e] : t.exps) {
                mpq_class x = assign.at(VarKey::unpack(k));
                for (int i = 0; i < std::abs(e); ++i) v = e > 0 ? mpq_class(v * x) : mpq_class(v / x);
            }
            termwise += v;
        }
        EXPECT_EQ(eval_rational(t1, assign), termwise);
        auto t1s = t1.shifted(2);
        EXPECT_EQ(eval_rational(t1 * t1s, assign), eval_rational(t1, assign) * eval_rational(t1s, assign));
    }
}

TEST(Ring, RingAxiomsOnRandomTriples) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 10000; ++i) {
        auto a = fixtures::random_y_poly(rng, 2, 3, 2);
        auto b = fixtures::random_y_poly(rng, 2, 3, 2);
        auto c = fixtures::random_y_poly(rng, 2, 3, 2);
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ(a + b, b + a);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a * b, fixtures::naive_product(a, b));
    }
}

TEST(Ring, CanonicalFormIgnoresConstructionOrder) {
    auto t2 = parse_poly(kC2T2);
    std::vector<Monomial> terms = t2.terms();
    std::mt19937_64 rng(9);
    const std::string reference = t2.to_text();
    for (int i = 0; i < 50; ++i) {
        std::shuffle(terms.begin(), terms.end(), rng);
        LaurentPoly acc;
        for (const auto& t : terms) acc += LaurentPoly::from_terms({t});
        EXPECT_EQ(acc.to_text(), reference);
        EXPECT_EQ(LaurentPoly::from_terms(terms).to_text(), reference);
    }
}

TEST(Ring, TextAndJsonRoundTrip) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 200; ++i) {
        auto p = fixtures::random_y_poly(rng, 4);
        EXPECT_EQ(parse_poly(p.to_text()), p);
        EXPECT_EQ(parse_poly(p.to_text("\n")), p);
        EXPECT_EQ(LaurentPoly::from_json(p.to_json()), p);
    }
    EXPECT_EQ(parse_poly(kC2T1).to_text(), kC2T1);
    auto big = LaurentPoly(mpz_class("123456789012345678901234567890")) * Y(1, -3, -1);
    EXPECT_EQ(big.to_json()[0]["coeff"], "123456789012345678901234567890");
    EXPECT_EQ(big.to_text(), "123456789012345678901234567890 * Y[1](u-3/2)^-1");
}

TEST(Ring, VarKeyPackingPreservesOrder) {
    std::vector<VarKey> keys;
    for (int f = 0; f < 4; ++f)
        for (int i = 1; i <= 3; ++i)
            for (int h = -5; h <= 5; ++h) keys.push_back({static_cast<Family>(f), i, h});
    for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
        EXPECT_LT(keys[i].packed(), keys[i + 1].packed());
        EXPECT_EQ(VarKey::unpack(keys[i].packed()), keys[i]);
    }
}

TEST(Cartan, NormalizationAndSymmetry) {
    for (int n = 2; n <= 6; ++n) {
        for (Series s : {Series::C, Series::B, Series::D}) {
            if (s == Series::D && n < 3) continue;
            CartanData c(AlgebraSpec(s, n));
            for (int a = 1; a <= n; ++a) {
                mpq_class expected = s == Series::C ? 1 + (a == n) : s == Series::B ? 2 - (a == n) : 2;
                EXPECT_EQ(c.pairing(a, a), expected);
                for (int b = 1; b <= n; ++b) EXPECT_EQ(c.doubled(a, b), c.doubled(b, a));
            }
        }
    }
    EXPECT_THROW(AlgebraSpec(Series::D, 2), std::invalid_argument);
    EXPECT_THROW(AlgebraSpec(Series::C, 1), std::invalid_argument);
    EXPECT_EQ(AlgebraSpec(Series::C, 3).N(), 8);
}

TEST(VariableTable, ZIdentityForAllB) {
    for (int n = 2; n <= 6; ++n) {
        VariableTable vt(AlgebraSpec(Series::C, n));
        for (int b = 2; b <= n; ++b) {
            int h = 2 * (b - n - 2);
            EXPECT_EQ(vt.z(b) * vt.zbar(b).shifted(h), vt.z(b - 1) * vt.zbar(b - 1).shifted(h)) << "n=" << n << " b=" << b;
        }
        // With z_0 z_0bar := 1 the identity also holds at b = 1.
        EXPECT_EQ(vt.z(1) * vt.zbar(1).shifted(2 * (1 - n - 2)), LaurentPoly(1));
    }
}

TEST(VariableTable, MiddleXPairIsMinusZnZnbar) {
    for (int n = 2; n <= 5; ++n) {
        VariableTable vt(AlgebraSpec(Series::C, n));
        auto lhs = vt.x(n + 1) * vt.x(n + 2).shifted(-2);
        auto rhs = -(vt.z(n) * vt.zbar(n).shifted(-2));
        EXPECT_TRUE(same_in_q(lhs, rhs, vt.cartan()));
        EXPECT_EQ(vt.x(n + 1), -vt.x(n + 2));
    }
}

TEST(VariableTable, YZeroNeverStored) {
    for (Series s : {Series::C, Series::B, Series::D}) {
        for (int n = 3; n <= 5; ++n) {
            VariableTable vt(AlgebraSpec(s, n));
            for (int a = 1; a <= n; ++a)
                for (const auto& p : {vt.z(a), vt.zbar(a)})
                    for (const auto& v : p.variables()) EXPECT_GE(v.index, 1);
        }
    }
}
