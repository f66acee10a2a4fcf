#include <gtest/gtest.h>

#include <qdiff/diffop.hpp>

#include "test_support.hpp"

#include <random>

using namespace qdiff;

namespace {

LaurentPoly Y(int a, int h, int e = 1) { return LaurentPoly::var(Yv(a, h), e); }
LaurentPoly Q(int a, int h, int e = 1) { return LaurentPoly::var(Qv(a, h), e); }
DiffOp C(const LaurentPoly& p) { return DiffOp::term(p, 0); }
const DiffOp D = DiffOp::shift();

DiffOp random_op(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::vector<LaurentPoly> c(deg(rng) + 1);
    for (auto& p : c) p = fixtures::random_y_poly(rng, 2, 2, 2);
    return DiffOp::polynomial(std::move(c));
}

// q_j(u) of the constant-term table for L_j, as a Q-monomial.
LaurentPoly q_j(int n, int j) {
    const int N = 2 * n + 2;
    if (j <= n - 1) return Q(j, j - 1);
    if (j == n) return Q(n, n) * Q(n, n - 2);
    if (j == n + 1) return Q(n, n, 2);
    if (j == n + 2) return Q(n, n) * Q(n, n + 2);
    return Q(N - j, j - 1);
}

} // namespace

TEST(DiffOp, ShiftTwistsCoefficients) {
    EXPECT_EQ(D * C(Y(1, 0)), C(Y(1, 2)) * D);
    EXPECT_EQ((D * C(Y(1, 0))).coeff(1), Y(1, 2));
    auto c = Y(2, 1);
    EXPECT_EQ((DiffOp::one() - C(c) * D) * DiffOp::one(), DiffOp::one() - C(c) * D);
}

TEST(DiffOp, TwoFactorHandExpansion) {
    VariableTable vt(AlgebraSpec(Series::C, 2));
    auto z1 = vt.z(1);
    auto z2 = vt.z(2);
    auto prod = (DiffOp::one() - C(z1) * D) * (DiffOp::one() - C(z2) * D);
    EXPECT_EQ(prod.degree(), 2);
    EXPECT_EQ(prod.coeff(0), LaurentPoly(1));
    EXPECT_EQ(prod.coeff(1), -(z1 + z2));
    EXPECT_EQ(prod.coeff(2), z1 * z2.shifted(2));
}

TEST(DiffOp, GeometricSeriesInverse) {
    auto c = Y(1, 0);
    auto inv = inverse_series(DiffOp::one() - C(c) * D, 2);
    ASSERT_TRUE(inv.is_series());
    EXPECT_EQ(*inv.truncation(), 2);
    EXPECT_EQ(inv.coeff(0), LaurentPoly(1));
    EXPECT_EQ(inv.coeff(1), c);
    EXPECT_EQ(inv.coeff(2), c * c.shifted(2));
    EXPECT_EQ(inverse_series(DiffOp::one(), 4), DiffOp::series({LaurentPoly(1)}, 4));
    EXPECT_EQ(inverse_series(-DiffOp::one(), 3).coeff(0), LaurentPoly(-1));
}

TEST(DiffOp, InverseRejectsNonUnitConstant) {
    EXPECT_THROW(inverse_series(C(LaurentPoly(2)), 3), std::domain_error);
    EXPECT_THROW(inverse_series(C(Y(1, 0)) + D, 3), std::domain_error);
    EXPECT_THROW(inverse_series(D, 3), std::domain_error);
}

TEST(DiffOp, AssociativityAndDegreeAdditivity) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 300; ++i) {
        auto a = random_op(rng, 3);
        auto b = random_op(rng, 3);
        auto c = random_op(rng, 2);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        if (!a.is_zero() && !b.is_zero()) {
            ASSERT_EQ((a * b).degree(), a.degree() + b.degree());
        }
    }
}

TEST(DiffOp, SeriesTruncatesToSmallestOrder) {
    auto s1 = DiffOp::series({1, Y(1, 0), Y(1, 1), Y(1, 2)}, 3);
    auto s2 = DiffOp::series({1, Y(2, 0)}, 2);
    auto prod = s1 * s2;
    EXPECT_EQ(*prod.truncation(), 2);
    EXPECT_LE(prod.degree(), 2);
    auto mixed = s2 * (D * D * D);
    EXPECT_TRUE(mixed.is_zero());
    EXPECT_EQ(*mixed.truncation(), 2);
}

TEST(LOperator, AllFourFormsCoincide) {
    for (int n = 2; n <= 4; ++n) {
        VariableTable vt(AlgebraSpec(Series::C, n));
        auto ref = build_L_C(vt, LForm::zFactored);
        EXPECT_EQ(ref.degree(), vt.algebra().N());
        EXPECT_EQ(build_L_C(vt, LForm::zReversed), ref);
        for (int s : {1, -1}) {
            EpsilonChoice eps{s};
            EXPECT_TRUE(same_in_q(build_L_C(vt, LForm::xReversed, eps), ref, vt.cartan())) << n << " " << s;
            EXPECT_TRUE(same_in_q(build_L_C(vt, LForm::xFactored, eps), ref, vt.cartan())) << n << " " << s;
            EXPECT_TRUE(same_in_q(raw_L_C(vt, LForm::xFactored, eps), -raw_L_C(vt, LForm::xReversed, eps),
                                  vt.cartan()));
        }
    }
}

TEST(LOperator, EdgeCoefficients) {
    for (int n = 2; n <= 4; ++n) {
        VariableTable vt(AlgebraSpec(Series::C, n));
        const int N = vt.algebra().N();
        auto L = build_L_C(vt);
        // L = -sum (-1)^i T^(i)(u+i/2) D^i with T^(0) = 1 and T^(N) = -1.
        EXPECT_EQ(L.coeff(0), LaurentPoly(-1));
        EXPECT_EQ(L.coeff(N), LaurentPoly(1));
        EXPECT_TRUE(L.coeff(n + 1).is_zero());
        EXPECT_EQ(extract_e(L, 0, N), LaurentPoly(1));
        EXPECT_EQ(extract_e(L, N, N), LaurentPoly(-1));
        EXPECT_TRUE(extract_e(L, n + 1, N).is_zero());
        for (int a = 0; a <= N; ++a) {
            EXPECT_EQ(extract_e(L, a, N).shifted(a), -extract_e(L, N - a, N).shifted(a)) << "a=" << a;
        }
        EXPECT_THROW(extract_e(L, N + 1, N), std::out_of_range);
    }
}

TEST(LOperator, FirstCoefficientIsC2FundamentalCharacter) {
    auto L = build_L_C(2);
    EXPECT_EQ(extract_e(L, 1, 6), parse_poly(fixtures::kC2T1));
    EXPECT_EQ(extract_e(L, 2, 6), parse_poly(fixtures::kC2T2));
}

TEST(LOperator, MiddleQuadraticFactorization) {
    for (int n = 2; n <= 4; ++n) {
        VariableTable vt(AlgebraSpec(Series::C, n));
        auto lhs = D * D - C(vt.zbar(n).shifted(-2) * vt.z(n));
        auto x1 = vt.x(n + 1);
        auto x2m = vt.x(n + 2).shifted(-2);
        EXPECT_TRUE(same_in_q(lhs, (C(x1) + D) * (C(x2m) + D), vt.cartan()));
        EXPECT_TRUE(same_in_q(lhs, (C(x1) - D) * (C(x2m) - D), vt.cartan()));
        EXPECT_TRUE(same_in_q(lhs, D * D - C(x1.shifted(-2) * x1), vt.cartan()));
    }
}

TEST(LOperator, InverseSeriesIsTwoSided) {
    for (int n = 2; n <= 3; ++n) {
        auto L = -build_L_C(n);
        const int M = 2 * n + 4;
        auto inv = inverse_series(L, M);
        EXPECT_TRUE((L * inv).agrees_to(DiffOp::one(), M));
        EXPECT_TRUE((inv * L).agrees_to(DiffOp::one(), M));
    }
    auto minus_inv = inverse_series(-build_L_C(2), 1);
    EXPECT_EQ(minus_inv.coeff(0), LaurentPoly(1));
    EXPECT_EQ(minus_inv.coeff(1), parse_poly(fixtures::kC2T1).shifted(1));
}

TEST(LOperator, LadderOperatorsLj) {
    for (int n = 2; n <= 3; ++n) {
        VariableTable vt(AlgebraSpec(Series::C, n));
        const int N = vt.algebra().N();
        auto L1 = build_Lj_C(vt, 1);
        EXPECT_EQ(to_q(L1.coeff(0), vt.cartan()), -Q(1, 2) * Q(1, 0, -1));
        EXPECT_TRUE(same_in_q(build_Lj_C(vt, N), build_L_C(vt), vt.cartan()));
        for (int j = 1; j <= N - 1; ++j) {
            auto Lj = build_Lj_C(vt, j);
            EXPECT_EQ(Lj.degree(), j);
            EXPECT_EQ(Lj.coeff(j), LaurentPoly(1));
            int sigma = j <= n + 1 ? 1 : -1;
            int sign = (j % 2 == 0 ? 1 : -1) * sigma;
            auto q = q_j(n, j);
            auto expected = (q.shifted(2) * q.reciprocal()).scaled(sign);
            EXPECT_TRUE(same_in_q(to_q(Lj.coeff(0), vt.cartan()), expected, vt.cartan())) << "n=" << n << " j=" << j;
        }
        EXPECT_THROW(build_Lj_C(vt, 0), std::out_of_range);
        EXPECT_THROW(build_Lj_C(vt, N + 1), std::out_of_range);
    }
}

TEST(DiffOp, JsonDump) {
    auto L = build_L_C(2);
    auto j = L.to_json();
    EXPECT_EQ(j["kind"], "polynomial");
    EXPECT_EQ(j["coeffs"].size(), 6u);
    auto s = inverse_series(-L, 3).to_json();
    EXPECT_EQ(s["truncation"], 3);
}
