#include <gtest/gtest.h>

#include <qdiff/diffop.hpp>
#include <qdiff/tableaux.hpp>

#include "test_support.hpp"

#include <random>
#include <set>

using namespace qdiff;

namespace {

const int kExN = 9;

Tableau T(const std::string& s, int n = kExN) { return parse_tableau(s, n); }

std::vector<std::vector<int>> weakly_increasing(const std::vector<int>& alphabet, int len) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (static_cast<int>(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = from; i < alphabet.size(); ++i) {
            cur.push_back(alphabet[i]);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

} // namespace

TEST(Tableaux, TextAndJson) {
    auto t = T("3 5 9~");
    EXPECT_EQ(t.entries, (std::vector<int>{3, 5, 12}));
    EXPECT_EQ(to_text(t, kExN), "3 5 9~");
    auto j = to_json(t, kExN);
    EXPECT_EQ(j[2]["bar"], true);
    EXPECT_EQ(j[2]["v"], 9);
    EXPECT_EQ(to_text(Tableau{{3, 4}, 0}, 2), "x3 x4");
    EXPECT_EQ(parse_tableau("x3 2~", 2).entries, (std::vector<int>{3, 5}));
    EXPECT_THROW(parse_tableau("10", kExN), std::invalid_argument);
}

TEST(Tableaux, ColumnCountsMatchDimension) {
    auto c21 = gen_column_tableaux(2, 1);
    ASSERT_EQ(c21.size(), 4u);
    EXPECT_EQ(to_text(c21[0], 2), "1");
    EXPECT_EQ(to_text(c21[1], 2), "2");
    EXPECT_EQ(to_text(c21[2], 2), "2~");
    EXPECT_EQ(to_text(c21[3], 2), "1~");
    EXPECT_EQ(gen_column_tableaux(2, 2).size(), 5u);
    auto empty = gen_column_tableaux(3, 0);
    ASSERT_EQ(empty.size(), 1u);
    EXPECT_TRUE(empty[0].entries.empty());
    for (int n = 2; n <= 6; ++n)
        for (int a = 0; a <= n; ++a)
            EXPECT_EQ(gen_column_tableaux(n, a).size(), binomial(2 * n, a) - binomial(2 * n, a - 2)) << n << "," << a;
    EXPECT_THROW(gen_column_tableaux(2, 3), std::out_of_range);
}

TEST(Tableaux, ColumnSumsReproduceC2Characters) {
    VariableTable vt(AlgebraSpec(Series::C, 2));
    auto zw = [&](const Tableau& t) { return tableau_weight(t, vt, Convention::Z); };
    EXPECT_EQ(weight_sum(gen_column_tableaux(2, 1), zw), parse_poly(fixtures::kC2T1));
    EXPECT_EQ(weight_sum(gen_column_tableaux(2, 2), zw), parse_poly(fixtures::kC2T2));
}

TEST(Tableaux, WeightConventions) {
    VariableTable vt(AlgebraSpec(Series::C, 2));
    EXPECT_EQ(tableau_weight(Tableau{{1}, -1}, vt, Convention::Z), LaurentPoly::var(Yv(1, 0)));
    EXPECT_EQ(tableau_weight(Tableau{{}, 0}, vt, Convention::Z), LaurentPoly(1));
    for (int n = 2; n <= 4; ++n) {
        VariableTable v(AlgebraSpec(Series::C, n));
        auto pair = tableau_weight(Tableau{{n + 1, n + 2}, 0}, v, Convention::X);
        EXPECT_TRUE(same_in_q(pair, -(v.z(n) * v.zbar(n).shifted(-2)), v.cartan()));
    }
    EXPECT_THROW(tableau_weight(Tableau{{3}, 0}, vt, Convention::Z), std::invalid_argument);
}

TEST(Tableaux, XTableauxEdges) {
    for (int n = 2; n <= 4; ++n) {
        VariableTable vt(AlgebraSpec(Series::C, n));
        const int N = 2 * n + 2;
        auto xw = [&](const Tableau& t) { return tableau_weight(t, vt, Convention::X); };
        auto zero = gen_x_tableaux(n, 0);
        ASSERT_EQ(zero.size(), 1u);
        EXPECT_EQ(xw(zero[0]), LaurentPoly(1));
        auto full = gen_x_tableaux(n, N);
        ASSERT_EQ(full.size(), 1u);
        EXPECT_EQ(to_q(xw(full[0]), vt.cartan()), LaurentPoly(-1));
        auto mid = gen_x_tableaux(n, n + 1);
        EXPECT_EQ(mid.size(), binomial(N, n + 1));
        EXPECT_TRUE(to_q(weight_sum(mid, xw), vt.cartan()).is_zero());
    }
}

TEST(Tableaux, RowTableauxMatchInverseOperator) {
    for (int n = 2; n <= 3; ++n) {
        VariableTable vt(AlgebraSpec(Series::C, n));
        const int M = n == 2 ? 6 : 4;
        auto inv = inverse_series(-build_L_C(vt), M);
        EXPECT_EQ(gen_row_tableaux(n, 0).size(), 1u);
        EXPECT_EQ(gen_row_tableaux(n, 1).size(), static_cast<std::size_t>(2 * n));
        for (int m = 0; m <= M; ++m) {
            auto rows = gen_row_tableaux(n, m);
            auto sum = weight_sum(rows, [&](const Tableau& t) { return row_weight(t, vt); });
            EXPECT_EQ(sum.shifted(m), inv.coeff(m)) << "n=" << n << " m=" << m;
            EXPECT_EQ(sum.size(), rows.size());
            for (const auto& r : rows) EXPECT_TRUE(row_admissible(r.entries, n, RowRule::expansion));
        }
    }
}

TEST(Tableaux, LiteralRowRuleOvercounts) {
    // Agreement up to length 2, disagreement from length 3 on.
    for (int n = 2; n <= 3; ++n) {
        for (int m = 0; m <= 2; ++m)
            EXPECT_EQ(gen_row_tableaux(n, m, RowRule::literal).size(), gen_row_tableaux(n, m).size());
    }
    EXPECT_EQ(gen_row_tableaux(2, 3, RowRule::literal).size(), 26u);
    EXPECT_EQ(gen_row_tableaux(2, 3).size(), 24u);
    EXPECT_EQ(gen_row_tableaux(3, 4, RowRule::literal).size(), 163u);
    EXPECT_EQ(gen_row_tableaux(3, 4).size(), 148u);
}

TEST(Tableaux, RowCountsFollowKirillovReshetikhinDimension) {
    // Sum over k = m, m-2, ... of dim Sym^k of the 2n-dimensional module.
    for (int n = 2; n <= 3; ++n) {
        for (int m = 0; m <= 7; ++m) {
            std::size_t expected = 0;
            for (int k = m; k >= 0; k -= 2) expected += binomial(2 * n + k - 1, k);
            EXPECT_EQ(gen_row_tableaux(n, m).size(), expected) << n << "," << m;
        }
    }
}

TEST(TauSigma, WorkedChainVerbatim) {
    const int n = kExN;
    auto t = T("3 5 7 9 9 9~ 8~ 7~ 3~");
    EXPECT_TRUE(in_V(t, n));
    std::vector<std::string> expected = {
        "3 5 7 9 9 9~ 8~ 7~ 3~", "3 5 7 8 9 8~ 8~ 7~ 3~", "3 5 7 7 9 8~ 7~ 7~ 3~",
        "3 5 6 6 9 8~ 6~ 6~ 3~", "3 5 5 6 9 8~ 6~ 5~ 3~", "3 4 5 6 9 8~ 6~ 4~ 3~",
    };
    auto r = tau_full(t, n);
    ASSERT_EQ(r.chain.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(to_text(r.chain[i], n), expected[i]);
    EXPECT_EQ(r.p, 4);
    EXPECT_EQ(to_text(r.image, n), "3 4 5 6 9 8~ 6~ 4~ 3~");
    // Continuing past the stop would give the tau_3 image.
    EXPECT_EQ(to_text(tau_b(r.image, 3, n), n), "2 4 5 6 9 8~ 6~ 4~ 2~");
    for (const auto& c : r.chain) {
        EXPECT_EQ(tau_b(c, 2, n), c);
        EXPECT_EQ(tau_b(c, 4, n), c);
    }
    EXPECT_TRUE(in_W(r.image, n));
    auto bp = maximal_breaking_pair(r.image, n);
    EXPECT_EQ(bp.q, 4);
    EXPECT_EQ(bp.gap, 5);
    EXPECT_EQ(sigma_full(r.image, n), t);
}

TEST(TauSigma, SigmaInvertsOneStep) {
    const int n = kExN;
    EXPECT_EQ(to_text(sigma_b(T("3 4 5 6 9 8~ 6~ 4~ 3~"), 5, n), n), "3 5 5 6 9 8~ 6~ 5~ 3~");
    auto plain = T("1 2 3");
    EXPECT_EQ(sigma_b(plain, 5, n), plain);
    EXPECT_EQ(tau_b(Tableau{}, 3, n), Tableau{});
    EXPECT_THROW(sigma_b(plain, 2, n), std::out_of_range);
    EXPECT_THROW(tau_b(plain, 1, n), std::out_of_range);
}

TEST(TauSigma, Membership) {
    const int n = kExN;
    EXPECT_FALSE(in_W(T("1 2 3"), n));
    EXPECT_FALSE(in_W(T("3 5 7 9 9 9~ 8~ 7~ 3~"), n));
    EXPECT_FALSE(in_V(T("1 2 3"), n));
    EXPECT_TRUE(in_V(T("9 9~"), n));
    EXPECT_TRUE(in_V(T("9 9 9~ 9~"), n));
    EXPECT_FALSE(in_V(T("9 9 9 9~"), n));
    EXPECT_THROW(maximal_breaking_pair(T("1 2 3"), n), std::invalid_argument);
    EXPECT_THROW(tau_full(T("1 2 3"), n), std::invalid_argument);
    EXPECT_TRUE(in_Vb_lm(T("3 5 7 9 9 9~ 8~ 7~ 3~"), 9, 2, 1, n));
}

TEST(TauSigma, VIsTopLevelUnion) {
    for (int n = 3; n <= 6; ++n) {
        for (int a = 3; a <= n; ++a) {
            for (const auto& t : enumerate_V(n, a)) {
                auto s = vb_shape(t, n, n);
                ASSERT_TRUE(s.has_value()) << to_text(t, n);
                EXPECT_TRUE(s->l >= 1 && s->l <= 2 && s->m >= 1 && s->m <= 2);
                if (s->l == 1 && s->m == 1) {
                    EXPECT_TRUE(in_W(t, n));
                }
            }
        }
    }
}

TEST(TauSigma, BottomLayerIsFixed) {
    for (int n = 3; n <= 6; ++n) {
        for (int a = 3; a <= n; ++a) {
            int b = n - a + 2;
            auto all = weakly_increasing(j_alphabet(n), a);
            std::size_t seen = 0;
            for (const auto& e : all) {
                Tableau t{e, 0};
                if (!in_Vb(t, b, n)) continue;
                ++seen;
                EXPECT_EQ(tau_b(t, b, n), t) << to_text(t, n);
                for (int c = 2; c < b; ++c) EXPECT_FALSE(in_Vb(t, c, n));
            }
            EXPECT_GT(seen, 0u);
        }
    }
}

TEST(TauSigma, SingleStepExhaustive) {
    for (int n = 3; n <= 6; ++n) {
        for (int a = 3; a <= n; ++a) {
            for (const auto& e : weakly_increasing(j_alphabet(n), a)) {
                Tableau t{e, 0};
                for (int b = 3; b <= n; ++b) {
                    if (!in_Vb(t, b, n)) continue;
                    Tableau s = tau_b(t, b, n);
                    EXPECT_TRUE(s == t || in_Vb(s, b - 1, n)) << to_text(t, n) << " b=" << b;
                    if (!(s == t)) {
                        EXPECT_EQ(sigma_b(s, b, n), t) << to_text(t, n);
                    }
                }
            }
        }
    }
}

TEST(TauSigma, TauPreservesZWeightOnRandomArrays) {
    std::mt19937_64 rng(31);
    for (int n = 2; n <= 6; ++n) {
        VariableTable vt(AlgebraSpec(Series::C, n));
        auto alphabet = j_alphabet(n);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(alphabet.size()) - 1);
        std::uniform_int_distribution<int> len(0, 2 * n);
        std::uniform_int_distribution<int> base(-6, 6);
        for (int trial = 0; trial < 400; ++trial) {
            Tableau t;
            t.base_half_shift = base(rng);
            int L = len(rng);
            for (int i = 0; i < L; ++i) t.entries.push_back(alphabet[pick(rng)]);
            // Plant a matching pair now and then so that tau_b acts.
            std::uniform_int_distribution<int> pb(2, n);
            int b = pb(rng);
            int gap = n - b + 1;
            if (t.size() >= gap + 2 && trial % 2 == 0) {
                std::uniform_int_distribution<int> pos(0, t.size() - gap - 2);
                int i = pos(rng);
                t.entries[i] = b;
                t.entries[i + gap + 1] = Letter::barred(b, n);
            }
            auto before = tableau_weight(t, vt, Convention::Z);
            for (int c = 2; c <= n; ++c) EXPECT_EQ(tableau_weight(tau_b(t, c, n), vt, Convention::Z), before);
        }
    }
}

TEST(TauSigma, BreakingPairGapsInW) {
    for (int n = 3; n <= 5; ++n) {
        for (int a = 3; a <= n; ++a) {
            for (const auto& s : enumerate_W(n, a)) {
                auto bp = maximal_breaking_pair(s, n);
                EXPECT_EQ(bp.gap, n - bp.q) << to_text(s, n);
                EXPECT_GE(bp.q, 2);
            }
        }
    }
}

TEST(TauSigma, BijectionSmallRanks) {
    for (int n = 3; n <= 4; ++n) {
        VariableTable vt(AlgebraSpec(Series::C, n));
        for (int a = 3; a <= n; ++a) {
            auto rep = verify_bijection(n, a, vt);
            EXPECT_TRUE(rep.ok) << rep.failure;
            EXPECT_EQ(rep.V_size, rep.W_size);
        }
    }
    auto V = enumerate_V(4, 3);
    std::set<std::vector<int>> images;
    for (const auto& t : V) images.insert(tau_full(t, 4).image.entries);
    EXPECT_EQ(images.size(), V.size());
}

TEST(Cancellation, AllColumnsUpToRankFour) {
    for (int n = 2; n <= 4; ++n) {
        for (int a = 1; a <= n; ++a) {
            auto rep = verify_cancellation(n, a);
            EXPECT_TRUE(rep.ok()) << "n=" << n << " a=" << a << " " << rep.failure;
            EXPECT_EQ(rep.bijection_checked, a >= 3);
        }
    }
    auto rep = verify_cancellation(4, 4);
    EXPECT_EQ(rep.result_terms, 42u);
    EXPECT_EQ(rep.x_tableaux, binomial(10, 4));
}
