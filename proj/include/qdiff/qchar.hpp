#pragma once

// q-characters of C_n: fundamental T^{(a)}_1 extended to all integers a,
// row characters T^{(1)}_m, the H-series, Jacobi-Trudi and Pfaffian
// rectangles, and symbolic checks of the relations among them.

#include "diffop.hpp"
#include "tableaux.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qdiff {

using PolyMatrix = std::vector<std::vector<LaurentPoly>>;

/// Determinant by first-row Laplace expansion, memoized on the remaining
/// column set. Exact over the ring; fine for sizes up to ~12.
inline LaurentPoly determinant(const PolyMatrix& M) {
    const int k = static_cast<int>(M.size());
    if (k == 0) return LaurentPoly(1);
    std::unordered_map<std::uint32_t, LaurentPoly> memo;
    auto rec = [&](auto&& self, int row, std::uint32_t cols) -> LaurentPoly {
        if (row == k) return LaurentPoly(1);
        if (auto it = memo.find(cols); it != memo.end()) return it->second;
        LaurentPoly acc;
        int pos = 0;
        for (int c = 0; c < k; ++c) {
            if (!(cols & (1u << c))) continue;
            if (!M[row][c].is_zero()) {
                auto minor = self(self, row + 1, cols & ~(1u << c));
                if (!minor.is_zero()) acc += (pos % 2 == 0 ? M[row][c] : -M[row][c]) * minor;
            }
            ++pos;
        }
        memo.emplace(cols, acc);
        return acc;
    };
    return rec(rec, 0, (k == 32 ? ~0u : (1u << k) - 1));
}

/// Pfaffian of an antisymmetric matrix (only the upper triangle is read),
/// expanded along the smallest remaining index with memoization.
inline LaurentPoly pfaffian(const PolyMatrix& A) {
    const int k = static_cast<int>(A.size());
    if (k % 2 != 0) return LaurentPoly();
    std::unordered_map<std::uint32_t, LaurentPoly> memo;
    auto rec = [&](auto&& self, std::uint32_t set) -> LaurentPoly {
        if (set == 0) return LaurentPoly(1);
        if (auto it = memo.find(set); it != memo.end()) return it->second;
        int i = __builtin_ctz(set);
        std::uint32_t rest = set & ~(1u << i);
        LaurentPoly acc;
        int pos = 1;
        for (int j = i + 1; j < k; ++j) {
            if (!(rest & (1u << j))) continue;
            if (!A[i][j].is_zero()) {
                auto sub = self(self, rest & ~(1u << j));
                if (!sub.is_zero()) acc += (pos % 2 == 1 ? A[i][j] : -A[i][j]) * sub;
            }
            ++pos;
        }
        memo.emplace(set, acc);
        return acc;
    };
    return rec(rec, (1u << k) - 1);
}

inline PolyMatrix matmul(const PolyMatrix& a, const PolyMatrix& b) {
    const std::size_t r = a.size(), m = b.size(), c = b.empty() ? 0 : b[0].size();
    PolyMatrix out(r, std::vector<LaurentPoly>(c));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t l = 0; l < m; ++l)
                if (!a[i][l].is_zero() && !b[l][j].is_zero()) out[i][j] += a[i][l] * b[l][j];
    return out;
}

/// Cached q-character tables for C_n. All stored values sit at argument u.
class Characters {
public:
    explicit Characters(int n) : vt_(AlgebraSpec(Series::C, n)), n_(n), N_(2 * n + 2) {
        fund_.resize(n_ + 1);
        fund_[0] = LaurentPoly(1);
        for (int a = 1; a <= n_; ++a) {
            fund_[a] = weight_sum(gen_column_tableaux(n_, a),
                                  [&](const Tableau& t) { return tableau_weight(t, vt_, Convention::Z); });
        }
    }

    int rank() const { return n_; }
    int N() const { return N_; }
    const VariableTable& vt() const { return vt_; }
    const CartanData& cartan() const { return vt_.cartan(); }

    /// T^{(a)}_1(u) with T^{(0)} = 1, T^{(a)} = 0 for a < 0 and T^{(a)} = -T^{(N-a)}.
    LaurentPoly T1(int a) const {
        if (a < 0) return LaurentPoly();
        if (a <= n_) return fund_[a];
        if (a == n_ + 1) return LaurentPoly();
        return -T1(N_ - a);
    }
    LaurentPoly T1(int a, int half) const { return T1(a).shifted(half); }

    /// T^{(1)}_m(u) from row tableaux; zero for m < 0.
    const LaurentPoly& row(int m) {
        static const LaurentPoly zero;
        if (m < 0) return zero;
        auto it = rows_.find(m);
        if (it != rows_.end()) return it->second;
        LaurentPoly v = m == 0 ? LaurentPoly(1)
                               : weight_sum(gen_row_tableaux(n_, m),
                                            [&](const Tableau& t) { return row_weight(t, vt_); });
        return rows_.emplace(m, std::move(v)).first->second;
    }

    /// H^{(i)}_k(u), 0 <= i <= N-1.
    LaurentPoly H(int i, int k) {
        if (i < 0 || i >= N_) throw std::out_of_range("H-series index i out of range");
        if (k < 0) throw std::out_of_range("H-series index k out of range");
        while (static_cast<int>(h_.size()) <= k) {
            const int kk = static_cast<int>(h_.size());
            std::vector<LaurentPoly> col(N_);
            if (kk == 0) {
                col[0] = LaurentPoly(1);
            } else {
                const auto& prev = h_[kk - 1];
                for (int j = 0; j < N_; ++j) {
                    LaurentPoly v = -(T1(j) * prev[N_ - 1].shifted(N_ + 1 - j));
                    if (j > 0) v -= prev[j - 1].shifted(1);
                    col[j] = std::move(v);
                }
            }
            h_.push_back(std::move(col));
        }
        return h_[k][i];
    }

    /// -det(T^{(l'_j - j + l)}_1(u + (N - 2 - l'_j + j + l)/2)) with the hook
    /// column lengths l'_j = 1 + (N - i - 1)[j = 1]; equals H^{(i)}_k(u + i/2) for k >= N.
    LaurentPoly hook_determinant(int i, int k) const {
        if (k < N_) throw std::out_of_range("hook determinant needs k >= N");
        const int s = k - N_ + 1;
        PolyMatrix M(s, std::vector<LaurentPoly>(s));
        for (int j = 1; j <= s; ++j) {
            int lam = 1 + (j == 1 ? N_ - i - 1 : 0);
            for (int l = 1; l <= s; ++l) M[j - 1][l - 1] = T1(lam - j + l, N_ - 2 - lam + j + l);
        }
        return -determinant(M);
    }

    /// T^{(a)}_m(u) = det(T^{(a-j+l)}_1(u + (j+l-m-1)/2)), 1 <= a <= n-1.
    LaurentPoly jacobi_trudi(int a, int m) const {
        if (a < 1 || a > n_ - 1) throw std::out_of_range("Jacobi-Trudi needs 1 <= a <= n-1");
        if (m < 0) throw std::out_of_range("Jacobi-Trudi needs m >= 0");
        PolyMatrix M(m, std::vector<LaurentPoly>(m));
        for (int j = 1; j <= m; ++j)
            for (int l = 1; l <= m; ++l) M[j - 1][l - 1] = T1(a - j + l, j + l - m - 1);
        return determinant(M);
    }

    /// The 2m x 2m array T^{(n+1-j+l)}_1(u + (j+l-2m-1)/2).
    PolyMatrix pfaffian_array(int m) const {
        const int s = 2 * m;
        PolyMatrix A(s, std::vector<LaurentPoly>(s));
        for (int j = 1; j <= s; ++j)
            for (int l = 1; l <= s; ++l) A[j - 1][l - 1] = T1(n_ + 1 - j + l, j + l - 2 * m - 1);
        return A;
    }

    /// T^{(n)}_m(u) = (-1)^m pf(...); the array must be antisymmetric.
    LaurentPoly pfaffian_rect(int m) const {
        if (m < 0) throw std::out_of_range("Pfaffian needs m >= 0");
        auto A = pfaffian_array(m);
        for (int j = 0; j < 2 * m; ++j)
            for (int l = j; l < 2 * m; ++l)
                if (A[j][l] != -A[l][j]) throw std::logic_error("Pfaffian array is not antisymmetric");
        auto pf = pfaffian(A);
        return m % 2 == 0 ? pf : -pf;
    }

    /// T^{(a)}_m(u) with T^{(a)}_0 = T^{(0)}_m = 1.
    const LaurentPoly& T(int a, int m) {
        auto key = std::make_pair(a, m);
        if (auto it = rect_.find(key); it != rect_.end()) return it->second;
        LaurentPoly v;
        if (a == 0 || m == 0) v = LaurentPoly(1);
        else if (a == n_) v = pfaffian_rect(m);
        else v = jacobi_trudi(a, m);
        return rect_.emplace(key, std::move(v)).first->second;
    }

private:
    VariableTable vt_;
    int n_, N_;
    std::vector<LaurentPoly> fund_;
    std::map<int, LaurentPoly> rows_;
    std::vector<std::vector<LaurentPoly>> h_;
    std::map<std::pair<int, int>, LaurentPoly> rect_;
};

/// mu_j = i_{N-j} + j - N for indices 0 = i_0 < i_1 < ... < i_{N-1}.
inline std::vector<int> index_partition(const std::vector<int>& idx) {
    const int N = static_cast<int>(idx.size());
    if (N == 0 || idx[0] != 0) throw std::invalid_argument("index set must start at 0");
    for (int r = 1; r < N; ++r)
        if (idx[r] <= idx[r - 1]) throw std::invalid_argument("index set must be strictly increasing");
    std::vector<int> mu;
    for (int j = 1; j < N; ++j) mu.push_back(idx[N - j] + j - N);
    while (!mu.empty() && mu.back() == 0) mu.pop_back();
    return mu;
}

inline std::vector<int> transpose_partition(const std::vector<int>& mu) {
    std::vector<int> t(mu.empty() ? 0 : mu[0], 0);
    for (int r : mu)
        for (int c = 0; c < r; ++c) ++t[c];
    return t;
}

/// The Casorati ratio [i_0, i_1, ..., i_{N-1}] / [0, ..., N-1] for strictly
/// increasing indices. For i_0 = 0 this is the determinant
/// det(T^{(mu'_j - j + l)}_1(u + (N - 2 + j + l - mu'_j)/2)) of size mu_1; a
/// nonzero i_0 is moved to u using [0, ..., N-1](u+1) = -[0, ..., N-1](u).
inline LaurentPoly casorati_ratio(const Characters& ch, const std::vector<int>& idx) {
    if (static_cast<int>(idx.size()) != ch.N()) throw std::invalid_argument("index set must have N entries");
    if (idx[0] != 0) {
        std::vector<int> rel;
        for (int i : idx) rel.push_back(i - idx[0]);
        auto r = casorati_ratio(ch, rel).shifted(2 * idx[0]);
        return idx[0] % 2 == 0 ? r : -r;
    }
    auto mu = index_partition(idx);
    auto mt = transpose_partition(mu);
    const int s = static_cast<int>(mt.size());
    const int N = ch.N();
    PolyMatrix M(s, std::vector<LaurentPoly>(s));
    for (int j = 1; j <= s; ++j)
        for (int l = 1; l <= s; ++l) M[j - 1][l - 1] = ch.T1(mt[j - 1] - j + l, N - 2 + j + l - mt[j - 1]);
    return determinant(M);
}

/// Index set {0, ..., i-1, i+1, ..., N-1, k} of the hook ratio.
inline std::vector<int> hook_indices(int N, int i, int k) {
    std::vector<int> idx;
    for (int r = 0; r < N; ++r)
        if (r != i) idx.push_back(r);
    idx.push_back(k);
    return idx;
}

/// sigma_j = 1 for j <= n, -1 for n+1 <= j; sigma_0 = 1.
inline int sigma_sign(int j, int n) { return j <= n ? 1 : -1; }

struct QCharacter {
    AlgebraSpec algebra;
    std::string kind; // fundamental | row | rect | hseries
    std::vector<int> params;
    LaurentPoly value;
    int base_half_shift = 0;
    std::optional<LaurentPoly> highest; // expected highest-weight monomial

    bool highest_present() const { return highest && value.coefficient(highest->terms()[0].exps) == 1; }

    nlohmann::json to_json() const {
        nlohmann::json j{{"algebra", algebra.name()},
                         {"label", kind},
                         {"params", params},
                         {"base_half_shift", base_half_shift},
                         {"monomial_count", value.size()},
                         {"poly", value.to_text()},
                         {"terms", value.to_json()}};
        if (highest) j["highest_weight_monomial_present"] = highest_present();
        return j;
    }
};

/// prod_j Y_a(u + half_j / 2) as a monomial.
inline LaurentPoly y_monomial(const std::vector<std::pair<int, int>>& index_half) {
    std::vector<std::pair<VarKey, int>> vars;
    for (auto [a, h] : index_half)
        if (a != 0) vars.push_back({Yv(a, h), 1});
    return LaurentPoly::monomial(1, vars);
}

inline QCharacter fundamental(int n, int a) {
    Characters ch(n);
    QCharacter q{ch.vt().algebra(), "fundamental", {a}, ch.T1(a), 0, std::nullopt};
    if (a >= 1 && a <= n) q.highest = y_monomial({{a, 0}});
    return q;
}

inline QCharacter row_character(int n, int m) {
    Characters ch(n);
    QCharacter q{ch.vt().algebra(), "row", {m}, ch.row(m), 0, std::nullopt};
    std::vector<std::pair<int, int>> ys;
    for (int j = 1; j <= m; ++j) ys.push_back({1, m + 1 - 2 * j});
    if (m >= 0) q.highest = y_monomial(ys);
    return q;
}

inline QCharacter h_series(int n, int i, int k) {
    Characters ch(n);
    return {ch.vt().algebra(), "hseries", {i, k}, ch.H(i, k), 0, std::nullopt};
}

inline QCharacter tam_jacobi_trudi(int n, int a, int m) {
    Characters ch(n);
    return {ch.vt().algebra(), "rect", {a, m}, ch.jacobi_trudi(a, m), 0, std::nullopt};
}

inline QCharacter tnm_pfaffian(int n, int m) {
    Characters ch(n);
    QCharacter q{ch.vt().algebra(), "rect", {n, m}, ch.pfaffian_rect(m), 0, std::nullopt};
    std::vector<std::pair<int, int>> ys;
    for (int j = 1; j <= m; ++j) ys.push_back({n, 2 * (m + 1 - 2 * j)});
    q.highest = y_monomial(ys);
    return q;
}

struct RelationCheck {
    std::string relation;
    nlohmann::json params;
    bool ok = true;
    std::size_t lhs_terms = 0;
    std::string detail;
};

struct RelationReport {
    std::string name;
    std::vector<RelationCheck> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return !checks.empty();
    }
    const RelationCheck* first_failure() const {
        for (const auto& c : checks)
            if (!c.ok) return &c;
        return nullptr;
    }
    void record(std::string relation, nlohmann::json params, const LaurentPoly& lhs, const LaurentPoly& rhs) {
        RelationCheck c{std::move(relation), std::move(params), lhs == rhs, lhs.size(), {}};
        if (!c.ok) c.detail = "lhs: " + lhs.to_text() + "\nrhs: " + rhs.to_text();
        checks.push_back(std::move(c));
    }
    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json j{{"relation", c.relation}, {"params", c.params}, {"ok", c.ok}, {"lhs_terms", c.lhs_terms}};
            if (!c.ok) j["detail"] = c.detail;
            arr.push_back(j);
        }
        return {{"name", name}, {"ok", ok()}, {"checks", arr}};
    }
};

/// The four T-system families for 1 <= m <= m_max (0 <= m for the odd
/// next-to-last family). Relations that involve the Pfaffian T^{(n)} are
/// limited to m <= pf_max, and the two next-to-last families further to a
/// squared T^{(n-1)}_j with j <= sub_max.
inline RelationReport verify_tsystem(Characters& ch, int m_max, int pf_max = -1, int sub_max = -1) {
    if (pf_max < 0) pf_max = m_max;
    const int n = ch.rank();
    const int m_pf = std::min(m_max, pf_max);
    if (sub_max < 0) sub_max = 2 * m_pf + 1;
    RelationReport rep{"tsystem", {}};
    for (int a = 1; a <= n - 2; ++a) {
        for (int m = 1; m <= m_max; ++m) {
            auto lhs = ch.T(a, m).shifted(-1) * ch.T(a, m).shifted(1);
            auto rhs = ch.T(a, m + 1) * ch.T(a, m - 1) + ch.T(a - 1, m) * ch.T(a + 1, m);
            rep.record("general", {{"a", a}, {"m", m}}, lhs, rhs);
        }
    }
    for (int m = 1; m <= m_pf && 2 * m <= sub_max; ++m) {
        auto lhs = ch.T(n - 1, 2 * m).shifted(-1) * ch.T(n - 1, 2 * m).shifted(1);
        auto rhs = ch.T(n - 1, 2 * m + 1) * ch.T(n - 1, 2 * m - 1) +
                   ch.T(n - 2, 2 * m) * ch.T(n, m).shifted(-1) * ch.T(n, m).shifted(1);
        rep.record("even_next_to_last", {{"m", m}}, lhs, rhs);
    }
    for (int m = 0; m <= m_pf && 2 * m + 1 <= sub_max; ++m) {
        auto lhs = ch.T(n - 1, 2 * m + 1).shifted(-1) * ch.T(n - 1, 2 * m + 1).shifted(1);
        auto rhs = ch.T(n - 1, 2 * m + 2) * ch.T(n - 1, 2 * m) +
                   ch.T(n - 2, 2 * m + 1) * ch.T(n, m) * ch.T(n, m + 1);
        rep.record("odd_next_to_last", {{"m", m}}, lhs, rhs);
    }
    for (int m = 1; m <= m_pf; ++m) {
        auto lhs = ch.T(n, m).shifted(-2) * ch.T(n, m).shifted(2);
        auto rhs = ch.T(n, m + 1) * ch.T(n, m - 1) + ch.T(n - 1, 2 * m);
        rep.record("last", {{"m", m}}, lhs, rhs);
    }
    return rep;
}

/// Both T-T relations for 0 <= m <= m_max and the T-Q relation in Q-form.
inline RelationReport verify_tt_tq(Characters& ch, int m_max) {
    const int N = ch.N();
    RelationReport rep{"tt_tq", {}};
    for (int m = 0; m <= m_max; ++m) {
        LaurentPoly first, second;
        for (int a = 0; a <= N; ++a) {
            const auto& r = ch.row(m - a);
            if (r.is_zero()) continue;
            auto t1 = r.shifted(-a) * ch.T1(a, m - a);
            auto t2 = r.shifted(m + a) * ch.T1(a, a);
            if (a % 2 == 0) {
                first += t1;
                second += t2;
            } else {
                first -= t1;
                second -= t2;
            }
        }
        LaurentPoly delta(m == 0 ? 1 : 0);
        rep.record("tt_first", {{"m", m}}, first, delta);
        rep.record("tt_second", {{"m", m}}, second, delta);
    }
    LaurentPoly tq;
    for (int a = 0; a <= N; ++a) {
        auto term = LaurentPoly::var(Qv(1, 2 * a)) * to_q(ch.T1(a, a), ch.cartan());
        tq += a % 2 == 0 ? term : -term;
    }
    rep.record("tq", nlohmann::json::object(), tq, LaurentPoly());
    return rep;
}

/// The companion matrix with last column (-1)^i T^{(i)}_1(u + i/2), at u + shift.
inline PolyMatrix transfer_matrix(const Characters& ch, int half) {
    const int N = ch.N();
    PolyMatrix M(N, std::vector<LaurentPoly>(N));
    for (int i = 1; i < N; ++i) M[i][i - 1] = LaurentPoly(1);
    for (int i = 0; i < N; ++i) {
        auto t = ch.T1(i, i + half);
        M[i][N - 1] = i % 2 == 0 ? t : -t;
    }
    return M;
}

/// Columns h_k, ..., h_{k+N-1} with entries (-1)^i H^{(i)}_k(u + i/2).
inline PolyMatrix h_matrix(Characters& ch, int k) {
    const int N = ch.N();
    PolyMatrix M(N, std::vector<LaurentPoly>(N));
    for (int c = 0; c < N; ++c)
        for (int i = 0; i < N; ++i) {
            auto h = ch.H(i, k + c).shifted(i);
            M[i][c] = i % 2 == 0 ? h : -h;
        }
    return M;
}

/// T(u) T(u+1) ... T(u+k-1) against the H-matrix of index k.
inline bool verify_product_formula(Characters& ch, int k) {
    if (k < 1) throw std::out_of_range("product formula needs k >= 1");
    PolyMatrix P = transfer_matrix(ch, 0);
    for (int s = 1; s < k; ++s) P = matmul(P, transfer_matrix(ch, 2 * s));
    return P == h_matrix(ch, k);
}

/// Highest monomial predicted for sigma_i H^{(i)}_k(u + i/2), k >= N+1.
inline LaurentPoly hook_highest_monomial(int n, int i, int k) {
    const int N = 2 * n + 2;
    std::vector<std::pair<int, int>> ys;
    int first = 1;
    if (i == n + 1) {
        ys.push_back({n, n + 2});
        first = 2;
    } else {
        ys.push_back({std::min(i, N - i), i});
    }
    for (int j = first; j <= k - N; ++j) ys.push_back({1, N + 2 * j - 1});
    return y_monomial(ys);
}

/// Coefficient of the predicted highest monomial in sigma_i H^{(i)}_k(u + i/2).
inline mpz_class hook_highest_coefficient(Characters& ch, int i, int k) {
    auto v = ch.H(i, k).shifted(i);
    if (sigma_sign(i, ch.rank()) < 0) v = -v;
    auto m = hook_highest_monomial(ch.rank(), i, k);
    return v.coefficient(m.terms()[0].exps);
}

} // namespace qdiff
