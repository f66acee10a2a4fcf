#pragma once

// Casorati determinants evaluated exactly: random rational values for the
// Baxter functions Q_a on a half-integer window, solution bases of
// L(u) w(u) = 0 at integer offsets from u, and checks of the determinant
// formulas for fundamental, hook and rectangular characters.

#include "qchar.hpp"
#include "rational.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdiff {

/// Raised when a determinant or value used as a denominator vanishes; the
/// caller resamples the grid.
class DegenerateGrid : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxRationalBits = 1000000;

inline const mpq_class& guard_bits(const mpq_class& v) {
    if (mpz_sizeinbase(v.get_num_mpz_t(), 2) > kMaxRationalBits ||
        mpz_sizeinbase(v.get_den_mpz_t(), 2) > kMaxRationalBits)
        throw std::length_error("rational value exceeds the bit guard");
    return v;
}

inline mpq_class checked_div(const mpq_class& a, const mpq_class& b) {
    if (b == 0) throw DegenerateGrid("vanishing denominator");
    return a / b;
}

/// Values of Q_a(u + h/2) for 1 <= a <= n and lo <= h <= hi. Each entry is
/// drawn from its own seeded stream, so widening the window keeps old values.
class RationalGrid {
public:
    RationalGrid(int n, int lo_half, int hi_half, std::uint64_t seed)
        : cartan_(AlgebraSpec(Series::C, n)), n_(n), lo_(lo_half), hi_(hi_half), seed_(seed) {
        if (lo_half > hi_half) throw std::invalid_argument("empty grid window");
        const int width = hi_ - lo_ + 1;
        values_.reserve(static_cast<std::size_t>(n) * width);
        for (int a = 1; a <= n; ++a)
            for (int h = lo_; h <= hi_; ++h) {
                std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                  static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(h)};
                std::mt19937_64 rng(seq);
                values_.push_back(sample_rational(rng));
            }
    }

    int rank() const { return n_; }
    int N() const { return 2 * n_ + 2; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    std::uint64_t seed() const { return seed_; }
    const CartanData& cartan() const { return cartan_; }

    const mpq_class& q(int a, int half) const {
        if (a < 1 || a > n_) throw std::out_of_range("grid has no Q_" + std::to_string(a));
        if (half < lo_ || half > hi_)
            throw std::out_of_range("Q argument " + format_shift(half) + " outside the grid window");
        return values_[static_cast<std::size_t>(a - 1) * (hi_ - lo_ + 1) + (half - lo_)];
    }

    LaurentPoly prepare(const LaurentPoly& p) const { return to_q(p, cartan_); }

    /// A Q-polynomial at u + at_half/2.
    mpq_class eval_q(const LaurentPoly& qpoly, int at_half) const {
        return evaluate(qpoly, [&](const VarKey& v) -> mpq_class {
            if (v.family != Family::Q) throw MissingAssignment(v);
            return q(v.index, v.half_shift + at_half);
        });
    }

    mpq_class value(const LaurentPoly& p, int at_half) const { return eval_q(prepare(p), at_half); }

    nlohmann::json to_json() const { return {{"rank", n_}, {"window", {lo_, hi_}}, {"seed", seed_}}; }

private:
    CartanData cartan_;
    int n_, lo_, hi_;
    std::uint64_t seed_;
    std::vector<mpq_class> values_;
};

inline RationalGrid instantiate_grid(int n, int lo_half, int hi_half, std::uint64_t seed) {
    return RationalGrid(n, lo_half, hi_half, seed);
}

enum class BasisKind { generic, triangular, table };

inline const char* basis_name(BasisKind k) {
    switch (k) {
    case BasisKind::generic: return "generic";
    case BasisKind::triangular: return "triangular";
    case BasisKind::table: return "table";
    }
    return "?";
}

/// w_1..w_N at the points u + s, 0 <= s < length.
struct SolutionBasis {
    BasisKind kind = BasisKind::generic;
    std::vector<std::vector<mpq_class>> values;

    int size() const { return static_cast<int>(values.size()); }
    int length() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }
    const mpq_class& w(int m, int s) const {
        if (m < 1 || m > size()) throw std::out_of_range("basis has no function w_" + std::to_string(m));
        if (s < 0 || s >= length()) throw std::out_of_range("offset " + std::to_string(s) + " outside the solved range");
        return values[m - 1][s];
    }
};

/// Coefficients (-1)^i T^{(i)}_1(u + s + i/2) of w(u+s+N) = sum_i c_i w(u+s+i).
inline std::vector<LaurentPoly> recursion_templates(const Characters& ch, const RationalGrid& grid) {
    std::vector<LaurentPoly> t;
    for (int i = 0; i < ch.N(); ++i) t.push_back(grid.prepare(i % 2 == 0 ? ch.T1(i) : -ch.T1(i)));
    return t;
}

inline SolutionBasis solve_basis(const Characters& ch, const RationalGrid& grid, BasisKind kind, int length) {
    const int n = ch.rank(), N = ch.N();
    if (grid.rank() != n) throw std::invalid_argument("grid rank mismatch");
    if (length < N + 1) throw std::invalid_argument("basis length must exceed N");
    SolutionBasis b;
    b.kind = kind;
    b.values.assign(N, std::vector<mpq_class>(length));
    if (kind == BasisKind::generic) {
        auto tmpl = recursion_templates(ch, grid);
        for (int m = 0; m < N; ++m) b.values[m][m] = 1;
        for (int s = 0; s + N < length; ++s) {
            std::vector<mpq_class> c(N);
            for (int i = 0; i < N; ++i) c[i] = grid.eval_q(tmpl[i], 2 * s + i);
            for (int m = 0; m < N; ++m) {
                mpq_class v = 0;
                for (int i = 0; i < N; ++i) v += c[i] * b.values[m][s + i];
                b.values[m][s + N] = guard_bits(v);
            }
        }
    } else if (kind == BasisKind::triangular) {
        // L_m = (D - c_{N+1-m}) ... (D - c_N) with c_i(u) = eps_i x_i(u+n+1-i):
        // solve the leftmost factor homogeneously, then peel factors to the right.
        std::vector<std::vector<mpq_class>> coef(N + 1, std::vector<mpq_class>(length));
        for (int i = 1; i <= N; ++i) {
            auto x = grid.prepare(ch.vt().x(i));
            int eps = (i == n + 1 || i == n + 2) ? -1 : 1;
            for (int s = 0; s + 1 < length; ++s) coef[i][s] = eps * grid.eval_q(x, 2 * (s + n + 1 - i));
        }
        for (int m = 1; m <= N; ++m) {
            std::vector<mpq_class> g(length), src(length, mpq_class(0));
            for (int i = N + 1 - m; i <= N; ++i) {
                g[0] = 1;
                for (int s = 0; s + 1 < length; ++s) g[s + 1] = guard_bits(coef[i][s] * g[s] + src[s]);
                src = g;
            }
            b.values[m - 1] = g;
        }
    } else {
        throw std::invalid_argument("random tables come from random_table");
    }
    return b;
}

/// Arbitrary values with no difference equation behind them.
inline SolutionBasis random_table(int N, int length, std::mt19937_64& rng) {
    SolutionBasis b;
    b.kind = BasisKind::table;
    b.values.assign(N, std::vector<mpq_class>(length));
    for (auto& row : b.values)
        for (auto& v : row) v = sample_rational(rng, 15);
    return b;
}

/// [i_1, ..., i_m] at u + at, built from w_1..w_m.
inline mpq_class casorati_det(const SolutionBasis& b, int at, const std::vector<int>& idx) {
    const int m = static_cast<int>(idx.size());
    if (m > b.size()) throw std::invalid_argument("more indices than basis functions");
    RationalMatrix M(m, std::vector<mpq_class>(m));
    for (int r = 0; r < m; ++r)
        for (int k = 0; k < m; ++k) M[r][k] = b.w(r + 1, at + idx[k]);
    return det_rational(std::move(M));
}

inline std::vector<int> consecutive(int from, int to) {
    std::vector<int> v;
    for (int i = from; i <= to; ++i) v.push_back(i);
    return v;
}

/// xi^{(a)}_m = [0, ..., a-1, a+m, ..., N+m-1].
inline mpq_class xi(const SolutionBasis& b, int at, int a, int m) {
    std::vector<int> idx = consecutive(0, a - 1);
    for (int r = a + m; r <= b.size() + m - 1; ++r) idx.push_back(r);
    return casorati_det(b, at, idx);
}

/// x~_m = [0..m-1][2..m] / ([1..m][1..m-1]).
inline mpq_class x_tilde(const SolutionBasis& b, int at, int m) {
    return checked_div(casorati_det(b, at, consecutive(0, m - 1)) * casorati_det(b, at, consecutive(2, m)),
                       casorati_det(b, at, consecutive(1, m)) * casorati_det(b, at, consecutive(1, m - 1)));
}

/// Sum over semistandard tableaux on (width^N) / mu with letters 1..N of
/// prod weight(letter, alpha, beta); alpha counts rows from the bottom and
/// beta columns from the left.
template <class Weight>
mpq_class skew_tableau_sum(int N, int width, const std::vector<int>& mu, Weight&& weight) {
    auto mu_at = [&](int r) { return r <= static_cast<int>(mu.size()) ? mu[r - 1] : 0; };
    if (!mu.empty() && mu[0] > width) throw std::invalid_argument("partition wider than the rectangle");
    std::vector<std::pair<int, int>> boxes;
    for (int r = 1; r <= N; ++r)
        for (int c = mu_at(r) + 1; c <= width; ++c) boxes.push_back({r, c});
    std::vector<std::vector<int>> t(N + 1, std::vector<int>(width + 1, 0));
    mpq_class total = 0;
    auto rec = [&](auto&& self, std::size_t k, const mpq_class& acc) -> void {
        if (k == boxes.size()) {
            total += acc;
            return;
        }
        auto [r, c] = boxes[k];
        int low = 1;
        if (c - 1 > mu_at(r)) low = std::max(low, t[r][c - 1]);
        if (r > 1 && c > mu_at(r - 1)) low = std::max(low, t[r - 1][c] + 1);
        // the column continues to row N with strictly larger letters
        for (int v = low; v <= r; ++v) {
            t[r][c] = v;
            self(self, k + 1, acc * weight(v, N + 1 - r, c));
        }
    };
    rec(rec, 0, mpq_class(1));
    return total;
}

/// Casorati index sets of several skew shapes with N entries starting at 0.
inline std::vector<std::vector<int>> default_shapes(int N) {
    std::vector<std::vector<int>> out;
    std::vector<int> pairs;
    for (int r = 0; r < N; ++r) pairs.push_back(r + r / 2);
    out.push_back(pairs);
    out.push_back(hook_indices(N, 1, N + 2));
    auto bump = consecutive(0, N - 1);
    bump[N - 1] += 2;
    bump[N - 2] += 1;
    out.push_back(bump);
    auto column = consecutive(0, N - 1);
    for (int r = N / 2; r < N; ++r) column[r] += 1;
    out.push_back(column);
    return out;
}

inline std::vector<std::string> offset_text(int at) { return {"u+" + std::to_string(at)}; }

/// [0..N-1] = -[1..N], the Weyl type formula for every 0 <= a <= N and the
/// hook ratios -[0..i-1, i+1..N-1, k]/[0..N-1] = H^{(i)}_k(u + i/2), k <= k_max.
inline EvalReport verify_weyl_type(Characters& ch, const RationalGrid& grid, const SolutionBasis& b,
                                   const std::vector<int>& points, int k_max) {
    const int N = ch.N();
    EvalReport rep{"weyl_type", {}};
    const std::string kind = basis_name(b.kind);
    std::vector<LaurentPoly> fund;
    for (int a = 0; a <= N; ++a) fund.push_back(grid.prepare(ch.T1(a)));
    for (int s : points) {
        mpq_class top = casorati_det(b, s, consecutive(1, N));
        mpq_class xi0 = casorati_det(b, s, consecutive(0, N - 1));
        rep.add("shift", {{"basis", kind}}, offset_text(s), xi0, -top);
        for (int a = 0; a <= N; ++a) {
            auto idx = consecutive(0, N);
            idx.erase(idx.begin() + a);
            rep.add("fundamental", {{"basis", kind}, {"a", a}}, offset_text(s), grid.eval_q(fund[a], 2 * s + a),
                    checked_div(casorati_det(b, s, idx), top));
        }
        for (int k = 0; k <= k_max; ++k)
            for (int i = 0; i < N; ++i)
                rep.add("hook", {{"basis", kind}, {"i", i}, {"k", k}}, offset_text(s), grid.value(ch.H(i, k), 2 * s + i),
                        -checked_div(casorati_det(b, s, hook_indices(N, i, k)), xi0));
    }
    return rep;
}

/// Both sides of every Weyl type and hook ratio agree between two bases.
inline EvalReport compare_bases(int N, const SolutionBasis& a, const SolutionBasis& b, const std::vector<int>& points,
                                int k_max) {
    EvalReport rep{"basis_independence", {}};
    for (int s : points) {
        auto ratio = [&](const SolutionBasis& w, const std::vector<int>& idx, const std::vector<int>& den) {
            return checked_div(casorati_det(w, s, idx), casorati_det(w, s, den));
        };
        for (int x = 0; x <= N; ++x) {
            auto idx = consecutive(0, N);
            idx.erase(idx.begin() + x);
            rep.add("fundamental", {{"a", x}}, offset_text(s), ratio(a, idx, consecutive(1, N)),
                    ratio(b, idx, consecutive(1, N)));
        }
        for (int k = N; k <= k_max; ++k)
            for (int i = 0; i < N; ++i)
                rep.add("hook", {{"i", i}, {"k", k}}, offset_text(s), ratio(a, hook_indices(N, i, k), consecutive(0, N - 1)),
                        ratio(b, hook_indices(N, i, k), consecutive(0, N - 1)));
    }
    return rep;
}

/// w(u+s+N) = sum_i (-1)^i T^{(i)}_1(u+s+i/2) w(u+s+i) for a sequence w(u+s).
inline EvalReport verify_difference_equation(const Characters& ch, const RationalGrid& grid,
                                             const std::vector<mpq_class>& w, const std::string& label) {
    const int N = ch.N();
    EvalReport rep{"difference_equation", {}};
    auto tmpl = recursion_templates(ch, grid);
    for (int s = 0; s + N < static_cast<int>(w.size()); ++s) {
        mpq_class rhs = 0;
        for (int i = 0; i < N; ++i) rhs += grid.eval_q(tmpl[i], 2 * s + i) * w[s + i];
        rep.add("recursion", {{"solution", label}}, offset_text(s), w[s + N], rhs);
    }
    return rep;
}

/// q_j of the leading Casoratian [0..j-1] = phi_j q_j, as a Q-monomial at u.
inline LaurentPoly leading_q(int n, int j) {
    const int N = 2 * n + 2;
    if (j < 1 || j > N - 1) throw std::out_of_range("q_j needs 1 <= j <= N-1");
    auto Q = [](int a, int h, int e = 1) { return std::pair<VarKey, int>{Qv(a, h), e}; };
    if (j <= n - 1) return LaurentPoly::monomial(1, {Q(j, j - 1)});
    if (j == n) return LaurentPoly::monomial(1, {Q(n, n), Q(n, n - 2)});
    if (j == n + 1) return LaurentPoly::monomial(1, {Q(n, n, 2)});
    if (j == n + 2) return LaurentPoly::monomial(1, {Q(n, n), Q(n, n + 2)});
    return LaurentPoly::monomial(1, {Q(N - j, j - 1)});
}

/// On the triangular basis: x~_m = x_m for 1 <= m <= N, and each leading
/// Casoratian obeys [0..j-1](u+1) = sigma'_j q_j(u+1)/q_j(u) [0..j-1](u).
inline EvalReport verify_triangular(const Characters& ch, const RationalGrid& grid, const SolutionBasis& b,
                                    const std::vector<int>& points) {
    const int n = ch.rank(), N = ch.N();
    EvalReport rep{"triangular_basis", {}};
    for (int s : points) {
        for (int m = 1; m <= N; ++m)
            rep.add("x_tilde", {{"m", m}}, offset_text(s), x_tilde(b, s, m), grid.value(ch.vt().x(m), 2 * s));
        for (int j = 1; j <= N - 1; ++j) {
            auto q = grid.prepare(leading_q(n, j));
            int sigma = j <= n + 1 ? 1 : -1;
            mpq_class lhs = casorati_det(b, s + 1, consecutive(0, j - 1));
            mpq_class rhs = sigma * checked_div(grid.eval_q(q, 2 * s + 2), grid.eval_q(q, 2 * s)) *
                            casorati_det(b, s, consecutive(0, j - 1));
            rep.add("leading_first_order", {{"j", j}}, offset_text(s), lhs, rhs);
        }
    }
    return rep;
}

/// Plucker and duality relations of xi, xi^{(n+1)}_odd = 0, the two
/// composite identities, and the rectangle formulas against Jacobi-Trudi and
/// Pfaffian values on the grid, for 0 <= m <= m_max.
inline EvalReport verify_tsystem_casorati(Characters& ch, const RationalGrid& grid, const SolutionBasis& b,
                                          int m_max, const std::vector<int>& points) {
    const int n = ch.rank(), N = ch.N(), h = n + 1;
    EvalReport rep{"tsystem_casorati", {}};
    auto sign = [](int e) { return e % 2 == 0 ? 1 : -1; };
    for (int s : points) {
        auto X = [&](int a, int m, int d = 0) { return xi(b, s + d, a, m); };
        auto pt = offset_text(s);
        mpq_class xi0 = X(0, 0), xi1 = X(0, 0, 1);
        for (int m = 1; m <= m_max; ++m)
            for (int a = 1; a <= N - 1; ++a)
                rep.add("plucker", {{"a", a}, {"m", m}}, pt, X(a, m) * X(a, m, 1),
                        X(a, m + 1) * X(a, m - 1, 1) + X(a + 1, m) * X(a - 1, m, 1));
        for (int m = 0; m <= m_max; ++m)
            for (int a = 0; a <= N; ++a)
                rep.add("duality", {{"a", a}, {"m", m}}, pt, X(a, m), sign(a - h + m) * X(N - a, m, a - h));
        for (int m = 1; m <= 2 * m_max + 1; m += 2) rep.add("middle_odd", {{"m", m}}, pt, X(h, m), 0);
        for (int m = 0; m <= m_max; ++m) {
            rep.add("composite_even", {{"m", m}}, pt, X(n, 2 * m) * X(n + 2, 2 * m, -1),
                    X(h, 2 * m) * X(h, 2 * m, -1));
            rep.add("composite_odd", {{"m", m}}, pt, X(n, 2 * m + 1) * X(n + 2, 2 * m + 1, -1),
                    -X(h, 2 * m) * X(h, 2 * m + 2, -1));
        }
        for (int a = 1; a <= n - 1; ++a)
            for (int m = 0; m <= m_max; ++m) {
                mpq_class t = grid.value(ch.T(a, m), 2 * s + a + m - 1);
                rep.add("rectangle", {{"a", a}, {"m", m}}, pt, t, sign(m) * checked_div(X(a, m), xi0));
                rep.add("rectangle_dual", {{"a", a}, {"m", m}}, pt, t,
                        sign(a - h) * checked_div(X(N - a, m, a - h), xi0));
            }
        for (int m = 0; m <= m_max; ++m) {
            const int v = 2 * s + n + 2 * m;
            mpq_class tm = grid.value(ch.T(n, m), v);
            mpq_class prev = grid.value(ch.T(n, m), v - 2);
            mpq_class next = grid.value(ch.T(n, m + 1), v);
            rep.add("last_pair", {{"m", m}}, pt, tm * prev, checked_div(X(n, 2 * m), xi0));
            rep.add("last_pair_dual", {{"m", m}}, pt, tm * prev, checked_div(X(n + 2, 2 * m, -1), xi1));
            rep.add("last_step", {{"m", m}}, pt, tm * next, checked_div(X(n, 2 * m + 1), xi1));
            rep.add("last_step_dual", {{"m", m}}, pt, tm * next, checked_div(X(n + 2, 2 * m + 1, -1), xi1));
            rep.add("last_square", {{"m", m}}, pt, tm * tm, checked_div(X(h, 2 * m), xi0));
            mpq_class lower = sign(m), upper = 1;
            for (int j = 1; j <= m; ++j) {
                lower *= checked_div(X(n, 2 * j - 1, 1), X(n, 2 * j - 2, 1));
                upper *= checked_div(X(n + 2, 2 * j - 1), X(n + 2, 2 * j - 2));
            }
            rep.add("last_product", {{"m", m}, {"via", n}}, pt, tm, lower);
            rep.add("last_product", {{"m", m}, {"via", n + 2}}, pt, tm, upper);
        }
    }
    return rep;
}

/// Padded transpose mu'_1..mu'_width.
inline std::vector<int> padded_transpose(const std::vector<int>& mu, int width) {
    auto t = transpose_partition(mu);
    t.resize(std::max<int>(width, static_cast<int>(t.size())), 0);
    return t;
}

/// On arbitrary data: [0, i_1, ..., i_{N-1}] / [m, ..., m+N-1] equals the
/// tableau sum in x~ over (m^N)/mu and the Jacobi-Trudi determinant in e~.
inline EvalReport verify_nnsy_table(const SolutionBasis& b, const std::vector<std::vector<int>>& shapes,
                                    const std::vector<int>& extra_widths, const std::vector<int>& points) {
    const int N = b.size();
    EvalReport rep{"nnsy_table", {}};
    for (int s : points) {
        std::vector<std::vector<mpq_class>> xt(N + 1);
        // x~_l(u + d) for -N <= d <= 2N, stored at d + N
        for (int l = 1; l <= N; ++l)
            for (int d = -N; d <= 2 * N; ++d) xt[l].push_back(x_tilde(b, s + d, l));
        auto xv = [&](int l, int d) { return xt[l].at(d + N); };
        for (const auto& idx : shapes) {
            auto mu = index_partition(idx);
            const int mu1 = mu.empty() ? 0 : mu[0];
            for (int extra : extra_widths) {
                const int m = mu1 + extra;
                mpq_class lhs = checked_div(casorati_det(b, s, idx), casorati_det(b, s, consecutive(m, m + N - 1)));
                mpq_class tab = skew_tableau_sum(N, m, mu, [&](int l, int al, int be) { return xv(l, al + be - 2); });
                auto mt = padded_transpose(mu, m);
                RationalMatrix M(m, std::vector<mpq_class>(m));
                for (int j = 1; j <= m; ++j)
                    for (int l = 1; l <= m; ++l) {
                        const int a = N - mt[j - 1] - l + j;
                        const int base = N - 1 + j - mt[j - 1];
                        mpq_class e = 0;
                        if (a == 0) e = 1;
                        else if (a > 0 && a <= N) {
                            std::vector<int> pick(a);
                            // increasing a-subsets of 1..N, letter k-th at u + base - k
                            auto rec = [&](auto&& self, int k, int from, const mpq_class& acc) -> void {
                                if (k == a) {
                                    e += acc;
                                    return;
                                }
                                for (int v = from; v <= N - (a - k - 1); ++v) self(self, k + 1, v + 1, acc * xv(v, base - k - 1));
                            };
                            rec(rec, 0, 1, mpq_class(1));
                        }
                        M[j - 1][l - 1] = e;
                    }
                nlohmann::json params{{"indices", idx}, {"width", m}};
                rep.add("tableau_sum", params, offset_text(s), lhs, tab);
                rep.add("jacobi_trudi", params, offset_text(s), lhs, det_rational(std::move(M)));
            }
        }
    }
    return rep;
}

/// On the triangular basis: [0, i_1, ..., i_{N-1}] / [0..N-1] equals
/// (-1)^{mu_1} times the tableau sum in x over (mu_1^N)/mu, and the symbolic
/// T-determinant evaluated on the grid.
inline EvalReport verify_skew_ratios(const Characters& ch, const RationalGrid& grid, const SolutionBasis& b,
                                     const std::vector<std::vector<int>>& shapes, const std::vector<int>& points) {
    const int N = ch.N();
    EvalReport rep{"skew_ratio", {}};
    std::vector<LaurentPoly> xq;
    for (int l = 1; l <= N; ++l) xq.push_back(grid.prepare(ch.vt().x(l)));
    for (const auto& idx : shapes) {
        auto mu = index_partition(idx);
        const int mu1 = mu.empty() ? 0 : mu[0];
        auto sym = grid.prepare(casorati_ratio(ch, idx));
        for (int s : points) {
            mpq_class lhs = checked_div(casorati_det(b, s, idx), casorati_det(b, s, consecutive(0, N - 1)));
            mpq_class tab = skew_tableau_sum(N, mu1, mu, [&](int l, int al, int be) {
                return grid.eval_q(xq[l - 1], 2 * (s + al + be - 2));
            });
            if (mu1 % 2 != 0) tab = -tab;
            nlohmann::json params{{"indices", idx}, {"basis", basis_name(b.kind)}};
            rep.add("tableau_sum", params, offset_text(s), lhs, tab);
            rep.add("t_determinant", params, offset_text(s), lhs, grid.eval_q(sym, 2 * s));
        }
    }
    return rep;
}

struct CasoratiOptions {
    int rank = 2;
    std::uint64_t seed = 1;
    int m_max = 2;
    int points = 3;
    bool full = true; ///< false: only the Weyl type and hook ratios
};

struct CasoratiSuite {
    CasoratiOptions options;
    std::uint64_t seed_used = 0;
    std::vector<std::uint64_t> resampled;
    nlohmann::json grid;
    std::vector<EvalReport> reports;

    bool ok() const {
        for (const auto& r : reports)
            if (!r.ok()) return false;
        return !reports.empty();
    }
    const EvalReport* find(const std::string& name) const {
        for (const auto& r : reports)
            if (r.name == name) return &r;
        return nullptr;
    }
    nlohmann::json to_json() const {
        nlohmann::json rs = nlohmann::json::array();
        for (const auto& r : reports) rs.push_back(r.to_json());
        return {{"suite", "casorati"},  {"rank", options.rank},   {"seed", options.seed},
                {"seed_used", seed_used}, {"resampled", resampled}, {"grid", grid},
                {"ok", ok()},            {"reports", rs}};
    }
};

/// Evaluation offsets start at n+1 so that the dual forms, which look at
/// u - n - 1, stay inside the solved range.
inline CasoratiSuite run_casorati_suite(const CasoratiOptions& opt, int max_attempts = 8) {
    if (opt.rank < 2) throw std::out_of_range("the C-series needs rank >= 2");
    if (opt.points < 1 || opt.m_max < 0) throw std::invalid_argument("need at least one point and m_max >= 0");
    const int n = opt.rank, N = 2 * n + 2, k_max = N + 3;
    Characters ch(n);
    std::vector<int> points;
    for (int p = 0; p < opt.points; ++p) points.push_back(n + 1 + p);
    const int reach = std::max({k_max, N + 2 * opt.m_max + 1, N + n + opt.m_max + 1});
    const int length = points.back() + reach + 2;
    const int lo = -2 * N - 8, hi = 2 * length + 2 * N + 8;
    CasoratiSuite suite;
    suite.options = opt;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const std::uint64_t seed = opt.seed + attempt;
        try {
            auto grid = instantiate_grid(n, lo, hi, seed);
            auto generic = solve_basis(ch, grid, BasisKind::generic, length);
            auto tri = solve_basis(ch, grid, BasisKind::triangular, length);
            std::vector<EvalReport> reps;
            reps.push_back(verify_weyl_type(ch, grid, generic, points, k_max));
            reps.back().append(verify_weyl_type(ch, grid, tri, points, k_max));
            if (opt.full) {
                reps.push_back(compare_bases(N, generic, tri, points, k_max));
                std::vector<mpq_class> q1;
                for (int s = 0; s < length; ++s) q1.push_back(grid.q(1, 2 * s));
                reps.push_back(verify_difference_equation(ch, grid, q1, "Q_1"));
                for (int m = 1; m <= N; ++m)
                    reps.back().append(verify_difference_equation(ch, grid, tri.values[m - 1], "triangular w_" + std::to_string(m)));
                reps.push_back(verify_triangular(ch, grid, tri, points));
                reps.push_back(verify_tsystem_casorati(ch, grid, tri, opt.m_max, points));
                auto shapes = default_shapes(N);
                shapes.insert(shapes.begin(), consecutive(0, N - 1));
                reps.push_back(verify_skew_ratios(ch, grid, tri, shapes, points));
                std::mt19937_64 rng(seed);
                const int table_len = points.back() + 4 * N + 4;
                auto table = random_table(N, table_len, rng);
                std::vector<int> tpoints;
                for (int s : points) tpoints.push_back(s + N);
                reps.push_back(verify_nnsy_table(table, shapes, {0, 1}, tpoints));
            }
            suite.seed_used = seed;
            suite.grid = grid.to_json();
            suite.reports = std::move(reps);
            return suite;
        } catch (const DegenerateGrid&) {
            suite.resampled.push_back(seed);
        }
    }
    throw std::runtime_error("no non-degenerate grid after " + std::to_string(max_attempts) + " attempts");
}

} // namespace qdiff
