#pragma once

// Column, row and x-alphabet tableaux, their weights, and the maps tau_b /
// sigma_b that pair the non-admissible terms of the fundamental characters.
//
// Letters are stored as positions of the x-alphabet 1..N (N = 2n+2): the
// plain letter a sits at a, the barred letter abar at 2n+3-a, and n+1, n+2
// are the two middle letters that only occur in x-tableaux. The integer
// order then agrees with 1 < ... < n < nbar < ... < 1bar.

#include "ring.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdiff {

struct Letter {
    static int plain(int a) { return a; }
    static int barred(int a, int n) { return 2 * n + 3 - a; }
    static bool is_plain(int c, int n) { return c >= 1 && c <= n; }
    static bool is_barred(int c, int n) { return c >= n + 3 && c <= 2 * n + 2; }
    static bool is_middle(int c, int n) { return c == n + 1 || c == n + 2; }
    /// The underlying index a of a or abar.
    static int value(int c, int n) { return is_barred(c, n) ? 2 * n + 3 - c : c; }
};

struct Tableau {
    std::vector<int> entries;
    /// Half-units of v in X_v / Z_v: letter k carries the shift v + 1 - k.
    int base_half_shift = 0;

    int size() const { return static_cast<int>(entries.size()); }
    friend bool operator==(const Tableau& a, const Tableau& b) { return a.entries == b.entries; }
    friend bool operator<(const Tableau& a, const Tableau& b) { return a.entries < b.entries; }
};

inline std::string letter_text(int c, int n) {
    if (Letter::is_plain(c, n)) return std::to_string(c);
    if (Letter::is_barred(c, n)) return std::to_string(Letter::value(c, n)) + "~";
    if (Letter::is_middle(c, n)) return "x" + std::to_string(c);
    throw std::out_of_range("letter code out of range");
}

inline std::string to_text(const Tableau& t, int n) {
    std::string s;
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        if (i) s += ' ';
        s += letter_text(t.entries[i], n);
    }
    return s;
}

inline nlohmann::json to_json(const Tableau& t, int n) {
    nlohmann::json arr = nlohmann::json::array();
    for (int c : t.entries) {
        if (Letter::is_middle(c, n)) {
            arr.push_back({{"x", c}});
        } else {
            arr.push_back({{"bar", Letter::is_barred(c, n)}, {"v", Letter::value(c, n)}});
        }
    }
    return arr;
}

/// Parses "3 5 9~" (and "x3" for a middle x-letter).
inline Tableau parse_tableau(const std::string& text, int n) {
    Tableau t;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == 'x') {
            int c = std::stoi(tok.substr(1));
            if (!Letter::is_middle(c, n)) throw std::invalid_argument("bad middle letter " + tok);
            t.entries.push_back(c);
            continue;
        }
        bool bar = tok.back() == '~';
        int v = std::stoi(bar ? tok.substr(0, tok.size() - 1) : tok);
        if (v < 1 || v > n) throw std::invalid_argument("letter out of range: " + tok);
        t.entries.push_back(bar ? Letter::barred(v, n) : Letter::plain(v));
    }
    return t;
}

enum class Convention { Z, X };

/// Weight template of a letter at base point u.
inline const LaurentPoly& letter_template(int c, const VariableTable& vt, Convention conv) {
    const int n = vt.rank();
    if (conv == Convention::X) return vt.x(c);
    if (Letter::is_plain(c, n)) return vt.z(c);
    if (Letter::is_barred(c, n)) return vt.zbar(Letter::value(c, n));
    throw std::invalid_argument("middle x-letter has no z-weight");
}

/// Z_v or X_v: product of the letter templates at v + 1 - k.
inline LaurentPoly tableau_weight(const Tableau& t, const VariableTable& vt, Convention conv) {
    LaurentPoly w(1);
    for (int k = 1; k <= t.size(); ++k)
        w *= letter_template(t.entries[k - 1], vt, conv).shifted(t.base_half_shift + 2 - 2 * k);
    return w;
}

/// Row weight: letter k of a length-m row at u + (2k - m - 2)/2 + base.
inline LaurentPoly row_weight(const Tableau& t, const VariableTable& vt) {
    LaurentPoly w(1);
    const int m = t.size();
    for (int k = 1; k <= m; ++k)
        w *= letter_template(t.entries[k - 1], vt, Convention::Z).shifted(t.base_half_shift + 2 * k - m - 2);
    return w;
}

/// Sum of weights, collected once and canonicalized at the end.
template <class WeightFn> LaurentPoly weight_sum(const std::vector<Tableau>& ts, WeightFn&& weight) {
    std::vector<Monomial> terms;
    for (const auto& t : ts) {
        auto w = weight(t);
        for (const auto& m : w.terms()) terms.push_back(m);
    }
    return LaurentPoly::from_terms(std::move(terms));
}

inline std::vector<int> j_alphabet(int n) {
    std::vector<int> letters;
    for (int a = 1; a <= n; ++a) letters.push_back(a);
    for (int a = n; a >= 1; --a) letters.push_back(Letter::barred(a, n));
    return letters;
}

namespace detail {

inline void increasing_sequences(const std::vector<int>& alphabet, int len, std::size_t from, std::vector<int>& cur,
                                 const std::function<void(const std::vector<int>&)>& emit) {
    if (static_cast<int>(cur.size()) == len) {
        emit(cur);
        return;
    }
    for (std::size_t i = from; i + (len - cur.size()) <= alphabet.size(); ++i) {
        cur.push_back(alphabet[i]);
        increasing_sequences(alphabet, len, i + 1, cur, emit);
        cur.pop_back();
    }
}

} // namespace detail

/// Every strictly increasing array over the given alphabet, lexicographic.
inline void for_each_increasing(const std::vector<int>& alphabet, int len,
                                const std::function<void(const std::vector<int>&)>& emit) {
    std::vector<int> cur;
    detail::increasing_sequences(alphabet, len, 0, cur, emit);
}

/// True when some pair (c, cbar) violates n + k - l >= c.
inline bool breaks_pair_condition(const std::vector<int>& e, int n) {
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (!Letter::is_plain(e[k], n)) continue;
        int c = e[k];
        for (std::size_t l = k + 1; l < e.size(); ++l) {
            if (e[l] == Letter::barred(c, n) && n + static_cast<int>(k) - static_cast<int>(l) < c) return true;
        }
    }
    return false;
}

inline bool strictly_increasing(const std::vector<int>& e) {
    for (std::size_t i = 1; i < e.size(); ++i)
        if (e[i - 1] >= e[i]) return false;
    return true;
}

/// Admissible column tableaux of T^{(a)}_1(u); base point u + a/2 - 1.
inline std::vector<Tableau> gen_column_tableaux(int n, int a) {
    if (a < 0 || a > n) throw std::out_of_range("column length must satisfy 0 <= a <= n");
    std::vector<Tableau> out;
    for_each_increasing(j_alphabet(n), a, [&](const std::vector<int>& e) {
        if (!breaks_pair_condition(e, n)) out.push_back({e, a - 2});
    });
    return out;
}

/// Every strictly increasing array 1 <= i_1 < ... < i_a <= N; base u + a/2 - 1.
inline std::vector<Tableau> gen_x_tableaux(int n, int a) {
    const int N = 2 * n + 2;
    if (a < 0 || a > N) throw std::out_of_range("x-tableau length must satisfy 0 <= a <= N");
    std::vector<int> alphabet;
    for (int i = 1; i <= N; ++i) alphabet.push_back(i);
    std::vector<Tableau> out;
    for_each_increasing(alphabet, a, [&](const std::vector<int>& e) { out.push_back({e, a - 2}); });
    return out;
}

enum class RowRule {
    /// Weakly increasing except for isolated (nbar, n) descents: a descent
    /// may not be preceded by nbar nor followed by n. This is the set that
    /// reproduces -L^{-1}.
    expansion,
    /// Every adjacent pair weakly increasing or equal to (nbar, n), with no
    /// further restriction.
    literal,
};

inline bool row_admissible(const std::vector<int>& e, int n, RowRule rule) {
    const int nbar = Letter::barred(n, n);
    const int m = static_cast<int>(e.size());
    for (int k = 0; k + 1 < m; ++k) {
        if (e[k] <= e[k + 1]) continue;
        if (e[k] != nbar || e[k + 1] != n) return false;
        if (rule == RowRule::expansion) {
            if (k > 0 && e[k - 1] == nbar) return false;
            if (k + 2 < m && e[k + 2] == n) return false;
        }
    }
    return true;
}

/// Row tableaux of T^{(1)}_m(u), lexicographic in the letter order.
inline std::vector<Tableau> gen_row_tableaux(int n, int m, RowRule rule = RowRule::expansion) {
    if (m < 0) throw std::out_of_range("row length must be non-negative");
    const auto alphabet = j_alphabet(n);
    const int nbar = Letter::barred(n, n);
    std::vector<Tableau> out;
    std::vector<int> cur;
    // Depth-first over prefixes; a prefix is extended only if it can still
    // be admissible, which keeps the search linear in the output.
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == m) {
            out.push_back({cur, 0});
            return;
        }
        for (int c : alphabet) {
            if (!cur.empty()) {
                int prev = cur.back();
                bool descent = prev > c;
                if (descent && !(prev == nbar && c == n)) continue;
                if (rule == RowRule::expansion) {
                    std::size_t s = cur.size();
                    if (descent && s >= 2 && cur[s - 2] == nbar) continue;
                    // c == n right after an (nbar, n) descent
                    if (c == n && s >= 2 && cur[s - 2] == nbar && prev == n) continue;
                }
            }
            cur.push_back(c);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

// ---------------------------------------------------------------------------
// The sets V, W and the maps tau_b, sigma_b.

/// tau_b: every (b, bbar) pair with exactly n-b+1 letters in between becomes
/// (b-1, (b-1)bar). Identity when nothing matches.
inline Tableau tau_b(const Tableau& t, int b, int n) {
    if (b < 2 || b > n) throw std::out_of_range("tau_b needs 2 <= b <= n");
    Tableau r = t;
    const int gap = n - b + 1;
    const int bbar = Letter::barred(b, n);
    for (int i = 0; i + gap + 1 < t.size(); ++i) {
        if (t.entries[i] == b && t.entries[i + gap + 1] == bbar) {
            r.entries[i] = b - 1;
            r.entries[i + gap + 1] = Letter::barred(b - 1, n);
        }
    }
    return r;
}

/// sigma_b: every (b-1, (b-1)bar) pair with exactly n-b+1 letters in
/// between becomes (b, bbar).
inline Tableau sigma_b(const Tableau& t, int b, int n) {
    if (b < 3 || b > n) throw std::out_of_range("sigma_b needs 3 <= b <= n");
    Tableau r = t;
    const int gap = n - b + 1;
    const int cbar = Letter::barred(b - 1, n);
    for (int i = 0; i + gap + 1 < t.size(); ++i) {
        if (t.entries[i] == b - 1 && t.entries[i + gap + 1] == cbar) {
            r.entries[i] = b;
            r.entries[i + gap + 1] = Letter::barred(b, n);
        }
    }
    return r;
}

/// (i_1 < ... < i_k <= n, n, nbar, nbar <= j_1 < ...): the plain part ends
/// with n, the barred part starts with nbar, and apart from that inserted
/// (n, nbar) both parts are strictly increasing.
inline bool in_V(const Tableau& t, int n) {
    const auto& e = t.entries;
    const int nbar = Letter::barred(n, n);
    int split = 0;
    while (split < t.size() && Letter::is_plain(e[split], n)) ++split;
    for (int i = split; i < t.size(); ++i)
        if (!Letter::is_barred(e[i], n)) return false;
    if (split == 0 || split == t.size()) return false;
    if (e[split - 1] != n || e[split] != nbar) return false;
    std::vector<int> prefix(e.begin(), e.begin() + split - 1);
    std::vector<int> suffix(e.begin() + split + 1, e.end());
    if (!strictly_increasing(prefix) || !strictly_increasing(suffix)) return false;
    if (!prefix.empty() && prefix.back() > n) return false;
    return true;
}

inline bool in_W(const Tableau& t, int n) {
    for (int c : t.entries)
        if (!Letter::is_plain(c, n) && !Letter::is_barred(c, n)) return false;
    return strictly_increasing(t.entries) && breaks_pair_condition(t.entries, n);
}

struct VbShape {
    int l = 0, m = 0, alpha = 0, beta = 0, gamma = 0;
    int clause = 0; // which of the four shape conditions holds (1..4)
};

/// Membership in V_b, returning the re-derived decomposition
/// (i..., b^l, j..., bbar^m, k...) when the tableau belongs to some V_b^{l,m}.
inline std::optional<VbShape> vb_shape(const Tableau& t, int b, int n) {
    if (b < 2 || b > n) throw std::out_of_range("V_b needs 2 <= b <= n");
    const auto& e = t.entries;
    for (int c : e)
        if (!Letter::is_plain(c, n) && !Letter::is_barred(c, n)) return std::nullopt;
    const int bbar = Letter::barred(b, n);
    // Weakly increasing, repeats allowed only for b and bbar.
    for (int i = 1; i < t.size(); ++i) {
        if (e[i - 1] > e[i]) return std::nullopt;
        if (e[i - 1] == e[i] && e[i] != b && e[i] != bbar) return std::nullopt;
    }
    VbShape s;
    std::vector<int> js;
    for (int c : e) {
        if (c < b) ++s.alpha;
        else if (c == b) ++s.l;
        else if (c < bbar) js.push_back(c);
        else if (c == bbar) ++s.m;
        else ++s.gamma;
    }
    s.beta = static_cast<int>(js.size());
    if (s.l == 0 && s.m == 0) return std::nullopt;
    if (std::abs(s.l - s.m) > 1) return std::nullopt;
    // Pair condition on the middle segment for b < d <= n.
    for (int r = 0; r < s.beta; ++r) {
        int d = js[r];
        if (!Letter::is_plain(d, n) || d <= b) continue;
        for (int q = r + 1; q < s.beta; ++q)
            if (js[q] == Letter::barred(d, n) && n + r - q < d) return std::nullopt;
    }
    const int lb = s.l + s.beta;
    if (s.l == s.m && s.l >= 1 && lb == n - b + 1) s.clause = 1;
    else if (s.l == s.m && s.l >= 1 && lb == n - b + 2) s.clause = 2;
    else if (s.l == s.m + 1 && lb == n - b + 2) s.clause = 3;
    else if (s.l == s.m - 1 && lb == n - b + 1) s.clause = 4;
    else return std::nullopt;
    return s;
}

inline bool in_Vb(const Tableau& t, int b, int n) { return vb_shape(t, b, n).has_value(); }

inline bool in_Vb_lm(const Tableau& t, int b, int l, int m, int n) {
    auto s = vb_shape(t, b, n);
    return s && s->l == l && s->m == m;
}

struct BreakingPair {
    int q = 0;
    int gap = 0; // letters strictly between q and qbar
};

inline BreakingPair maximal_breaking_pair(const Tableau& t, int n) {
    if (!in_W(t, n)) throw std::invalid_argument("maximal_breaking_pair: tableau is not in W");
    BreakingPair best;
    const auto& e = t.entries;
    for (int k = 0; k < t.size(); ++k) {
        if (!Letter::is_plain(e[k], n)) continue;
        int c = e[k];
        for (int l = k + 1; l < t.size(); ++l) {
            if (e[l] == Letter::barred(c, n) && n + k - l < c && c > best.q) best = {c, l - k - 1};
        }
    }
    return best;
}

struct TauResult {
    Tableau image;
    int p = 0;
    std::vector<Tableau> chain; // t_n, t_{n-1}, ..., t_p
};

/// tau(t) = tau_{p+1} ... tau_n(t), stopping at the first trivial tau_p.
inline TauResult tau_full(const Tableau& t, int n) {
    if (!in_V(t, n)) throw std::invalid_argument("tau_full: tableau is not in V");
    const int a = t.size();
    const int a_sharp = n - a + 2;
    TauResult r;
    r.chain.push_back(t);
    Tableau cur = t;
    int d = n;
    while (true) {
        if (d < 2) throw std::logic_error("tau_full: no stopping index found");
        Tableau next = tau_b(cur, d, n);
        if (next == cur) break;
        cur = next;
        r.chain.push_back(cur);
        --d;
    }
    r.image = cur;
    r.p = d;
    if (r.p < a_sharp) throw std::logic_error("tau_full: stopping index below n-a+2");
    return r;
}

/// sigma(s) = sigma_n ... sigma_{p+1}(s) with (p, pbar) the maximal breaking pair.
inline Tableau sigma_full(const Tableau& s, int n) {
    int p = maximal_breaking_pair(s, n).q;
    Tableau cur = s;
    for (int b = p + 1; b <= n; ++b) cur = sigma_b(cur, b, n);
    return cur;
}

inline std::vector<Tableau> enumerate_V(int n, int a) {
    std::vector<Tableau> out;
    const auto alphabet = j_alphabet(n);
    std::vector<int> plain(alphabet.begin(), alphabet.begin() + n);
    std::vector<int> barred(alphabet.begin() + n, alphabet.end());
    for (int k = 0; k <= a - 2; ++k) {
        for_each_increasing(plain, k, [&](const std::vector<int>& pre) {
            for_each_increasing(barred, a - 2 - k, [&](const std::vector<int>& suf) {
                Tableau t;
                t.entries = pre;
                t.entries.push_back(n);
                t.entries.push_back(Letter::barred(n, n));
                t.entries.insert(t.entries.end(), suf.begin(), suf.end());
                out.push_back(std::move(t));
            });
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Tableau> enumerate_W(int n, int a) {
    std::vector<Tableau> out;
    for_each_increasing(j_alphabet(n), a, [&](const std::vector<int>& e) {
        if (breaks_pair_condition(e, n)) out.push_back({e, 0});
    });
    return out;
}

// ---------------------------------------------------------------------------
// Cancellation of the x-tableau sum.

struct CancellationReport {
    int n = 0, a = 0;
    std::size_t x_tableaux = 0;
    std::size_t admissible_tableaux = 0;
    std::size_t expected_count = 0;
    std::size_t result_terms = 0;
    bool x_sum_equals_z_sum = false;
    bool middle_groups_cancel = false;
    bool reduced_identity = false;
    // Only meaningful for 3 <= a <= n.
    bool bijection_checked = false;
    bool bijection_ok = true;
    std::size_t V_size = 0, W_size = 0;
    std::string failure;

    bool ok() const {
        return x_sum_equals_z_sum && middle_groups_cancel && reduced_identity && bijection_ok &&
               admissible_tableaux == expected_count && result_terms == expected_count;
    }
};

inline std::size_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

struct BijectionReport {
    bool ok = true;
    std::size_t V_size = 0, W_size = 0;
    std::string failure;
};

/// Exhaustive check that tau: V -> W and sigma: W -> V are inverse,
/// Z-weight preserving, and that tau lands on (p, pbar) with gap n-p.
inline BijectionReport verify_bijection(int n, int a, const VariableTable& vt) {
    BijectionReport rep;
    auto V = enumerate_V(n, a);
    auto W = enumerate_W(n, a);
    rep.V_size = V.size();
    rep.W_size = W.size();
    auto fail = [&](const std::string& why, const Tableau& t) {
        if (rep.ok) rep.failure = why + ": " + to_text(t, n);
        rep.ok = false;
    };
    std::set<std::vector<int>> images;
    for (const auto& t : V) {
        TauResult r = tau_full(t, n);
        for (std::size_t i = 0; i < r.chain.size(); ++i) {
            int d = n - static_cast<int>(i);
            if (!in_Vb(r.chain[i], d, n)) fail("chain element outside V_d", r.chain[i]);
        }
        if (!in_W(r.image, n)) {
            fail("tau image not in W", t);
            continue;
        }
        auto bp = maximal_breaking_pair(r.image, n);
        if (bp.q != r.p || bp.gap != n - r.p) fail("maximal breaking pair differs from (p, pbar)", t);
        if (!(tableau_weight(r.image, vt, Convention::Z) == tableau_weight(t, vt, Convention::Z)))
            fail("tau changes the Z-weight", t);
        if (!(sigma_full(r.image, n) == t)) fail("sigma(tau(t)) != t", t);
        images.insert(r.image.entries);
    }
    if (images.size() != W.size()) {
        rep.ok = false;
        if (rep.failure.empty()) rep.failure = "tau is not onto W";
    }
    for (const auto& s : W) {
        auto bp = maximal_breaking_pair(s, n);
        if (bp.gap != n - bp.q) fail("maximal breaking pair gap differs from n-q", s);
        Tableau t = sigma_full(s, n);
        if (!in_V(t, n)) {
            fail("sigma image not in V", s);
            continue;
        }
        if (!(tau_full(t, n).image == s)) fail("tau(sigma(s)) != s", s);
    }
    return rep;
}

inline CancellationReport verify_cancellation(int n, int a) {
    if (a < 1 || a > n) throw std::out_of_range("verify_cancellation needs 1 <= a <= n");
    VariableTable vt(AlgebraSpec(Series::C, n));
    const CartanData& cartan = vt.cartan();
    CancellationReport rep;
    rep.n = n;
    rep.a = a;
    rep.expected_count = binomial(2 * n, a) - binomial(2 * n, a - 2);

    auto xs = gen_x_tableaux(n, a);
    rep.x_tableaux = xs.size();
    auto zs = gen_column_tableaux(n, a);
    rep.admissible_tableaux = zs.size();

    auto xw = [&](const Tableau& t) { return tableau_weight(t, vt, Convention::X); };
    auto zw = [&](const Tableau& t) { return tableau_weight(t, vt, Convention::Z); };
    LaurentPoly x_sum = to_q(weight_sum(xs, xw), cartan);
    LaurentPoly z_sum = weight_sum(zs, zw);
    rep.result_terms = z_sum.size();
    rep.x_sum_equals_z_sum = (x_sum == to_q(z_sum, cartan));

    // Arrays with exactly one middle letter cancel in pairs.
    std::vector<Tableau> one_middle;
    for (const auto& t : xs) {
        int count = 0;
        for (int c : t.entries) count += Letter::is_middle(c, n);
        if (count == 1) one_middle.push_back(t);
    }
    rep.middle_groups_cancel = to_q(weight_sum(one_middle, xw), cartan).is_zero();

    // Non-admissible increasing arrays (W) against the (n, nbar) insertions (V).
    const int base = a - 2;
    std::vector<Tableau> V = a >= 2 ? enumerate_V(n, a) : std::vector<Tableau>{};
    std::vector<Tableau> W = enumerate_W(n, a);
    for (auto& t : V) t.base_half_shift = base;
    for (auto& t : W) t.base_half_shift = base;
    rep.V_size = V.size();
    rep.W_size = W.size();
    rep.reduced_identity = weight_sum(V, zw) == weight_sum(W, zw);

    if (a >= 3) {
        rep.bijection_checked = true;
        auto b = verify_bijection(n, a, vt);
        rep.bijection_ok = b.ok;
        if (!b.ok) rep.failure = b.failure;
    }
    if (!rep.ok() && rep.failure.empty()) rep.failure = "symbolic mismatch in the tableau sums";
    return rep;
}

} // namespace qdiff
