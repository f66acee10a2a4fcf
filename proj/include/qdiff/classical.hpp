#pragma once

// Classical limits: beta sends Y_a(u) to e^{Lambda_a}; C_n characters of
// hook labels (alpha|gamma) by the Weyl determinant ratio; checks of the
// Pieri rule, the hook decompositions of the H-series, and beta' of Casorati
// ratios as alternant ratios.

#include "qchar.hpp"
#include "rational.hpp"

#include <random>
#include <string>
#include <vector>

namespace qdiff {

/// Frobenius hook (alpha|gamma): width alpha+1, depth gamma+1.
struct HookLabel {
    int alpha = -1;
    int gamma = 0;
};

inline std::string to_text(const HookLabel& h) {
    return "(" + std::to_string(h.alpha) + "|" + std::to_string(h.gamma) + ")";
}

/// Values of e^{eps_1}, ..., e^{eps_n}.
struct ClassicalPoint {
    std::vector<mpq_class> eps;

    int rank() const { return static_cast<int>(eps.size()); }
    int N() const { return 2 * rank() + 2; }

    mpq_class e_eps(int b) const { return eps.at(b - 1); }
    mpq_class e_lambda(int a) const {
        mpq_class r = 1;
        for (int b = 1; b <= a; ++b) r *= eps.at(b - 1);
        return r;
    }
    /// x_i = 1, -1 for i = n+1, n+2, else (e^{eps_{min(i, N+1-i)}})^{sigma_i}.
    mpq_class x(int i) const {
        const int n = rank();
        if (i == n + 1) return 1;
        if (i == n + 2) return -1;
        if (i <= n) return eps.at(i - 1);
        return mpq_class(1) / eps.at(N() - i);
    }
    std::vector<std::string> text() const {
        std::vector<std::string> s;
        for (const auto& e : eps) s.push_back(e.get_str());
        return s;
    }
};

/// The classical x_1..x_N are pairwise distinct, which makes both the
/// Vandermonde alternant and the C_n Weyl denominator nonzero.
inline bool is_generic(const ClassicalPoint& pt) {
    for (int i = 1; i <= pt.N(); ++i) {
        if (pt.x(i) == 0) return false;
        for (int j = i + 1; j <= pt.N(); ++j)
            if (pt.x(i) == pt.x(j)) return false;
    }
    return true;
}

inline ClassicalPoint random_point(int n, std::mt19937_64& rng) {
    for (;;) {
        ClassicalPoint pt;
        for (int b = 0; b < n; ++b) pt.eps.push_back(sample_rational(rng));
        if (is_generic(pt)) return pt;
    }
}

/// beta: Y_a(u)^{+-1} -> e^{+-Lambda_a}; shifts are discarded.
inline LaurentPoly beta(const LaurentPoly& p) {
    if (!p.only_family(Family::Y)) throw std::domain_error("beta acts on Y-polynomials only");
    return p.substitute_units([](const VarKey& v) -> std::optional<Monomial> {
        return Monomial{mpz_class(1), {{VarKey{Family::ELambda, v.index, 0}.packed(), 1}}};
    });
}

/// Evaluates a polynomial in e^{Lambda_a} / e^{eps_b} variables at a point.
inline mpq_class eval_classical(const LaurentPoly& p, const ClassicalPoint& pt) {
    return evaluate(p, [&](const VarKey& v) -> mpq_class {
        if (v.family == Family::ELambda) return pt.e_lambda(v.index);
        if (v.family == Family::EEps) return pt.e_eps(v.index);
        throw MissingAssignment(v);
    });
}

inline mpq_class eval_beta(const LaurentPoly& p, const ClassicalPoint& pt) { return eval_classical(beta(p), pt); }

/// Weyl determinant for an arbitrary integer vector lambda (length n):
/// det(x_j^{l_i} - x_j^{-l_i}) / det(x_j^{r_i} - x_j^{-r_i}) with l = lambda + rho.
/// Non-dominant lambda straighten to a signed character or zero.
inline mpq_class weyl_character(const std::vector<int>& lambda, const ClassicalPoint& pt) {
    const int n = pt.rank();
    auto alt = [&](const std::vector<int>& l) {
        RationalMatrix m(n, std::vector<mpq_class>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[i][j] = int_pow(pt.eps[j], l[i]) - int_pow(pt.eps[j], -l[i]);
        return det_rational(std::move(m));
    };
    std::vector<int> rho(n), l(n);
    for (int i = 0; i < n; ++i) {
        rho[i] = n - i;
        l[i] = lambda.at(i) + rho[i];
    }
    mpq_class den = alt(rho);
    if (den == 0) throw std::domain_error("Weyl denominator vanishes at this point");
    return alt(l) / den;
}

/// lambda = (alpha+1, 1^gamma) for the hook (alpha|gamma); empty if the
/// character vanishes by depth (gamma <= -1 or gamma >= n).
inline std::optional<std::vector<int>> hook_partition(int n, const HookLabel& h) {
    if (h.gamma < 0 || h.gamma >= n) return std::nullopt;
    std::vector<int> lam(n, 0);
    lam[0] = h.alpha + 1;
    for (int i = 1; i <= h.gamma; ++i) lam[i] = 1;
    return lam;
}

inline mpq_class hook_char_value(int n, const HookLabel& h, const ClassicalPoint& pt) {
    if (pt.rank() != n) throw std::invalid_argument("point rank mismatch");
    auto lam = hook_partition(n, h);
    if (!lam) return 0;
    return weyl_character(*lam, pt);
}

/// Weyl dimension product over the C_n positive roots e_i +- e_j, 2e_i.
inline mpq_class weyl_dimension(const std::vector<int>& lambda) {
    const int n = static_cast<int>(lambda.size());
    mpq_class d = 1;
    std::vector<int> l(n), r(n);
    for (int i = 0; i < n; ++i) {
        r[i] = n - i;
        l[i] = lambda[i] + r[i];
    }
    for (int i = 0; i < n; ++i) {
        d *= mpq_class(l[i], r[i]);
        for (int j = i + 1; j < n; ++j) d *= mpq_class((l[i] - l[j]) * (l[i] + l[j]), (r[i] - r[j]) * (r[i] + r[j]));
    }
    d.canonicalize();
    return d;
}

inline mpq_class hook_dimension(int n, const HookLabel& h) {
    auto lam = hook_partition(n, h);
    return lam ? weyl_dimension(*lam) : mpq_class(0);
}

/// chi_{(p-1|0)} chi_{(0|a-1)} = chi_{(p|a-1)} + chi_{(p-1|a)} + chi_{(p-1|a-2)} + chi_{(p-2|a-1)}.
inline EvalReport verify_pieri(int n, int p, int a, int trials, std::mt19937_64& rng) {
    if (a < 1 || a > n || p < 0) throw std::out_of_range("Pieri needs 1 <= a <= n, p >= 0");
    EvalReport rep{"pieri", {}};
    for (int t = 0; t < trials; ++t) {
        auto pt = random_point(n, rng);
        auto chi = [&](int al, int ga) { return hook_char_value(n, {al, ga}, pt); };
        mpq_class lhs = chi(p - 1, 0) * chi(0, a - 1);
        mpq_class rhs = chi(p, a - 1) + chi(p - 1, a) + chi(p - 1, a - 2) + chi(p - 2, a - 1);
        rep.add("pieri", {{"n", n}, {"p", p}, {"a", a}}, pt.text(), lhs, rhs);
    }
    return rep;
}

/// sum over j >= 0 of chi_{(alpha-2j|gamma)} with alpha - 2j >= floor.
inline mpq_class hook_sum(int n, int alpha, int gamma, int floor, const ClassicalPoint& pt) {
    mpq_class s = 0;
    for (int al = alpha; al >= floor; al -= 2) s += hook_char_value(n, {al, gamma}, pt);
    return s;
}

/// The predicted beta-image of H^{(i)}_k (k >= N+1) at a point.
inline mpq_class hook_decomposition(int n, int i, int k, const ClassicalPoint& pt) {
    const int N = 2 * n + 2;
    auto wedge = [&](int alpha, int gamma) { return hook_sum(n, alpha, gamma, std::min(0, gamma - 1), pt); };
    auto vee = [&](int alpha, int gamma) { return hook_sum(n, alpha, gamma, 0, pt); };
    if (i == 0) return wedge(k - N - 1, 0);
    if (i == N - 1) return -wedge(k + 1 - N - 1, 0);
    if (i <= n - 1) return vee(k - N, i - 1) + vee(k - N - 1, i);
    if (i == n) return vee(k + 1 - N - 1, n - 1);
    if (i == n + 1) return -vee(k - N - 1, n - 1);
    return -vee(k - N, N - i - 1) - vee(k - N - 1, N - i - 2);
}

inline EvalReport verify_hookchi(Characters& ch, int k_max, int trials, std::mt19937_64& rng) {
    const int n = ch.rank(), N = ch.N();
    EvalReport rep{"hook_decomposition", {}};
    std::vector<ClassicalPoint> pts;
    for (int t = 0; t < trials; ++t) pts.push_back(random_point(n, rng));
    for (int k = N + 1; k <= k_max; ++k) {
        for (int i = 0; i < N; ++i) {
            auto b = beta(ch.H(i, k));
            for (const auto& pt : pts)
                rep.add("beta_H", {{"i", i}, {"k", k}}, pt.text(), eval_classical(b, pt),
                        hook_decomposition(n, i, k, pt));
        }
    }
    return rep;
}

/// det(x_j^{i_{k-1}}) / det(x_j^{k-1}) with the classical x_j.
inline mpq_class alternant_ratio(const std::vector<int>& idx, const ClassicalPoint& pt) {
    const int N = pt.N();
    if (static_cast<int>(idx.size()) != N) throw std::invalid_argument("index set must have N entries");
    RationalMatrix num(N, std::vector<mpq_class>(N)), den(N, std::vector<mpq_class>(N));
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            num[j][k] = int_pow(pt.x(j + 1), idx[k]);
            den[j][k] = int_pow(pt.x(j + 1), k);
        }
    mpq_class d = det_rational(std::move(den));
    if (d == 0) throw std::domain_error("alternant denominator vanishes");
    return det_rational(std::move(num)) / d;
}

/// beta of the symbolic Casorati ratio against the alternant ratio.
inline EvalReport verify_beta_prime(const Characters& ch, const std::vector<int>& idx, int trials,
                                    std::mt19937_64& rng) {
    EvalReport rep{"beta_prime", {}};
    auto b = beta(casorati_ratio(ch, idx));
    for (int t = 0; t < trials; ++t) {
        auto pt = random_point(ch.rank(), rng);
        rep.add("alternant", {{"indices", idx}}, pt.text(), eval_classical(b, pt), alternant_ratio(idx, pt));
    }
    return rep;
}

} // namespace qdiff
