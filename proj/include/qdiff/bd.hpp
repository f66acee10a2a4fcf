#pragma once

// The B and D series L operators: products of first-order factors in D^2
// around an inverted middle factor, kept as series truncated in D-degree.
// Their expansion coefficients, screening checks, and the closed-form
// expansions of the middle products.

#include "qchar.hpp"
#include "screening.hpp"

#include <string>
#include <vector>

namespace qdiff {

struct SeriesL {
    AlgebraSpec algebra;
    int order = 0;
    DiffOp op;
};

inline DiffOp d2_factor(const LaurentPoly& c, int sign, int power = 2) {
    return DiffOp::one() + DiffOp::term(c.scaled(sign), power);
}

/// B: prod-> (1 - zbar_a D^2) (1 + z_0 D^2)^{-1} prod<- (1 - z_a D^2).
/// D: prod-> (1 - zbar_a D^2) (1 - z_n(u) zbar_n(u+2) D^4)^{-1} prod<- (1 - z_a D^2).
inline SeriesL build_series_L(Series s, int n, int order) {
    if (s == Series::C) throw std::invalid_argument("the C series has a polynomial L operator");
    if (order < 2) throw std::invalid_argument("truncation order must be at least 2");
    AlgebraSpec alg(s, n);
    VariableTable vt(alg);
    DiffOp middle = s == Series::B ? d2_factor(vt.z0(), 1) : d2_factor(vt.z(n) * vt.zbar(n).shifted(4), -1, 4);
    DiffOp L = DiffOp::series({LaurentPoly(1)}, order);
    for (int a = 1; a <= n; ++a) L *= d2_factor(vt.zbar(a), -1);
    L *= inverse_series(middle, order);
    for (int a = n; a >= 1; --a) L *= d2_factor(vt.z(a), -1);
    for (int j = 1; j <= L.degree(); j += 2)
        if (!L.coeff(j).is_zero()) throw std::logic_error("odd D-degree in a B/D series");
    return {alg, order, L};
}

inline int default_bd_order(int n) { return 2 * (2 * n + 2); }

enum class BDCoeffs { Ta, Tm };

/// T^a(u) from L = 1 + sum (-1)^a T^a(u+a) D^{2a}, or T_m(u) from
/// L^{-1} = 1 + sum T_m(u+m) D^{2m}, for 0 <= a <= order/2.
inline std::vector<LaurentPoly> extract_bd_coeffs(const SeriesL& L, BDCoeffs which) {
    DiffOp op = which == BDCoeffs::Ta ? L.op : inverse_series(L.op, L.order);
    std::vector<LaurentPoly> out;
    for (int a = 0; 2 * a <= L.order; ++a) {
        LaurentPoly c = op.coeff(2 * a).shifted(-2 * a);
        out.push_back(which == BDCoeffs::Ta && a % 2 == 1 ? -c : c);
    }
    return out;
}

namespace bd_detail {

inline LaurentPoly Y(int a, int half, int e = 1) {
    if (a == 0) return LaurentPoly(1);
    return LaurentPoly::var(Yv(a, half), e);
}

} // namespace bd_detail

/// The B middle block X(v) at v = u and the pieces f, h, k of its expansion.
inline DiffOp b_middle_block(int n, int order) {
    using bd_detail::Y;
    DiffOp left = d2_factor(Y(n - 1, 4) * Y(n, 5, -1) * Y(n, 7, -1), -1);
    DiffOp mid = inverse_series(d2_factor(Y(n, 3) * Y(n, 7, -1), 1), order);
    DiffOp right = d2_factor(Y(n, 3) * Y(n, 5) * Y(n - 1, 6, -1), -1);
    return DiffOp::series({LaurentPoly(1)}, order) * left * mid * right;
}

inline LaurentPoly b_f(int n) {
    using bd_detail::Y;
    return Y(n, 3) * Y(n, 7, -1) + Y(n - 1, 4) * Y(n, 5, -1) * Y(n, 7, -1) + Y(n, 3) * Y(n, 5) * Y(n - 1, 6, -1);
}
inline LaurentPoly b_k(int n) {
    using bd_detail::Y;
    return Y(n, 11, -1) + Y(n, 9) * Y(n - 1, 10, -1);
}
inline LaurentPoly b_h(int n) {
    using bd_detail::Y;
    return Y(n, 3) + Y(n - 1, 4) * Y(n, 5, -1);
}

/// 1 - f(v) D^2 + h(v) sum_j (-1)^j k(v+2j) D^{2j+4}, truncated.
inline DiffOp b_middle_closed_form(int n, int order) {
    std::vector<LaurentPoly> c(order + 1);
    c[0] = LaurentPoly(1);
    if (order >= 2) c[2] = -b_f(n);
    for (int j = 0; 2 * j + 4 <= order; ++j) {
        LaurentPoly t = b_h(n) * b_k(n).shifted(4 * j);
        c[2 * j + 4] = j % 2 == 0 ? t : -t;
    }
    return DiffOp::series(std::move(c), order);
}

/// h_a(u) = Y_a(u) + Y_{n-2}(u+1)/Y_a(u+2) and k_a(u) = 1/Y_a(u) + Y_a(u-2)/Y_{n-2}(u-1), a = n-1, n.
inline LaurentPoly d_h(int n, int a) {
    using bd_detail::Y;
    return Y(a, 0) + Y(n - 2, 2) * Y(a, 4, -1);
}
inline LaurentPoly d_k(int n, int a) {
    using bd_detail::Y;
    return Y(a, 0, -1) + Y(a, -4) * Y(n - 2, -2, -1);
}

/// The five Y_n-dependent D factors at v = u, expanded as a series.
inline DiffOp d_middle_block(int n, int order) {
    using bd_detail::Y;
    DiffOp out = DiffOp::series({LaurentPoly(1)}, order);
    out *= d2_factor(Y(n - 2, 8) * Y(n - 1, 10, -1) * Y(n, 10, -1), -1);
    out *= d2_factor(Y(n - 1, 6) * Y(n, 10, -1), -1);
    out *= inverse_series(d2_factor(Y(n, 6) * Y(n, 14, -1), -1, 4), order);
    out *= d2_factor(Y(n, 6) * Y(n - 1, 10, -1), -1);
    out *= d2_factor(Y(n - 1, 6) * Y(n, 6) * Y(n - 2, 8, -1), -1);
    return out;
}

inline DiffOp d_middle_closed_form(int n, int order) {
    using bd_detail::Y;
    std::vector<LaurentPoly> c(order + 1);
    c[0] = LaurentPoly(1);
    auto h = [&](int a) { return d_h(n, a).shifted(6); };
    auto k = [&](int a, int off) { return d_k(n, a).shifted(2 * off); };
    for (int j = 0; 4 * j + 2 <= order; ++j) {
        LaurentPoly t = k(n - 1, 4 * j + 5) * h(n);
        if (j > 0) t += k(n, 4 * j + 5) * h(n - 1);
        c[4 * j + 2] = -t;
        if (4 * j + 4 > order) break;
        LaurentPoly s = k(n - 1, 4 * j + 7) * h(n - 1) + k(n, 4 * j + 7) * h(n);
        if (j == 0) s -= Y(n - 2, 8) * Y(n - 2, 12, -1);
        c[4 * j + 4] = s;
    }
    return DiffOp::series(std::move(c), order);
}

inline RelationReport compare_series(std::string name, const DiffOp& lhs, const DiffOp& rhs, int order) {
    RelationReport rep{std::move(name), {}};
    for (int j = 0; j <= order; ++j) rep.record("coefficient", {{"deg", j}}, lhs.coeff(j), rhs.coeff(j));
    return rep;
}

/// The closed-form expansion of the D middle product up to D^{4 j_max + 4}.
inline RelationReport verify_d_middle_expansion(int n, int j_max) {
    if (n < 3) throw std::out_of_range("the D series needs rank >= 3");
    const int order = 4 * j_max + 4;
    return compare_series("d_middle_expansion", d_middle_block(n, order), d_middle_closed_form(n, order), order);
}

inline RelationReport verify_b_expansion(int n, int order) {
    if (n < 2) throw std::out_of_range("the B series needs rank >= 2");
    return compare_series("b_middle_expansion", b_middle_block(n, order), b_middle_closed_form(n, order), order);
}

struct BDReport {
    AlgebraSpec algebra;
    int order = 0;
    std::vector<KernelReport> kernels;
    std::vector<RelationReport> relations;

    bool ok() const {
        for (const auto& k : kernels)
            if (!k.zero) return false;
        for (const auto& r : relations)
            if (!r.ok()) return false;
        return !kernels.empty();
    }
    nlohmann::json to_json() const {
        nlohmann::json ks = nlohmann::json::array(), rs = nlohmann::json::array();
        for (const auto& k : kernels) ks.push_back(k.to_json());
        for (const auto& r : relations) rs.push_back(r.to_json());
        return {{"algebra", algebra.name()}, {"order", order}, {"ok", ok()}, {"kernels", ks}, {"relations", rs}};
    }
};

/// S_a L = 0 and S_a L^{-1} = 0 degree by degree for every node, L L^{-1} =
/// L^{-1} L = 1 to the truncation order, and the building blocks of the
/// node-n argument.
inline BDReport verify_bd_screening(Series s, int n, int order) {
    auto L = build_series_L(s, n, order);
    CartanData cartan(L.algebra);
    BDReport rep{L.algebra, order, {}, {}};
    DiffOp inv = inverse_series(L.op, order);
    for (int a = 1; a <= n; ++a) {
        rep.kernels.push_back(verify_kernel(a, L.op, cartan, "L"));
        rep.kernels.push_back(verify_kernel(a, inv, cartan, "L^-1"));
    }
    DiffOp one = DiffOp::series({LaurentPoly(1)}, order);
    RelationReport inverse{"inverse", {}};
    for (const auto& [label, prod] : {std::pair<std::string, DiffOp>{"right", L.op * inv}, {"left", inv * L.op}})
        for (int j = 0; j <= order; ++j) inverse.record(label, {{"deg", j}}, prod.coeff(j), one.coeff(j));
    rep.relations.push_back(inverse);
    if (s == Series::B) {
        for (const auto& [label, p] : {std::pair<std::string, LaurentPoly>{"f", b_f(n)}, {"k", b_k(n)}, {"h", b_h(n)}})
            rep.kernels.push_back(verify_kernel(n, p, cartan, label));
        rep.relations.push_back(verify_b_expansion(n, order));
    } else {
        rep.kernels.push_back(verify_kernel(n, d_h(n, n), cartan, "h_n"));
        rep.kernels.push_back(verify_kernel(n, d_k(n, n), cartan, "k_n"));
        rep.relations.push_back(verify_d_middle_expansion(n, std::max(0, (order - 4) / 4)));
    }
    return rep;
}

} // namespace qdiff
