#pragma once

// Difference operators sum_j c_j(u) D^j with D g(u) = g(u+1) D, as exact
// polynomials in D or as power series truncated at a fixed order.

#include "ring.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdiff {

class DiffOp {
public:
    DiffOp() = default;

    static DiffOp polynomial(std::vector<LaurentPoly> coeffs) {
        DiffOp d;
        d.coeffs_ = std::move(coeffs);
        d.trim();
        return d;
    }

    /// Series whose coefficients beyond `order` are discarded.
    static DiffOp series(std::vector<LaurentPoly> coeffs, int order) {
        if (order < 0) throw std::invalid_argument("truncation order must be non-negative");
        DiffOp d;
        d.coeffs_ = std::move(coeffs);
        d.truncation_ = order;
        d.trim();
        return d;
    }

    static DiffOp one() { return polynomial({LaurentPoly(1)}); }
    static DiffOp shift() { return term(LaurentPoly(1), 1); }

    /// c(u) D^deg.
    static DiffOp term(const LaurentPoly& c, int deg) {
        if (deg < 0) throw std::invalid_argument("negative D-degree");
        std::vector<LaurentPoly> v(deg + 1);
        v[deg] = c;
        return polynomial(std::move(v));
    }

    bool is_series() const { return truncation_.has_value(); }
    std::optional<int> truncation() const { return truncation_; }

    /// Highest stored degree, -1 for the zero operator.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const LaurentPoly& coeff(int j) const {
        static const LaurentPoly zero;
        if (j < 0 || j >= static_cast<int>(coeffs_.size())) return zero;
        return coeffs_[j];
    }
    const std::vector<LaurentPoly>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }

    DiffOp truncated(int order) const {
        std::vector<LaurentPoly> v(coeffs_.begin(), coeffs_.begin() + std::min<int>(order + 1, coeffs_.size()));
        int o = truncation_ ? std::min(*truncation_, order) : order;
        return series(std::move(v), o);
    }

    DiffOp operator-() const {
        DiffOp r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend DiffOp operator+(const DiffOp& a, const DiffOp& b) { return add(a, b, false); }
    friend DiffOp operator-(const DiffOp& a, const DiffOp& b) { return add(a, b, true); }

    /// Twisted product (c D^i)(d D^j) = c * d(u+i) D^{i+j}. A series operand
    /// truncates the result at the smallest truncation order involved.
    friend DiffOp operator*(const DiffOp& a, const DiffOp& b) {
        auto order = combined_order(a, b);
        int top = a.degree() + b.degree();
        if (order) top = std::min(top, *order);
        if (a.is_zero() || b.is_zero() || top < 0) return make(std::vector<LaurentPoly>{}, order);
        std::vector<LaurentPoly> out(top + 1);
        for (int i = 0; i <= a.degree(); ++i) {
            if (a.coeffs_[i].is_zero() || i > top) continue;
            for (int j = 0; j <= b.degree() && i + j <= top; ++j) {
                if (b.coeffs_[j].is_zero()) continue;
                out[i + j] += a.coeffs_[i] * b.coeffs_[j].shifted(2 * i);
            }
        }
        return make(std::move(out), order);
    }
    DiffOp& operator*=(const DiffOp& b) { return *this = *this * b; }

    DiffOp scaled(const mpz_class& c) const {
        DiffOp r = *this;
        for (auto& x : r.coeffs_) x = x.scaled(c);
        r.trim();
        return r;
    }

    template <class Fn> DiffOp map_coeffs(Fn&& fn) const {
        DiffOp r = *this;
        for (auto& c : r.coeffs_) c = fn(c);
        r.trim();
        return r;
    }

    /// Exact equality of kind, truncation and coefficients.
    friend bool operator==(const DiffOp& a, const DiffOp& b) {
        return a.truncation_ == b.truncation_ && a.coeffs_ == b.coeffs_;
    }

    /// Coefficientwise equality up to degree `order`, ignoring kinds.
    bool agrees_to(const DiffOp& other, int order) const {
        for (int j = 0; j <= order; ++j)
            if (!(coeff(j) == other.coeff(j))) return false;
        return true;
    }

    std::string to_text() const {
        std::string s;
        for (int j = 0; j <= degree(); ++j) {
            if (coeffs_[j].is_zero()) continue;
            s += "D^" + std::to_string(j) + ": " + coeffs_[j].to_text() + "\n";
        }
        if (truncation_) s += "O(D^" + std::to_string(*truncation_ + 1) + ")\n";
        return s.empty() ? "0\n" : s;
    }

    nlohmann::json to_json() const {
        nlohmann::json coeffs = nlohmann::json::array();
        for (int j = 0; j <= degree(); ++j) {
            if (coeffs_[j].is_zero()) continue;
            coeffs.push_back({{"deg", j}, {"terms", coeffs_[j].size()}, {"poly", coeffs_[j].to_json()}});
        }
        nlohmann::json out{{"kind", is_series() ? "series" : "polynomial"}, {"coeffs", coeffs}};
        if (truncation_) out["truncation"] = *truncation_;
        return out;
    }

private:
    static std::optional<int> combined_order(const DiffOp& a, const DiffOp& b) {
        if (a.truncation_ && b.truncation_) return std::min(*a.truncation_, *b.truncation_);
        if (a.truncation_) return a.truncation_;
        return b.truncation_;
    }

    static DiffOp make(std::vector<LaurentPoly> v, std::optional<int> order) {
        return order ? series(std::move(v), *order) : polynomial(std::move(v));
    }

    static DiffOp add(const DiffOp& a, const DiffOp& b, bool subtract) {
        auto order = combined_order(a, b);
        std::size_t len = std::max(a.coeffs_.size(), b.coeffs_.size());
        std::vector<LaurentPoly> out(len);
        for (std::size_t j = 0; j < len; ++j) out[j] = subtract ? a.coeff(j) - b.coeff(j) : a.coeff(j) + b.coeff(j);
        return make(std::move(out), order);
    }

    void trim() {
        if (truncation_ && static_cast<int>(coeffs_.size()) > *truncation_ + 1) coeffs_.resize(*truncation_ + 1);
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<LaurentPoly> coeffs_;
    std::optional<int> truncation_;
};

inline std::ostream& operator<<(std::ostream& os, const DiffOp& d) { return os << d.to_text(); }

/// Right inverse as a series up to D^order. Requires a constant term of +-1.
inline DiffOp inverse_series(const DiffOp& a, int order) {
    const LaurentPoly& a0 = a.coeff(0);
    if (!a0.is_constant() || (a0.constant_term() != 1 && a0.constant_term() != -1)) {
        throw std::domain_error("series inverse needs a constant term of +1 or -1");
    }
    if (a.truncation() && *a.truncation() < order) order = *a.truncation();
    mpz_class inv = a0.constant_term();
    std::vector<LaurentPoly> b(order + 1);
    b[0] = LaurentPoly(inv);
    for (int k = 1; k <= order; ++k) {
        LaurentPoly acc;
        for (int i = 1; i <= k && i <= a.degree(); ++i) {
            if (a.coeff(i).is_zero() || b[k - i].is_zero()) continue;
            acc += a.coeff(i) * b[k - i].shifted(2 * i);
        }
        b[k] = acc.scaled(-inv);
    }
    return DiffOp::series(std::move(b), order);
}

/// Signs eps_{n+1} = eps_{n+2}; every other eps_i is +1.
struct EpsilonChoice {
    int sign = 1;
    int at(int i, int n) const { return (i == n + 1 || i == n + 2) ? sign : 1; }
};

enum class LForm { zFactored, zReversed, xFactored, xReversed };

inline const char* form_name(LForm f) {
    switch (f) {
    case LForm::zFactored: return "zFactored";
    case LForm::zReversed: return "zReversed";
    case LForm::xFactored: return "xFactored";
    case LForm::xReversed: return "xReversed";
    }
    return "?";
}

/// The product as written for each form, without any overall sign:
///   zFactored  prod-> (1 - zbar_a D) (1 - zbar_n(u) z_n(u+1) D^2) prod<- (1 - z_a D)
///   zReversed  prod-> (z_a(u+n+1-a) - D) (zbar_n(u-1) z_n(u) - D^2) prod<- (zbar_a(u-n-2+a) - D)
///   xReversed  prod<- (1 - eps_i x_i D)
///   xFactored  prod-> (eps_i x_i(u+n+1-i) - D)
/// The first three are equal; the last is their negative.
inline DiffOp raw_L_C(const VariableTable& vt, LForm form, EpsilonChoice eps = {}) {
    if (vt.algebra().series != Series::C) throw std::invalid_argument("raw_L_C needs a C-series table");
    const int n = vt.rank();
    const int N = vt.algebra().N();
    const DiffOp D = DiffOp::shift();
    const DiffOp D2 = D * D;
    auto c = [](const LaurentPoly& p) { return DiffOp::term(p, 0); };
    DiffOp L = DiffOp::one();
    switch (form) {
    case LForm::zFactored:
        for (int a = 1; a <= n; ++a) L *= DiffOp::one() - c(vt.zbar(a)) * D;
        L *= DiffOp::one() - c(vt.zbar(n) * vt.z(n).shifted(2)) * D2;
        for (int a = n; a >= 1; --a) L *= DiffOp::one() - c(vt.z(a)) * D;
        break;
    case LForm::zReversed:
        for (int a = 1; a <= n; ++a) L *= c(vt.z(a).shifted(2 * (n + 1 - a))) - D;
        L *= c(vt.zbar(n).shifted(-2) * vt.z(n)) - D2;
        for (int a = n; a >= 1; --a) L *= c(vt.zbar(a).shifted(2 * (a - n - 2))) - D;
        break;
    case LForm::xReversed:
        for (int i = N; i >= 1; --i) L *= DiffOp::one() - c(vt.x(i).scaled(eps.at(i, n))) * D;
        break;
    case LForm::xFactored:
        for (int i = 1; i <= N; ++i) L *= c(vt.x(i).shifted(2 * (n + 1 - i)).scaled(eps.at(i, n))) - D;
        break;
    }
    return L;
}

/// L(u) = prod-> (x_i(u+n+1-i) - D), realized from any of the four forms by
/// attaching the sign that relates it to xFactored.
inline DiffOp build_L_C(const VariableTable& vt, LForm form = LForm::zFactored, EpsilonChoice eps = {}) {
    DiffOp raw = raw_L_C(vt, form, eps);
    return form == LForm::xFactored ? raw : -raw;
}

inline DiffOp build_L_C(int n, LForm form = LForm::zFactored, EpsilonChoice eps = {}) {
    return build_L_C(VariableTable(AlgebraSpec(Series::C, n)), form, eps);
}

/// L_j(u) = prod->_{i=N+1-j}^{N} (D - eps_i x_i(u+n+1-i)) with eps_{n+1} = eps_{n+2} = -1.
inline DiffOp build_Lj_C(const VariableTable& vt, int j) {
    const int n = vt.rank();
    const int N = vt.algebra().N();
    if (j < 1 || j > N) throw std::out_of_range("L_j needs 1 <= j <= N");
    EpsilonChoice eps{-1};
    DiffOp L = DiffOp::one();
    for (int i = N + 1 - j; i <= N; ++i)
        L *= DiffOp::shift() - DiffOp::term(vt.x(i).shifted(2 * (n + 1 - i)).scaled(eps.at(i, n)), 0);
    return L;
}

inline DiffOp to_q(const DiffOp& op, const CartanData& cartan) {
    return op.map_coeffs([&](const LaurentPoly& p) { return to_q(p, cartan); });
}

inline bool same_in_q(const DiffOp& a, const DiffOp& b, const CartanData& cartan) {
    int top = std::max(a.degree(), b.degree());
    for (int j = 0; j <= top; ++j)
        if (!same_in_q(a.coeff(j), b.coeff(j), cartan)) return false;
    return true;
}

/// e_a(u) read off from L = -sum_a (-1)^a e_a(u+a/2) D^a.
inline LaurentPoly extract_e(const DiffOp& L, int a, int N) {
    if (a < 0 || a > N) throw std::out_of_range("extract_e index out of range");
    LaurentPoly c = L.coeff(a).shifted(-a);
    return (a % 2 == 0) ? -c : c;
}

} // namespace qdiff
