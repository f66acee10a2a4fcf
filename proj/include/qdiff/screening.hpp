#pragma once

// Screening operators S_a acting on Y-polynomials and difference operators.
// Images are sums of coefficient * S_a(v), reduced with
// S_a(v + (alpha_a|alpha_a)) = A_a(v + (alpha_a|alpha_a)/2) S_a(v), where
// A_a(w) = prod_b Q_b(w - (alpha_a|alpha_b)) / Q_b(w + (alpha_a|alpha_b)).

#include "diffop.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdiff {

/// A_a(u + half/2) as a Q-monomial.
inline LaurentPoly A_factor(const CartanData& cartan, int a, int half) {
    std::vector<std::pair<VarKey, int>> vars;
    for (int b = 1; b <= cartan.rank(); ++b) {
        int d = cartan.doubled(a, b);
        if (d == 0) continue;
        vars.push_back({Qv(b, half - d), 1});
        vars.push_back({Qv(b, half + d), -1});
    }
    return LaurentPoly::monomial(1, vars);
}

/// Sum of coeff * S_node(u + arg/2) with Q-representation coefficients.
class ScreenedExpr {
public:
    using Key = std::pair<int, int>; // (node, argument in half-units)

    explicit ScreenedExpr(const CartanData& cartan) : cartan_(&cartan) {}

    void add(int node, int arg_half, const LaurentPoly& coeff) {
        if (coeff.is_zero()) return;
        auto& slot = terms_[{node, arg_half}];
        slot += coeff;
        if (slot.is_zero()) terms_.erase({node, arg_half});
    }

    ScreenedExpr& operator+=(const ScreenedExpr& o) {
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
        return *this;
    }

    /// Multiplies every coefficient by a ring element (converted to Q-form).
    ScreenedExpr times(const LaurentPoly& p) const {
        ScreenedExpr r(*cartan_);
        LaurentPoly q = to_q(p, *cartan_);
        for (const auto& [k, c] : terms_) r.add(k.first, k.second, c * q);
        return r;
    }

    /// Rewrites every S_a(v) to the smallest argument present in its coset
    /// v mod (alpha_a|alpha_a). Idempotent.
    ScreenedExpr canonical() const {
        ScreenedExpr r(*cartan_);
        // Group by (node, residue); arguments iterate in increasing order.
        std::map<std::pair<int, int>, std::vector<std::pair<int, const LaurentPoly*>>> cosets;
        for (const auto& [k, c] : terms_) {
            int P = period(k.first);
            int res = ((k.second % P) + P) % P;
            cosets[{k.first, res}].push_back({k.second, &c});
        }
        for (const auto& [key, entries] : cosets) {
            const int a = key.first;
            const int P = period(a);
            const int v0 = entries.front().first;
            LaurentPoly factor(1);
            int reached = v0;
            LaurentPoly acc;
            for (const auto& [v, c] : entries) {
                while (reached < v) {
                    factor *= A_factor(*cartan_, a, reached + P / 2);
                    reached += P;
                }
                acc += *c * factor;
            }
            r.add(a, v0, acc);
        }
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, LaurentPoly>& terms() const { return terms_; }

    std::size_t residual_terms() const {
        std::size_t s = 0;
        for (const auto& [k, c] : terms_) s += c.size();
        return s;
    }

    friend bool operator==(const ScreenedExpr& x, const ScreenedExpr& y) { return x.terms_ == y.terms_; }

    std::string to_text() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : terms_) {
            if (!s.empty()) s += "\n";
            s += "S[" + std::to_string(k.first) + "](" + format_shift(k.second) + "): " + c.to_text();
        }
        return s;
    }

private:
    int period(int a) const { return cartan_->doubled(a, a); }

    const CartanData* cartan_;
    std::map<Key, LaurentPoly> terms_;
};

/// S_a . p by the Leibniz rule, S_a . Y_b(v) = delta_ab Y_b(v) S_b(v).
/// The input must be a Y-polynomial; the result is left uncanonicalized.
inline ScreenedExpr apply_screening_raw(int a, const LaurentPoly& p, const CartanData& cartan) {
    if (a < 1 || a > cartan.rank()) throw std::out_of_range("screening node out of range");
    if (!p.only_family(Family::Y)) throw std::domain_error("screening acts on Y-polynomials only");
    std::map<int, std::vector<Monomial>> buckets;
    for (const auto& t : p.terms()) {
        std::optional<Monomial> qmono;
        for (const auto& [k, e] : t.exps) {
            VarKey v = VarKey::unpack(k);
            if (v.index != a) continue;
            if (!qmono) qmono = to_q(LaurentPoly::from_terms({t}), cartan).terms().at(0);
            buckets[v.half_shift].push_back({qmono->coeff * e, qmono->exps});
        }
    }
    ScreenedExpr out(cartan);
    for (auto& [arg, terms] : buckets) out.add(a, arg, LaurentPoly::from_terms(std::move(terms)));
    return out;
}

inline ScreenedExpr apply_screening(int a, const LaurentPoly& p, const CartanData& cartan) {
    return apply_screening_raw(a, p, cartan).canonical();
}

/// Per-degree screening images of an operator whose coefficients lie in the
/// Y-ring.
inline std::vector<ScreenedExpr> screen_operator(int a, const DiffOp& L, const CartanData& cartan) {
    std::vector<ScreenedExpr> out;
    for (int j = 0; j <= L.degree(); ++j) {
        if (!L.coeff(j).only_family(Family::Y))
            throw std::domain_error("coefficient of D^" + std::to_string(j) + " is not a Y-polynomial");
        out.push_back(apply_screening(a, L.coeff(j), cartan));
    }
    return out;
}

struct KernelReport {
    std::string target;
    int node = 0;
    std::vector<std::pair<int, std::size_t>> per_degree; // (degree, residual term count)
    bool zero = true;

    nlohmann::json to_json() const {
        nlohmann::json pd = nlohmann::json::array();
        for (auto [d, r] : per_degree) pd.push_back({{"deg", d}, {"residual_term_count", r}});
        return {{"target", target}, {"node_a", node}, {"per_degree", pd}, {"zero", zero}};
    }
};

inline KernelReport verify_kernel(int a, const DiffOp& L, const CartanData& cartan, std::string target) {
    KernelReport rep{std::move(target), a, {}, true};
    auto images = screen_operator(a, L, cartan);
    for (std::size_t j = 0; j < images.size(); ++j) {
        rep.per_degree.push_back({static_cast<int>(j), images[j].residual_terms()});
        if (!images[j].is_zero()) rep.zero = false;
    }
    return rep;
}

inline KernelReport verify_kernel(int a, const LaurentPoly& p, const CartanData& cartan, std::string target) {
    return verify_kernel(a, DiffOp::term(p, 0), cartan, std::move(target));
}

} // namespace qdiff
