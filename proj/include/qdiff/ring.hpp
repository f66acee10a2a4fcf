#pragma once

// Sparse Laurent polynomials over Z in shift-indexed variables Y_a(u+s),
// Q_a(u+s) and formal exponentials, plus the Cartan data and variable
// templates of the C, B and D series.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qdiff {

enum class Series : std::uint8_t { C, B, D };

inline char series_letter(Series s) {
    switch (s) {
    case Series::C: return 'C';
    case Series::B: return 'B';
    case Series::D: return 'D';
    }
    return '?';
}

inline Series parse_series(std::string_view s) {
    if (s == "C" || s == "c") return Series::C;
    if (s == "B" || s == "b") return Series::B;
    if (s == "D" || s == "d") return Series::D;
    throw std::invalid_argument("unknown algebra series '" + std::string(s) + "'");
}

struct AlgebraSpec {
    Series series = Series::C;
    int rank = 2;

    AlgebraSpec() = default;
    AlgebraSpec(Series s, int n) : series(s), rank(n) {
        int min_rank = (s == Series::D) ? 3 : 2;
        if (n < min_rank) {
            throw std::invalid_argument(std::string("rank ") + std::to_string(n) + " too small for series " +
                                        series_letter(s));
        }
    }

    /// Order of the C-type L operator, 2n+2. The B/D series reuse it as a
    /// default truncation scale.
    int N() const { return 2 * rank + 2; }

    std::string name() const { return std::string(1, series_letter(series)) + std::to_string(rank); }

    friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

/// Inner products of simple roots, stored doubled so every entry is an
/// integer. A doubled pairing is also the shift it induces in half-units.
class CartanData {
public:
    explicit CartanData(const AlgebraSpec& alg) : alg_(alg), table_(alg.rank * alg.rank, 0) {
        const int n = alg.rank;
        auto set = [&](int a, int b, int v) {
            table_[(a - 1) * n + (b - 1)] = v;
            table_[(b - 1) * n + (a - 1)] = v;
        };
        switch (alg.series) {
        case Series::C:
            for (int a = 1; a < n; ++a) set(a, a, 2);
            set(n, n, 4);
            for (int a = 1; a + 1 < n; ++a) set(a, a + 1, -1);
            set(n - 1, n, -2);
            break;
        case Series::B:
            for (int a = 1; a < n; ++a) set(a, a, 4);
            set(n, n, 2);
            for (int a = 1; a < n; ++a) set(a, a + 1, -2);
            break;
        case Series::D:
            for (int a = 1; a <= n; ++a) set(a, a, 4);
            for (int a = 1; a + 1 <= n - 1; ++a) set(a, a + 1, -2);
            set(n - 2, n, -2);
            break;
        }
    }

    const AlgebraSpec& algebra() const { return alg_; }
    int rank() const { return alg_.rank; }

    int doubled(int a, int b) const {
        check(a);
        check(b);
        return table_[(a - 1) * alg_.rank + (b - 1)];
    }

    mpq_class pairing(int a, int b) const {
        mpq_class q(doubled(a, b), 2);
        q.canonicalize();
        return q;
    }

    /// (alpha_a|alpha_a) expressed in half-units.
    int root_length_half(int a) const { return doubled(a, a) / 2; }

private:
    void check(int a) const {
        if (a < 1 || a > alg_.rank) throw std::out_of_range("node index " + std::to_string(a) + " out of range");
    }

    AlgebraSpec alg_;
    std::vector<int> table_;
};

enum class Family : std::uint8_t { Y = 0, Q = 1, ELambda = 2, EEps = 3 };

inline const char* family_name(Family f) {
    switch (f) {
    case Family::Y: return "Y";
    case Family::Q: return "Q";
    case Family::ELambda: return "EL";
    case Family::EEps: return "EE";
    }
    return "?";
}

inline Family parse_family(std::string_view s) {
    if (s == "Y") return Family::Y;
    if (s == "Q") return Family::Q;
    if (s == "EL") return Family::ELambda;
    if (s == "EE") return Family::EEps;
    throw std::invalid_argument("unknown variable family '" + std::string(s) + "'");
}

/// A variable F_index(u + half_shift/2). Packs into 64 bits so that integer
/// order coincides with the (family, index, half_shift) lexicographic order.
struct VarKey {
    Family family = Family::Y;
    int index = 1;
    int half_shift = 0;

    std::uint64_t packed() const {
        auto biased = static_cast<std::uint32_t>(static_cast<std::int64_t>(half_shift) + (std::int64_t{1} << 31));
        return (std::uint64_t(family) << 48) | (std::uint64_t(std::uint16_t(index)) << 32) | biased;
    }

    static VarKey unpack(std::uint64_t k) {
        VarKey v;
        v.family = static_cast<Family>((k >> 48) & 0xff);
        v.index = static_cast<int>((k >> 32) & 0xffff);
        v.half_shift = static_cast<int>(static_cast<std::int64_t>(k & 0xffffffffu) - (std::int64_t{1} << 31));
        return v;
    }

    bool shifts() const { return family == Family::Y || family == Family::Q; }

    friend auto operator<=>(const VarKey& a, const VarKey& b) { return a.packed() <=> b.packed(); }
    friend bool operator==(const VarKey& a, const VarKey& b) { return a.packed() == b.packed(); }
};

inline VarKey Yv(int a, int half_shift = 0) { return {Family::Y, a, half_shift}; }
inline VarKey Qv(int a, int half_shift = 0) { return {Family::Q, a, half_shift}; }

inline std::string format_shift(int half_shift) {
    if (half_shift == 0) return "u";
    std::string sign = half_shift > 0 ? "+" : "-";
    int mag = half_shift > 0 ? half_shift : -half_shift;
    if (mag % 2 == 0) return "u" + sign + std::to_string(mag / 2);
    return "u" + sign + std::to_string(mag) + "/2";
}

inline std::string to_text(const VarKey& v) {
    std::string s = std::string(family_name(v.family)) + "[" + std::to_string(v.index) + "]";
    if (v.shifts()) s += "(" + format_shift(v.half_shift) + ")";
    return s;
}

/// Sorted sparse exponent vector: (packed VarKey, nonzero exponent).
using Exponents = std::vector<std::pair<std::uint64_t, int>>;

struct ExponentsHash {
    std::size_t operator()(const Exponents& e) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (const auto& [k, x] : e) {
            h ^= k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h ^= std::uint64_t(std::int64_t(x)) * 0xff51afd7ed558ccdull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

inline void merge_exponents(const Exponents& a, const Exponents& b, Exponents& out, int b_scale = 1) {
    out.clear();
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first)) {
            out.push_back(*i++);
        } else if (i == a.end() || j->first < i->first) {
            out.emplace_back(j->first, j->second * b_scale);
            ++j;
        } else {
            int e = i->second + j->second * b_scale;
            if (e != 0) out.emplace_back(i->first, e);
            ++i;
            ++j;
        }
    }
}

struct Monomial {
    mpz_class coeff;
    Exponents exps;
};

class LaurentPoly;
LaurentPoly parse_poly(std::string_view text);

/// Element of Z[F_i(u+s)^{+-1}]. Terms are kept sorted by exponent vector
/// with distinct exponents and nonzero coefficients; the zero polynomial
/// has no terms.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long c) { // NOLINT: integer literals promote naturally
        if (c != 0) terms_.push_back({mpz_class(c), {}});
    }
    LaurentPoly(const mpz_class& c) { // NOLINT
        if (c != 0) terms_.push_back({c, {}});
    }

    static LaurentPoly var(const VarKey& v, int exp = 1) {
        LaurentPoly p;
        if (exp == 0) return LaurentPoly(1);
        p.terms_.push_back({mpz_class(1), {{v.packed(), exp}}});
        return p;
    }

    /// Single term coeff * prod vars; repeated variables are combined.
    static LaurentPoly monomial(const mpz_class& coeff, const std::vector<std::pair<VarKey, int>>& vars) {
        if (coeff == 0) return {};
        std::map<std::uint64_t, int> acc;
        for (const auto& [v, e] : vars) acc[v.packed()] += e;
        Monomial m{coeff, {}};
        for (const auto& [k, e] : acc)
            if (e != 0) m.exps.emplace_back(k, e);
        LaurentPoly p;
        p.terms_.push_back(std::move(m));
        return p;
    }

    /// Canonicalizes an arbitrary list of terms (any order, duplicates allowed).
    static LaurentPoly from_terms(std::vector<Monomial> terms) {
        std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) { return a.exps < b.exps; });
        LaurentPoly p;
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().exps == t.exps) {
                p.terms_.back().coeff += t.coeff;
                if (p.terms_.back().coeff == 0) p.terms_.pop_back();
            } else if (t.coeff != 0) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    const std::vector<Monomial>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exps.empty()); }

    mpz_class constant_term() const {
        for (const auto& t : terms_)
            if (t.exps.empty()) return t.coeff;
        return 0;
    }

    /// Coefficient of the monomial with the given exponents (0 if absent).
    mpz_class coefficient(const Exponents& exps) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), exps,
                                   [](const Monomial& m, const Exponents& e) { return m.exps < e; });
        if (it != terms_.end() && it->exps == exps) return it->coeff;
        return 0;
    }

    mpz_class coefficient_sum() const {
        mpz_class s = 0;
        for (const auto& t : terms_) s += t.coeff;
        return s;
    }

    std::set<VarKey> variables() const {
        std::set<VarKey> out;
        for (const auto& t : terms_)
            for (const auto& [k, e] : t.exps) out.insert(VarKey::unpack(k));
        return out;
    }

    bool only_family(Family f) const {
        for (const auto& t : terms_)
            for (const auto& [k, e] : t.exps)
                if (VarKey::unpack(k).family != f) return false;
        return true;
    }

    bool has_family(Family f) const {
        for (const auto& t : terms_)
            for (const auto& [k, e] : t.exps)
                if (VarKey::unpack(k).family == f) return true;
        return false;
    }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, false); }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, true); }
    LaurentPoly& operator+=(const LaurentPoly& b) { return *this = combine(*this, b, false); }
    LaurentPoly& operator-=(const LaurentPoly& b) { return *this = combine(*this, b, true); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.size() == 1 && a.terms_[0].exps.empty()) return b.scaled(a.terms_[0].coeff);
        if (b.size() == 1 && b.terms_[0].exps.empty()) return a.scaled(b.terms_[0].coeff);
        const LaurentPoly& big = a.size() >= b.size() ? a : b;
        const LaurentPoly& small = a.size() >= b.size() ? b : a;
        if (small.size() == 1) {
            std::vector<Monomial> out;
            out.reserve(big.size());
            for (const auto& t : big.terms_) {
                Monomial m;
                merge_exponents(t.exps, small.terms_[0].exps, m.exps);
                m.coeff = t.coeff * small.terms_[0].coeff;
                out.push_back(std::move(m));
            }
            return from_terms(std::move(out));
        }
        std::unordered_map<Exponents, mpz_class, ExponentsHash> acc;
        acc.reserve(a.size() * b.size());
        Exponents buf;
        for (const auto& x : a.terms_) {
            for (const auto& y : b.terms_) {
                merge_exponents(x.exps, y.exps, buf);
                auto it = acc.find(buf);
                if (it == acc.end()) {
                    acc.emplace(buf, x.coeff * y.coeff);
                } else {
                    mpz_addmul(it->second.get_mpz_t(), x.coeff.get_mpz_t(), y.coeff.get_mpz_t());
                }
            }
        }
        std::vector<Monomial> out;
        out.reserve(acc.size());
        for (auto& [e, c] : acc)
            if (c != 0) out.push_back({std::move(c), e});
        std::sort(out.begin(), out.end(), [](const Monomial& l, const Monomial& r) { return l.exps < r.exps; });
        LaurentPoly p;
        p.terms_ = std::move(out);
        return p;
    }
    LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

    LaurentPoly scaled(const mpz_class& c) const {
        if (c == 0) return {};
        LaurentPoly r = *this;
        for (auto& t : r.terms_) t.coeff *= c;
        return r;
    }

    LaurentPoly pow(int k) const {
        if (k < 0) throw std::invalid_argument("negative power of a polynomial");
        LaurentPoly result(1);
        LaurentPoly base = *this;
        while (k > 0) {
            if (k & 1) result *= base;
            k >>= 1;
            if (k) base *= base;
        }
        return result;
    }

    /// Inverse of a unit: a single monomial with coefficient +-1.
    LaurentPoly reciprocal() const {
        if (terms_.size() != 1 || (terms_[0].coeff != 1 && terms_[0].coeff != -1))
            throw std::domain_error("only +-monomials are invertible");
        LaurentPoly r = *this;
        for (auto& [k, e] : r.terms_[0].exps) e = -e;
        return r;
    }

    /// u -> u + half_delta/2 on every shift-carrying variable.
    LaurentPoly shifted(int half_delta) const {
        if (half_delta == 0) return *this;
        LaurentPoly r = *this;
        for (auto& t : r.terms_) {
            for (auto& [k, e] : t.exps) {
                VarKey v = VarKey::unpack(k);
                if (v.shifts()) {
                    v.half_shift += half_delta;
                    k = v.packed();
                }
            }
        }
        // Family sits in the top bits and a uniform shift is monotone inside a
        // family, so both key order and term order survive.
        return r;
    }

    /// Ring homomorphism defined on variables. `image(v)` returns the unit
    /// monomial (coefficient +-1) that v maps to, or nullopt to keep v.
    template <class Fn> LaurentPoly substitute_units(Fn&& image) const {
        std::unordered_map<std::uint64_t, std::optional<Monomial>> cache;
        std::vector<Monomial> out;
        out.reserve(terms_.size());
        Exponents buf;
        for (const auto& t : terms_) {
            Monomial m{t.coeff, {}};
            for (const auto& [k, e] : t.exps) {
                auto it = cache.find(k);
                if (it == cache.end()) it = cache.emplace(k, image(VarKey::unpack(k))).first;
                if (!it->second) {
                    merge_exponents(m.exps, Exponents{{k, e}}, buf);
                } else {
                    const Monomial& img = *it->second;
                    if (img.coeff == -1 && (e % 2 != 0)) m.coeff = -m.coeff;
                    merge_exponents(m.exps, img.exps, buf, e);
                }
                m.exps.swap(buf);
            }
            out.push_back(std::move(m));
        }
        return from_terms(std::move(out));
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (a.terms_[i].exps != b.terms_[i].exps || a.terms_[i].coeff != b.terms_[i].coeff) return false;
        }
        return true;
    }

    std::string to_text(std::string_view separator = " + ") const;
    nlohmann::json to_json() const;
    static LaurentPoly from_json(const nlohmann::json& j);

private:
    static LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, bool subtract) {
        LaurentPoly r;
        r.terms_.reserve(a.size() + b.size());
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->exps < j->exps)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->exps < i->exps) {
                r.terms_.push_back(*j++);
                if (subtract) r.terms_.back().coeff = -r.terms_.back().coeff;
            } else {
                mpz_class c = subtract ? mpz_class(i->coeff - j->coeff) : mpz_class(i->coeff + j->coeff);
                if (c != 0) r.terms_.push_back({std::move(c), i->exps});
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Monomial> terms_;
};

inline LaurentPoly shift_poly(const LaurentPoly& p, int half_delta) { return p.shifted(half_delta); }

inline std::string monomial_text(const Monomial& m) {
    std::string s = m.coeff.get_str();
    for (const auto& [k, e] : m.exps) {
        s += " * " + to_text(VarKey::unpack(k));
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

inline std::string LaurentPoly::to_text(std::string_view separator) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += separator;
        out += monomial_text(terms_[i]);
    }
    return out;
}

inline nlohmann::json LaurentPoly::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : terms_) {
        nlohmann::json vars = nlohmann::json::array();
        for (const auto& [k, e] : t.exps) {
            VarKey v = VarKey::unpack(k);
            vars.push_back({{"fam", family_name(v.family)}, {"idx", v.index}, {"half_shift", v.half_shift}, {"exp", e}});
        }
        arr.push_back({{"coeff", t.coeff.get_str()}, {"vars", vars}});
    }
    return arr;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_text(); }

inline LaurentPoly LaurentPoly::from_json(const nlohmann::json& j) {
    std::vector<Monomial> terms;
    for (const auto& t : j) {
        std::vector<std::pair<VarKey, int>> vars;
        for (const auto& v : t.at("vars")) {
            vars.push_back({VarKey{parse_family(v.at("fam").get<std::string>()), v.at("idx").get<int>(),
                                   v.at("half_shift").get<int>()},
                            v.at("exp").get<int>()});
        }
        auto m = monomial(mpz_class(t.at("coeff").get<std::string>()), vars);
        if (!m.is_zero()) terms.push_back(m.terms()[0]);
    }
    return from_terms(std::move(terms));
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline int parse_shift(std::string_view s) {
    // "u", "u+3", "u-1/2"
    if (s.empty() || s[0] != 'u') throw std::invalid_argument("bad shift '" + std::string(s) + "'");
    s.remove_prefix(1);
    if (s.empty()) return 0;
    int sign = s[0] == '-' ? -1 : 1;
    if (s[0] != '+' && s[0] != '-') throw std::invalid_argument("bad shift sign");
    s.remove_prefix(1);
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return sign * 2 * std::stoi(std::string(s));
    if (s.substr(slash + 1) != "2") throw std::invalid_argument("shift denominators must be 2");
    return sign * std::stoi(std::string(s.substr(0, slash)));
}

inline Monomial parse_monomial(std::string_view text) {
    std::vector<std::string_view> factors;
    std::size_t pos = 0;
    while (true) {
        auto next = text.find(" * ", pos);
        factors.push_back(trim(text.substr(pos, next == std::string_view::npos ? next : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 3;
    }
    mpz_class coeff(std::string(factors.front()));
    std::vector<std::pair<VarKey, int>> vars;
    for (std::size_t i = 1; i < factors.size(); ++i) {
        std::string_view f = factors[i];
        int exp = 1;
        if (auto caret = f.rfind('^'); caret != std::string_view::npos && f.find(')', caret) == std::string_view::npos) {
            exp = std::stoi(std::string(f.substr(caret + 1)));
            f = f.substr(0, caret);
        }
        auto lb = f.find('[');
        auto rb = f.find(']');
        if (lb == std::string_view::npos || rb == std::string_view::npos)
            throw std::invalid_argument("bad factor '" + std::string(f) + "'");
        VarKey v;
        v.family = parse_family(f.substr(0, lb));
        v.index = std::stoi(std::string(f.substr(lb + 1, rb - lb - 1)));
        v.half_shift = 0;
        if (v.shifts()) {
            auto lp = f.find('(', rb);
            auto rp = f.find(')', rb);
            if (lp == std::string_view::npos || rp == std::string_view::npos)
                throw std::invalid_argument("missing argument in '" + std::string(f) + "'");
            v.half_shift = parse_shift(f.substr(lp + 1, rp - lp - 1));
        }
        vars.push_back({v, exp});
    }
    auto p = LaurentPoly::monomial(coeff, vars);
    if (p.is_zero()) return {mpz_class(0), {}};
    return p.terms()[0];
}

} // namespace detail

/// Parses the canonical text form; terms may be separated by " + " or newlines.
inline LaurentPoly parse_poly(std::string_view text) {
    std::vector<Monomial> terms;
    std::size_t pos = 0;
    auto take = [&](std::string_view piece) {
        piece = detail::trim(piece);
        if (piece.empty() || piece == "0") return;
        auto m = detail::parse_monomial(piece);
        if (m.coeff != 0) terms.push_back(std::move(m));
    };
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto plus = text.find(" + ", pos);
        auto cut = std::min(nl, plus);
        if (cut == std::string_view::npos) {
            take(text.substr(pos));
            break;
        }
        take(text.substr(pos, cut - pos));
        pos = cut + (cut == nl ? 1 : 3);
    }
    return LaurentPoly::from_terms(std::move(terms));
}

/// Y-family variables to Q-family: Y_a(v) = Q_a(v - t_a/2) / Q_a(v + t_a/2).
/// Q variables pass through; formal exponentials are rejected.
inline LaurentPoly to_q(const LaurentPoly& p, const CartanData& cartan) {
    return p.substitute_units([&](const VarKey& v) -> std::optional<Monomial> {
        if (v.family == Family::Q) return std::nullopt;
        if (v.family != Family::Y) throw std::domain_error("cannot express " + to_text(v) + " through Q variables");
        int t = cartan.root_length_half(v.index);
        return Monomial{mpz_class(1), {{Qv(v.index, v.half_shift - t).packed(), 1},
                                       {Qv(v.index, v.half_shift + t).packed(), -1}}};
    });
}

/// Strict form: the input must be a pure Y-polynomial.
inline LaurentPoly y_to_q(const LaurentPoly& p, const CartanData& cartan) {
    for (const auto& v : p.variables()) {
        if (v.family != Family::Y) throw std::domain_error("y_to_q: non-Y variable " + to_text(v));
    }
    return to_q(p, cartan);
}

/// Equality in the common Q-ring. Pure Y-polynomials are compared directly,
/// which is equivalent because Y -> Q is injective.
inline bool same_in_q(const LaurentPoly& a, const LaurentPoly& b, const CartanData& cartan) {
    if (a.only_family(Family::Y) && b.only_family(Family::Y)) return a == b;
    return to_q(a - b, cartan).is_zero();
}

class MissingAssignment : public std::out_of_range {
public:
    explicit MissingAssignment(const VarKey& v)
        : std::out_of_range("no value assigned to " + to_text(v)), var_(v) {}
    const VarKey& var() const { return var_; }

private:
    VarKey var_;
};

inline mpq_class int_pow(const mpq_class& x, int e) {
    if (e < 0) {
        if (x == 0) throw std::domain_error("division by zero while evaluating");
        mpq_class inv = 1 / x;
        return int_pow(inv, -e);
    }
    mpq_class r = 1;
    mpq_class b = x;
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

/// Evaluates with `lookup(VarKey) -> mpq_class`.
template <class Lookup> mpq_class evaluate(const LaurentPoly& p, Lookup&& lookup) {
    mpq_class total = 0;
    std::unordered_map<std::uint64_t, mpq_class> cache;
    for (const auto& t : p.terms()) {
        mpq_class term = t.coeff;
        for (const auto& [k, e] : t.exps) {
            auto it = cache.find(k);
            if (it == cache.end()) it = cache.emplace(k, lookup(VarKey::unpack(k))).first;
            term *= int_pow(it->second, e);
        }
        total += term;
    }
    return total;
}

inline mpq_class eval_rational(const LaurentPoly& p, const std::map<VarKey, mpq_class>& assign) {
    return evaluate(p, [&](const VarKey& v) -> mpq_class {
        auto it = assign.find(v);
        if (it == assign.end()) throw MissingAssignment(v);
        return it->second;
    });
}

/// Shift templates z_a, z_abar, x_i (C) and z_0 (B), each as a polynomial in
/// variables at base point u.
class VariableTable {
public:
    explicit VariableTable(const AlgebraSpec& alg) : alg_(alg), cartan_(alg) {
        const int n = alg.rank;
        z_.assign(n + 1, LaurentPoly(1));
        zbar_.assign(n + 1, LaurentPoly(1));
        switch (alg.series) {
        case Series::C:
            for (int a = 1; a <= n; ++a) {
                z_[a] = ratio({{a, a}}, {{a - 1, a + 1}});
                zbar_[a] = ratio({{a - 1, 2 * n - a + 3}}, {{a, 2 * n - a + 4}});
            }
            x_.assign(alg.N() + 1, LaurentPoly());
            for (int a = 1; a <= n; ++a) {
                x_[a] = z_[a];
                x_[2 * n + 3 - a] = zbar_[a];
            }
            x_[n + 1] = LaurentPoly::monomial(1, {{Qv(n, n), 1}, {Qv(n, n + 4), 1}, {Qv(n, n + 2), -2}});
            x_[n + 2] = -x_[n + 1];
            break;
        case Series::B:
            for (int a = 1; a <= n - 1; ++a) {
                z_[a] = ratio({{a, 2 * a}}, {{a - 1, 2 * a + 2}});
                zbar_[a] = ratio({{a - 1, 2 * (2 * n - a)}}, {{a, 2 * (2 * n - a + 1)}});
            }
            z_[n] = ratio({{n, 2 * n + 1}, {n, 2 * n - 1}}, {{n - 1, 2 * n + 2}});
            zbar_[n] = ratio({{n - 1, 2 * n}}, {{n, 2 * n + 3}, {n, 2 * n + 1}});
            z0_ = ratio({{n, 2 * n - 1}}, {{n, 2 * n + 3}});
            break;
        case Series::D:
            for (int a = 1; a <= n - 2; ++a) {
                z_[a] = ratio({{a, 2 * a}}, {{a - 1, 2 * a + 2}});
                zbar_[a] = ratio({{a - 1, 2 * (2 * n - a - 1)}}, {{a, 2 * (2 * n - a)}});
            }
            z_[n - 1] = ratio({{n, 2 * (n - 1)}, {n - 1, 2 * (n - 1)}}, {{n - 2, 2 * n}});
            zbar_[n - 1] = ratio({{n - 2, 2 * n}}, {{n, 2 * (n + 1)}, {n - 1, 2 * (n + 1)}});
            z_[n] = ratio({{n, 2 * (n - 1)}}, {{n - 1, 2 * (n + 1)}});
            zbar_[n] = ratio({{n - 1, 2 * (n - 1)}}, {{n, 2 * (n + 1)}});
            for (int a = 1; a <= n; ++a) {
                for (const auto& p : {z_[a], zbar_[a]})
                    for (const auto& v : p.variables())
                        if (v.half_shift % 2 != 0) throw std::logic_error("D-series template off the integer lattice");
            }
            break;
        }
    }

    const AlgebraSpec& algebra() const { return alg_; }
    const CartanData& cartan() const { return cartan_; }
    int rank() const { return alg_.rank; }

    const LaurentPoly& z(int a) const { return z_.at(check(a)); }
    const LaurentPoly& zbar(int a) const { return zbar_.at(check(a)); }

    /// x_i for 1 <= i <= N (C series only).
    const LaurentPoly& x(int i) const {
        if (alg_.series != Series::C) throw std::logic_error("x variables exist for the C series only");
        if (i < 1 || i > alg_.N()) throw std::out_of_range("x index out of range");
        return x_[i];
    }

    const LaurentPoly& z0() const {
        if (alg_.series != Series::B) throw std::logic_error("z_0 exists for the B series only");
        return z0_;
    }

private:
    int check(int a) const {
        if (a < 1 || a > alg_.rank) throw std::out_of_range("z index out of range");
        return a;
    }

    /// prod Y_a(u+s/2) / prod Y_b(u+s/2) with Y_0 = 1 dropped.
    static LaurentPoly ratio(std::vector<std::pair<int, int>> num, std::vector<std::pair<int, int>> den) {
        std::vector<std::pair<VarKey, int>> vars;
        for (auto [a, s] : num)
            if (a != 0) vars.push_back({Yv(a, s), 1});
        for (auto [a, s] : den)
            if (a != 0) vars.push_back({Yv(a, s), -1});
        return LaurentPoly::monomial(1, vars);
    }

    AlgebraSpec alg_;
    CartanData cartan_;
    std::vector<LaurentPoly> z_, zbar_, x_;
    LaurentPoly z0_;
};

} // namespace qdiff
