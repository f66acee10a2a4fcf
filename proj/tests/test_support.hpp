#pragma once

#include <qdiff/ring.hpp>

#include <random>
#include <vector>

namespace qdiff::fixtures {

// The two C2 fundamental q-characters, written out by hand.
inline const char* kC2T1 =
    "1 * Y[1](u) + 1 * Y[1](u+1)^-1 * Y[2](u+1/2) + 1 * Y[1](u+2) * Y[2](u+5/2)^-1 + 1 * Y[1](u+3)^-1";
inline const char* kC2T2 =
    "1 * Y[2](u) + 1 * Y[1](u+1/2) * Y[1](u+3/2) * Y[2](u+2)^-1 + 1 * Y[1](u+1/2) * Y[1](u+5/2)^-1"
    " + 1 * Y[1](u+3/2)^-1 * Y[1](u+5/2)^-1 * Y[2](u+1) + 1 * Y[2](u+3)^-1";

inline LaurentPoly random_y_poly(std::mt19937_64& rng, int rank, int max_terms = 4, int max_vars = 3) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> nvars(0, max_vars);
    std::uniform_int_distribution<int> idx(1, rank);
    std::uniform_int_distribution<int> shift(-4, 4);
    std::uniform_int_distribution<int> exp(-2, 2);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::vector<Monomial> terms;
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        std::vector<std::pair<VarKey, int>> vars;
        int v = nvars(rng);
        for (int j = 0; j < v; ++j) vars.push_back({Yv(idx(rng), shift(rng)), exp(rng)});
        auto m = LaurentPoly::monomial(coeff(rng), vars);
        if (!m.is_zero()) terms.push_back(m.terms()[0]);
    }
    return LaurentPoly::from_terms(std::move(terms));
}

/// Brute-force product: one term pair at a time, summed by plain addition.
inline LaurentPoly naive_product(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& x : a.terms()) {
        for (const auto& y : b.terms()) {
            std::vector<std::pair<VarKey, int>> vars;
            for (const auto& [k, e] : x.exps) vars.push_back({VarKey::unpack(k), e});
            for (const auto& [k, e] : y.exps) vars.push_back({VarKey::unpack(k), e});
            out += LaurentPoly::monomial(x.coeff * y.coeff, vars);
        }
    }
    return out;
}

inline mpq_class random_rational(std::mt19937_64& rng, int bound = 7) {
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> den(1, bound);
    int p = 0;
    while (p == 0) p = num(rng);
    mpq_class q(p, den(rng));
    q.canonicalize();
    return q;
}

} // namespace qdiff::fixtures
