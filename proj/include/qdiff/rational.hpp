#pragma once

// Exact rational helpers: determinants, seeded sampling, and a report type
// for identities checked by evaluation at points.

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qdiff {

using RationalMatrix = std::vector<std::vector<mpq_class>>;

/// Gaussian elimination with exact pivoting on the first nonzero entry.
inline mpq_class det_rational(RationalMatrix m) {
    const std::size_t k = m.size();
    mpq_class det = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && m[p][c] == 0) ++p;
        if (p == k) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < k; ++r) {
            if (m[r][c] == 0) continue;
            mpq_class f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < k; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

/// Nonzero rational p/q with |p|, q <= bound.
inline mpq_class sample_rational(std::mt19937_64& rng, int bound = 127) {
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> den(1, bound);
    int p = 0;
    while (p == 0) p = num(rng);
    mpq_class q(p, den(rng));
    q.canonicalize();
    return q;
}

struct PointCheck {
    std::string identity;
    nlohmann::json params;
    std::vector<std::string> point;
    mpq_class lhs, rhs;
    bool ok() const { return lhs == rhs; }
};

struct EvalReport {
    std::string name;
    std::vector<PointCheck> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok()) return false;
        return !checks.empty();
    }
    const PointCheck* first_failure() const {
        for (const auto& c : checks)
            if (!c.ok()) return &c;
        return nullptr;
    }
    void add(std::string identity, nlohmann::json params, std::vector<std::string> point, mpq_class lhs,
             mpq_class rhs) {
        checks.push_back({std::move(identity), std::move(params), std::move(point), std::move(lhs), std::move(rhs)});
    }
    void append(const EvalReport& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : checks)
            arr.push_back({{"identity", c.identity},
                           {"params", c.params},
                           {"point", c.point},
                           {"lhs", c.lhs.get_str()},
                           {"rhs", c.rhs.get_str()},
                           {"ok", c.ok()}});
        return {{"name", name}, {"ok", ok()}, {"checks", arr}};
    }
};

} // namespace qdiff
