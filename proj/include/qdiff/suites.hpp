#pragma once

// Named verification suites shared by the command-line tool and the
// acceptance runner. A suite is a list of independent tasks; tasks may run
// concurrently but their sections are assembled in declaration order, so the
// report only depends on the configuration.

#include "bd.hpp"
#include "casorati.hpp"
#include "classical.hpp"
#include "diffop.hpp"
#include "qchar.hpp"
#include "screening.hpp"
#include "tableaux.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdiff {

struct SuiteConfig {
    std::vector<int> ranks;         ///< empty: the suite's default ranks
    std::optional<Series> algebra;  ///< only the bd suite accepts B or D
    std::uint64_t seed = 1;
    std::optional<int> order;
    std::optional<int> max_m;
    int jobs = 1;

    nlohmann::json to_json() const {
        nlohmann::json j{{"ranks", ranks}, {"seed", seed}};
        if (algebra) j["algebra"] = std::string(1, series_letter(*algebra));
        if (order) j["order"] = *order;
        if (max_m) j["max_m"] = *max_m;
        return j;
    }
};

struct SuiteSection {
    std::string label;
    bool ok = false;
    nlohmann::json report;
};

struct SuiteReport {
    std::string suite;
    std::vector<std::string> checks;
    nlohmann::json config;
    std::vector<SuiteSection> sections;

    bool ok() const {
        for (const auto& s : sections)
            if (!s.ok) return false;
        return !sections.empty();
    }
    nlohmann::json to_json() const {
        nlohmann::json ss = nlohmann::json::array();
        for (const auto& s : sections) ss.push_back({{"label", s.label}, {"ok", s.ok}, {"report", s.report}});
        return {{"suite", suite}, {"checks", checks}, {"config", config}, {"ok", ok()}, {"sections", ss}};
    }
    std::string to_text() const {
        std::string out = "suite " + suite + ": " + (ok() ? "PASS" : "FAIL") + "\n";
        for (const auto& c : checks) out += "  checks " + c + "\n";
        for (const auto& s : sections) out += std::string("  [") + (s.ok ? "pass" : "FAIL") + "] " + s.label + "\n";
        return out;
    }
};

using SuiteTask = std::pair<std::string, std::function<SuiteSection()>>;

inline std::vector<SuiteSection> run_tasks(const std::vector<SuiteTask>& tasks, int jobs) {
    std::vector<SuiteSection> out(tasks.size());
    auto run_one = [&](std::size_t i) {
        out[i] = tasks[i].second();
        out[i].label = tasks[i].first;
    };
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
        return out;
    }
    for (std::size_t start = 0; start < tasks.size(); start += jobs) {
        std::vector<std::future<void>> batch;
        for (std::size_t i = start; i < std::min(tasks.size(), start + jobs); ++i)
            batch.push_back(std::async(std::launch::async, run_one, i));
        for (auto& f : batch) f.get();
    }
    return out;
}

namespace suite_detail {

inline std::vector<int> ranks_or(const SuiteConfig& cfg, std::vector<int> fallback, int min_rank) {
    auto r = cfg.ranks.empty() ? std::move(fallback) : cfg.ranks;
    for (int n : r)
        if (n < min_rank) throw std::invalid_argument("rank " + std::to_string(n) + " below " + std::to_string(min_rank));
    return r;
}

inline void require_c(const SuiteConfig& cfg, const std::string& suite) {
    if (cfg.algebra && *cfg.algebra != Series::C) throw std::invalid_argument(suite + " runs on the C series only");
}

inline SuiteSection from_relation(const RelationReport& r) { return {"", r.ok(), r.to_json()}; }
inline SuiteSection from_eval(const EvalReport& r) { return {"", r.ok(), r.to_json()}; }

inline SuiteSection from_kernels(const std::vector<KernelReport>& ks) {
    SuiteSection s{"", !ks.empty(), nlohmann::json::array()};
    for (const auto& k : ks) {
        s.ok = s.ok && k.zero;
        s.report.push_back(k.to_json());
    }
    return s;
}

inline std::string rank_label(int n) { return "n=" + std::to_string(n); }

} // namespace suite_detail

// ---------------------------------------------------------------------------

inline SuiteReport suite_screening(const SuiteConfig& cfg) {
    using namespace suite_detail;
    require_c(cfg, "screening");
    std::vector<SuiteTask> tasks;
    for (int n : ranks_or(cfg, {2, 3}, 2)) {
        tasks.push_back({rank_label(n) + " L", [n] {
                             VariableTable vt(AlgebraSpec(Series::C, n));
                             auto L = build_L_C(vt);
                             std::vector<KernelReport> ks;
                             for (int a = 1; a <= n; ++a) ks.push_back(verify_kernel(a, L, vt.cartan(), "L"));
                             return from_kernels(ks);
                         }});
        tasks.push_back({rank_label(n) + " fundamental", [n] {
                             Characters ch(n);
                             std::vector<KernelReport> ks;
                             for (int b = 1; b < ch.N(); ++b)
                                 for (int a = 1; a <= n; ++a)
                                     ks.push_back(verify_kernel(a, ch.T1(b), ch.cartan(), "T1(" + std::to_string(b) + ")"));
                             return from_kernels(ks);
                         }});
        const int m_max = cfg.max_m.value_or(n == 2 ? 4 : 2);
        tasks.push_back({rank_label(n) + " row m<=" + std::to_string(m_max), [n, m_max] {
                             Characters ch(n);
                             std::vector<KernelReport> ks;
                             for (int m = 1; m <= m_max; ++m)
                                 for (int a = 1; a <= n; ++a)
                                     ks.push_back(verify_kernel(a, ch.row(m), ch.cartan(), "row(" + std::to_string(m) + ")"));
                             return from_kernels(ks);
                         }});
    }
    return {"screening",
            {"S_a L = 0 at every D-degree", "S_a T^(b)_1 = 0 for 1 <= b < N", "S_a T^(1)_m = 0 for the row characters"},
            cfg.to_json(),
            run_tasks(tasks, cfg.jobs)};
}

inline SuiteReport suite_operator_forms(const SuiteConfig& cfg) {
    using namespace suite_detail;
    require_c(cfg, "operator-forms");
    std::vector<SuiteTask> tasks;
    for (int n : ranks_or(cfg, {2, 3, 4}, 2)) {
        tasks.push_back({rank_label(n), [n] {
                             VariableTable vt(AlgebraSpec(Series::C, n));
                             auto ref = build_L_C(vt, LForm::zFactored);
                             nlohmann::json rows = nlohmann::json::array();
                             bool ok = build_L_C(vt, LForm::zReversed) == ref;
                             rows.push_back({{"form", form_name(LForm::zReversed)}, {"ok", ok}});
                             for (int s : {1, -1})
                                 for (LForm f : {LForm::xFactored, LForm::xReversed}) {
                                     bool same = same_in_q(build_L_C(vt, f, EpsilonChoice{s}), ref, vt.cartan());
                                     rows.push_back({{"form", form_name(f)}, {"epsilon", s}, {"ok", same}});
                                     ok = ok && same;
                                 }
                             return SuiteSection{"", ok, rows};
                         }});
    }
    return {"operator-forms", {"the z- and x-factorized L operators agree in both orders and for both epsilon choices"},
            cfg.to_json(), run_tasks(tasks, cfg.jobs)};
}

inline nlohmann::json to_json(const CancellationReport& r) {
    nlohmann::json j{{"n", r.n},
                     {"a", r.a},
                     {"x_tableaux", r.x_tableaux},
                     {"admissible_tableaux", r.admissible_tableaux},
                     {"expected_count", r.expected_count},
                     {"result_terms", r.result_terms},
                     {"x_sum_equals_z_sum", r.x_sum_equals_z_sum},
                     {"middle_groups_cancel", r.middle_groups_cancel},
                     {"reduced_identity", r.reduced_identity},
                     {"bijection_checked", r.bijection_checked},
                     {"V_size", r.V_size},
                     {"W_size", r.W_size},
                     {"ok", r.ok()}};
    if (!r.failure.empty()) j["failure"] = r.failure;
    return j;
}

inline SuiteReport suite_cancellation(const SuiteConfig& cfg) {
    using namespace suite_detail;
    require_c(cfg, "cancellation");
    std::vector<SuiteTask> tasks;
    for (int n : ranks_or(cfg, {2, 3, 4, 5}, 2))
        for (int a = 1; a <= n; ++a)
            tasks.push_back({rank_label(n) + " a=" + std::to_string(a), [n, a] {
                                 auto r = verify_cancellation(n, a);
                                 return SuiteSection{"", r.ok(), to_json(r)};
                             }});
    return {"cancellation",
            {"signed x-tableau sum equals the admissible z-tableau sum",
             "term count C(2n,a) - C(2n,a-2)"},
            cfg.to_json(),
            run_tasks(tasks, cfg.jobs)};
}

/// The worked chain for n = 9, a = 9 (letters 1..9 and their bars).
inline SuiteSection worked_tau_chain() {
    const int n = 9;
    const std::vector<std::string> expected = {
        "3 5 7 9 9 9~ 8~ 7~ 3~", "3 5 7 8 9 8~ 8~ 7~ 3~", "3 5 7 7 9 8~ 7~ 7~ 3~",
        "3 5 6 6 9 8~ 6~ 6~ 3~", "3 5 5 6 9 8~ 6~ 5~ 3~", "3 4 5 6 9 8~ 6~ 4~ 3~",
    };
    auto t = parse_tableau(expected.front(), n);
    auto r = tau_full(t, n);
    nlohmann::json chain = nlohmann::json::array();
    bool ok = in_V(t, n) && r.chain.size() == expected.size() && r.p == 4;
    for (std::size_t i = 0; i < r.chain.size(); ++i) {
        chain.push_back(to_text(r.chain[i], n));
        ok = ok && i < expected.size() && to_text(r.chain[i], n) == expected[i];
    }
    auto bp = maximal_breaking_pair(r.image, n);
    ok = ok && in_W(r.image, n) && bp.q == 4 && bp.gap == n - 4 && sigma_full(r.image, n) == t;
    return {"", ok, {{"chain", chain}, {"p", r.p}, {"image", to_text(r.image, n)}, {"gap", bp.gap}}};
}

inline SuiteReport suite_bijection(const SuiteConfig& cfg) {
    using namespace suite_detail;
    require_c(cfg, "bijection");
    std::vector<SuiteTask> tasks;
    for (int n : ranks_or(cfg, {3, 4, 5}, 3))
        for (int a = 3; a <= n; ++a)
            tasks.push_back({rank_label(n) + " a=" + std::to_string(a), [n, a] {
                                 VariableTable vt(AlgebraSpec(Series::C, n));
                                 auto r = verify_bijection(n, a, vt);
                                 nlohmann::json j{{"V_size", r.V_size}, {"W_size", r.W_size}, {"ok", r.ok}};
                                 if (!r.ok) j["failure"] = r.failure;
                                 return SuiteSection{"", r.ok, j};
                             }});
    if (cfg.ranks.empty()) tasks.push_back({"worked chain n=9", worked_tau_chain});
    return {"bijection",
            {"tau and sigma are mutually inverse between V and W", "tau preserves the Z-weight",
             "tau lands on the maximal breaking pair (p, pbar) with gap n-p"},
            cfg.to_json(),
            run_tasks(tasks, cfg.jobs)};
}

inline SuiteReport suite_tsystem(const SuiteConfig& cfg) {
    using namespace suite_detail;
    require_c(cfg, "tsystem");
    std::vector<SuiteTask> tasks;
    for (int n : ranks_or(cfg, {2, 3}, 2)) {
        tasks.push_back({rank_label(n), [n, mm = cfg.max_m] {
                             Characters ch(n);
                             // n >= 3 default: the squared T^(n-1) and the Pfaffian stay small
                             auto r = mm ? verify_tsystem(ch, *mm)
                                         : (n == 2 ? verify_tsystem(ch, 3) : verify_tsystem(ch, 3, 2, 3));
                             return from_relation(r);
                         }});
    }
    return {"tsystem",
            {"T-system with Jacobi-Trudi T^(a)_m for a < n and Pfaffian T^(n)_m, fully expanded"},
            cfg.to_json(),
            run_tasks(tasks, cfg.jobs)};
}

inline SuiteReport suite_tt_tq(const SuiteConfig& cfg) {
    using namespace suite_detail;
    require_c(cfg, "tt-tq");
    std::vector<SuiteTask> tasks;
    for (int n : ranks_or(cfg, {2, 3}, 2))
        tasks.push_back({rank_label(n), [n, mm = cfg.max_m] {
                             Characters ch(n);
                             return from_relation(verify_tt_tq(ch, mm.value_or(2 * ch.N())));
                         }});
    return {"tt-tq", {"both T-T relations for 0 <= m <= max_m", "the T-Q relation in Q-variables"}, cfg.to_json(),
            run_tasks(tasks, cfg.jobs)};
}

/// The ratio for the index set {0,1,3,4,6,7} at n = 2 and its monomial count.
inline SuiteSection index_set_ratio_check() {
    Characters ch(2);
    auto r = casorati_ratio(ch, {0, 1, 3, 4, 6, 7});
    RelationReport rep{"index_set_ratio", {}};
    rep.record("two_by_two", {{"indices", {0, 1, 3, 4, 6, 7}}}, r,
               ch.T1(1, 3) * ch.T1(1, 5) - ch.T1(2, 2) * ch.T1(2, 6));
    auto j = rep.to_json();
    j["monomial_count"] = r.size();
    return {"", rep.ok() && r.size() == 19, j};
}

inline SuiteReport suite_hseries(const SuiteConfig& cfg) {
    using namespace suite_detail;
    require_c(cfg, "hseries");
    std::vector<SuiteTask> tasks;
    const auto ranks = ranks_or(cfg, {2}, 2);
    for (int n : ranks) {
        tasks.push_back({rank_label(n) + " hook determinant", [n] {
                             Characters ch(n);
                             RelationReport rep{"hook_determinant", {}};
                             for (int k = ch.N(); k <= ch.N() + 3; ++k)
                                 for (int i = 0; i < ch.N(); ++i)
                                     rep.record("recursion_vs_determinant", {{"i", i}, {"k", k}}, ch.H(i, k).shifted(i),
                                                ch.hook_determinant(i, k));
                             return from_relation(rep);
                         }});
        tasks.push_back({rank_label(n) + " highest monomial", [n] {
                             Characters ch(n);
                             nlohmann::json rows = nlohmann::json::array();
                             bool ok = true;
                             for (int k = ch.N() + 1; k <= ch.N() + 3; ++k)
                                 for (int i = 0; i < ch.N(); ++i) {
                                     auto c = hook_highest_coefficient(ch, i, k);
                                     rows.push_back({{"i", i}, {"k", k}, {"coefficient", c.get_str()}});
                                     ok = ok && c == 1;
                                 }
                             return SuiteSection{"", ok, rows};
                         }});
    }
    if (std::find(ranks.begin(), ranks.end(), 2) != ranks.end())
        tasks.push_back({"n=2 index set ratio", index_set_ratio_check});
    return {"hseries",
            {"H-series recursion equals the hook determinant for N <= k <= N+3",
             "sigma_i H^(i)_k contains its highest-weight monomial with coefficient 1 (N+1 <= k <= N+3)",
             "Casorati ratio {0,1,3,4,6,7} as a 2x2 determinant of fundamentals"},
            cfg.to_json(),
            run_tasks(tasks, cfg.jobs)};
}

inline SuiteReport suite_product_formula(const SuiteConfig& cfg) {
    using namespace suite_detail;
    require_c(cfg, "product-formula");
    std::vector<SuiteTask> tasks;
    for (int n : ranks_or(cfg, {2}, 2))
        tasks.push_back({rank_label(n), [n, mm = cfg.max_m] {
                             Characters ch(n);
                             const int k_max = mm.value_or(ch.N() + 2);
                             nlohmann::json rows = nlohmann::json::array();
                             bool ok = k_max >= 1;
                             for (int k = 1; k <= k_max; ++k) {
                                 bool r = verify_product_formula(ch, k);
                                 rows.push_back({{"k", k}, {"ok", r}});
                                 ok = ok && r;
                             }
                             return SuiteSection{"", ok, rows};
                         }});
    return {"product-formula", {"the transfer-matrix product over k steps equals the H-matrix of index k"},
            cfg.to_json(), run_tasks(tasks, cfg.jobs)};
}

inline SuiteReport suite_hookchi(const SuiteConfig& cfg) {
    using namespace suite_detail;
    require_c(cfg, "hookchi");
    std::vector<SuiteTask> tasks;
    const auto ranks = ranks_or(cfg, {2, 3}, 2);
    for (int n : ranks) {
        tasks.push_back({rank_label(n) + " hook decomposition", [n, seed = cfg.seed] {
                             Characters ch(n);
                             std::mt19937_64 rng(seed);
                             return from_eval(verify_hookchi(ch, ch.N() + 3, 5, rng));
                         }});
        tasks.push_back({rank_label(n) + " pieri", [n, seed = cfg.seed] {
                             std::mt19937_64 rng(seed + 1);
                             EvalReport all{"pieri", {}};
                             for (int a = 1; a <= n; ++a)
                                 for (int p = 0; p <= 4; ++p) all.append(verify_pieri(n, p, a, 5, rng));
                             return from_eval(all);
                         }});
    }
    if (std::find(ranks.begin(), ranks.end(), 2) != ranks.end())
        tasks.push_back({"n=2 dimensions", [] {
                             auto d = [](int a, int g) { return hook_dimension(2, {a, g}); };
                             mpq_class lhs = d(0, 0) * d(0, 0), rhs = d(1, 0) + d(0, 1) + d(-1, 0);
                             return SuiteSection{"", lhs == 16 && lhs == rhs,
                                                 {{"lhs", lhs.get_str()},
                                                  {"terms", {d(1, 0).get_str(), d(0, 1).get_str(), d(-1, 0).get_str()}}}};
                         }});
    return {"hookchi",
            {"beta(H^(i)_k) decomposes into hook characters at random rational points",
             "Pieri rule for hook characters", "C2 dimension instance 4*4 = 10 + 5 + 1"},
            cfg.to_json(),
            run_tasks(tasks, cfg.jobs)};
}

inline SuiteReport suite_casorati(const SuiteConfig& cfg) {
    using namespace suite_detail;
    require_c(cfg, "casorati");
    std::vector<SuiteTask> tasks;
    for (int n : ranks_or(cfg, {2, 3}, 2))
        tasks.push_back({rank_label(n), [n, seed = cfg.seed, mm = cfg.max_m] {
                             CasoratiOptions opt;
                             opt.rank = n;
                             opt.seed = seed;
                             opt.m_max = mm.value_or(2);
                             // the full family is the rank-2 workload; higher ranks run the Weyl type ratios
                             opt.full = n == 2;
                             auto s = run_casorati_suite(opt);
                             return SuiteSection{"", s.ok(), s.to_json()};
                         }});
    return {"casorati",
            {"Baxter Q_1 and the basis solve the difference equation",
             "Weyl type ratios [0..a-1, a+1..N]/[0..N-1] and hook ratios for k <= N+3",
             "x~ = x on the triangular basis", "skew ratios as tableau sums and T-determinants",
             "Pluecker, duality and the rectangle formulas on Casoratians for m <= max_m",
             "dual Jacobi-Trudi on arbitrary tables"},
            cfg.to_json(),
            run_tasks(tasks, cfg.jobs)};
}

inline SuiteReport suite_nnsy(const SuiteConfig& cfg) {
    using namespace suite_detail;
    std::vector<SuiteTask> tasks;
    auto sizes = cfg.ranks.empty() ? std::vector<int>{3, 4, 6} : cfg.ranks;
    for (int N : sizes) {
        if (N < 1) throw std::invalid_argument("table size must be positive");
        tasks.push_back({"N=" + std::to_string(N), [N, seed = cfg.seed] {
                             std::mt19937_64 rng(seed + static_cast<std::uint64_t>(N));
                             auto table = random_table(N, 5 * N + 4, rng);
                             auto shapes = default_shapes(N);
                             shapes.push_back(consecutive(0, N - 1));
                             return from_eval(verify_nnsy_table(table, shapes, {0, 1, 2}, {N, N + 1, N + 2}));
                         }});
    }
    return {"nnsy",
            {"Casorati ratio on arbitrary data equals the x~ tableau sum and the dual Jacobi-Trudi determinant"},
            cfg.to_json(),
            run_tasks(tasks, cfg.jobs)};
}

inline SuiteReport suite_bd(const SuiteConfig& cfg) {
    using namespace suite_detail;
    std::vector<std::pair<Series, int>> cases;
    if (cfg.algebra == Series::C) throw std::invalid_argument("bd runs on the B and D series");
    for (Series s : {Series::B, Series::D}) {
        if (cfg.algebra && *cfg.algebra != s) continue;
        auto ranks = cfg.ranks.empty() ? (s == Series::B ? std::vector<int>{2, 3} : std::vector<int>{3, 4}) : cfg.ranks;
        for (int n : ranks) {
            if (n < (s == Series::B ? 2 : 3)) throw std::invalid_argument("rank too small for this series");
            cases.push_back({s, n});
        }
    }
    std::vector<SuiteTask> tasks;
    for (auto [s, n] : cases)
        tasks.push_back({AlgebraSpec(s, n).name(), [s, n, ord = cfg.order] {
                             auto r = verify_bd_screening(s, n, ord.value_or(default_bd_order(n)));
                             return SuiteSection{"", r.ok(), r.to_json()};
                         }});
    return {"bd",
            {"S_a L = 0 and S_a L^-1 = 0 to the truncation order", "L L^-1 = L^-1 L = 1 to the truncation order",
             "closed-form expansion of the middle product", "building blocks of the node-n argument lie in the kernel"},
            cfg.to_json(),
            run_tasks(tasks, cfg.jobs)};
}

inline SuiteReport suite_d_middle_expansion(const SuiteConfig& cfg) {
    using namespace suite_detail;
    if (cfg.algebra && *cfg.algebra != Series::D) throw std::invalid_argument("lemma-exp runs on the D series");
    std::vector<SuiteTask> tasks;
    const int order = cfg.order.value_or(12);
    if (order < 4) throw std::invalid_argument("lemma-exp needs order >= 4");
    for (int n : ranks_or(cfg, {3, 4}, 3))
        tasks.push_back({"D" + std::to_string(n) + " to D^" + std::to_string(order),
                         [n, order] { return from_relation(verify_d_middle_expansion(n, (order - 4) / 4)); }});
    return {"lemma-exp", {"D middle product against its closed-form expansion, coefficient by coefficient"},
            cfg.to_json(), run_tasks(tasks, cfg.jobs)};
}

inline const std::map<std::string, SuiteReport (*)(const SuiteConfig&)>& suite_table() {
    static const std::map<std::string, SuiteReport (*)(const SuiteConfig&)> table{
        {"screening", suite_screening},   {"cancellation", suite_cancellation}, {"bijection", suite_bijection},
        {"tsystem", suite_tsystem},       {"tt-tq", suite_tt_tq},               {"hseries", suite_hseries},
        {"hookchi", suite_hookchi},       {"casorati", suite_casorati},         {"nnsy", suite_nnsy},
        {"bd", suite_bd},                 {"lemma-exp", suite_d_middle_expansion},       {"product-formula", suite_product_formula},
        {"operator-forms", suite_operator_forms},
    };
    return table;
}

/// Throws std::invalid_argument for an unknown suite name.
inline SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    auto it = suite_table().find(name);
    if (it == suite_table().end()) throw std::invalid_argument("unknown suite: " + name);
    return it->second(cfg);
}

// ---------------------------------------------------------------------------
// Character rendering for the command-line tool.

inline std::string character_text(const QCharacter& q) {
    std::string out = q.algebra.name() + " " + q.kind;
    for (int p : q.params) out += " " + std::to_string(p);
    out += "\nmonomials: " + std::to_string(q.value.size()) + "\n";
    if (q.highest) out += std::string("highest weight monomial: ") + (q.highest_present() ? "present" : "absent") + "\n";
    return out + q.value.to_text() + "\n";
}

} // namespace qdiff
