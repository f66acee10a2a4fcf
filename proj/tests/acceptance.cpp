// One line per acceptance criterion; exit status 0 iff every criterion passes.

#include <qdiff/suites.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <tuple>

using namespace qdiff;

namespace {

// The C2 fundamental characters written out by hand.
const char* kT1 = "1 * Y[1](u) + 1 * Y[1](u+1)^-1 * Y[2](u+1/2) + 1 * Y[1](u+2) * Y[2](u+5/2)^-1 + 1 * Y[1](u+3)^-1";
const char* kT2 = "1 * Y[2](u) + 1 * Y[1](u+1/2) * Y[1](u+3/2) * Y[2](u+2)^-1 + 1 * Y[1](u+1/2) * Y[1](u+5/2)^-1"
                  " + 1 * Y[1](u+3/2)^-1 * Y[1](u+5/2)^-1 * Y[2](u+1) + 1 * Y[2](u+3)^-1";

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Outcome {
    bool ok = false;
    std::string note;
};

const SuiteSection* section(const SuiteReport& r, const std::string& label) {
    for (const auto& s : r.sections)
        if (s.label == label) return &s;
    return nullptr;
}

bool section_ok(const SuiteReport& r, const std::string& label) {
    auto* s = section(r, label);
    return s && s->ok;
}

std::string failed_sections(const SuiteReport& r) {
    std::string out;
    for (const auto& s : r.sections)
        if (!s.ok) out += (out.empty() ? "" : ", ") + s.label;
    return out;
}

Outcome from_suite(const SuiteReport& r) { return {r.ok(), r.ok() ? "" : "failed: " + failed_sections(r)}; }

Outcome c2_fundamentals() {
    const std::string dir = QDIFF_GOLDEN_DIR;
    bool ok = true;
    std::string note;
    for (auto [a, hand, terms] : {std::tuple{1, kT1, 4u}, {2, kT2, 5u}}) {
        auto q = fundamental(2, a);
        if (!(q.value == parse_poly(hand)) || q.value.size() != terms || !q.highest_present()) {
            ok = false;
            note += "T" + std::to_string(a) + " differs from the hand expansion; ";
        }
        if (character_text(q) != slurp(dir + "/c2_fundamental_" + std::to_string(a) + ".txt")) {
            ok = false;
            note += "T" + std::to_string(a) + " differs from its golden file; ";
        }
    }
    return {ok, note};
}

Outcome cancellation_counts() {
    auto r = suite_cancellation({});
    bool ok = r.ok() && r.sections.size() == 2 + 3 + 4 + 5;
    for (const auto& s : r.sections)
        ok = ok && s.report["result_terms"] == s.report["expected_count"] &&
             s.report["admissible_tableaux"] == s.report["expected_count"];
    return {ok, ok ? "" : "failed: " + failed_sections(r)};
}

Outcome bijection() {
    auto r = suite_bijection({});
    bool ok = r.ok() && section_ok(r, "worked chain n=9") && r.sections.size() == 1 + 2 + 3 + 1;
    return {ok, ok ? "" : "failed: " + failed_sections(r)};
}

Outcome tt_tq() {
    auto r = suite_tt_tq({});
    return from_suite(r);
}

Outcome hseries_and_product() {
    auto h = suite_hseries({});
    auto p = suite_product_formula({});
    bool ok = section_ok(h, "n=2 hook determinant") && p.ok();
    return {ok, ok ? "" : "failed: " + failed_sections(h) + " " + failed_sections(p)};
}

Outcome index_set_ratio() {
    auto s = index_set_ratio_check();
    return {s.ok, "monomials " + s.report["monomial_count"].dump()};
}

Outcome casorati() {
    auto r = suite_casorati({});
    bool ok = r.ok();
    for (const auto& s : r.sections) {
        auto reps = s.report["reports"];
        if (s.label == "n=2") {
            std::set<std::string> names;
            for (const auto& rep : reps) names.insert(rep["name"].get<std::string>());
            for (const char* need : {"weyl_type", "difference_equation", "triangular_basis", "skew_ratio",
                                     "tsystem_casorati", "nnsy_table"})
                ok = ok && names.count(need);
        } else {
            ok = ok && !reps.empty() && reps[0]["name"] == "weyl_type";
        }
    }
    return {ok, ok ? "" : "failed: " + failed_sections(r)};
}

Outcome bd() {
    auto r = suite_bd({});
    auto l = suite_d_middle_expansion({});
    bool ok = r.ok() && l.ok() && r.sections.size() == 4;
    return {ok, ok ? "" : "failed: " + failed_sections(r) + " " + failed_sections(l)};
}

Outcome hook_highest() {
    auto r = suite_hseries({});
    bool ok = section_ok(r, "n=2 highest monomial");
    return {ok, ok ? "" : "a highest monomial coefficient differs from 1"};
}

Outcome determinism() {
    std::string note;
    bool ok = true;
    for (const char* name : {"casorati", "hookchi", "nnsy", "screening", "tsystem", "cancellation"}) {
        SuiteConfig a;
        a.seed = 7;
        SuiteConfig b = a;
        b.jobs = 4;
        auto first = run_suite(name, a).to_json().dump();
        auto second = run_suite(name, a).to_json().dump();
        auto parallel = run_suite(name, b).to_json().dump();
        if (first != second || first != parallel) {
            ok = false;
            note += std::string(name) + " ";
        }
    }
    return {ok, ok ? "" : "reports differ: " + note};
}

struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "C2 fundamental characters match the hand expansion and golden files", 1, c2_fundamentals},
        {2, "x-tableau cancellation and term counts, n = 2..5", 120, cancellation_counts},
        {3, "tau/sigma bijection n = 3..5 and the worked chain", 300, bijection},
        {4, "screening kernels of L, T^(b)_1 and T^(1)_m", 300, [] { return from_suite(suite_screening({})); }},
        {5, "four L operator forms coincide, n = 2..4", 0, [] { return from_suite(suite_operator_forms({})); }},
        {6, "T-T and T-Q relations, n = 2, 3", 0, tt_tq},
        {7, "T-system with Jacobi-Trudi and Pfaffian values, n = 2, 3", 600,
         [] { return from_suite(suite_tsystem({})); }},
        {8, "H-series recursion vs hook determinant and the transfer-matrix product", 0, hseries_and_product},
        {9, "Casorati ratio {0,1,3,4,6,7} as a 2x2 determinant with 19 monomials", 0, index_set_ratio},
        {10, "Casorati suite on exact rational grids", 600, casorati},
        {11, "hook-character decompositions, Pieri rule and 16 = 10 + 5 + 1", 0,
         [] { return from_suite(suite_hookchi({})); }},
        {12, "B/D series screening, inverse, middle-product expansions", 600, bd},
        {13, "highest-weight monomials of sigma_i H^(i)_k with coefficient 1", 0, hook_highest},
        {14, "identical reports on rerun and under parallel execution", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && secs > c.limit_seconds) {
            o.ok = false;
            o.note += " over the time limit";
        }
        failed += !o.ok;
        std::printf("[%s] %2d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, secs,
                    o.note.empty() ? "" : " - ", o.note.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
