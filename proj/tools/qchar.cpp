#include <qdiff/suites.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace qdiff;

namespace {

struct Options {
    std::optional<int> rank;
    std::string algebra;
    std::uint64_t seed = 1;
    std::optional<int> order;
    std::optional<int> max_m;
    std::string format = "text";
    std::string out;
    int jobs = 1;

    std::optional<int> fundamental, row;
    std::vector<int> rect, hook;
    std::string form = "z";
    std::string suite;
    bool inverse = false;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::optional<Series> algebra_of(const Options& o) {
    if (o.algebra.empty()) return std::nullopt;
    try {
        return parse_series(o.algebra);
    } catch (const std::exception&) {
        throw UsageError("unknown algebra: " + o.algebra);
    }
}

int rank_or(const Options& o, int fallback) {
    int n = o.rank.value_or(fallback);
    if (n < 1) throw UsageError("rank must be positive");
    return n;
}

void emit(const Options& o, const std::string& text, const nlohmann::json& j) {
    std::cout << (o.format == "json" ? j.dump(2) + "\n" : text);
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw std::runtime_error("cannot write " + o.out);
        f << j.dump(2) << "\n";
    }
}

int cmd_character(const Options& o) {
    if (algebra_of(o).value_or(Series::C) != Series::C) throw UsageError("characters are computed for the C series");
    const int n = rank_or(o, 2), N = 2 * n + 2;
    int labels = o.fundamental.has_value() + o.row.has_value() + !o.rect.empty() + !o.hook.empty();
    if (labels != 1) throw UsageError("give exactly one of --fundamental, --row, --rect, --hook");
    QCharacter q;
    if (o.fundamental) {
        if (*o.fundamental < 0 || *o.fundamental > N) throw UsageError("fundamental index must lie in 0..N");
        q = fundamental(n, *o.fundamental);
    } else if (o.row) {
        if (*o.row < 0) throw UsageError("row length must be >= 0");
        q = row_character(n, *o.row);
    } else if (!o.rect.empty()) {
        const int a = o.rect[0], m = o.rect[1];
        if (a < 1 || a > n || m < 0) throw UsageError("rectangle needs 1 <= a <= n and m >= 0");
        q = a == n ? tnm_pfaffian(n, m) : tam_jacobi_trudi(n, a, m);
    } else {
        const int i = o.hook[0], k = o.hook[1];
        if (i < 0 || i >= N || k < 0) throw UsageError("hook needs 0 <= i < N and k >= 0");
        q = h_series(n, i, k);
    }
    emit(o, character_text(q), q.to_json());
    return 0;
}

LForm form_of(const std::string& s) {
    if (s == "z") return LForm::zFactored;
    if (s == "z-reversed") return LForm::zReversed;
    if (s == "x") return LForm::xFactored;
    if (s == "x-reversed") return LForm::xReversed;
    throw UsageError("unknown operator form: " + s);
}

int cmd_operator(const Options& o) {
    const Series s = algebra_of(o).value_or(Series::C);
    const int n = rank_or(o, s == Series::D ? 3 : 2);
    DiffOp op;
    std::string label;
    if (s == Series::C) {
        VariableTable vt(AlgebraSpec(Series::C, n));
        op = build_L_C(vt, form_of(o.form));
        label = "C" + std::to_string(n) + " L (" + form_name(form_of(o.form)) + ")";
        if (o.inverse) {
            op = inverse_series(op, o.order.value_or(2 * vt.algebra().N()));
            label += " inverse";
        }
    } else {
        if (n < (s == Series::B ? 2 : 3)) throw UsageError("rank too small for this series");
        auto L = build_series_L(s, n, o.order.value_or(default_bd_order(n)));
        op = o.inverse ? inverse_series(L.op, L.order) : L.op;
        label = L.algebra.name() + " L" + (o.inverse ? " inverse" : "") + " to D^" + std::to_string(L.order);
    }
    nlohmann::json j{{"label", label}, {"operator", op.to_json()}};
    emit(o, label + "\n" + op.to_text() + "\n", j);
    return 0;
}

int cmd_bd(const Options& o) {
    const Series s = algebra_of(o).value_or(Series::B);
    if (s == Series::C) throw UsageError("bd takes --algebra B or D");
    const int n = rank_or(o, s == Series::D ? 3 : 2);
    if (n < (s == Series::B ? 2 : 3)) throw UsageError("rank too small for this series");
    const int order = o.order.value_or(default_bd_order(n));
    if (order < 2) throw UsageError("order must be at least 2");
    auto L = build_series_L(s, n, order);
    std::string text = L.algebra.name() + " to D^" + std::to_string(order) + "\n";
    nlohmann::json j{{"algebra", L.algebra.name()}, {"order", order}};
    for (auto [which, key] : {std::pair{BDCoeffs::Ta, "T^a"}, {BDCoeffs::Tm, "T_m"}}) {
        auto cs = extract_bd_coeffs(L, which);
        nlohmann::json arr = nlohmann::json::array();
        for (std::size_t a = 0; a < cs.size(); ++a) {
            arr.push_back({{"index", a}, {"monomial_count", cs[a].size()}, {"poly", cs[a].to_text()}});
            text += std::string(key) + " " + std::to_string(a) + " (" + std::to_string(cs[a].size()) +
                    " monomials): " + cs[a].to_text() + "\n";
        }
        j[key] = arr;
    }
    emit(o, text, j);
    return 0;
}

int cmd_verify(const Options& o) {
    if (!suite_table().count(o.suite)) throw UsageError("unknown suite: " + o.suite);
    SuiteConfig cfg;
    if (o.rank) cfg.ranks = {rank_or(o, 2)};
    cfg.algebra = algebra_of(o);
    cfg.seed = o.seed;
    cfg.order = o.order;
    cfg.max_m = o.max_m;
    cfg.jobs = std::max(1, o.jobs);
    SuiteReport rep;
    try {
        rep = run_suite(o.suite, cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
    }
    emit(o, rep.to_text(), rep.to_json());
    return rep.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact q-characters, difference L operators and identity checks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value file; flags on the command line override it");
    Options o;
    app.add_option("--rank", o.rank, "rank n");
    app.add_option("--algebra", o.algebra, "C, B or D");
    app.add_option("--seed", o.seed, "random seed")->envname("QCHAR_SEED");
    app.add_option("--order", o.order, "truncation order in D");
    app.add_option("--max-m", o.max_m, "largest level m (or k) checked");
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", o.out, "also write the JSON report to this path");
    app.add_option("--jobs", o.jobs, "parallel tasks")->check(CLI::PositiveNumber);

    auto* character = app.add_subcommand("character", "print a q-character");
    character->fallthrough();
    character->add_option("--fundamental", o.fundamental, "T^(a)_1");
    character->add_option("--row", o.row, "T^(1)_m");
    character->add_option("--rect", o.rect, "T^(a)_m")->expected(2);
    character->add_option("--hook", o.hook, "H^(i)_k")->expected(2);

    auto* op = app.add_subcommand("operator", "print the L operator");
    op->fallthrough();
    op->add_option("--form", o.form, "z, z-reversed, x or x-reversed (C series)");
    op->add_flag("--inverse", o.inverse, "print L^-1 as a truncated series");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->fallthrough();
    verify->add_option("suite", o.suite, "suite name")->required();

    auto* bd = app.add_subcommand("bd", "expansion coefficients of the B/D series operators");
    bd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (*character) return cmd_character(o);
        if (*op) return cmd_operator(o);
        if (*verify) return cmd_verify(o);
        return cmd_bd(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
}
