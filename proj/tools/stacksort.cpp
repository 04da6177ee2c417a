// Command-line front end: closed-form evaluation, brute-force enumeration,
// published-table reproduction and the full verification sweep.
//
// Exit codes: 0 = all requested checks match, 1 = a mismatch was found,
// 2 = configuration or range error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stacksort/classical.hpp"
#include "stacksort/closed_forms.hpp"
#include "stacksort/gf_expr.hpp"
#include "stacksort/glob.hpp"
#include "stacksort/oracle.hpp"
#include "stacksort/permutation.hpp"
#include "stacksort/polynomial.hpp"
#include "stacksort/verify.hpp"

namespace {

using namespace stacksort;

std::string env_or(const char* name, std::string fallback) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : std::move(fallback);
}

std::string coeff_list_text(const IntPolynomial& p) {
    std::string s = "[";
    auto cs = to_decimal_coeffs(p);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i) s += ", ";
        s += cs[i];
    }
    return s + "]";
}

void emit_poly(const std::string& format, const std::string& label, int n,
               const IntPolynomial& p, const std::string& citation = "") {
    if (format == "json") {
        nlohmann::ordered_json j{{"kind", label}, {"n", n}, {"coeffs", to_decimal_coeffs(p)}};
        if (!citation.empty()) j["citation"] = citation;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << coeff_list_text(p);
        if (!citation.empty()) std::cout << "   # " << citation;
        std::cout << "\n";
    }
}

// Absolute t values map onto the relative entries when needed (t = n-k for
// some catalogued k) and vice versa, so --t 2 and --t n-2 agree at n = 4.
const forms::FormulaEntry* lookup_with_fallback(forms::Family fam, forms::TSpec t,
                                                Pattern p, int n) {
    const auto& reg = forms::FormulaRegistry::instance();
    if (const auto* e = reg.find(fam, t, p)) return e;
    int resolved = t.resolve(n);
    if (t.kind == forms::TSpec::Kind::absolute) {
        for (int k = 1; k <= 4; ++k)
            if (n - k == resolved)
                if (const auto* e = reg.find(fam, forms::TSpec::relative(k), p)) return e;
    } else {
        if (const auto* e = reg.find(fam, forms::TSpec::absolute(resolved), p)) return e;
    }
    return nullptr;
}

int cmd_w_or_e(forms::Family fam, int n, const std::string& t_text,
               const std::string& avoid, const std::string& source, bool variant,
               const harness::RunConfig& rc) {
    forms::TSpec t = forms::TSpec::parse(t_text);
    Pattern p = pattern_from_string(avoid);
    if (source == "oracle") {
        oracle::Oracle engine({rc.jobs, rc.cache_dir, rc.long_run});
        IntPolynomial poly = fam == forms::Family::W ? engine.w(n, t.resolve(n), p)
                                                     : engine.e_exact(n, t.resolve(n), p);
        emit_poly(rc.format, fam == forms::Family::W ? "W" : "E", n, poly,
                  "exhaustive enumeration");
        return 0;
    }
    const forms::FormulaEntry* entry =
        variant ? &forms::require_entry(fam, t, p, true) : lookup_with_fallback(fam, t, p, n);
    if (!entry)
        throw std::invalid_argument("no closed form catalogued for " +
                                    forms::FormulaId{fam, t, p, variant}.to_string());
    forms::check_validity(*entry, n);
    emit_poly(rc.format, fam == forms::Family::W ? "W" : "E", n, entry->poly(n),
              entry->source);
    return 0;
}

int cmd_tables(int n_max, const harness::RunConfig& rc) {
    oracle::Oracle engine({rc.jobs, rc.cache_dir, rc.long_run});
    const auto& reg = forms::FormulaRegistry::instance();
    bool all_ok = true;

    nlohmann::ordered_json jout;
    nlohmann::ordered_json jcounts = nlohmann::ordered_json::array();
    if (rc.format == "csv") std::cout << "pattern,t,n,count_closed,count_oracle,match\n";
    for (int k = 2; k <= 4; ++k) {
        if (rc.format == "text") {
            std::cout << "t = n-" << k << "\n";
            std::cout << "  pattern |";
            for (int n = 4; n <= n_max; ++n) std::cout << " n=" << n;
            std::cout << "\n";
        }
        for (Pattern p : {Pattern::p123, Pattern::p132, Pattern::p213, Pattern::p231,
                          Pattern::p312, Pattern::p321}) {
            const auto* e = reg.find(forms::Family::Count, forms::TSpec::relative(k), p);
            if (rc.format == "text") std::cout << "  " << to_string(p) << "     |";
            for (int n = 4; n <= n_max; ++n) {
                BigInt closed = e->count(n);
                BigInt oracle_count = engine.count_w(n, n - k, p);
                bool ok = closed == oracle_count;
                all_ok = all_ok && ok;
                if (rc.format == "text")
                    std::cout << " " << closed.str() << (ok ? "" : "!");
                else if (rc.format == "csv")
                    std::cout << to_string(p) << ",n-" << k << "," << n << ","
                              << closed.str() << "," << oracle_count.str() << ","
                              << (ok ? "1" : "0") << "\n";
                else
                    jcounts.push_back({{"pattern", to_string(p)},
                                       {"t", "n-" + std::to_string(k)},
                                       {"n", n},
                                       {"count_closed", closed.str()},
                                       {"count_oracle", oracle_count.str()},
                                       {"match", ok}});
            }
            if (rc.format == "text") std::cout << "\n";
        }
    }

    // The two-pattern sortable-class rows, t = 1..5.
    auto rep = engine.check_conjectures(std::min(n_max, 11), 5);
    nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
    for (int t = 1; t <= 5; ++t) {
        const auto& row = rep.sequences[static_cast<std::size_t>(t - 1)];
        if (rc.format == "text") {
            std::cout << "sortable counts, t=" << t << ":";
            for (const auto& v : row) std::cout << " " << v.str();
            std::cout << "\n";
        } else if (rc.format == "csv") {
            for (std::size_t i = 0; i < row.size(); ++i)
                std::cout << "sortable-row,t=" << t << "," << (i + 1) << ","
                          << row[i].str() << ",,\n";
        } else {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (const auto& v : row) r.push_back(v.str());
            jrows.push_back({{"t", t}, {"counts", r}});
        }
    }
    if (rc.format == "json") {
        jout["enumeration_table"] = std::move(jcounts);
        jout["sortable_rows"] = std::move(jrows);
        std::cout << jout.dump(1) << "\n";
    }
    return all_ok ? 0 : 1;
}

int cmd_conjectures(int n_max, int max_t, const harness::RunConfig& rc) {
    oracle::Oracle engine({rc.jobs, rc.cache_dir, rc.long_run});
    auto rep = engine.check_conjectures(n_max, max_t);
    const auto& published = harness::published_sortable_counts();
    bool rows_ok = true;
    for (int t = 1; t <= std::min(max_t, 5); ++t) {
        const auto& row = rep.sequences[static_cast<std::size_t>(t - 1)];
        const auto& pub = published[static_cast<std::size_t>(t - 1)];
        for (std::size_t i = 0; i < row.size() && i < pub.size(); ++i)
            rows_ok = rows_ok && row[i] == pub[i];
    }
    if (rc.format == "json") {
        nlohmann::ordered_json j;
        j["max_n"] = rep.max_n;
        j["max_t"] = rep.max_t;
        auto cells = [](const std::vector<oracle::ConjectureCell>& v) {
            nlohmann::ordered_json a = nlohmann::ordered_json::array();
            for (const auto& c : v)
                a.push_back({{"n", c.n},
                             {"t", c.t},
                             {"lhs", c.lhs.str()},
                             {"rhs", c.rhs.str()},
                             {"match", c.match}});
            return a;
        };
        j["equinumerosity_213_321"] = cells(rep.c1_matches);
        j["restricted_class_correspondence"] = cells(rep.c2_matches);
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t t = 0; t < rep.sequences.size(); ++t) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (const auto& v : rep.sequences[t]) r.push_back(v.str());
            rows.push_back({{"t", t + 1}, {"counts", r}});
        }
        j["sequences"] = std::move(rows);
        j["published_prefixes_match"] = rows_ok;
        j["all_match"] = rep.all_match();
        std::cout << j.dump(1) << "\n";
    } else {
        int c1_bad = 0, c2_bad = 0;
        for (const auto& c : rep.c1_matches) c1_bad += !c.match;
        for (const auto& c : rep.c2_matches) c2_bad += !c.match;
        std::cout << "213-vs-321 sortable counts: " << rep.c1_matches.size()
                  << " cells, " << c1_bad << " mismatches\n";
        for (const auto& c : rep.c1_matches)
            if (!c.match)
                std::cout << "  MISMATCH n=" << c.n << " t=" << c.t << ": "
                          << c.lhs.str() << " vs " << c.rhs.str() << "\n";
        std::cout << "sortable vs restricted avoidance class: "
                  << rep.c2_matches.size() << " cells, " << c2_bad << " mismatches\n";
        for (const auto& c : rep.c2_matches)
            if (!c.match)
                std::cout << "  MISMATCH n=" << c.n << " t=" << c.t << ": "
                          << c.lhs.str() << " vs " << c.rhs.str() << "\n";
        for (int t = 1; t <= std::min(max_t, 5); ++t) {
            std::cout << "t=" << t << ":";
            for (const auto& v : rep.sequences[static_cast<std::size_t>(t - 1)])
                std::cout << " " << v.str();
            std::cout << "\n";
        }
        std::cout << "published prefixes: " << (rows_ok ? "reproduced" : "MISMATCH")
                  << "\n";
    }
    return rep.all_match() && rows_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stack-sorting descent statistics: closed forms vs exhaustive enumeration"};
    app.require_subcommand(1);

    harness::RunConfig rc;
    rc.jobs = 1;
    rc.cache_dir = env_or("STACKSORT_CACHE_DIR", "");
    rc.table_file = env_or("STACKSORT_TABLES", STACKSORT_DEFAULT_TABLES);

    app.add_option("--jobs", rc.jobs, "enumeration worker threads")->capture_default_str();
    app.add_option("--format", rc.format, "output format: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--cache-dir", rc.cache_dir, "oracle table cache directory");
    app.add_flag("--long-run", rc.long_run, "allow enumeration for n = 12..13");
    app.add_option("--tables", rc.table_file, "published-table transcription file");

    // poly
    auto* poly = app.add_subcommand("poly", "classical polynomial families")->fallthrough();
    std::string poly_kind;
    int poly_n = 0;
    poly->add_option("kind", poly_kind, "eulerian|narayana|catalan")
        ->required()
        ->check(CLI::IsMember({"eulerian", "narayana", "catalan"}));
    poly->add_option("n", poly_n, "index")->required();

    // w / e
    auto add_we_options = [&](CLI::App* cmd, int& n, std::string& t, std::string& avoid,
                              std::string& source, bool& variant) {
        cmd->add_option("--n", n, "permutation length")->required();
        cmd->add_option("--t", t, "t, absolute (1, 2) or relative (n-1 .. n-4)")->required();
        cmd->add_option("--avoid", avoid, "pattern filter: none|123|...|321")
            ->capture_default_str();
        cmd->add_option("--source", source, "closed|oracle")
            ->check(CLI::IsMember({"closed", "oracle"}))
            ->capture_default_str();
        cmd->add_flag("--variant", variant, "use the alternative catalogued reading");
    };
    auto* wcmd = app.add_subcommand("w", "descent polynomial of t-stack-sortable permutations")->fallthrough();
    int w_n = 0;
    std::string w_t, w_avoid = "none", w_source = "closed";
    bool w_variant = false;
    add_we_options(wcmd, w_n, w_t, w_avoid, w_source, w_variant);

    auto* ecmd = app.add_subcommand("e", "descent polynomial of complexity-exactly-t permutations")->fallthrough();
    int e_n = 0;
    std::string e_t, e_avoid = "none", e_source = "closed";
    bool e_variant = false;
    add_we_options(ecmd, e_n, e_t, e_avoid, e_source, e_variant);

    // glob-gf
    auto* globcmd = app.add_subcommand("glob-gf", "descent polynomial of a glob word's match set")->fallthrough();
    int g_n = 0;
    std::string g_word, g_avoid = "none";
    std::vector<std::string> g_constraints, g_exclusions;
    globcmd->add_option("--n", g_n, "permutation length")->required();
    globcmd->add_option("--word", g_word, "glob word, e.g. \"* n 2\"")->required();
    globcmd->add_option("--constraint", g_constraints, "joint constraint (repeatable)");
    globcmd->add_option("--exclude", g_exclusions, "excluded word (repeatable)");
    globcmd->add_option("--avoid", g_avoid, "restrict to permutations avoiding this pattern");

    // verify
    auto* verify = app.add_subcommand("verify", "sweep every closed form against the oracle")->fallthrough();
    int v_n_max = 9;
    verify->add_option("--n-max", v_n_max, "largest length to check")->capture_default_str();

    // tables
    auto* tablescmd = app.add_subcommand("tables", "re-emit the published count tables")->fallthrough();
    int t_n_max = 10;
    tablescmd->add_option("--n-max", t_n_max, "largest length")->capture_default_str();

    // conjectures
    auto* conj = app.add_subcommand("conjectures", "equinumerosity checks and count rows")->fallthrough();
    int c_n_max = 10, c_max_t = 5;
    conj->add_option("--n-max", c_n_max, "largest length")->capture_default_str();
    conj->add_option("--max-t", c_max_t, "largest t for the class correspondence")
        ->capture_default_str();

    // registry
    auto* regcmd = app.add_subcommand("registry", "dump the closed-form catalogue")->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*poly) {
            if (poly_kind == "catalan") {
                if (rc.format == "json")
                    std::cout << nlohmann::ordered_json{{"kind", "catalan"},
                                                        {"n", poly_n},
                                                        {"value", catalan(poly_n).str()}}
                                     .dump()
                              << "\n";
                else
                    std::cout << catalan(poly_n).str() << "\n";
            } else if (poly_kind == "eulerian") {
                emit_poly(rc.format, "eulerian", poly_n, eulerian(poly_n));
            } else {
                emit_poly(rc.format, "narayana", poly_n, narayana(poly_n));
            }
            return 0;
        }
        if (*wcmd)
            return cmd_w_or_e(forms::Family::W, w_n, w_t, w_avoid, w_source, w_variant, rc);
        if (*ecmd)
            return cmd_w_or_e(forms::Family::E, e_n, e_t, e_avoid, e_source, e_variant, rc);
        if (*globcmd) {
            auto word = glob::GlobWord::parse(g_word, g_constraints, g_exclusions);
            IntPolynomial gf = glob::descent_gf(word, g_n, pattern_from_string(g_avoid));
            emit_poly(rc.format, "glob-gf", g_n, gf);
            return 0;
        }
        if (*verify) {
            rc.n_max = v_n_max;
            oracle::Oracle engine({rc.jobs, rc.cache_dir, rc.long_run});
            auto start = std::chrono::steady_clock::now();
            auto report = harness::run_verification(rc, engine);
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
            if (rc.format == "json")
                std::cout << harness::render_json(report);
            else if (rc.format == "csv")
                std::cout << harness::render_csv(report);
            else
                std::cout << harness::render_text(report);
            std::cerr << "verify: " << ms << " ms, oracle cache hits: "
                      << engine.cache_hits() << "\n";
            return report.ok() ? 0 : 1;
        }
        if (*tablescmd) return cmd_tables(t_n_max, rc);
        if (*conj) return cmd_conjectures(c_n_max, c_max_t, rc);
        if (*regcmd) {
            if (rc.format == "json") {
                nlohmann::ordered_json out = nlohmann::ordered_json::array();
                for (const auto& e : forms::FormulaRegistry::instance().entries())
                    out.push_back({{"id", e.id.to_string()},
                                   {"citation", e.source},
                                   {"min_n", e.min_n},
                                   {"max_n", e.max_n}});
                std::cout << out.dump(1) << "\n";
            } else {
                for (const auto& e : forms::FormulaRegistry::instance().entries())
                    std::cout << e.id.to_string() << "  n in [" << e.min_n << ", "
                              << e.max_n << "]  # " << e.source << "\n";
            }
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
