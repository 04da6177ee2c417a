#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stacksort/closed_forms.hpp"
#include "stacksort/oracle.hpp"
#include "stacksort/tables.hpp"

namespace stacksort::harness {

struct RunConfig {
    int n_max = 9;
    int jobs = 1;
    std::string format = "text";  // text | json | csv
    std::string cache_dir;
    bool long_run = false;
    std::string table_file;  // transcription of the published tables
};

enum class Status { match, mismatch, skipped };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::match: return "match";
        case Status::mismatch: return "mismatch";
        case Status::skipped: return "skipped-out-of-range";
    }
    return "?";
}

/// One formula-vs-enumeration comparison.
struct RunRecord {
    forms::FormulaId id;
    std::string source;
    int n = 0;
    Status status = Status::skipped;
    IntPolynomial closed, oracle, diff;                  // polynomial families
    std::optional<BigInt> closed_count, oracle_count;    // count family
    std::optional<long long> published;                  // printed sequence value
    std::string note;                                    // cell-reading detail
};

struct RowRecord {
    std::string group, case_id;
    Pattern pattern = Pattern::none;
    int n = 0;
    Status status = Status::match;
    IntPolynomial actual, expected;
};

struct UnionRecord {
    std::string name;
    int n = 0;
    Status status = Status::match;
    bool disjoint = true;
    IntPolynomial actual, expected;
    std::string overlap;  // witness permutation if disjointness failed
};

struct TelescopeRecord {
    Pattern pattern = Pattern::none;
    forms::TSpec t;  // the t of the subtracted exact-layer polynomial
    int n = 0;
    Status status = Status::match;
};

struct Arbitration {
    std::string eq_default = "inner binomial C(n-k+j-2, j)";
    std::string eq_alternative = "inner binomial C(n-k+j-2, j-1)";
    bool default_all_match = false;
    bool alternative_all_match = false;
    int alternative_first_divergence = 0;  // n of the first mismatch, 0 if none
    std::vector<std::string> shorthand_notes;
};

struct VerificationReport {
    int n_max = 0;
    int jobs = 1;
    bool long_run = false;
    std::vector<RunRecord> runs;
    std::vector<RowRecord> rows;
    std::vector<UnionRecord> unions;
    std::vector<TelescopeRecord> telescopes;
    Arbitration arbitration;
    int matches = 0, mismatches = 0, skips = 0, variant_mismatches = 0;

    bool ok() const { return mismatches == 0; }
};

namespace detail {

struct UnionSpec {
    const char* name;
    std::vector<const char*> groups;
    forms::TSpec t;
    Pattern pattern;
    int n_lo, n_hi;
};

inline const std::vector<UnionSpec>& union_specs() {
    using forms::TSpec;
    static const std::vector<UnionSpec> specs = {
        {"west_n2", {"west_n2"}, TSpec::relative(2), Pattern::none, 4, 9},
        {"n3_cases", {"n3_cases"}, TSpec::relative(3), Pattern::none, 6, 9},
        {"n2_exact_123", {"n2_exact_123"}, TSpec::relative(2), Pattern::p123, 4, 9},
        {"n2_exact_321", {"n2_exact_321"}, TSpec::relative(2), Pattern::p321, 4, 9},
        {"n2_exact_213", {"n2_exact_213"}, TSpec::relative(2), Pattern::p213, 4, 9},
        {"n2_exact_132", {"n2_exact_132"}, TSpec::relative(2), Pattern::p132, 4, 9},
        {"n2_exact_312", {"n2_exact_312"}, TSpec::relative(2), Pattern::p312, 4, 9},
    };
    return specs;
}

inline bool in_group(const UnionSpec& spec, const std::string& group) {
    for (const char* g : spec.groups)
        if (group == g) return true;
    return false;
}

}  // namespace detail

/// Checks every transcribed table row (and the configured unions) against
/// enumeration for n in [4, n_cap]. One pass over S_n per length serves all
/// rows at that length.
inline void check_table_rows(const std::vector<tables::TableRow>& rows, int n_cap,
                             VerificationReport& report) {
    for (int n = 4; n <= n_cap; ++n) {
        std::vector<const tables::TableRow*> active;
        for (const auto& r : rows)
            if (r.active_at(n)) active.push_back(&r);

        std::vector<const detail::UnionSpec*> active_unions;
        for (const auto& u : detail::union_specs())
            if (n >= u.n_lo && n <= u.n_hi) active_unions.push_back(&u);
        if (active.empty() && active_unions.empty()) continue;
        if (active_unions.size() > 8)
            throw std::logic_error("more active unions than the tally supports");

        std::vector<std::vector<BigInt>> acc(active.size(),
                                             std::vector<BigInt>(static_cast<std::size_t>(n)));
        std::vector<std::vector<BigInt>> uacc(
            active_unions.size(), std::vector<BigInt>(static_cast<std::size_t>(n)));
        std::vector<std::string> overlap(active_unions.size());

        for_each_permutation(n, [&](const int* p, int len) {
            bool av[7];
            av[0] = true;
            for (int sel = 1; sel <= 6; ++sel)
                av[sel] = !contains_raw(p, len, pattern_letters(static_cast<Pattern>(sel)), 3);
            int d = descent_count_raw(p, len);
            int hits[8] = {0};  // per active union, rows matched by this perm
            for (std::size_t i = 0; i < active.size(); ++i) {
                const tables::TableRow& row = *active[i];
                if (!av[static_cast<int>(row.pattern)]) continue;
                if (!row.matches(p, len)) continue;
                acc[i][static_cast<std::size_t>(d)] += 1;
                for (std::size_t u = 0; u < active_unions.size(); ++u) {
                    if (!detail::in_group(*active_unions[u], row.group)) continue;
                    if (hits[u]++ == 0) uacc[u][static_cast<std::size_t>(d)] += 1;
                    if (hits[u] == 2 && overlap[u].empty())
                        overlap[u] =
                            Permutation(std::vector<int>(p, p + len)).to_string();
                }
            }
        });

        for (std::size_t i = 0; i < active.size(); ++i) {
            RowRecord rec;
            rec.group = active[i]->group;
            rec.case_id = active[i]->case_id;
            rec.pattern = active[i]->pattern;
            rec.n = n;
            rec.actual = IntPolynomial(std::vector<BigInt>(acc[i]));
            rec.expected = active[i]->expected.eval_int(n);
            rec.status = rec.actual == rec.expected ? Status::match : Status::mismatch;
            (rec.status == Status::match ? report.matches : report.mismatches)++;
            report.rows.push_back(std::move(rec));
        }
        for (std::size_t u = 0; u < active_unions.size(); ++u) {
            const auto& spec = *active_unions[u];
            UnionRecord rec;
            rec.name = spec.name;
            rec.n = n;
            rec.actual = IntPolynomial(std::vector<BigInt>(uacc[u]));
            rec.expected = forms::e_closed(n, spec.t, spec.pattern);
            rec.disjoint = overlap[u].empty();
            rec.overlap = overlap[u];
            rec.status = rec.actual == rec.expected && rec.disjoint ? Status::match
                                                                    : Status::mismatch;
            (rec.status == Status::match ? report.matches : report.mismatches)++;
            report.unions.push_back(std::move(rec));
        }
    }
}

/// Sweeps the whole formula registry against the enumeration oracle, runs the
/// table-row suite and the telescoping identity, and assembles the report.
/// The oracle is always the arbiter; no closed form substitutes for it.
inline VerificationReport run_verification(const RunConfig& cfg, oracle::Oracle& engine) {
    if (cfg.n_max < 4 || cfg.n_max > kMaxEnumerationLength)
        throw std::out_of_range("verify: requires 4 <= n_max <= " +
                                std::to_string(kMaxEnumerationLength));
    VerificationReport report;
    report.n_max = cfg.n_max;
    report.jobs = cfg.jobs;
    report.long_run = cfg.long_run;

    bool alt_has_mismatch = false;
    bool default_has_mismatch = false;
    int alt_first = 0;

    // Formula registry vs oracle.
    for (const auto& entry : forms::FormulaRegistry::instance().entries()) {
        for (int n = 4; n <= cfg.n_max; ++n) {
            RunRecord rec;
            rec.id = entry.id;
            rec.source = entry.source;
            rec.n = n;
            if (!entry.valid_at(n)) {
                rec.status = Status::skipped;
                ++report.skips;
                report.runs.push_back(std::move(rec));
                continue;
            }
            int t = entry.id.t.resolve(n);
            try {
                if (entry.id.family == forms::Family::Count) {
                    rec.closed_count = entry.count(n);
                    rec.oracle_count = engine.count_w(n, t, entry.id.pattern);
                    bool ok = *rec.closed_count == *rec.oracle_count;
                    if (n >= 4 && n - 4 < static_cast<int>(entry.printed.size())) {
                        rec.published = entry.printed[static_cast<std::size_t>(n - 4)];
                        ok = ok && *rec.closed_count == *rec.published;
                    }
                    if (n >= entry.cell_min_n && entry.cell_total) {
                        if (entry.cell_is_decrement) {
                            BigInt via_decrement =
                                forms::count_closed(n, forms::TSpec::relative(3),
                                                    entry.id.pattern) -
                                entry.cell_decrement(n);
                            ok = ok && via_decrement == *rec.closed_count;
                            rec.note =
                                "cell '" + entry.cell + "' read as decrement of the n-3 column";
                        } else {
                            ok = ok && entry.cell_total(n) == *rec.closed_count;
                        }
                    }
                    rec.status = ok ? Status::match : Status::mismatch;
                } else {
                    rec.closed = entry.poly(n);
                    rec.oracle = entry.id.family == forms::Family::W
                                     ? engine.w(n, t, entry.id.pattern)
                                     : engine.e_exact(n, t, entry.id.pattern);
                    rec.diff = rec.closed - rec.oracle;
                    rec.status = rec.diff.is_zero() ? Status::match : Status::mismatch;
                }
            } catch (const std::exception& ex) {
                // An alternative reading may fail to even evaluate (its
                // rational scaffolding need not cancel); that is arbitration
                // evidence, not a harness failure.
                if (!entry.id.variant)
                    throw std::runtime_error(entry.id.to_string() + " at n=" +
                                             std::to_string(n) + ": " + ex.what());
                rec.status = Status::mismatch;
                rec.note = std::string("evaluation failed: ") + ex.what();
            }
            if (entry.id.variant) {
                if (rec.status == Status::mismatch) {
                    ++report.variant_mismatches;
                    alt_has_mismatch = true;
                    if (alt_first == 0) alt_first = n;
                    rec.note = "alternative reading kept for arbitration only";
                } else {
                    ++report.matches;
                }
            } else if (rec.status == Status::mismatch) {
                ++report.mismatches;
                if (entry.id.family == forms::Family::W &&
                    entry.id.t == forms::TSpec::relative(1) &&
                    entry.id.pattern == Pattern::p123)
                    default_has_mismatch = true;
            } else {
                ++report.matches;
            }
            report.runs.push_back(std::move(rec));
        }
    }

    // Telescoping: W at t-1 equals W at t minus the exact layer at t, pattern
    // by pattern, wherever all three closed forms are catalogued.
    for (Pattern p : kAllPatterns) {
        for (int k = 1; k <= 3; ++k) {
            const auto* w_hi = forms::FormulaRegistry::instance().find(
                forms::Family::W, forms::TSpec::relative(k), p);
            const auto* w_lo = forms::FormulaRegistry::instance().find(
                forms::Family::W, forms::TSpec::relative(k + 1), p);
            const auto* e_at = forms::FormulaRegistry::instance().find(
                forms::Family::E, forms::TSpec::relative(k), p);
            if (!w_hi || !w_lo || !e_at) continue;
            int lo = std::max({w_hi->min_n, w_lo->min_n, e_at->min_n, 4});
            for (int n = lo; n <= cfg.n_max; ++n) {
                TelescopeRecord rec;
                rec.pattern = p;
                rec.t = forms::TSpec::relative(k);
                rec.n = n;
                IntPolynomial lhs = w_lo->poly(n);
                IntPolynomial rhs = w_hi->poly(n) - e_at->poly(n);
                rec.status = lhs == rhs ? Status::match : Status::mismatch;
                (rec.status == Status::match ? report.matches : report.mismatches)++;
                report.telescopes.push_back(rec);
            }
        }
    }

    // Published-table suite.
    if (!cfg.table_file.empty()) {
        auto rows = tables::load_rows(cfg.table_file);
        check_table_rows(rows, std::min(cfg.n_max, 9), report);
    }

    report.arbitration.default_all_match = !default_has_mismatch;
    report.arbitration.alternative_all_match = !alt_has_mismatch;
    report.arbitration.alternative_first_divergence = alt_first;
    for (const auto& entry : forms::FormulaRegistry::instance().entries()) {
        if (entry.id.family != forms::Family::Count || !entry.cell_is_decrement) continue;
        report.arbitration.shorthand_notes.push_back(
            "table cell '" + entry.cell + "' for " +
            stacksort::to_string(entry.id.pattern) + ", t=" + entry.id.t.to_string() +
            ": read as a decrement from the t=n-3 column (the total reading disagrees "
            "with the published sequence)");
    }
    return report;
}

// ---------------------------------------------------------------------------
// Rendering. Reports are byte-identical across runs with the same RunConfig:
// timing and cache diagnostics stay out of the payload.
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json report_to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["environment"] = {{"n_max", r.n_max}, {"jobs", r.jobs}, {"long_run", r.long_run}};
    j["summary"] = {{"matches", r.matches},
                    {"mismatches", r.mismatches},
                    {"skipped", r.skips},
                    {"variant_mismatches", r.variant_mismatches}};
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const auto& rec : r.runs) {
        nlohmann::ordered_json o;
        o["formula_id"] = rec.id.to_string();
        o["citation"] = rec.source;
        o["n"] = rec.n;
        o["status"] = to_string(rec.status);
        if (rec.status != Status::skipped) {
            if (rec.closed_count) {
                o["count_closed"] = rec.closed_count->str();
                o["count_oracle"] = rec.oracle_count->str();
                if (rec.published) o["count_published"] = *rec.published;
            } else {
                o["coeffs_closed"] = to_decimal_coeffs(rec.closed);
                o["coeffs_oracle"] = to_decimal_coeffs(rec.oracle);
                if (!rec.diff.is_zero()) o["coeffs_diff"] = to_decimal_coeffs(rec.diff);
            }
        }
        if (!rec.note.empty()) o["note"] = rec.note;
        runs.push_back(std::move(o));
    }
    j["runs"] = std::move(runs);

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& rec : r.rows) {
        rows.push_back({{"group", rec.group},
                        {"case", rec.case_id},
                        {"pattern", stacksort::to_string(rec.pattern)},
                        {"n", rec.n},
                        {"status", to_string(rec.status)},
                        {"coeffs_actual", to_decimal_coeffs(rec.actual)},
                        {"coeffs_expected", to_decimal_coeffs(rec.expected)}});
    }
    j["table_rows"] = std::move(rows);

    nlohmann::ordered_json unions = nlohmann::ordered_json::array();
    for (const auto& rec : r.unions) {
        nlohmann::ordered_json o{{"union", rec.name},
                                 {"n", rec.n},
                                 {"status", to_string(rec.status)},
                                 {"disjoint", rec.disjoint},
                                 {"coeffs_actual", to_decimal_coeffs(rec.actual)},
                                 {"coeffs_expected", to_decimal_coeffs(rec.expected)}};
        if (!rec.overlap.empty()) o["overlap_witness"] = rec.overlap;
        unions.push_back(std::move(o));
    }
    j["unions"] = std::move(unions);

    nlohmann::ordered_json tel = nlohmann::ordered_json::array();
    for (const auto& rec : r.telescopes)
        tel.push_back({{"pattern", stacksort::to_string(rec.pattern)},
                       {"t", rec.t.to_string()},
                       {"n", rec.n},
                       {"status", to_string(rec.status)}});
    j["telescoping"] = std::move(tel);

    j["arbitration"] = {
        {"descents_av123_default", r.arbitration.eq_default},
        {"descents_av123_alternative", r.arbitration.eq_alternative},
        {"default_all_match", r.arbitration.default_all_match},
        {"alternative_all_match", r.arbitration.alternative_all_match},
        {"alternative_first_divergence_n", r.arbitration.alternative_first_divergence},
        {"table_cell_notes", r.arbitration.shorthand_notes}};
    return j;
}

inline std::string render_json(const VerificationReport& r) {
    return report_to_json(r).dump(1) + "\n";
}

inline std::string render_csv(const VerificationReport& r) {
    std::ostringstream os;
    auto quote_coeffs = [](const IntPolynomial& p) {
        std::string s = "\"";
        auto cs = to_decimal_coeffs(p);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (i) s += ';';
            s += cs[i];
        }
        return s + "\"";
    };
    os << "kind,id,citation,n,status,closed,oracle\n";
    for (const auto& rec : r.runs) {
        os << "formula," << rec.id.to_string() << ",\"" << rec.source << "\"," << rec.n
           << "," << to_string(rec.status) << ",";
        if (rec.status == Status::skipped) {
            os << ",\n";
        } else if (rec.closed_count) {
            os << rec.closed_count->str() << "," << rec.oracle_count->str() << "\n";
        } else {
            os << quote_coeffs(rec.closed) << "," << quote_coeffs(rec.oracle) << "\n";
        }
    }
    for (const auto& rec : r.rows)
        os << "table-row," << rec.group << "/" << rec.case_id << ",," << rec.n << ","
           << to_string(rec.status) << "," << quote_coeffs(rec.actual) << ","
           << quote_coeffs(rec.expected) << "\n";
    for (const auto& rec : r.unions)
        os << "union," << rec.name << ",," << rec.n << "," << to_string(rec.status) << ","
           << quote_coeffs(rec.actual) << "," << quote_coeffs(rec.expected) << "\n";
    for (const auto& rec : r.telescopes)
        os << "telescoping," << stacksort::to_string(rec.pattern) << " t=" << rec.t.to_string()
           << ",," << rec.n << "," << to_string(rec.status) << ",,\n";
    return os.str();
}

inline std::string render_text(const VerificationReport& r) {
    std::ostringstream os;
    os << "verification sweep: n_max=" << r.n_max << "\n";
    os << "  formula runs:   " << r.runs.size() << "\n";
    os << "  table rows:     " << r.rows.size() << "\n";
    os << "  unions:         " << r.unions.size() << "\n";
    os << "  telescoping:    " << r.telescopes.size() << "\n";
    os << "  matches=" << r.matches << " mismatches=" << r.mismatches
       << " skipped=" << r.skips << "\n";
    for (const auto& rec : r.runs)
        if (rec.status == Status::mismatch && !rec.id.variant) {
            os << "  MISMATCH " << rec.id.to_string() << " (" << rec.source
               << ") at n=" << rec.n << "\n";
            if (!rec.closed_count)
                os << "    closed: " << rec.closed.to_string()
                   << "\n    oracle: " << rec.oracle.to_string() << "\n";
            else
                os << "    closed: " << rec.closed_count->str()
                   << "  oracle: " << rec.oracle_count->str() << "\n";
        }
    for (const auto& rec : r.rows)
        if (rec.status == Status::mismatch)
            os << "  MISMATCH table row " << rec.group << "/" << rec.case_id
               << " at n=" << rec.n << "\n    actual:   " << rec.actual.to_string()
               << "\n    expected: " << rec.expected.to_string() << "\n";
    for (const auto& rec : r.unions)
        if (rec.status == Status::mismatch)
            os << "  MISMATCH union " << rec.name << " at n=" << rec.n
               << (rec.disjoint ? "" : " (rows overlap at " + rec.overlap + ")") << "\n";
    for (const auto& rec : r.telescopes)
        if (rec.status == Status::mismatch)
            os << "  MISMATCH telescoping " << stacksort::to_string(rec.pattern)
               << " t=" << rec.t.to_string() << " n=" << rec.n << "\n";
    os << "arbitration:\n";
    os << "  123-descents default (" << r.arbitration.eq_default << "): "
       << (r.arbitration.default_all_match ? "matches the oracle everywhere" : "MISMATCHES")
       << "\n";
    os << "  123-descents alternative (" << r.arbitration.eq_alternative << "): "
       << (r.arbitration.alternative_all_match
               ? "also matches (arbitration inconclusive)"
               : "diverges first at n=" +
                     std::to_string(r.arbitration.alternative_first_divergence))
       << "\n";
    for (const auto& note : r.arbitration.shorthand_notes) os << "  " << note << "\n";
    os << (r.ok() ? "RESULT: all checks match\n" : "RESULT: mismatches found\n");
    return os.str();
}

/// Published count rows for the two-pattern sortable classes, t = 1..5,
/// n = 1..11; check_conjectures reproduces their prefixes.
inline const std::vector<std::vector<long long>>& published_sortable_counts() {
    static const std::vector<std::vector<long long>> rows = {
        {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024},
        {1, 2, 5, 13, 34, 89, 233, 610, 1597, 4181, 10946},
        {1, 2, 5, 14, 41, 122, 365, 1094, 3281, 9842, 29525},
        {1, 2, 5, 14, 42, 131, 417, 1341, 4334, 14041, 45542},
        {1, 2, 5, 14, 42, 132, 428, 1416, 4744, 16016, 54320},
    };
    return rows;
}

}  // namespace stacksort::harness
