#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stacksort/gf_expr.hpp"
#include "stacksort/glob.hpp"
#include "stacksort/permutation.hpp"

namespace stacksort::tables {

/// One transcribed table row: a family of glob words (branches are unioned),
/// the pattern filter under which the row is stated, its validity range of n,
/// and the expected descent generating function.
struct TableRow {
    std::string group;
    std::string case_id;
    Pattern pattern = Pattern::none;
    int n_min = 4;
    int n_max = 0;  // 0 = unbounded
    std::vector<std::string> word_texts;
    std::vector<glob::GlobWord> words;
    GfExpr expected;

    bool active_at(int n) const {
        return n >= n_min && (n_max == 0 || n <= n_max);
    }

    /// Whether pi belongs to the row's set (any branch word, pattern filter
    /// applied separately by the caller).
    bool matches(const int* p, int n) const {
        for (const auto& w : words)
            if (w.matches(p, n)) return true;
        return false;
    }
};

/// Loads the transcription file: a JSON array of row records with fields
/// {group, case, pattern, n_min, n_max?, words, constraints?, exclusions?, gf}.
/// Constraints and exclusions apply to every branch word of the row.
inline std::vector<TableRow> load_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open table file: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    std::vector<TableRow> rows;
    for (const auto& rec : doc) {
        TableRow row;
        row.group = rec.at("group").get<std::string>();
        row.case_id = rec.at("case").get<std::string>();
        row.pattern = pattern_from_string(rec.value("pattern", std::string("none")));
        row.n_min = rec.value("n_min", 4);
        row.n_max = rec.value("n_max", 0);
        std::vector<std::string> constraints =
            rec.value("constraints", std::vector<std::string>{});
        std::vector<std::string> exclusions =
            rec.value("exclusions", std::vector<std::string>{});
        for (const auto& w : rec.at("words")) {
            row.word_texts.push_back(w.get<std::string>());
            row.words.push_back(
                glob::GlobWord::parse(w.get<std::string>(), constraints, exclusions));
        }
        if (row.words.empty())
            throw std::runtime_error("table row " + row.group + "/" + row.case_id +
                                     " has no words");
        row.expected = GfExpr::parse(rec.at("gf").get<std::string>());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace stacksort::tables
