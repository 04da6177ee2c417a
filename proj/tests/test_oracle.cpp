#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "stacksort/classical.hpp"
#include "stacksort/closed_forms.hpp"
#include "stacksort/oracle.hpp"

using namespace stacksort;
using oracle::Oracle;

namespace {
IntPolynomial poly(std::initializer_list<long long> coeffs) {
    std::vector<BigInt> c;
    for (long long v : coeffs) c.emplace_back(v);
    return IntPolynomial(std::move(c));
}
}  // namespace

TEST_CASE("complexity layers at n=4") {
    Oracle engine;
    const auto& tab = engine.table(4, Pattern::none);
    CHECK(tab.total_count == 24);
    CHECK(tab.by_complexity[0] == poly({1}));
    CHECK(tab.by_complexity[1] == poly({0, 6, 6, 1}));
    CHECK(tab.by_complexity[2] == poly({0, 4, 4}));
    CHECK(tab.by_complexity[3] == poly({0, 1, 1}));
    CHECK(eval_int(tab.by_complexity[3], 1) == 2);  // 2341 and 3241

    CHECK(engine.table(4, Pattern::p231).total_count == catalan(4));
    CHECK(engine.table(1, Pattern::none).by_complexity[0] == poly({1}));
    CHECK(engine.table(0, Pattern::none).by_complexity[0] == poly({1}));
}

TEST_CASE("w prefix sums reproduce the classical families") {
    Oracle engine;
    CHECK(engine.w(4, 3, Pattern::none) == poly({1, 11, 11, 1}));
    CHECK(engine.w(4, 1, Pattern::none) == poly({1, 6, 6, 1}));
    CHECK(engine.w(4, 2, Pattern::none) == poly({1, 10, 10, 1}));
    for (int n = 1; n <= 7; ++n) {
        CHECK(engine.w(n, 1, Pattern::none) == narayana(n));
        CHECK(engine.w(n, n - 1, Pattern::none) == eulerian(n));
        CHECK(engine.w(n, n + 5, Pattern::none) == eulerian(n));  // saturates
    }
}

TEST_CASE("per-pattern totals are catalan") {
    Oracle engine;
    for (int n = 1; n <= 7; ++n)
        for (Pattern p : {Pattern::p123, Pattern::p132, Pattern::p213, Pattern::p231,
                          Pattern::p312, Pattern::p321})
            CHECK(engine.table(n, p).total_count == catalan(n));
}

TEST_CASE("oracle agrees with every closed form through n=8") {
    Oracle engine({2});
    for (const auto& entry : forms::FormulaRegistry::instance().entries()) {
        if (entry.id.variant || entry.id.family == forms::Family::Count) continue;
        for (int n = std::max(4, entry.min_n); n <= 8; ++n) {
            int t = entry.id.t.resolve(n);
            IntPolynomial truth = entry.id.family == forms::Family::W
                                      ? engine.w(n, t, entry.id.pattern)
                                      : engine.e_exact(n, t, entry.id.pattern);
            CAPTURE(entry.id.to_string(), n);
            CHECK(entry.poly(n) == truth);
        }
    }
}

TEST_CASE("count_av") {
    Oracle engine;
    CHECK(engine.count_av(5, {PatternSpec{1, 3, 2}, PatternSpec{1, 2, 3, 4}}) == 34);
    CHECK(engine.count_av(3, {PatternSpec{2, 1}}) == 1);
    CHECK(engine.count_av(6, {PatternSpec{1, 3, 2}, PatternSpec{1, 2, 3}}) == 32);
    CHECK(engine.count_av(6, {PatternSpec{1, 3, 2}}, /*lis_below=*/4) ==
          engine.count_av(6, {PatternSpec{1, 3, 2}, PatternSpec{1, 2, 3, 4}}));
}

TEST_CASE("213 and 321 layer counts agree level by level") {
    // monitored property: the equinumerosity holds per exact complexity
    // layer, not just cumulatively
    Oracle engine;
    for (int n = 1; n <= 8; ++n) {
        const auto& a = engine.table(n, Pattern::p213);
        const auto& b = engine.table(n, Pattern::p321);
        for (std::size_t t = 0; t < a.by_complexity.size(); ++t)
            CHECK(eval_int(a.by_complexity[t], 1) == eval_int(b.by_complexity[t], 1));
    }
}

TEST_CASE("conjecture report at small n") {
    Oracle engine({2});
    auto rep = engine.check_conjectures(8, 5);
    CHECK(rep.all_match());
    CHECK(rep.sequences[1] ==
          std::vector<BigInt>{1, 2, 5, 13, 34, 89, 233, 610});
    CHECK(rep.sequences[4] ==
          std::vector<BigInt>{1, 2, 5, 14, 42, 132, 428, 1416});
    CHECK(rep.sequences[0] == std::vector<BigInt>{1, 2, 4, 8, 16, 32, 64, 128});
}

TEST_CASE("sharded builds are identical to the single-threaded build") {
    Oracle sequential({1});
    Oracle parallel({4});
    for (Pattern p : kAllPatterns) {
        auto a = sequential.table(7, p).to_json().dump();
        auto b = parallel.table(7, p).to_json().dump();
        CHECK(a == b);
    }
}

TEST_CASE("feasibility ceilings") {
    Oracle engine;
    CHECK_THROWS_AS(engine.table(12, Pattern::none), std::out_of_range);
    Oracle long_run({1, "", true});
    CHECK_THROWS_AS(long_run.table(14, Pattern::none), std::out_of_range);
}

TEST_CASE("persistent cache round trips and survives corruption") {
    auto dir = std::filesystem::temp_directory_path() / "stacksort_cache_test";
    std::filesystem::remove_all(dir);

    Oracle writer({1, dir.string()});
    auto fresh = writer.table(5, Pattern::p312).to_json().dump();
    CHECK(writer.cache_hits() == 0);
    CHECK(std::filesystem::exists(dir / "oracle_n5_p312.json"));

    Oracle reader({1, dir.string()});
    CHECK(reader.table(5, Pattern::p312).to_json().dump() == fresh);
    CHECK(reader.cache_hits() == 1);

    {
        std::ofstream out(dir / "oracle_n5_p312.json");
        out << "{ not json";
    }
    Oracle rebuilt({1, dir.string()});
    CHECK(rebuilt.table(5, Pattern::p312).to_json().dump() == fresh);
    CHECK(rebuilt.cache_hits() == 0);

    std::filesystem::remove_all(dir);
}
