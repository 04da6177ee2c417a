#include <catch2/catch_amalgamated.hpp>

#include "stacksort/closed_forms.hpp"

using namespace stacksort;
using forms::Family;
using forms::TSpec;

namespace {
IntPolynomial poly(std::initializer_list<long long> coeffs) {
    std::vector<BigInt> c;
    for (long long v : coeffs) c.emplace_back(v);
    return IntPolynomial(std::move(c));
}
}  // namespace

TEST_CASE("unrestricted W forms at small n") {
    CHECK(forms::w_closed(5, TSpec::relative(4), Pattern::none) == poly({1, 10, 20, 10, 1}));
    CHECK(forms::w_closed(4, TSpec::relative(4), Pattern::none) == poly({1}));
    CHECK(forms::w_closed(4, TSpec::relative(3), Pattern::none) == poly({1, 6, 6, 1}));
    CHECK(forms::w_closed(4, TSpec::relative(2), Pattern::none) == poly({1, 10, 10, 1}));
    CHECK(forms::w_closed(4, TSpec::relative(1), Pattern::none) == poly({1, 11, 11, 1}));
    CHECK(forms::w_closed(4, TSpec::absolute(1), Pattern::none) == poly({1, 6, 6, 1}));
    // the two-pass form coincides with the t=n-2 difference at n=4, and is
    // symmetric at n=5
    CHECK(forms::w_closed(4, TSpec::absolute(2), Pattern::none) == poly({1, 10, 10, 1}));
    CHECK(forms::w_closed(5, TSpec::absolute(2), Pattern::none) == poly({1, 20, 49, 20, 1}));
}

TEST_CASE("unrestricted E forms at small n") {
    CHECK(forms::e_closed(4, TSpec::relative(2), Pattern::none) == poly({0, 4, 4}));
    CHECK(forms::e_closed(4, TSpec::relative(1), Pattern::none) == poly({0, 1, 1}));
    CHECK(forms::e_closed(6, TSpec::relative(3), Pattern::none) ==
          forms::w_closed(6, TSpec::relative(3), Pattern::none) -
              forms::w_closed(6, TSpec::relative(4), Pattern::none));
}

TEST_CASE("pattern E forms at small n") {
    CHECK(forms::e_closed(5, TSpec::relative(1), Pattern::p123) == poly({0, 0, 0, 1}));
    CHECK(forms::e_closed(5, TSpec::relative(1), Pattern::p321) == poly({0, 1}));
    CHECK(forms::e_closed(4, TSpec::relative(2), Pattern::p213) == poly({0, 2, 3}));
    CHECK(forms::e_closed(4, TSpec::relative(2), Pattern::p132) == poly({0, 2, 2}));
    CHECK(forms::e_closed(4, TSpec::relative(2), Pattern::p312) == poly({0, 2, 2}));
    CHECK(forms::e_closed(5, TSpec::relative(3), Pattern::p231) == IntPolynomial{});
}

TEST_CASE("descent distributions over 321- and 123-avoiders") {
    CHECK(forms::w_closed(4, TSpec::relative(1), Pattern::p321) == poly({1, 11, 2}));
    CHECK(forms::w_closed(4, TSpec::relative(1), Pattern::p123) == poly({0, 2, 11, 1}));
    CHECK(forms::w_closed(5, TSpec::relative(1), Pattern::p321) == poly({1, 26, 15}));
    CHECK(forms::w_closed(5, TSpec::relative(1), Pattern::p123) == poly({0, 0, 15, 26, 1}));
    // reversal complementarity: coefficient k of one equals n-1-k of the other
    for (int n = 1; n <= 10; ++n) {
        IntPolynomial a321 = forms::w_closed(n, TSpec::relative(1), Pattern::p321);
        IntPolynomial a123 = forms::w_closed(n, TSpec::relative(1), Pattern::p123);
        for (int k = 0; k <= n - 1; ++k) CHECK(a321.coeff(k) == a123.coeff(n - 1 - k));
    }
    // the alternative reading breaks at n=4: its 1/(n+1) factor does not cancel
    CHECK_THROWS_AS(forms::w_closed(4, TSpec::relative(1), Pattern::p123, /*variant=*/true),
                    std::domain_error);
}

TEST_CASE("pattern W forms at n=4,5") {
    CHECK(forms::w_closed(4, TSpec::relative(2), Pattern::p321) == poly({1, 10, 2}));
    CHECK(forms::w_closed(4, TSpec::relative(2), Pattern::p213) == poly({1, 5, 6, 1}));
    CHECK(forms::w_closed(4, TSpec::relative(2), Pattern::p132) == poly({1, 5, 5, 1}));
    CHECK(forms::w_closed(4, TSpec::relative(2), Pattern::p312) == poly({1, 5, 5, 1}));
    CHECK(forms::w_closed(4, TSpec::relative(2), Pattern::p123) == poly({0, 2, 10, 1}));
    CHECK(forms::w_closed(4, TSpec::relative(2), Pattern::p231) == poly({1, 6, 6, 1}));
    // with four passes nothing else is sortable at n=4: t = 0 leaves only the
    // identity (or nothing, for the ascending pattern)
    for (Pattern p : {Pattern::p132, Pattern::p213, Pattern::p231, Pattern::p312,
                      Pattern::p321})
        CHECK(forms::w_closed(4, TSpec::relative(4), p) == poly({1}));
    CHECK(forms::w_closed(4, TSpec::relative(4), Pattern::p123) == IntPolynomial{});
}

TEST_CASE("count forms reproduce the published sequences") {
    using forms::count_closed;
    CHECK(count_closed(4, TSpec::relative(2), Pattern::p123) == 13);
    CHECK(count_closed(6, TSpec::relative(4), Pattern::p132) == 70);
    CHECK(count_closed(5, TSpec::relative(4), Pattern::p312) == 16);
    CHECK(count_closed(4, TSpec::relative(4), Pattern::p231) == 1);
    for (const auto& entry : forms::FormulaRegistry::instance().entries()) {
        if (entry.id.family != Family::Count) continue;
        for (int n = 4; n <= 10; ++n) {
            CAPTURE(entry.id.to_string(), n);
            CHECK(entry.count(n) == entry.printed[static_cast<std::size_t>(n - 4)]);
        }
    }
}

TEST_CASE("range errors name the entry and its validity") {
    CHECK_THROWS_AS(forms::w_closed(3, TSpec::relative(3), Pattern::none),
                    std::out_of_range);
    CHECK_THROWS_AS(forms::e_closed(5, TSpec::relative(3), Pattern::none),
                    std::out_of_range);
    CHECK_THROWS_AS(forms::w_closed(4, TSpec::absolute(3), Pattern::none),
                    std::invalid_argument);
    try {
        forms::w_closed(3, TSpec::relative(3), Pattern::none);
    } catch (const std::out_of_range& e) {
        CHECK(std::string(e.what()).find("4 <= n") != std::string::npos);
    }
}

TEST_CASE("registry_sweep respects validity windows") {
    auto values = forms::registry_sweep(4);
    bool has_w_n2 = false;
    for (const auto& v : values) {
        CHECK(v.n >= v.entry->min_n);
        if (v.entry->id.family == Family::W && v.entry->id.t == TSpec::relative(2) &&
            v.entry->id.pattern == Pattern::none && v.n == 4)
            has_w_n2 = true;
    }
    CHECK(has_w_n2);

    auto small = forms::registry_sweep(3);
    for (const auto& v : small) {
        CHECK(v.entry->min_n <= 3);  // entries requiring n >= 4 are absent entirely
    }
}

TEST_CASE("registry lookups") {
    CHECK(forms::FormulaRegistry::instance().find(Family::W, TSpec::relative(1),
                                                  Pattern::p123, true) != nullptr);
    CHECK(forms::FormulaRegistry::instance().find(Family::E, TSpec::absolute(2),
                                                  Pattern::none) == nullptr);
    CHECK(forms::FormulaId{Family::W, TSpec::relative(3), Pattern::none, false}
              .to_string() == "W[t=n-3,p=none]");
}

TEST_CASE("telescoping holds among the catalogued forms") {
    for (Pattern p : kAllPatterns) {
        for (int k = 1; k <= 3; ++k) {
            const auto* w_hi = forms::FormulaRegistry::instance().find(
                Family::W, TSpec::relative(k), p);
            const auto* w_lo = forms::FormulaRegistry::instance().find(
                Family::W, TSpec::relative(k + 1), p);
            const auto* e_at = forms::FormulaRegistry::instance().find(
                Family::E, TSpec::relative(k), p);
            REQUIRE(w_hi != nullptr);
            REQUIRE(w_lo != nullptr);
            REQUIRE(e_at != nullptr);
            int lo = std::max({w_hi->min_n, w_lo->min_n, e_at->min_n, 4});
            for (int n = lo; n <= 10; ++n) {
                CAPTURE(to_string(p), k, n);
                CHECK(w_lo->poly(n) == w_hi->poly(n) - e_at->poly(n));
            }
        }
    }
}
