#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "stacksort/permutation.hpp"

using namespace stacksort;

TEST_CASE("stack_sort follows the recursive definition") {
    CHECK(stack_sort(Permutation{}) == Permutation{});
    CHECK(stack_sort(Permutation{1, 2, 3, 4}) == Permutation{1, 2, 3, 4});
    CHECK(stack_sort(Permutation{2, 3, 1}) == Permutation{2, 1, 3});
    CHECK(stack_sort(Permutation{3, 1, 4, 2}) == Permutation{1, 3, 2, 4});
}

TEST_CASE("stack_sort_k composes and t=0 is the identity map") {
    CHECK(stack_sort_k(Permutation{2, 3, 1}, 2) == Permutation{1, 2, 3});
    Permutation pi{3, 1, 4, 2};
    CHECK(stack_sort_k(pi, 0) == pi);
    CHECK(stack_sort_k(Permutation{2, 3, 4, 1}, 3) == Permutation{1, 2, 3, 4});
}

TEST_CASE("is_t_stack_sortable") {
    CHECK_FALSE(is_t_stack_sortable(Permutation{2, 3, 1}, 1));
    CHECK(is_t_stack_sortable(Permutation{2, 3, 1}, 2));
    CHECK(is_t_stack_sortable(Permutation::identity(5), 0));
}

TEST_CASE("sorting_complexity") {
    CHECK(sorting_complexity(Permutation{}) == 0);
    CHECK(sorting_complexity(Permutation{1}) == 0);
    CHECK(sorting_complexity(Permutation::identity(7)) == 0);
    CHECK(sorting_complexity(Permutation{2, 3, 4, 1}) == 3);
    CHECK(sorting_complexity(Permutation{2, 4, 1, 3}) == 2);
}

TEST_CASE("descent and ascent counts") {
    CHECK(descent_count(Permutation{}) == 0);
    CHECK(descent_count(Permutation::identity(6)) == 0);
    CHECK(descent_count(Permutation{5, 4, 3, 2, 1}) == 4);
    CHECK(descent_count(Permutation{3, 1, 4, 2}) == 2);
    CHECK(ascent_count(Permutation{3, 1, 4, 2}) == 1);
}

TEST_CASE("pattern containment") {
    CHECK(contains(Permutation{2, 3, 1}, PatternSpec{2, 3, 1}));
    CHECK_FALSE(contains(Permutation::identity(8), PatternSpec{2, 1}));
    CHECK(contains(Permutation{3, 1, 4, 2}, PatternSpec{2, 3, 1}));
    CHECK(contains(Permutation{2, 4, 1, 3}, PatternSpec{2, 4, 1, 3}));
    CHECK_FALSE(contains(Permutation{1, 3, 2, 4}, PatternSpec{3, 2, 1}));
    CHECK(avoids(Permutation{1, 2, 4, 3}, Pattern::p321));
    CHECK_FALSE(avoids(Permutation{4, 3, 1, 2}, Pattern::p321));
}

TEST_CASE("parse and format round trips") {
    CHECK(Permutation::parse("3142") == Permutation{3, 1, 4, 2});
    CHECK(Permutation::parse("") == Permutation{});
    CHECK(Permutation::parse("10,3,1,2,4,5,6,7,8,9").size() == 10);
    CHECK(Permutation{3, 1, 4, 2}.to_string() == "3142");
    Permutation big = Permutation::parse("10,3,1,2,4,5,6,7,8,9");
    CHECK(big.to_string() == "10,3,1,2,4,5,6,7,8,9");
    CHECK(Permutation::parse(big.to_string()) == big);
    CHECK_THROWS_AS(Permutation::parse("122"), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({1, 3}), std::invalid_argument);
}

TEST_CASE("enumerate_all basics") {
    LexEnumerator e0(0);
    CHECK(e0.next() == Permutation{});
    CHECK_FALSE(e0.next().has_value());

    LexEnumerator e3(3);
    std::vector<Permutation> all;
    while (auto p = e3.next()) all.push_back(*p);
    REQUIRE(all.size() == 6);
    CHECK(all.front() == Permutation{1, 2, 3});
    CHECK(all.back() == Permutation{3, 2, 1});
    CHECK(std::is_sorted(all.begin(), all.end()));

    int count = 0;
    for_each_permutation(4, [&](const int*, int) { ++count; });
    CHECK(count == 24);

    CHECK_THROWS_AS(LexEnumerator(14), std::out_of_range);
}

TEST_CASE("sharded enumeration covers S_n exactly once") {
    for (int depth : {1, 2}) {
        std::set<std::vector<int>> seen;
        for (const auto& prefix : enumeration_shards(5, depth)) {
            for_each_permutation_with_prefix(5, prefix, [&](const int* p, int n) {
                bool inserted = seen.insert(std::vector<int>(p, p + n)).second;
                CHECK(inserted);  // shards are disjoint
            });
        }
        CHECK(seen.size() == 120);
    }
}

TEST_CASE("recursive and one-pass stack sort agree exhaustively") {
    for (int n = 0; n <= 7; ++n) {
        for_each_permutation(n, [&](const int* p, int len) {
            Permutation pi{std::vector<int>(p, p + len)};
            REQUIRE(stack_sort(pi) == stack_sort_recursive(pi));
        });
    }
}

TEST_CASE("one-pass sortable means 231-avoiding, and n-1 passes always sort") {
    for (int n = 1; n <= 7; ++n) {
        for_each_permutation(n, [&](const int* p, int len) {
            Permutation pi{std::vector<int>(p, p + len)};
            REQUIRE(is_t_stack_sortable(pi, len - 1));
            REQUIRE(is_t_stack_sortable(pi, 1) == avoids(pi, Pattern::p231));
            int c = sorting_complexity(pi);
            REQUIRE(c <= len - 1);
            REQUIRE(stack_sort_k(pi, c).is_identity());
            if (c > 0) REQUIRE_FALSE(stack_sort_k(pi, c - 1).is_identity());
            REQUIRE(descent_count(pi) + ascent_count(pi) == len - 1);
        });
    }
}

TEST_CASE("reversal maps 321-avoiders onto 123-avoiders, complementing descents") {
    for (int n = 1; n <= 7; ++n) {
        std::map<int, int> des321_reversed, des123_complement;
        std::set<std::vector<int>> reversed321, avoiders123;
        for_each_permutation(n, [&](const int* p, int len) {
            Permutation pi{std::vector<int>(p, p + len)};
            if (avoids(pi, Pattern::p321)) {
                Permutation r = reversed(pi);
                des321_reversed[descent_count(r)]++;
                des123_complement[len - 1 - descent_count(pi)]++;
                reversed321.insert(r.entries());
            }
            if (avoids(pi, Pattern::p123)) avoiders123.insert(pi.entries());
        });
        CHECK(des321_reversed == des123_complement);
        CHECK(reversed321 == avoiders123);
    }
}
