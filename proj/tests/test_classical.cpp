#include <catch2/catch_amalgamated.hpp>

#include "stacksort/classical.hpp"
#include "stacksort/permutation.hpp"

using namespace stacksort;

TEST_CASE("eulerian base cases") {
    CHECK(eulerian(0) == IntPolynomial{BigInt(1)});
    CHECK(eulerian(3) == IntPolynomial{BigInt(1), BigInt(4), BigInt(1)});
    CHECK(eulerian(4) == IntPolynomial{BigInt(1), BigInt(11), BigInt(11), BigInt(1)});
    CHECK(eulerian(5) ==
          IntPolynomial{BigInt(1), BigInt(26), BigInt(66), BigInt(26), BigInt(1)});
    CHECK_THROWS_AS(eulerian(21), std::out_of_range);
}

TEST_CASE("eulerian equals its Stirling-number route") {
    CHECK(eulerian_stirling(1) == IntPolynomial{BigInt(1)});
    CHECK(eulerian_stirling(3) == eulerian(3));
    for (int n = 1; n <= 20; ++n) CHECK(eulerian_stirling(n) == eulerian(n));
}

TEST_CASE("eulerian equals the descent tally over all permutations") {
    for (int n = 0; n <= 7; ++n) {
        std::vector<BigInt> tally(static_cast<std::size_t>(n == 0 ? 1 : n));
        for_each_permutation(n, [&](const int* p, int len) {
            tally[static_cast<std::size_t>(descent_count_raw(p, len))] += 1;
        });
        CHECK(IntPolynomial(tally) == eulerian(n));
    }
}

TEST_CASE("narayana base cases and the recurrence route") {
    CHECK(narayana(0) == IntPolynomial{BigInt(1)});
    CHECK(narayana(4) == IntPolynomial{BigInt(1), BigInt(6), BigInt(6), BigInt(1)});
    CHECK(narayana(5) ==
          IntPolynomial{BigInt(1), BigInt(10), BigInt(20), BigInt(10), BigInt(1)});
    CHECK(narayana_recurrence(1) == IntPolynomial{BigInt(1)});
    CHECK(narayana_recurrence(3) == IntPolynomial{BigInt(1), BigInt(3), BigInt(1)});
    for (int n = 1; n <= 20; ++n) CHECK(narayana_recurrence(n) == narayana(n));
}

TEST_CASE("values at 1: factorials and catalan numbers") {
    for (int n = 0; n <= 20; ++n) {
        CHECK(eval_int(eulerian(n), 1) == factorial(n));
        CHECK(eval_int(narayana(n), 1) == catalan(n));
    }
}

TEST_CASE("catalan numbers") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(4) == 14);
    CHECK(catalan(7) == 429);
    CHECK(catalan(10) == 16796);
    CHECK(catalan(30) == BigInt("3814986502092304"));
    CHECK_THROWS_AS(catalan(31), std::out_of_range);
}

TEST_CASE("eulerian and narayana are palindromic") {
    for (int n = 1; n <= 20; ++n) {
        CHECK(eulerian(n).is_palindromic(n - 1));
        CHECK(narayana(n).is_palindromic(n - 1));
    }
}

TEST_CASE("stirling table") {
    StirlingTable s(6);
    CHECK(s.at(0, 0) == 1);
    CHECK(s.at(4, 2) == 7);
    CHECK(s.at(6, 3) == 90);
    CHECK(s.at(5, 0) == 0);
    CHECK(s.at(5, 5) == 1);
    CHECK(s.at(3, 7) == 0);
}

TEST_CASE("binomial conventions") {
    CHECK(binomial(-1, 0) == 1);
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(-1, 1) == 0);
    CHECK(binomial(10, 3) == 120);
}
