#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace stacksort {

// Exact integers everywhere; no floating point appears in this library.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Binomial coefficient over the integers with the conventions
///   C(a, b) = 0 for b < 0,  C(a, 0) = 1 for any a,  C(a, b) = 0 for 0 <= a < b.
/// The b < 0 and a < b cases silently truncate sums whose index ranges
/// overshoot, which is how the closed forms below use it.
inline BigInt binomial(long long a, long long b) {
    if (b < 0) return 0;
    if (b == 0) return 1;
    if (a < b) return 0;
    if (b > a - b) b = a - b;
    BigInt r = 1;
    for (long long i = 1; i <= b; ++i) {
        r *= a - b + i;
        r /= i;  // exact: product of i consecutive integers is divisible by i!
    }
    return r;
}

/// Exact quotient; throws if the division leaves a remainder.
inline BigInt exact_div(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("exact_div: zero divisor");
    BigInt q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) throw std::domain_error("exact_div: non-integral quotient");
    return q;
}

}  // namespace stacksort
