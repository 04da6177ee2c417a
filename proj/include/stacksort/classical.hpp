#pragma once

#include <mutex>
#include <stdexcept>
#include <vector>

#include "stacksort/bigint.hpp"
#include "stacksort/polynomial.hpp"

namespace stacksort {

inline constexpr int kMaxPolynomialIndex = 20;  // A_n and N_n are tabled up to here
inline constexpr int kMaxCatalanIndex = 30;

/// Triangular table of Stirling numbers of the second kind,
/// S(n,k) = k*S(n-1,k) + S(n-1,k-1), S(0,0) = 1.
class StirlingTable {
public:
    explicit StirlingTable(int max_n) {
        if (max_n < 0 || max_n > kMaxPolynomialIndex)
            throw std::out_of_range("StirlingTable: max_n out of range");
        rows_.resize(static_cast<std::size_t>(max_n) + 1);
        rows_[0] = {1};
        for (int n = 1; n <= max_n; ++n) {
            auto& row = rows_[static_cast<std::size_t>(n)];
            row.assign(static_cast<std::size_t>(n) + 1, 0);
            for (int k = 1; k <= n; ++k)
                row[static_cast<std::size_t>(k)] =
                    k * at(n - 1, k) + at(n - 1, k - 1);
        }
    }

    int max_n() const { return static_cast<int>(rows_.size()) - 1; }

    BigInt at(int n, int k) const {
        if (n < 0 || n > max_n()) throw std::out_of_range("StirlingTable: n out of range");
        if (k < 0 || k > n) return 0;
        return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }

private:
    std::vector<std::vector<BigInt>> rows_;
};

namespace detail {

inline void check_poly_index(int n, const char* what) {
    if (n < 0 || n > kMaxPolynomialIndex)
        throw std::out_of_range(std::string(what) + ": requires 0 <= n <= " +
                                std::to_string(kMaxPolynomialIndex));
}

// (x - 1)^k
inline IntPolynomial x_minus_one_pow(int k) {
    IntPolynomial base{BigInt(-1), BigInt(1)};
    IntPolynomial r = IntPolynomial::constant(1);
    for (int i = 0; i < k; ++i) r *= base;
    return r;
}

}  // namespace detail

/// Eulerian polynomial A_n(x), the descent generating polynomial over all
/// permutations of [n], computed by the inductive formula
/// A_n = sum_k C(n,k) A_k (x-1)^(n-1-k) with A_0 = 1. Memoized.
inline const IntPolynomial& eulerian(int n) {
    detail::check_poly_index(n, "eulerian");
    static std::vector<IntPolynomial> table;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (table.empty()) table.push_back(IntPolynomial::constant(1));
    while (static_cast<int>(table.size()) <= n) {
        int m = static_cast<int>(table.size());
        IntPolynomial acc;
        for (int k = 0; k < m; ++k)
            acc += table[static_cast<std::size_t>(k)]
                       .scaled(binomial(m, k)) *
                   detail::x_minus_one_pow(m - 1 - k);
        table.push_back(std::move(acc));
    }
    return table[static_cast<std::size_t>(n)];
}

/// Independent second route to A_n via Stirling numbers:
/// A_n = sum_{k=1..n} k! S(n,k) (x-1)^(n-k), n >= 1.
inline IntPolynomial eulerian_stirling(int n) {
    if (n < 1) throw std::out_of_range("eulerian_stirling: requires n >= 1");
    detail::check_poly_index(n, "eulerian_stirling");
    static const StirlingTable stirling(kMaxPolynomialIndex);
    IntPolynomial acc;
    for (int k = 1; k <= n; ++k)
        acc += detail::x_minus_one_pow(n - k).scaled(factorial(k) * stirling.at(n, k));
    return acc;
}

/// Narayana polynomial N_n(x) = sum_k C(n-1,k) C(n,k) / (k+1) x^k, N_0 = 1.
/// The product is computed first and divided last; the division is exact.
inline const IntPolynomial& narayana(int n) {
    detail::check_poly_index(n, "narayana");
    static std::vector<IntPolynomial> table;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(table.size()) <= n) {
        int m = static_cast<int>(table.size());
        std::vector<BigInt> coeffs;
        if (m == 0) {
            coeffs = {BigInt(1)};
        } else {
            coeffs.reserve(static_cast<std::size_t>(m));
            for (int k = 0; k <= m - 1; ++k)
                coeffs.push_back(exact_div(binomial(m - 1, k) * binomial(m, k), k + 1));
        }
        table.emplace_back(std::move(coeffs));
    }
    return table[static_cast<std::size_t>(n)];
}

/// Independent second route to N_n via the recurrence
/// N_n = N_{n-1} + x * sum_{i=0..n-2} N_i N_{n-1-i}, n >= 1.
inline IntPolynomial narayana_recurrence(int n) {
    if (n < 1) throw std::out_of_range("narayana_recurrence: requires n >= 1");
    detail::check_poly_index(n, "narayana_recurrence");
    std::vector<IntPolynomial> table;
    table.push_back(IntPolynomial::constant(1));
    for (int m = 1; m <= n; ++m) {
        IntPolynomial conv;
        for (int i = 0; i <= m - 2; ++i)
            conv += table[static_cast<std::size_t>(i)] *
                    table[static_cast<std::size_t>(m - 1 - i)];
        table.push_back(table[static_cast<std::size_t>(m - 1)] + conv.shifted(1));
    }
    return table[static_cast<std::size_t>(n)];
}

/// Catalan number C_n = C(2n,n)/(n+1); equals narayana(n) evaluated at 1.
inline const BigInt& catalan(int n) {
    if (n < 0 || n > kMaxCatalanIndex)
        throw std::out_of_range("catalan: requires 0 <= n <= " +
                                std::to_string(kMaxCatalanIndex));
    static std::vector<BigInt> table;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(table.size()) <= n) {
        int m = static_cast<int>(table.size());
        table.push_back(exact_div(binomial(2 * m, m), m + 1));
    }
    return table[static_cast<std::size_t>(n)];
}

inline bool is_palindromic(const IntPolynomial& p, int center_degree) {
    return p.is_palindromic(center_degree);
}

/// Pre-builds every memo table; call before fanning work out across threads.
inline void warm_classical_tables() {
    eulerian(kMaxPolynomialIndex);
    narayana(kMaxPolynomialIndex);
    catalan(kMaxCatalanIndex);
}

}  // namespace stacksort
