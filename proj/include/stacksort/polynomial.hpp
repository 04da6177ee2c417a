#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stacksort/bigint.hpp"

namespace stacksort {

/// Dense univariate polynomial, index = exponent, exact coefficients.
/// Invariant: no trailing zero coefficient; the zero polynomial is the
/// empty coefficient list (degree() == -1).
template <typename Coeff>
class BasicPolynomial {
public:
    BasicPolynomial() = default;

    explicit BasicPolynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
        normalize();
    }

    BasicPolynomial(std::initializer_list<Coeff> coeffs)
        : BasicPolynomial(std::vector<Coeff>(coeffs)) {}

    static BasicPolynomial constant(Coeff c) {
        BasicPolynomial p;
        if (c != 0) p.coeffs_.push_back(std::move(c));
        return p;
    }

    /// c * x^k
    static BasicPolynomial monomial(Coeff c, int k) {
        BasicPolynomial p;
        if (c != 0) {
            p.coeffs_.assign(static_cast<std::size_t>(k) + 1, Coeff(0));
            p.coeffs_.back() = std::move(c);
        }
        return p;
    }

    static BasicPolynomial x() { return monomial(Coeff(1), 1); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient of x^k; zero beyond the degree.
    Coeff coeff(int k) const {
        if (k < 0 || k > degree()) return Coeff(0);
        return coeffs_[static_cast<std::size_t>(k)];
    }

    const std::vector<Coeff>& coeffs() const { return coeffs_; }

    bool operator==(const BasicPolynomial& o) const = default;

    BasicPolynomial& operator+=(const BasicPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        normalize();
        return *this;
    }

    BasicPolynomial& operator-=(const BasicPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        normalize();
        return *this;
    }

    friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) {
        a += b;
        return a;
    }

    friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) {
        a -= b;
        return a;
    }

    friend BasicPolynomial operator-(BasicPolynomial a) {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }

    friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Coeff> out(a.coeffs_.size() + b.coeffs_.size() - 1, Coeff(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return BasicPolynomial(std::move(out));
    }

    BasicPolynomial& operator*=(const BasicPolynomial& o) { return *this = *this * o; }

    BasicPolynomial scaled(const Coeff& c) const {
        if (c == 0) return {};
        BasicPolynomial r = *this;
        for (auto& v : r.coeffs_) v *= c;
        return r;
    }

    /// Multiply by x^k.
    BasicPolynomial shifted(int k) const {
        if (k < 0) throw std::domain_error("shifted: negative exponent");
        if (is_zero() || k == 0) return *this;
        BasicPolynomial r;
        r.coeffs_.assign(coeffs_.size() + static_cast<std::size_t>(k), Coeff(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i + k] = coeffs_[i];
        return r;
    }

    /// Horner evaluation.
    Coeff eval(const Coeff& x0) const {
        Coeff acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x0 + coeffs_[i];
        return acc;
    }

    /// True iff coeff(k) == coeff(center_degree - k) for 0 <= k <= center_degree.
    bool is_palindromic(int center_degree) const {
        if (center_degree < 0) return false;
        for (int k = 0; k <= center_degree; ++k)
            if (coeff(k) != coeff(center_degree - k)) return false;
        return degree() <= center_degree;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int k = 0; k <= degree(); ++k) {
            const Coeff& c = coeffs_[static_cast<std::size_t>(k)];
            if (c == 0) continue;
            Coeff mag = c < 0 ? Coeff(-c) : c;
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            if (k == 0 || mag != 1) os << mag;
            if (k >= 1) {
                os << "x";
                if (k > 1) os << "^" << k;
            }
        }
        return os.str();
    }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Coeff> coeffs_;
};

using IntPolynomial = BasicPolynomial<BigInt>;
using RatPolynomial = BasicPolynomial<BigRat>;

inline BigInt eval_int(const IntPolynomial& p, const BigInt& x0) { return p.eval(x0); }

/// Coefficients as decimal strings, ascending by exponent.
inline std::vector<std::string> to_decimal_coeffs(const IntPolynomial& p) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(p.degree() + 1));
    for (int k = 0; k <= p.degree(); ++k) out.push_back(p.coeff(k).str());
    return out;
}

inline IntPolynomial from_decimal_coeffs(const std::vector<std::string>& coeffs) {
    std::vector<BigInt> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) c.emplace_back(s);
    return IntPolynomial(std::move(c));
}

/// Exact conversion; throws if any coefficient has a denominator != 1.
inline IntPolynomial to_int_polynomial(const RatPolynomial& p) {
    std::vector<BigInt> c;
    c.reserve(static_cast<std::size_t>(p.degree() + 1));
    for (int k = 0; k <= p.degree(); ++k) {
        const BigRat& r = p.coeff(k);
        if (boost::multiprecision::denominator(r) != 1)
            throw std::domain_error("to_int_polynomial: non-integral coefficient " +
                                    r.str() + " at x^" + std::to_string(k));
        c.push_back(boost::multiprecision::numerator(r));
    }
    return IntPolynomial(std::move(c));
}

inline RatPolynomial to_rat_polynomial(const IntPolynomial& p) {
    std::vector<BigRat> c;
    c.reserve(static_cast<std::size_t>(p.degree() + 1));
    for (int k = 0; k <= p.degree(); ++k) c.emplace_back(p.coeff(k));
    return RatPolynomial(std::move(c));
}

}  // namespace stacksort
