#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stacksort/bigint.hpp"
#include "stacksort/classical.hpp"
#include "stacksort/permutation.hpp"
#include "stacksort/polynomial.hpp"

namespace stacksort::forms {

/// The t in W_{n,t}: either an absolute value (1, 2) or relative to the
/// length (n-1 ... n-4).
struct TSpec {
    enum class Kind { absolute, relative };
    Kind kind = Kind::absolute;
    int value = 0;  // absolute t, or the k in t = n-k

    static TSpec absolute(int t) { return {Kind::absolute, t}; }
    static TSpec relative(int k) { return {Kind::relative, k}; }

    int resolve(int n) const { return kind == Kind::absolute ? value : n - value; }

    bool operator==(const TSpec&) const = default;

    std::string to_string() const {
        if (kind == Kind::absolute) return std::to_string(value);
        if (value == 0) return "n";
        return "n-" + std::to_string(value);
    }

    /// Accepts "2" or "n-3" style strings.
    static TSpec parse(const std::string& s) {
        if (s.rfind("n-", 0) == 0) return relative(std::stoi(s.substr(2)));
        if (s == "n") return relative(0);
        return absolute(std::stoi(s));
    }
};

enum class Family { W, E, Count };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::W: return "W";
        case Family::E: return "E";
        case Family::Count: return "count";
    }
    return "?";
}

struct FormulaId {
    Family family = Family::W;
    TSpec t;
    Pattern pattern = Pattern::none;
    bool variant = false;  // alternative reading kept only for arbitration

    bool operator==(const FormulaId&) const = default;

    std::string to_string() const {
        std::string s = std::string(forms::to_string(family)) + "[t=" + t.to_string() +
                        ",p=" + stacksort::to_string(pattern) + "]";
        if (variant) s += "[alt]";
        return s;
    }
};

/// One catalogued closed form: identity, provenance tag, validity range and
/// evaluator. Count entries additionally carry the published sequence for
/// n = 4..10 and how their table cell is to be read.
struct FormulaEntry {
    FormulaId id;
    std::string source;
    int min_n = 1;
    int max_n = kMaxPolynomialIndex;
    std::function<IntPolynomial(int)> poly;  // W and E families
    std::function<BigInt(int)> count;        // Count family

    // Count family extras
    std::vector<long long> printed;                // published values, n = 4..10
    std::string cell;                              // the table cell as printed
    bool cell_is_decrement = false;                // cell subtracts from the n-3 column
    std::function<BigInt(int)> cell_total;         // the cell read as a total
    std::function<BigInt(int)> cell_decrement;     // the subtracted quantity
    int cell_min_n = 4;                            // the cell's own validity

    bool valid_at(int n) const { return n >= min_n && n <= max_n; }
};

namespace detail {

inline RatPolynomial A(int k) { return to_rat_polynomial(eulerian(k)); }
inline RatPolynomial N(int k) { return to_rat_polynomial(narayana(k)); }
inline RatPolynomial mono(BigRat c, int k) { return RatPolynomial::monomial(std::move(c), k); }
inline RatPolynomial cst(BigRat c) { return RatPolynomial::constant(std::move(c)); }

// sum over k of (n+k)!(2n-k-1)! / ((k+1)!(n-k)!(2k+1)!(2n-2k-1)!) x^k;
// terms whose factorial arguments go negative vanish.
inline IntPolynomial jacquard_schaeffer(int n) {
    std::vector<BigInt> coeffs;
    for (int k = 0; k <= n; ++k) {
        if (2 * n - 2 * k - 1 < 0 || 2 * n - k - 1 < 0) {
            coeffs.push_back(0);
            continue;
        }
        BigInt num = factorial(n + k) * factorial(2 * n - k - 1);
        BigInt den = factorial(k + 1) * factorial(n - k) * factorial(2 * k + 1) *
                     factorial(2 * n - 2 * k - 1);
        coeffs.push_back(exact_div(num, den));
    }
    return IntPolynomial(std::move(coeffs));
}

// Distribution of descents over 321-avoiding permutations of [n]:
// coefficient of x^k is C(n+1,k)/(n+1) * sum_j C(k+j-1,j) C(n+1-k, n-2k-j).
// The inner binomial is the printed C(k+j-1,k-1) written with its other
// index; at k = 0 that form hits C(-1,-1), and only the C(k+j-1,j) reading
// reproduces the constant term 1.
inline IntPolynomial descents_av321(int n) {
    std::vector<BigInt> coeffs;
    for (int k = 0; k <= std::max(0, n - 1); ++k) {
        BigInt inner = 0;
        for (int j = 0; j <= n - 2 * k; ++j)
            inner += binomial(k + j - 1, j) * binomial(n + 1 - k, n - 2 * k - j);
        coeffs.push_back(exact_div(binomial(n + 1, k) * inner, n + 1));
    }
    return IntPolynomial(std::move(coeffs));
}

// Distribution of descents over 123-avoiding permutations of [n]:
// coefficient of x^k is C(n+1,k+2)/(n+1) * sum_j B(n-k+j-2, j) C(k+2, n-k+j),
// where B is C(.,j) by default and C(.,j-1) for the alternative reading.
inline IntPolynomial descents_av123(int n, bool alt_variant) {
    std::vector<BigInt> coeffs;
    for (int k = 0; k <= std::max(0, n - 1); ++k) {
        BigInt inner = 0;
        for (int j = 0; j <= 2 * k - n + 2; ++j) {
            BigInt left = alt_variant ? binomial(n - k + j - 2, j - 1)
                                      : binomial(n - k + j - 2, j);
            inner += left * binomial(k + 2, n - k + j);
        }
        coeffs.push_back(exact_div(binomial(n + 1, k + 2) * inner, n + 1));
    }
    return IntPolynomial(std::move(coeffs));
}

}  // namespace detail

/// The enumerable catalogue of every closed form. Entry order is fixed, so
/// sweeps and reports are deterministic.
class FormulaRegistry {
public:
    static const FormulaRegistry& instance() {
        static const FormulaRegistry reg;
        return reg;
    }

    const std::vector<FormulaEntry>& entries() const { return entries_; }

    const FormulaEntry* find(Family f, TSpec t, Pattern p, bool variant = false) const {
        for (const auto& e : entries_)
            if (e.id.family == f && e.id.t == t && e.id.pattern == p &&
                e.id.variant == variant)
                return &e;
        return nullptr;
    }

private:
    FormulaRegistry() { build(); }

    void add_poly(Family f, TSpec t, Pattern p, std::string source, int min_n,
                  std::function<IntPolynomial(int)> eval, bool variant = false) {
        FormulaEntry e;
        e.id = {f, t, p, variant};
        e.source = std::move(source);
        e.min_n = min_n;
        e.poly = std::move(eval);
        entries_.push_back(std::move(e));
    }

    void build();

    std::vector<FormulaEntry> entries_;
};

inline const FormulaEntry& require_entry(Family f, TSpec t, Pattern p, bool variant = false) {
    const FormulaEntry* e = FormulaRegistry::instance().find(f, t, p, variant);
    if (!e)
        throw std::invalid_argument("no closed form catalogued for " +
                                    FormulaId{f, t, p, variant}.to_string());
    return *e;
}

inline void check_validity(const FormulaEntry& e, int n) {
    if (!e.valid_at(n))
        throw std::out_of_range(e.id.to_string() + " (" + e.source + ") requires " +
                                std::to_string(e.min_n) + " <= n <= " +
                                std::to_string(e.max_n) + ", got n=" + std::to_string(n));
}

/// W^p_{n,t} by its catalogued closed form.
inline IntPolynomial w_closed(int n, TSpec t, Pattern p, bool variant = false) {
    const FormulaEntry& e = require_entry(Family::W, t, p, variant);
    check_validity(e, n);
    return e.poly(n);
}

/// E^p_{n,t} by its catalogued closed form.
inline IntPolynomial e_closed(int n, TSpec t, Pattern p) {
    const FormulaEntry& e = require_entry(Family::E, t, p);
    check_validity(e, n);
    return e.poly(n);
}

/// Number of p-avoiding t-stack-sortable permutations of [n].
inline BigInt count_closed(int n, TSpec t, Pattern p) {
    const FormulaEntry& e = require_entry(Family::Count, t, p);
    check_validity(e, n);
    return e.count(n);
}

inline void FormulaRegistry::build() {
    using detail::A;
    using detail::N;
    using detail::cst;
    using detail::mono;
    const TSpec t1 = TSpec::absolute(1), t2 = TSpec::absolute(2);
    const TSpec r1 = TSpec::relative(1), r2 = TSpec::relative(2);
    const TSpec r3 = TSpec::relative(3), r4 = TSpec::relative(4);
    const RatPolynomial x = RatPolynomial::x();
    const RatPolynomial xp1{BigRat(1), BigRat(1)};  // 1 + x

    // ---- W, unrestricted --------------------------------------------------
    std::function<IntPolynomial(int)> w_t1 = [](int n) { return narayana(n); };
    std::function<IntPolynomial(int)> w_t2 = [](int n) {
        return detail::jacquard_schaeffer(n);
    };
    std::function<IntPolynomial(int)> w_r1 = [](int n) { return eulerian(n); };
    std::function<IntPolynomial(int)> w_r2 = [x](int n) {
        return to_int_polynomial(A(n) - x * A(n - 2));
    };
    std::function<IntPolynomial(int)> w_r3 = [x, xp1](int n) {
        return to_int_polynomial(A(n) - mono(BigRat(5, 2), 1) * A(n - 2) -
                                 mono(BigRat(2 * n - 3, 2), 1) * xp1 * A(n - 3));
    };
    std::function<IntPolynomial(int)> w_r4 = [](int n) {
        if (n == 4) return IntPolynomial{BigInt(1)};
        if (n == 5) return narayana(5);
        long long nn = static_cast<long long>(n) * n;
        RatPolynomial p2{BigRat(1), BigRat(25)};
        RatPolynomial p3{BigRat(6), BigRat(-15 * n + 30), BigRat(-15 * n + 24)};
        RatPolynomial p4{BigRat(-11), BigRat(-3 * nn + 12 * n - 13),
                         BigRat(-12 * nn + 48 * n - 25), BigRat(-3 * nn + 12 * n + 1)};
        RatPolynomial p5{BigRat(-6), BigRat(0), BigRat(0), BigRat(0), BigRat(6)};
        RatPolynomial sum = A(n).scaled(BigRat(6)) - p2 * A(n - 2) + p3 * A(n - 3) +
                            p4 * A(n - 4) - p5 * A(n - 5);
        return to_int_polynomial(sum.scaled(BigRat(1, 6)));
    };
    add_poly(Family::W, t1, Pattern::none, "narayana (1-stack-sortable descents)", 1, w_t1);
    add_poly(Family::W, t2, Pattern::none, "jacquard-schaeffer (2-stack-sortable descents)",
             1, w_t2);
    add_poly(Family::W, r1, Pattern::none, "eulerian (all permutations)", 1, w_r1);
    add_poly(Family::W, r2, Pattern::none, "eulerian difference, t=n-2", 2, w_r2);
    add_poly(Family::W, r3, Pattern::none, "eulerian form, t=n-3", 4, w_r3);
    add_poly(Family::W, r4, Pattern::none, "eulerian form, t=n-4", 4, w_r4);

    // ---- W, pattern-avoiding ---------------------------------------------
    std::function<IntPolynomial(int)> w123_all = [](int n) {
        return detail::descents_av123(n, false);
    };
    std::function<IntPolynomial(int)> w123_all_alt = [](int n) {
        return detail::descents_av123(n, true);
    };
    std::function<IntPolynomial(int)> w321_all = [](int n) {
        return detail::descents_av321(n);
    };
    auto nar = [](int n) { return to_rat_polynomial(narayana(n)); };

    std::function<IntPolynomial(int)> w123_r2 = [w123_all](int n) {
        return to_int_polynomial(to_rat_polynomial(w123_all(n)) - mono(BigRat(1), n - 2));
    };
    std::function<IntPolynomial(int)> w123_r3 = [w123_all](int n) {
        return to_int_polynomial(to_rat_polynomial(w123_all(n)) -
                                 mono(BigRat(n - 2), n - 3) - mono(BigRat(n + 1), n - 2));
    };
    std::function<IntPolynomial(int)> w123_r4 = [w123_all](int n) {
        RatPolynomial bracket;
        if (n == 4)
            bracket = RatPolynomial{BigRat(0), BigRat(2), BigRat(11), BigRat(1)};
        else if (n == 5)
            bracket = RatPolynomial{BigRat(0), BigRat(0), BigRat(15), BigRat(16)};
        else {
            long long nn = static_cast<long long>(n) * n;
            bracket = mono(BigRat(nn - n - 3), n - 3) + mono(BigRat(nn + n + 2, 2), n - 2);
        }
        return to_int_polynomial(to_rat_polynomial(w123_all(n)) - bracket);
    };
    std::function<IntPolynomial(int)> w321_r2 = [w321_all, x](int n) {
        return to_int_polynomial(to_rat_polynomial(w321_all(n)) - x);
    };
    std::function<IntPolynomial(int)> w321_r3 = [w321_all](int n) {
        return to_int_polynomial(to_rat_polynomial(w321_all(n)) - mono(BigRat(n + 1), 1) -
                                 mono(BigRat(n - 3), 2));
    };
    std::function<IntPolynomial(int)> w321_r4 = [w321_all](int n) {
        long long nn = static_cast<long long>(n) * n;
        return to_int_polynomial(to_rat_polynomial(w321_all(n)) -
                                 mono(BigRat(nn + n + 2, 2), 1) - mono(BigRat(nn - n - 10), 2) -
                                 mono(BigRat(binomial(n - 4, 2)), 3));
    };
    std::function<IntPolynomial(int)> w213_r2 = [nar, x](int n) {
        return to_int_polynomial(nar(n) - x);
    };
    std::function<IntPolynomial(int)> w213_r3 = [nar](int n) {
        return to_int_polynomial(nar(n) - mono(BigRat(3), 1) - mono(BigRat(2 * n - 5), 2));
    };
    std::function<IntPolynomial(int)> w213_r4 = [nar](int n) {
        return to_int_polynomial(nar(n) - mono(BigRat(6), 1) - mono(BigRat(8 * n - 26), 2) -
                                 mono(BigRat((2 * n - 7) * (n - 3)), 3));
    };
    std::function<IntPolynomial(int)> w132_r2 = [nar, x](int n) {
        return to_int_polynomial(nar(n) - x * nar(n - 2));
    };
    std::function<IntPolynomial(int)> w132_r3 = [nar, x, xp1](int n) {
        return to_int_polynomial(nar(n) - x * nar(n - 2) -
                                 (x * xp1).scaled(BigRat(2)) * nar(n - 3));
    };
    std::function<IntPolynomial(int)> w132_r4 = [nar, x, xp1, w132_r3](int n) {
        RatPolynomial piece;
        if (n == 4)
            piece = RatPolynomial{BigRat(0), BigRat(3), BigRat(3), BigRat(1)};
        else if (n == 5)
            piece = RatPolynomial{BigRat(0), BigRat(3), BigRat(7), BigRat(3)};
        else
            piece = RatPolynomial{BigRat(0), BigRat(3), BigRat(8), BigRat(3)} * nar(n - 4);
        return to_int_polynomial(to_rat_polynomial(w132_r3(n)) - piece);
    };
    std::function<IntPolynomial(int)> w312_r2 = w132_r2;  // same closed form
    std::function<IntPolynomial(int)> w312_r3 = [nar, x, xp1](int n) {
        return to_int_polynomial(nar(n) - (x * nar(n - 2)).scaled(BigRat(2)) -
                                 x * xp1 * nar(n - 3));
    };
    std::function<IntPolynomial(int)> w312_r4 = [nar, x, w312_r3](int n) {
        RatPolynomial piece;
        if (n == 4)
            piece = RatPolynomial{BigRat(0), BigRat(3), BigRat(3), BigRat(1)};
        else
            piece = x * nar(n - 2) + mono(BigRat(1), 2) * nar(n - 3) +
                    RatPolynomial{BigRat(0), BigRat(2), BigRat(2), BigRat(1)} * nar(n - 4);
        return to_int_polynomial(to_rat_polynomial(w312_r3(n)) - piece);
    };
    std::function<IntPolynomial(int)> w231_any = [](int n) { return narayana(n); };
    std::function<IntPolynomial(int)> w231_r4 = [](int n) {
        // t = n-4 drops to 0 at n = 4, where only the identity qualifies.
        return n == 4 ? IntPolynomial{BigInt(1)} : narayana(n);
    };

    add_poly(Family::W, r1, Pattern::p123, "descent distribution over 123-avoiders", 1,
             w123_all);
    add_poly(Family::W, r1, Pattern::p123,
             "descent distribution over 123-avoiders (alternative binomial index)", 1,
             w123_all_alt, /*variant=*/true);
    add_poly(Family::W, r1, Pattern::p321, "descent distribution over 321-avoiders", 1,
             w321_all);
    add_poly(Family::W, r1, Pattern::p132, "descent distribution over 132-avoiders", 1,
             [](int n) { return narayana(n); });
    add_poly(Family::W, r1, Pattern::p213, "descent distribution over 213-avoiders", 1,
             [](int n) { return narayana(n); });
    add_poly(Family::W, r1, Pattern::p312, "descent distribution over 312-avoiders", 1,
             [](int n) { return narayana(n); });
    add_poly(Family::W, r1, Pattern::p231, "narayana for 231-avoiders, any t >= 1", 1,
             w231_any);
    add_poly(Family::W, r2, Pattern::p123, "av123 at t=n-2", 4, w123_r2);
    add_poly(Family::W, r3, Pattern::p123, "av123 at t=n-3", 4, w123_r3);
    add_poly(Family::W, r4, Pattern::p123, "av123 at t=n-4", 4, w123_r4);
    add_poly(Family::W, r2, Pattern::p321, "av321 at t=n-2", 4, w321_r2);
    add_poly(Family::W, r3, Pattern::p321, "av321 at t=n-3", 4, w321_r3);
    add_poly(Family::W, r4, Pattern::p321, "av321 at t=n-4", 4, w321_r4);
    add_poly(Family::W, r2, Pattern::p213, "av213 at t=n-2", 4, w213_r2);
    add_poly(Family::W, r3, Pattern::p213, "av213 at t=n-3", 4, w213_r3);
    add_poly(Family::W, r4, Pattern::p213, "av213 at t=n-4", 4, w213_r4);
    add_poly(Family::W, r2, Pattern::p132, "av132 at t=n-2", 4, w132_r2);
    add_poly(Family::W, r3, Pattern::p132, "av132 at t=n-3", 4, w132_r3);
    add_poly(Family::W, r4, Pattern::p132, "av132 at t=n-4", 4, w132_r4);
    add_poly(Family::W, r2, Pattern::p312, "av312 at t=n-2", 4, w312_r2);
    add_poly(Family::W, r3, Pattern::p312, "av312 at t=n-3", 4, w312_r3);
    add_poly(Family::W, r4, Pattern::p312, "av312 at t=n-4", 4, w312_r4);
    add_poly(Family::W, r2, Pattern::p231, "narayana for 231-avoiders, any t >= 1", 3,
             w231_any);
    add_poly(Family::W, r3, Pattern::p231, "narayana for 231-avoiders, any t >= 1", 4,
             w231_any);
    add_poly(Family::W, r4, Pattern::p231, "narayana for 231-avoiders, t=0 at n=4", 4,
             w231_r4);

    // ---- E, unrestricted --------------------------------------------------
    add_poly(Family::E, r1, Pattern::none, "west exactly-(n-1) class", 2, [x](int n) {
        return to_int_polynomial(x * A(n - 2));
    });
    add_poly(Family::E, r2, Pattern::none, "exactly-(n-2) descents, eulerian form", 4,
             [x, xp1](int n) {
                 RatPolynomial inner =
                     A(n - 2).scaled(BigRat(3)) + xp1.scaled(BigRat(2 * n - 3)) * A(n - 3);
                 return to_int_polynomial((x * inner).scaled(BigRat(1, 2)));
             });
    add_poly(Family::E, r3, Pattern::none, "exactly-(n-3) descents, eulerian form", 6,
             [](int n) {
                 long long nn = static_cast<long long>(n) * n;
                 RatPolynomial p2{BigRat(1), BigRat(10)};
                 RatPolynomial p3{BigRat(-6), BigRat(9 * n - 21), BigRat(9 * n - 15)};
                 RatPolynomial p4{BigRat(11), BigRat(3 * nn - 12 * n + 13),
                                  BigRat(12 * nn - 48 * n + 25), BigRat(3 * nn - 12 * n - 1)};
                 RatPolynomial p5{BigRat(-6), BigRat(0), BigRat(0), BigRat(0), BigRat(6)};
                 RatPolynomial sum =
                     p2 * A(n - 2) + p3 * A(n - 3) + p4 * A(n - 4) + p5 * A(n - 5);
                 return to_int_polynomial(sum.scaled(BigRat(1, 6)));
             });

    // ---- E, pattern-avoiding ----------------------------------------------
    add_poly(Family::E, r1, Pattern::p123, "av123 exactly-(n-1)", 4, [](int n) {
        return to_int_polynomial(mono(BigRat(1), n - 2));
    });
    add_poly(Family::E, r1, Pattern::p321, "av321 exactly-(n-1)", 4, [x](int) {
        return to_int_polynomial(x);
    });
    add_poly(Family::E, r1, Pattern::p213, "av213 exactly-(n-1)", 4, [x](int) {
        return to_int_polynomial(x);
    });
    add_poly(Family::E, r1, Pattern::p132, "av132 exactly-(n-1)", 4, [nar, x](int n) {
        return to_int_polynomial(x * nar(n - 2));
    });
    add_poly(Family::E, r1, Pattern::p312, "av312 exactly-(n-1)", 4, [nar, x](int n) {
        return to_int_polynomial(x * nar(n - 2));
    });
    add_poly(Family::E, r2, Pattern::p123, "av123 exactly-(n-2)", 4, [](int n) {
        return to_int_polynomial(mono(BigRat(n - 2), n - 3) + mono(BigRat(n), n - 2));
    });
    add_poly(Family::E, r2, Pattern::p321, "av321 exactly-(n-2)", 4, [](int n) {
        return to_int_polynomial(mono(BigRat(n), 1) + mono(BigRat(n - 3), 2));
    });
    add_poly(Family::E, r2, Pattern::p213, "av213 exactly-(n-2)", 4, [](int n) {
        return to_int_polynomial(mono(BigRat(2), 1) + mono(BigRat(2 * n - 5), 2));
    });
    add_poly(Family::E, r2, Pattern::p132, "av132 exactly-(n-2)", 4, [nar, x, xp1](int n) {
        return to_int_polynomial((x * xp1).scaled(BigRat(2)) * nar(n - 3));
    });
    add_poly(Family::E, r2, Pattern::p312, "av312 exactly-(n-2)", 4, [nar, x, xp1](int n) {
        return to_int_polynomial(x * nar(n - 2) + x * xp1 * nar(n - 3));
    });
    add_poly(Family::E, r3, Pattern::p123, "av123 exactly-(n-3)", 4, [](int n) {
        if (n == 4) return IntPolynomial{BigInt(0), BigInt(0), BigInt(6), BigInt(1)};
        if (n == 5) return IntPolynomial{BigInt(0), BigInt(0), BigInt(12), BigInt(10)};
        long long nn = static_cast<long long>(n) * n;
        return to_int_polynomial(mono(BigRat(nn - 2 * n - 1), n - 3) +
                                 mono(BigRat(nn - n, 2), n - 2));
    });
    add_poly(Family::E, r3, Pattern::p321, "av321 exactly-(n-3)", 4, [](int n) {
        long long nn = static_cast<long long>(n) * n;
        return to_int_polynomial(mono(BigRat(nn - n, 2), 1) + mono(BigRat(nn - 2 * n - 7), 2) +
                                 mono(BigRat(binomial(n - 4, 2)), 3));
    });
    add_poly(Family::E, r3, Pattern::p213, "av213 exactly-(n-3)", 4, [](int n) {
        return to_int_polynomial(mono(BigRat(3), 1) + mono(BigRat(6 * n - 21), 2) +
                                 mono(BigRat((2 * n - 7) * (n - 3)), 3));
    });
    add_poly(Family::E, r3, Pattern::p132, "av132 exactly-(n-3)", 4, [nar](int n) {
        if (n == 4) return IntPolynomial{BigInt(0), BigInt(3), BigInt(3), BigInt(1)};
        if (n == 5) return IntPolynomial{BigInt(0), BigInt(3), BigInt(7), BigInt(3)};
        return to_int_polynomial(
            RatPolynomial{BigRat(0), BigRat(3), BigRat(8), BigRat(3)} * nar(n - 4));
    });
    add_poly(Family::E, r3, Pattern::p312, "av312 exactly-(n-3)", 4, [nar, x](int n) {
        if (n == 4) return IntPolynomial{BigInt(0), BigInt(3), BigInt(3), BigInt(1)};
        return to_int_polynomial(
            x * nar(n - 2) + mono(BigRat(1), 2) * nar(n - 3) +
            RatPolynomial{BigRat(0), BigRat(2), BigRat(2), BigRat(1)} * nar(n - 4));
    });
    // 231-avoiders have complexity at most 1, so the exactly-t sets are empty
    // once t >= 2; catalogued so the telescoping identity stays checkable.
    add_poly(Family::E, r1, Pattern::p231, "av231 complexity bound", 3,
             [](int) { return IntPolynomial{}; });
    add_poly(Family::E, r2, Pattern::p231, "av231 complexity bound", 4,
             [](int) { return IntPolynomial{}; });
    add_poly(Family::E, r3, Pattern::p231, "av231 complexity bound", 5,
             [](int) { return IntPolynomial{}; });

    // ---- Counts: the published enumeration table --------------------------
    auto add_count = [this](TSpec t, Pattern p, std::string source,
                            std::function<IntPolynomial(int)> w_eval,
                            std::vector<long long> printed, std::string cell,
                            bool decrement, std::function<BigInt(int)> cell_total,
                            std::function<BigInt(int)> cell_decrement, int cell_min_n) {
        FormulaEntry e;
        e.id = {Family::Count, t, p, false};
        e.source = std::move(source);
        e.min_n = 4;
        e.max_n = kMaxPolynomialIndex;
        e.count = [w_eval](int n) { return w_eval(n).eval(BigInt(1)); };
        e.printed = std::move(printed);
        e.cell = std::move(cell);
        e.cell_is_decrement = decrement;
        e.cell_total = std::move(cell_total);
        e.cell_decrement = std::move(cell_decrement);
        e.cell_min_n = cell_min_n;
        entries_.push_back(std::move(e));
    };
    auto C = [](int k) { return catalan(k); };

    add_count(r2, Pattern::p123, "enumeration table, av123 t=n-2", w123_r2,
              {13, 41, 131, 428, 1429, 4861, 16795}, "C(n)-1", false,
              [C](int n) { return C(n) - 1; }, {}, 4);
    add_count(r3, Pattern::p123, "enumeration table, av123 t=n-3", w123_r3,
              {7, 33, 121, 416, 1415, 4845, 16777}, "C(n)-2n+1", false,
              [C](int n) { return C(n) - 2 * n + 1; }, {}, 4);
    add_count(r4, Pattern::p123, "enumeration table, av123 t=n-4", w123_r4,
              {0, 11, 83, 361, 1340, 4747, 16653}, "C(n)-(3n^2-n-4)/2", false,
              [C](int n) {
                  long long nn = static_cast<long long>(n) * n;
                  return C(n) - (3 * nn - n - 4) / 2;
              },
              {}, 6);
    add_count(r2, Pattern::p132, "enumeration table, av132 t=n-2", w132_r2,
              {12, 37, 118, 387, 1298, 4433, 15366}, "C(n)-C(n-2)", false,
              [C](int n) { return C(n) - C(n - 2); }, {}, 4);
    add_count(r3, Pattern::p132, "enumeration table, av132 t=n-3", w132_r3,
              {8, 29, 98, 331, 1130, 3905, 13650}, "C(n)-C(n-2)-4C(n-3)", false,
              [C](int n) { return C(n) - C(n - 2) - 4 * C(n - 3); }, {}, 4);
    add_count(r4, Pattern::p132, "enumeration table, av132 t=n-4", w132_r4,
              {1, 16, 70, 261, 934, 3317, 11802}, "C(n)-14C(n-4)", true,
              [C](int n) { return C(n) - 14 * C(n - 4); },
              [C](int n) { return 14 * C(n - 4); }, 6);
    add_count(r2, Pattern::p213, "enumeration table, av213 t=n-2", w213_r2,
              {13, 41, 131, 428, 1429, 4861, 16795}, "C(n)-1", false,
              [C](int n) { return C(n) - 1; }, {}, 4);
    add_count(r3, Pattern::p213, "enumeration table, av213 t=n-3", w213_r3,
              {8, 34, 122, 417, 1416, 4846, 16778}, "C(n)-2(n-1)", false,
              [C](int n) { return C(n) - 2 * (n - 1); }, {}, 4);
    add_count(r4, Pattern::p213, "enumeration table, av213 t=n-4", w213_r4,
              {1, 16, 89, 365, 1341, 4744, 16645}, "C(n)-(2n^2-5n+1)", false,
              [C](int n) {
                  long long nn = static_cast<long long>(n) * n;
                  return C(n) - (2 * nn - 5 * n + 1);
              },
              {}, 4);
    add_count(r2, Pattern::p231, "enumeration table, av231 t=n-2", w231_any,
              {14, 42, 132, 429, 1430, 4862, 16796}, "C(n)", false,
              [C](int n) { return C(n); }, {}, 4);
    add_count(r3, Pattern::p231, "enumeration table, av231 t=n-3", w231_any,
              {14, 42, 132, 429, 1430, 4862, 16796}, "C(n)", false,
              [C](int n) { return C(n); }, {}, 4);
    add_count(r4, Pattern::p231, "enumeration table, av231 t=n-4", w231_r4,
              {1, 42, 132, 429, 1430, 4862, 16796}, "C(n)", false,
              [C](int n) { return C(n); }, {}, 5);
    add_count(r2, Pattern::p312, "enumeration table, av312 t=n-2", w312_r2,
              {12, 37, 118, 387, 1298, 4433, 15366}, "C(n)-C(n-2)", false,
              [C](int n) { return C(n) - C(n - 2); }, {}, 4);
    add_count(r3, Pattern::p312, "enumeration table, av312 t=n-3", w312_r3,
              {8, 28, 94, 317, 1082, 3740, 13078}, "C(n)-2(C(n-2)+C(n-3))", false,
              [C](int n) { return C(n) - 2 * (C(n - 2) + C(n - 3)); }, {}, 4);
    add_count(r4, Pattern::p312, "enumeration table, av312 t=n-4", w312_r4,
              {1, 16, 65, 236, 838, 2969, 10559}, "C(n)-(C(n-2)+C(n-3)+5C(n-4))", true,
              [C](int n) { return C(n) - (C(n - 2) + C(n - 3) + 5 * C(n - 4)); },
              [C](int n) { return C(n - 2) + C(n - 3) + 5 * C(n - 4); }, 5);
    add_count(r2, Pattern::p321, "enumeration table, av321 t=n-2", w321_r2,
              {13, 41, 131, 428, 1429, 4861, 16795}, "C(n)-1", false,
              [C](int n) { return C(n) - 1; }, {}, 4);
    add_count(r3, Pattern::p321, "enumeration table, av321 t=n-3", w321_r3,
              {8, 34, 122, 417, 1416, 4846, 16778}, "C(n)-2(n-1)", false,
              [C](int n) { return C(n) - 2 * (n - 1); }, {}, 4);
    add_count(r4, Pattern::p321, "enumeration table, av321 t=n-4", w321_r4,
              {1, 16, 89, 365, 1341, 4744, 16645}, "C(n)-(2n^2-5n+1)", false,
              [C](int n) {
                  long long nn = static_cast<long long>(n) * n;
                  return C(n) - (2 * nn - 5 * n + 1);
              },
              {}, 4);
}

struct SweepValue {
    const FormulaEntry* entry;
    int n;
    std::optional<IntPolynomial> poly;
    std::optional<BigInt> count;
    std::string error;  // only ever set for variant entries
};

/// Evaluates every registry entry for every valid n <= n_max. Errors carry
/// the formula id; a variant entry that fails to evaluate (its rational
/// scaffolding need not cancel) is recorded rather than propagated.
inline std::vector<SweepValue> registry_sweep(int n_max) {
    if (n_max < 1 || n_max > kMaxEnumerationLength)
        throw std::out_of_range("registry_sweep: requires 1 <= n_max <= " +
                                std::to_string(kMaxEnumerationLength));
    std::vector<SweepValue> out;
    for (const auto& e : FormulaRegistry::instance().entries()) {
        for (int n = e.min_n; n <= std::min(n_max, e.max_n); ++n) {
            SweepValue v{&e, n, std::nullopt, std::nullopt, {}};
            try {
                if (e.id.family == Family::Count)
                    v.count = e.count(n);
                else
                    v.poly = e.poly(n);
            } catch (const std::exception& ex) {
                if (!e.id.variant)
                    throw std::runtime_error(e.id.to_string() + " at n=" +
                                             std::to_string(n) + ": " + ex.what());
                v.error = ex.what();
            }
            out.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace stacksort::forms
