#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stacksort/permutation.hpp"
#include "stacksort/polynomial.hpp"

namespace stacksort::glob {

inline constexpr int kMaxGlobLength = 11;  // enumeration ceiling for glob sets

/// An integer that may be given relative to the permutation length,
/// e.g. "n-2"; resolve(n) yields the concrete value.
struct ValueExpr {
    bool relative = false;
    int value = 0;  // absolute value, or the offset k in n-k

    int resolve(int n) const { return relative ? n - value : value; }

    static ValueExpr parse(const std::string& s) {
        ValueExpr v;
        if (s == "n") {
            v.relative = true;
            v.value = 0;
        } else if (s.rfind("n-", 0) == 0) {
            v.relative = true;
            v.value = std::stoi(s.substr(2));
        } else {
            v.value = std::stoi(s);
        }
        return v;
    }

    std::string to_string() const {
        if (!relative) return std::to_string(value);
        if (value == 0) return "n";
        return "n-" + std::to_string(value);
    }
};

struct GlobToken {
    enum class Kind { literal, question, star };
    enum class Order { any, increasing, decreasing };

    Kind kind = Kind::literal;
    ValueExpr literal;                   // literal only
    char label = 0;                      // question/star, 0 = anonymous
    Order order = Order::any;            // star only
    Pattern star_avoid = Pattern::none;  // star only: segment must avoid this

    std::string to_string() const {
        switch (kind) {
            case Kind::literal: return literal.to_string();
            case Kind::question: return label ? std::string("?") + label : "?";
            case Kind::star: {
                std::string s = "*";
                if (label) s += label;
                if (order == Order::increasing) s += ":u";
                if (order == Order::decreasing) s += ":d";
                if (star_avoid != Pattern::none)
                    s += std::string(":av") + stacksort::to_string(star_avoid);
                return s;
            }
        }
        return "?";
    }
};

/// A constraint tying several tokens of one word together.
struct JointConstraint {
    enum class Kind {
        question_lt,       // value(labels[0]) < value(labels[1])
        question_ne,       // value(labels[0]) != lo
        question_range,    // lo <= value(labels[0]) <= hi
        stars_increasing,  // concatenation of the star segments is increasing
        stars_nonempty     // union of the star segments is nonempty
    };

    Kind kind;
    std::vector<char> labels;
    ValueExpr lo, hi;

    std::string to_string() const {
        std::ostringstream os;
        switch (kind) {
            case Kind::question_lt: os << "lt"; break;
            case Kind::question_ne: os << "ne"; break;
            case Kind::question_range: os << "range"; break;
            case Kind::stars_increasing: os << "inc"; break;
            case Kind::stars_nonempty: os << "nonempty"; break;
        }
        for (char c : labels) os << ' ' << c;
        if (kind == Kind::question_ne) os << ' ' << lo.to_string();
        if (kind == Kind::question_range) os << ' ' << lo.to_string() << ' ' << hi.to_string();
        return os.str();
    }
};

/// A pattern word over literals, single-slot wildcards (?) and multi-slot
/// wildcards (*), with joint constraints and excluded sub-words. Matching is
/// declarative: literal values are located in the permutation, their order
/// must follow the word, and each inter-literal segment is split into leading
/// questions, one optional star, and trailing questions.
class GlobWord {
public:
    GlobWord() = default;

    /// Word syntax: space-separated tokens. Literals are "n", "n-2", "3", ...;
    /// questions are "?" or "?a" (lowercase label); stars are "*" or "*A"
    /// (uppercase label) with an optional ":u" / ":d" / ":av132"-style
    /// modifier. Constraints: "lt a b", "ne a 1", "range a 4 n-2",
    /// "inc A B", "nonempty A B".
    static GlobWord parse(const std::string& word,
                          const std::vector<std::string>& constraints = {},
                          const std::vector<std::string>& exclusions = {}) {
        GlobWord w;
        std::istringstream is(word);
        std::string tok;
        while (is >> tok) w.tokens_.push_back(parse_token(tok));
        for (const auto& c : constraints) w.constraints_.push_back(parse_constraint(c));
        for (const auto& e : exclusions) w.exclusions_.push_back(GlobWord::parse(e));
        w.finalize();
        return w;
    }

    const std::vector<GlobToken>& tokens() const { return tokens_; }
    const std::vector<JointConstraint>& constraints() const { return constraints_; }
    const std::vector<GlobWord>& exclusions() const { return exclusions_; }

    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < tokens_.size(); ++i) {
            if (i) os << ' ';
            os << tokens_[i].to_string();
        }
        return os.str();
    }

    /// Whether pi arises from the word by some replacement of wildcards that
    /// satisfies every constraint and no exclusion. A word whose literals
    /// cannot be instantiated at this length (value out of [1,n] or two
    /// literals colliding) matches nothing.
    bool matches(const int* p, int n) const {
        if (!matches_base(p, n)) return false;
        for (const auto& ex : exclusions_)
            if (ex.matches_base(p, n)) return false;
        return true;
    }

    bool matches(const Permutation& pi) const { return matches(pi.data(), pi.size()); }

private:
    struct Gap {
        std::vector<int> lead;   // question token indices before the star
        int star = -1;           // star token index, -1 if none
        std::vector<int> trail;  // question token indices after the star
    };

    static GlobToken parse_token(const std::string& s) {
        GlobToken t;
        if (s[0] == '?') {
            t.kind = GlobToken::Kind::question;
            if (s.size() == 2 && s[1] >= 'a' && s[1] <= 'z') {
                t.label = s[1];
            } else if (s.size() != 1) {
                throw std::invalid_argument("glob: bad question token '" + s + "'");
            }
            return t;
        }
        if (s[0] == '*') {
            t.kind = GlobToken::Kind::star;
            std::size_t i = 1;
            if (i < s.size() && s[i] >= 'A' && s[i] <= 'Z') t.label = s[i++];
            if (i < s.size()) {
                if (s[i] != ':')
                    throw std::invalid_argument("glob: bad star token '" + s + "'");
                std::string mod = s.substr(i + 1);
                if (mod == "u")
                    t.order = GlobToken::Order::increasing;
                else if (mod == "d")
                    t.order = GlobToken::Order::decreasing;
                else if (mod.rfind("av", 0) == 0)
                    t.star_avoid = pattern_from_string(mod.substr(2));
                else
                    throw std::invalid_argument("glob: bad star modifier '" + s + "'");
            }
            return t;
        }
        t.kind = GlobToken::Kind::literal;
        t.literal = ValueExpr::parse(s);
        return t;
    }

    static JointConstraint parse_constraint(const std::string& s) {
        std::istringstream is(s);
        std::string kind;
        is >> kind;
        JointConstraint c;
        auto read_label = [&is, &s]() {
            std::string t;
            if (!(is >> t) || t.size() != 1)
                throw std::invalid_argument("glob: bad constraint '" + s + "'");
            return t[0];
        };
        if (kind == "lt") {
            c.kind = JointConstraint::Kind::question_lt;
            c.labels = {read_label(), read_label()};
        } else if (kind == "ne") {
            c.kind = JointConstraint::Kind::question_ne;
            c.labels = {read_label()};
            std::string v;
            is >> v;
            c.lo = ValueExpr::parse(v);
        } else if (kind == "range") {
            c.kind = JointConstraint::Kind::question_range;
            c.labels = {read_label()};
            std::string a, b;
            is >> a >> b;
            c.lo = ValueExpr::parse(a);
            c.hi = ValueExpr::parse(b);
        } else if (kind == "inc" || kind == "nonempty") {
            c.kind = kind == "inc" ? JointConstraint::Kind::stars_increasing
                                   : JointConstraint::Kind::stars_nonempty;
            std::string t;
            while (is >> t) {
                if (t.size() != 1)
                    throw std::invalid_argument("glob: bad constraint '" + s + "'");
                c.labels.push_back(t[0]);
            }
            if (c.labels.empty())
                throw std::invalid_argument("glob: constraint without labels '" + s + "'");
        } else {
            throw std::invalid_argument("glob: unknown constraint '" + s + "'");
        }
        return c;
    }

    // Splits the token list into literals and the gaps between them and
    // validates label usage. Throws on malformed words.
    void finalize() {
        literal_tokens_.clear();
        gaps_.clear();
        gaps_.emplace_back();
        bool label_used[128] = {false};
        for (int i = 0; i < static_cast<int>(tokens_.size()); ++i) {
            const GlobToken& t = tokens_[static_cast<std::size_t>(i)];
            if (t.label) {
                if (label_used[static_cast<int>(t.label)])
                    throw std::invalid_argument("glob: duplicate label in word");
                label_used[static_cast<int>(t.label)] = true;
            }
            switch (t.kind) {
                case GlobToken::Kind::literal:
                    literal_tokens_.push_back(i);
                    gaps_.emplace_back();
                    break;
                case GlobToken::Kind::question:
                    if (gaps_.back().star < 0)
                        gaps_.back().lead.push_back(i);
                    else
                        gaps_.back().trail.push_back(i);
                    break;
                case GlobToken::Kind::star:
                    if (gaps_.back().star >= 0)
                        throw std::invalid_argument(
                            "glob: two stars in one gap are not supported");
                    gaps_.back().star = i;
                    break;
            }
        }
        if (literal_tokens_.size() > 12)
            throw std::invalid_argument("glob: too many literals in word");
        question_count_ = 0;
        char label_kind[128] = {0};  // 'q' or 's'
        for (const auto& t : tokens_) {
            question_count_ += t.kind == GlobToken::Kind::question;
            if (t.label)
                label_kind[static_cast<int>(t.label)] =
                    t.kind == GlobToken::Kind::question ? 'q' : 's';
        }
        for (const auto& c : constraints_) {
            bool wants_star = c.kind == JointConstraint::Kind::stars_increasing ||
                              c.kind == JointConstraint::Kind::stars_nonempty;
            for (char l : c.labels) {
                if (!label_used[static_cast<int>(l)])
                    throw std::invalid_argument(
                        std::string("glob: constraint references unknown label '") + l +
                        "'");
                if (label_kind[static_cast<int>(l)] != (wants_star ? 's' : 'q'))
                    throw std::invalid_argument(
                        std::string("glob: constraint label '") + l +
                        "' is not a " + (wants_star ? "star" : "question"));
            }
        }
    }

    bool segment_ok(const GlobToken& star, const int* p, int lo, int hi) const {
        if (star.order == GlobToken::Order::increasing) {
            for (int i = lo + 1; i < hi; ++i)
                if (p[i - 1] > p[i]) return false;
        } else if (star.order == GlobToken::Order::decreasing) {
            for (int i = lo + 1; i < hi; ++i)
                if (p[i - 1] < p[i]) return false;
        }
        if (star.star_avoid != Pattern::none &&
            contains_raw(p + lo, hi - lo, pattern_letters(star.star_avoid), 3))
            return false;
        return true;
    }

    bool matches_base(const int* p, int n) const {
        int lit_count = static_cast<int>(literal_tokens_.size());
        if (lit_count + question_count_ > n) return false;

        // Resolve literal values; empty-set semantics on impossible values.
        int lit_val[12];
        unsigned seen_mask = 0;
        for (int i = 0; i < lit_count; ++i) {
            int v = tokens_[static_cast<std::size_t>(literal_tokens_[static_cast<std::size_t>(i)])]
                        .literal.resolve(n);
            if (v < 1 || v > n) return false;
            unsigned bit = 1u << v;
            if (seen_mask & bit) return false;
            seen_mask |= bit;
            lit_val[i] = v;
        }

        int pos_of[kMaxLength + 1];
        for (int i = 0; i < n; ++i) pos_of[p[i]] = i;

        int qval[128];
        int star_lo[128], star_hi[128];

        int seg_lo = 0;
        for (int g = 0; g <= lit_count; ++g) {
            int seg_hi = g < lit_count ? pos_of[lit_val[g]] : n;
            if (seg_hi < seg_lo) return false;  // literal order violated
            const Gap& gap = gaps_[static_cast<std::size_t>(g)];
            int q = static_cast<int>(gap.lead.size() + gap.trail.size());
            int len = seg_hi - seg_lo;
            if (gap.star < 0 && len != q) return false;
            if (len < q) return false;

            int pos = seg_lo;
            for (int tok : gap.lead) {
                char l = tokens_[static_cast<std::size_t>(tok)].label;
                if (l) qval[static_cast<int>(l)] = p[pos];
                ++pos;
            }
            int tpos = seg_hi;
            for (auto it = gap.trail.rbegin(); it != gap.trail.rend(); ++it) {
                --tpos;
                char l = tokens_[static_cast<std::size_t>(*it)].label;
                if (l) qval[static_cast<int>(l)] = p[tpos];
            }
            if (gap.star >= 0) {
                const GlobToken& star = tokens_[static_cast<std::size_t>(gap.star)];
                if (!segment_ok(star, p, pos, tpos)) return false;
                if (star.label) {
                    star_lo[static_cast<int>(star.label)] = pos;
                    star_hi[static_cast<int>(star.label)] = tpos;
                }
            }
            seg_lo = seg_hi + 1;
        }

        for (const auto& c : constraints_) {
            switch (c.kind) {
                case JointConstraint::Kind::question_lt:
                    if (qval[static_cast<int>(c.labels[0])] >=
                        qval[static_cast<int>(c.labels[1])])
                        return false;
                    break;
                case JointConstraint::Kind::question_ne:
                    if (qval[static_cast<int>(c.labels[0])] == c.lo.resolve(n)) return false;
                    break;
                case JointConstraint::Kind::question_range: {
                    int v = qval[static_cast<int>(c.labels[0])];
                    if (v < c.lo.resolve(n) || v > c.hi.resolve(n)) return false;
                    break;
                }
                case JointConstraint::Kind::stars_increasing: {
                    int prev = 0;
                    for (char l : c.labels)
                        for (int i = star_lo[static_cast<int>(l)];
                             i < star_hi[static_cast<int>(l)]; ++i) {
                            if (p[i] <= prev) return false;
                            prev = p[i];
                        }
                    break;
                }
                case JointConstraint::Kind::stars_nonempty: {
                    int total = 0;
                    for (char l : c.labels)
                        total += star_hi[static_cast<int>(l)] - star_lo[static_cast<int>(l)];
                    if (total == 0) return false;
                    break;
                }
            }
        }
        return true;
    }

    std::vector<GlobToken> tokens_;
    std::vector<JointConstraint> constraints_;
    std::vector<GlobWord> exclusions_;
    std::vector<int> literal_tokens_;
    std::vector<Gap> gaps_;
    int question_count_ = 0;
};

/// Raised by union_gf when require_disjoint is set and two words share a
/// permutation; usually a sign of a mistranscribed table row.
class DisjointnessViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void check_glob_length(int n) {
    if (n < 0 || n > kMaxGlobLength)
        throw std::out_of_range("glob enumeration supports 0 <= n <= " +
                                std::to_string(kMaxGlobLength));
}

/// Exactly the permutations of [n] matched by the word, in lexicographic
/// order; reference enumerate-then-filter semantics.
inline std::vector<Permutation> enumerate_matches(const GlobWord& w, int n) {
    check_glob_length(n);
    std::vector<Permutation> out;
    for_each_permutation(n, [&](const int* p, int len) {
        if (w.matches(p, len)) out.emplace_back(std::vector<int>(p, p + len));
    });
    return out;
}

/// Descent generating polynomial over the word's match set, optionally
/// restricted to permutations avoiding `filter`.
inline IntPolynomial descent_gf(const GlobWord& w, int n, Pattern filter = Pattern::none) {
    check_glob_length(n);
    std::vector<BigInt> coeffs(static_cast<std::size_t>(n == 0 ? 1 : n), BigInt(0));
    const int* letters = pattern_letters(filter);
    for_each_permutation(n, [&](const int* p, int len) {
        if (letters && contains_raw(p, len, letters, 3)) return;
        if (w.matches(p, len))
            coeffs[static_cast<std::size_t>(descent_count_raw(p, len))] += 1;
    });
    return IntPolynomial(std::move(coeffs));
}

/// Descent generating polynomial of the union of the words' match sets.
/// With require_disjoint, throws DisjointnessViolation if two words both
/// match some permutation.
inline IntPolynomial union_gf(const std::vector<GlobWord>& words, int n,
                              bool require_disjoint = false,
                              Pattern filter = Pattern::none) {
    check_glob_length(n);
    std::vector<BigInt> coeffs(static_cast<std::size_t>(n == 0 ? 1 : n), BigInt(0));
    const int* letters = pattern_letters(filter);
    for_each_permutation(n, [&](const int* p, int len) {
        if (letters && contains_raw(p, len, letters, 3)) return;
        int hits = 0;
        for (const auto& w : words) {
            if (!w.matches(p, len)) continue;
            ++hits;
            if (hits > 1 && require_disjoint) {
                Permutation pi{std::vector<int>(p, p + len)};
                throw DisjointnessViolation("glob words overlap at " + pi.to_string());
            }
            if (!require_disjoint) break;
        }
        if (hits > 0) coeffs[static_cast<std::size_t>(descent_count_raw(p, len))] += 1;
    });
    return IntPolynomial(std::move(coeffs));
}

}  // namespace stacksort::glob
