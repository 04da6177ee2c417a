#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stacksort {

inline constexpr int kMaxLength = 20;             // single-permutation operations
inline constexpr int kMaxEnumerationLength = 13;  // exhaustive enumeration ceiling

// ---------------------------------------------------------------------------
// Raw kernels. These run on plain int buffers so the exhaustive enumeration
// loops never allocate; the Permutation wrappers below share them.
// ---------------------------------------------------------------------------

inline bool is_identity_raw(const int* p, int n) {
    for (int i = 0; i < n; ++i)
        if (p[i] != i + 1) return false;
    return true;
}

/// One pass of the permutation through a last-in-first-out stack: before each
/// push, every stack element smaller than the incoming one is popped to the
/// output; the stack is flushed at the end.
inline void stack_sort_pass_raw(const int* in, int n, int* out) {
    int stack[kMaxLength];
    int top = 0, m = 0;
    for (int i = 0; i < n; ++i) {
        int v = in[i];
        while (top > 0 && stack[top - 1] < v) out[m++] = stack[--top];
        stack[top++] = v;
    }
    while (top > 0) out[m++] = stack[--top];
}

/// Least t with S^t(p) = id. Every permutation of [n] needs at most n-1 passes.
inline int sorting_complexity_raw(const int* p, int n, int* buf_a, int* buf_b) {
    std::copy(p, p + n, buf_a);
    int t = 0;
    while (!is_identity_raw(buf_a, n)) {
        stack_sort_pass_raw(buf_a, n, buf_b);
        std::swap(buf_a, buf_b);
        ++t;
    }
    return t;
}

inline int descent_count_raw(const int* p, int n) {
    int d = 0;
    for (int i = 0; i + 1 < n; ++i) d += p[i] > p[i + 1];
    return d;
}

/// Classical containment: some subsequence of p is order-isomorphic to pat.
/// Direct subsequence scan with early exit; fine at these lengths.
inline bool contains_raw(const int* p, int n, const int* pat, int k) {
    if (k == 0) return true;
    if (k > n) return false;
    int chosen[8];  // positions in p of the pattern letters matched so far
    int j = 0;      // next pattern letter to place
    int i = 0;      // scan position
    while (true) {
        if (i == n) {
            if (j == 0) return false;
            i = chosen[--j] + 1;  // backtrack
            continue;
        }
        bool ok = true;
        for (int m = 0; m < j && ok; ++m) {
            bool perm_less = p[chosen[m]] < p[i];
            bool pat_less = pat[m] < pat[j];
            ok = perm_less == pat_less;
        }
        if (ok) {
            chosen[j++] = i;
            if (j == k) return true;
        }
        ++i;
    }
}

/// Longest increasing subsequence length (patience method); containment of
/// the increasing pattern 12...m is equivalent to lis >= m.
inline int lis_length_raw(const int* p, int n) {
    int tails[kMaxLength];
    int len = 0;
    for (int i = 0; i < n; ++i) {
        int* pos = std::lower_bound(tails, tails + len, p[i]);
        *pos = p[i];
        if (pos == tails + len) ++len;
    }
    return len;
}

// ---------------------------------------------------------------------------
// Permutation value type
// ---------------------------------------------------------------------------

/// A permutation of [n] in one-line notation, values 1..n. The empty
/// permutation is valid. Lengths up to kMaxLength are supported.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
        validate();
    }

    Permutation(std::initializer_list<int> entries)
        : Permutation(std::vector<int>(entries)) {}

    static Permutation identity(int n) {
        if (n < 0 || n > kMaxLength)
            throw std::out_of_range("Permutation: length out of range");
        std::vector<int> e(static_cast<std::size_t>(n));
        std::iota(e.begin(), e.end(), 1);
        Permutation p;
        p.entries_ = std::move(e);  // already valid
        return p;
    }

    /// Accepts the space-free digit form ("3142") and the comma form
    /// ("10,3,1,..."); the empty string is the empty permutation.
    static Permutation parse(const std::string& text) {
        std::vector<int> e;
        if (text.find(',') != std::string::npos) {
            std::istringstream is(text);
            std::string item;
            while (std::getline(is, item, ','))
                e.push_back(std::stoi(item));
        } else {
            for (char c : text) {
                if (c < '1' || c > '9')
                    throw std::invalid_argument("Permutation::parse: bad character");
                e.push_back(c - '0');
            }
        }
        return Permutation(std::move(e));
    }

    int size() const { return static_cast<int>(entries_.size()); }
    bool empty() const { return entries_.empty(); }

    /// Value at 0-based position i.
    int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }

    const std::vector<int>& entries() const { return entries_; }
    const int* data() const { return entries_.data(); }

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

    bool is_identity() const { return is_identity_raw(entries_.data(), size()); }

    /// Digit string for n <= 9, comma-separated for n >= 10.
    std::string to_string() const {
        std::ostringstream os;
        if (size() <= 9) {
            for (int v : entries_) os << v;
        } else {
            for (std::size_t i = 0; i < entries_.size(); ++i) {
                if (i > 0) os << ',';
                os << entries_[i];
            }
        }
        return os.str();
    }

private:
    void validate() const {
        int n = size();
        if (n > kMaxLength)
            throw std::out_of_range("Permutation: length out of range");
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (int v : entries_) {
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
                throw std::invalid_argument("Permutation: not a bijection of [n]");
            seen[static_cast<std::size_t>(v - 1)] = true;
        }
    }

    std::vector<int> entries_;
};

/// A classical pattern, itself a permutation; lengths up to 6 are supported.
class PatternSpec {
public:
    explicit PatternSpec(Permutation pattern) : pattern_(std::move(pattern)) {
        if (pattern_.size() > 6)
            throw std::invalid_argument("PatternSpec: pattern longer than 6");
    }

    PatternSpec(std::initializer_list<int> entries) : PatternSpec(Permutation(entries)) {}

    const Permutation& pattern() const { return pattern_; }
    int size() const { return pattern_.size(); }

private:
    Permutation pattern_;
};

// ---------------------------------------------------------------------------
// The stack-sorting operator and statistics
// ---------------------------------------------------------------------------

namespace detail {
// S(w) = S(left of max) S(right of max) max, with S(empty) = empty.
inline void stack_sort_recursive(const std::vector<int>& in, int lo, int hi,
                                 std::vector<int>& out) {
    if (lo >= hi) return;
    int imax = lo;
    for (int i = lo + 1; i < hi; ++i)
        if (in[static_cast<std::size_t>(i)] > in[static_cast<std::size_t>(imax)]) imax = i;
    stack_sort_recursive(in, lo, imax, out);
    stack_sort_recursive(in, imax + 1, hi, out);
    out.push_back(in[static_cast<std::size_t>(imax)]);
}
}  // namespace detail

/// The stack-sorting operator S by its recursive definition.
inline Permutation stack_sort_recursive(const Permutation& pi) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(pi.size()));
    detail::stack_sort_recursive(pi.entries(), 0, pi.size(), out);
    return Permutation(std::move(out));
}

/// The stack-sorting operator S via the one-pass stack simulation. Equal to
/// the recursive definition; the test suite asserts the equality exhaustively.
inline Permutation stack_sort(const Permutation& pi) {
    int n = pi.size();
    std::vector<int> out(static_cast<std::size_t>(n));
    stack_sort_pass_raw(pi.data(), n, out.data());
    return Permutation(std::move(out));
}

/// t-fold composition S^t; t = 0 returns pi unchanged.
inline Permutation stack_sort_k(Permutation pi, int t) {
    if (t < 0) throw std::domain_error("stack_sort_k: negative t");
    for (int i = 0; i < t; ++i) pi = stack_sort(pi);
    return pi;
}

inline bool is_t_stack_sortable(const Permutation& pi, int t) {
    return stack_sort_k(pi, t).is_identity();
}

/// Least t with S^t(pi) = id; at most n-1, and 0 for the empty permutation.
inline int sorting_complexity(const Permutation& pi) {
    int n = pi.size();
    std::vector<int> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    return sorting_complexity_raw(pi.data(), n, a.data(), b.data());
}

inline int descent_count(const Permutation& pi) {
    return descent_count_raw(pi.data(), pi.size());
}

inline int ascent_count(const Permutation& pi) {
    int n = pi.size();
    return n == 0 ? 0 : n - 1 - descent_count(pi);
}

inline bool contains(const Permutation& pi, const PatternSpec& p) {
    return contains_raw(pi.data(), pi.size(), p.pattern().data(), p.size());
}

inline bool avoids(const Permutation& pi, const PatternSpec& p) { return !contains(pi, p); }

inline Permutation reversed(const Permutation& pi) {
    std::vector<int> e(pi.entries().rbegin(), pi.entries().rend());
    return Permutation(std::move(e));
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of S_n with deterministic sharding
// ---------------------------------------------------------------------------

inline void check_enumeration_length(int n) {
    if (n < 0 || n > kMaxEnumerationLength)
        throw std::out_of_range("enumeration supports 0 <= n <= " +
                                std::to_string(kMaxEnumerationLength));
}

/// Visits all n! permutations in lexicographic order as (const int*, n).
template <typename F>
void for_each_permutation(int n, F&& f) {
    check_enumeration_length(n);
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    do {
        f(static_cast<const int*>(v.data()), n);
    } while (std::next_permutation(v.begin(), v.end()));
}

/// Visits the permutations whose first entries equal `prefix`, in
/// lexicographic order within the shard.
template <typename F>
void for_each_permutation_with_prefix(int n, const std::vector<int>& prefix, F&& f) {
    check_enumeration_length(n);
    if (static_cast<int>(prefix.size()) > n)
        throw std::invalid_argument("shard prefix longer than n");
    std::vector<int> v(prefix);
    for (int x = 1; x <= n; ++x)
        if (std::find(prefix.begin(), prefix.end(), x) == prefix.end()) v.push_back(x);
    auto tail = v.begin() + static_cast<std::ptrdiff_t>(prefix.size());
    std::sort(tail, v.end());
    do {
        f(static_cast<const int*>(v.data()), n);
    } while (std::next_permutation(tail, v.end()));
}

/// Shard prefixes in lexicographic order: depth 1 gives n shards (fixed first
/// entry), depth 2 gives n(n-1) shards (fixed first two entries).
inline std::vector<std::vector<int>> enumeration_shards(int n, int depth) {
    check_enumeration_length(n);
    std::vector<std::vector<int>> shards;
    if (depth <= 0 || n == 0) {
        shards.push_back({});
        return shards;
    }
    if (depth == 1 || n == 1) {
        for (int a = 1; a <= n; ++a) shards.push_back({a});
        return shards;
    }
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            if (b != a) shards.push_back({a, b});
    return shards;
}

// ---------------------------------------------------------------------------
// Length-3 pattern selectors
// ---------------------------------------------------------------------------

/// Selector for the six classical patterns of length 3; `none` selects the
/// unrestricted case.
enum class Pattern { none, p123, p132, p213, p231, p312, p321 };

inline constexpr Pattern kAllPatterns[] = {Pattern::none, Pattern::p123, Pattern::p132,
                                           Pattern::p213, Pattern::p231, Pattern::p312,
                                           Pattern::p321};

inline const char* to_string(Pattern p) {
    switch (p) {
        case Pattern::none: return "none";
        case Pattern::p123: return "123";
        case Pattern::p132: return "132";
        case Pattern::p213: return "213";
        case Pattern::p231: return "231";
        case Pattern::p312: return "312";
        case Pattern::p321: return "321";
    }
    return "?";
}

inline Pattern pattern_from_string(const std::string& s) {
    for (Pattern p : kAllPatterns)
        if (s == to_string(p)) return p;
    throw std::invalid_argument("unknown pattern selector: " + s);
}

/// Letters of the pattern, or nullptr for Pattern::none.
inline const int* pattern_letters(Pattern p) {
    static constexpr int tbl[7][3] = {{0, 0, 0}, {1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                                      {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    return p == Pattern::none ? nullptr : tbl[static_cast<int>(p)];
}

inline bool avoids(const Permutation& pi, Pattern p) {
    if (p == Pattern::none) return true;
    return !contains_raw(pi.data(), pi.size(), pattern_letters(p), 3);
}

/// Stream of all permutations of [n] in lexicographic order.
class LexEnumerator {
public:
    explicit LexEnumerator(int n) : n_(n) {
        check_enumeration_length(n);
        current_.resize(static_cast<std::size_t>(n));
        std::iota(current_.begin(), current_.end(), 1);
    }

    std::optional<Permutation> next() {
        if (done_) return std::nullopt;
        Permutation out{std::vector<int>(current_)};
        done_ = !std::next_permutation(current_.begin(), current_.end());
        return out;
    }

private:
    int n_;
    std::vector<int> current_;
    bool done_ = false;
};

}  // namespace stacksort
