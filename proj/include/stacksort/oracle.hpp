#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stacksort/bigint.hpp"
#include "stacksort/classical.hpp"
#include "stacksort/permutation.hpp"
#include "stacksort/polynomial.hpp"

namespace stacksort::oracle {

inline constexpr const char* kCacheVersion = "1";

struct Options {
    int jobs = 1;
    std::string cache_dir;  // empty disables the file cache
    bool long_run = false;  // permits n in [12, 13]
};

/// Exhaustively computed ground truth for one (n, pattern) pair:
/// by_complexity[t] is the descent generating polynomial of the p-avoiding
/// permutations of [n] whose sorting complexity is exactly t.
struct OracleTable {
    int n = 0;
    Pattern pattern = Pattern::none;
    std::vector<IntPolynomial> by_complexity;
    BigInt total_count = 0;

    /// Prefix sum: descent polynomial of the t-stack-sortable members.
    IntPolynomial w_up_to(int t) const {
        IntPolynomial acc;
        int hi = std::min<int>(t, static_cast<int>(by_complexity.size()) - 1);
        for (int s = 0; s <= hi; ++s) acc += by_complexity[static_cast<std::size_t>(s)];
        return acc;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["version"] = kCacheVersion;
        j["n"] = n;
        j["pattern"] = stacksort::to_string(pattern);
        j["total_count"] = total_count.str();
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& p : by_complexity) rows.push_back(to_decimal_coeffs(p));
        j["by_complexity"] = rows;
        return j;
    }

    static OracleTable from_json(const nlohmann::ordered_json& j) {
        OracleTable t;
        if (j.at("version").get<std::string>() != kCacheVersion)
            throw std::runtime_error("oracle cache: version mismatch");
        t.n = j.at("n").get<int>();
        t.pattern = pattern_from_string(j.at("pattern").get<std::string>());
        t.total_count = BigInt(j.at("total_count").get<std::string>());
        for (const auto& row : j.at("by_complexity"))
            t.by_complexity.push_back(from_decimal_coeffs(row.get<std::vector<std::string>>()));
        return t;
    }
};

struct ConjectureCell {
    int n = 0;
    int t = 0;
    BigInt lhs;  // 213-avoiding t-stack-sortable
    BigInt rhs;  // 321-avoiding t-stack-sortable (c1) or the avoidance class (c2)
    bool match = false;
};

/// Outcome of the two conjecture checks; mismatches are content, not errors.
struct ConjectureReport {
    int max_n = 0;
    int max_t = 0;
    std::vector<ConjectureCell> c1_matches;  // 213 vs 321, all t <= n-1
    std::vector<ConjectureCell> c2_matches;  // 213 vs Av(132, 12...(t+2)), t <= max_t
    std::vector<std::vector<BigInt>> sequences;  // sequences[t-1][n-1], t = 1..max_t

    bool all_match() const {
        for (const auto& c : c1_matches)
            if (!c.match) return false;
        for (const auto& c : c2_matches)
            if (!c.match) return false;
        return true;
    }
};

namespace detail {

/// Runs fn(shard_index) for every shard, fanning out over `jobs` threads.
/// Shards are claimed through an atomic counter; results must be written to
/// per-shard slots so the outcome is independent of scheduling.
template <typename Fn>
void for_each_shard_parallel(std::size_t shard_count, int jobs, Fn&& fn) {
    if (jobs <= 1 || shard_count <= 1) {
        for (std::size_t i = 0; i < shard_count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= shard_count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int k = std::min<int>(jobs, static_cast<int>(shard_count));
    pool.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// counts[sel][t][d] for the seven pattern selectors in kAllPatterns order.
struct Tally {
    int n = 0;
    std::vector<std::uint64_t> counts;

    explicit Tally(int n_) : n(n_) {
        int dim = n_ == 0 ? 1 : n_;
        counts.assign(7u * static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0);
    }

    std::uint64_t& at(int sel, int t, int d) {
        int dim = n == 0 ? 1 : n;
        return counts[(static_cast<std::size_t>(sel) * static_cast<std::size_t>(dim) +
                       static_cast<std::size_t>(t)) *
                          static_cast<std::size_t>(dim) +
                      static_cast<std::size_t>(d)];
    }

    void add(const Tally& o) {
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
    }
};

inline void tally_one(const int* p, int n, int* buf_a, int* buf_b, Tally& tally) {
    int t = sorting_complexity_raw(p, n, buf_a, buf_b);
    int d = descent_count_raw(p, n);
    tally.at(0, t, d) += 1;
    for (int sel = 1; sel <= 6; ++sel) {
        if (!contains_raw(p, n, pattern_letters(static_cast<Pattern>(sel)), 3))
            tally.at(sel, t, d) += 1;
    }
}

}  // namespace detail

/// Brute-force enumeration engine with per-(n,pattern) memoization and an
/// optional persistent cache. All derived quantities are deterministic
/// regardless of the shard count.
class Oracle {
public:
    explicit Oracle(Options opts = {}) : opts_(std::move(opts)) {}

    const Options& options() const { return opts_; }
    int cache_hits() const { return cache_hits_; }

    /// Feasibility guard: n <= 11 normally, 12..13 behind the long-run flag.
    void check_length(int n) const {
        if (n < 0) throw std::out_of_range("oracle: negative n");
        int ceiling = opts_.long_run ? kMaxEnumerationLength : 11;
        if (n > ceiling)
            throw std::out_of_range("oracle: n=" + std::to_string(n) +
                                    " exceeds the ceiling of " + std::to_string(ceiling) +
                                    (opts_.long_run ? "" : " (pass the long-run flag for 12-13)"));
    }

    const OracleTable& table(int n, Pattern p) {
        check_length(n);
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, static_cast<int>(p));
        auto it = tables_.find(key);
        if (it != tables_.end()) return it->second;
        if (!opts_.cache_dir.empty() && load_cached(n)) {
            it = tables_.find(key);
            if (it != tables_.end()) return it->second;
        }
        build_all(n);
        if (!opts_.cache_dir.empty()) store_cached(n);
        return tables_.at(key);
    }

    /// Descent polynomial of p-avoiding t-stack-sortable permutations of [n].
    IntPolynomial w(int n, int t, Pattern p) {
        if (t < 0) throw std::domain_error("oracle: negative t");
        return table(n, p).w_up_to(t);
    }

    /// Descent polynomial of p-avoiding permutations with complexity exactly t.
    IntPolynomial e_exact(int n, int t, Pattern p) {
        const OracleTable& tab = table(n, p);
        if (t < 0 || t >= static_cast<int>(tab.by_complexity.size())) return {};
        return tab.by_complexity[static_cast<std::size_t>(t)];
    }

    BigInt count_w(int n, int t, Pattern p) { return w(n, t, p).eval(BigInt(1)); }

    /// Number of permutations of [n] avoiding every pattern in the set.
    /// Increasing patterns are tested through the LIS length; lis_below > 0
    /// additionally requires the LIS length to stay below that bound, which
    /// is how increasing patterns longer than a PatternSpec allows are posed.
    BigInt count_av(int n, const std::vector<PatternSpec>& patterns, int lis_below = 0) {
        check_length(n);
        std::vector<std::pair<const PatternSpec*, int>> tests;  // pattern, lis bound (or 0)
        for (const auto& ps : patterns) {
            bool increasing = ps.size() > 0;
            for (int i = 0; i < ps.size(); ++i) increasing &= ps.pattern()[i] == i + 1;
            tests.emplace_back(&ps, increasing ? ps.size() : 0);
        }
        auto shards = shard_prefixes(n);
        std::vector<std::uint64_t> partial(shards.size(), 0);
        detail::for_each_shard_parallel(shards.size(), opts_.jobs, [&](std::size_t i) {
            std::uint64_t local = 0;
            for_each_permutation_with_prefix(n, shards[i], [&](const int* p, int len) {
                if (lis_below > 0 && lis_length_raw(p, len) >= lis_below) return;
                for (const auto& [ps, lis_bound] : tests) {
                    if (lis_bound > 0) {
                        if (lis_length_raw(p, len) >= lis_bound) return;
                    } else if (contains_raw(p, len, ps->pattern().data(), ps->size())) {
                        return;
                    }
                }
                ++local;
            });
            partial[i] = local;
        });
        BigInt total = 0;
        for (std::uint64_t c : partial) total += c;
        return total;
    }

    /// Conjecture sweep: equinumerosity of 213- and 321-avoiding t-sortable
    /// permutations for every t <= n-1, and of both against
    /// Av(132, 12...(t+2)) for t = 1..max_t. Also assembles the count rows.
    ConjectureReport check_conjectures(int max_n, int max_t) {
        ConjectureReport rep;
        rep.max_n = max_n;
        rep.max_t = max_t;
        rep.sequences.assign(static_cast<std::size_t>(max_t), {});
        for (int n = 1; n <= max_n; ++n) {
            for (int t = 1; t <= n - 1; ++t) {
                ConjectureCell c;
                c.n = n;
                c.t = t;
                c.lhs = count_w(n, t, Pattern::p213);
                c.rhs = count_w(n, t, Pattern::p321);
                c.match = c.lhs == c.rhs;
                rep.c1_matches.push_back(std::move(c));
            }
            for (int t = 1; t <= max_t; ++t) {
                std::vector<PatternSpec> av;
                av.emplace_back(Permutation{1, 3, 2});
                ConjectureCell c;
                c.n = n;
                c.t = t;
                c.lhs = count_w(n, std::min(t, n - 1), Pattern::p213);
                c.rhs = count_av(n, av, /*lis_below=*/t + 2);
                c.match = c.lhs == c.rhs;
                rep.sequences[static_cast<std::size_t>(t - 1)].push_back(c.lhs);
                rep.c2_matches.push_back(std::move(c));
            }
        }
        return rep;
    }

private:
    std::vector<std::vector<int>> shard_prefixes(int n) const {
        if (opts_.jobs <= 1 || n < 2) return {{}};
        return enumeration_shards(n, opts_.jobs > n ? 2 : 1);
    }

    void build_all(int n) {
        auto shards = shard_prefixes(n);
        std::vector<detail::Tally> partial(shards.size(), detail::Tally(n));
        detail::for_each_shard_parallel(shards.size(), opts_.jobs, [&](std::size_t i) {
            int buf_a[kMaxEnumerationLength], buf_b[kMaxEnumerationLength];
            detail::Tally& local = partial[i];
            for_each_permutation_with_prefix(n, shards[i], [&](const int* p, int len) {
                detail::tally_one(p, len, buf_a, buf_b, local);
            });
        });
        detail::Tally total(n);
        for (const auto& t : partial) total.add(t);

        int dim = n == 0 ? 1 : n;
        for (int sel = 0; sel <= 6; ++sel) {
            OracleTable tab;
            tab.n = n;
            tab.pattern = static_cast<Pattern>(sel);
            tab.by_complexity.resize(static_cast<std::size_t>(dim));
            for (int t = 0; t < dim; ++t) {
                std::vector<BigInt> coeffs(static_cast<std::size_t>(dim));
                for (int d = 0; d < dim; ++d) {
                    coeffs[static_cast<std::size_t>(d)] = total.at(sel, t, d);
                    tab.total_count += total.at(sel, t, d);
                }
                tab.by_complexity[static_cast<std::size_t>(t)] =
                    IntPolynomial(std::move(coeffs));
            }
            tables_.insert_or_assign(std::make_pair(n, sel), std::move(tab));
        }
    }

    std::filesystem::path cache_file(int n, Pattern p) const {
        return std::filesystem::path(opts_.cache_dir) /
               ("oracle_n" + std::to_string(n) + "_p" + stacksort::to_string(p) + ".json");
    }

    // Returns true only if every selector for this n was read back cleanly.
    bool load_cached(int n) {
        std::map<std::pair<int, int>, OracleTable> loaded;
        for (int sel = 0; sel <= 6; ++sel) {
            std::ifstream in(cache_file(n, static_cast<Pattern>(sel)));
            if (!in) return false;
            try {
                auto j = nlohmann::ordered_json::parse(in);
                OracleTable tab = OracleTable::from_json(j);
                if (tab.n != n || tab.pattern != static_cast<Pattern>(sel)) return false;
                loaded.emplace(std::make_pair(n, sel), std::move(tab));
            } catch (const std::exception&) {
                return false;  // stale or corrupt cache entries force a rebuild
            }
        }
        for (auto& [key, tab] : loaded) tables_.insert_or_assign(key, std::move(tab));
        ++cache_hits_;
        return true;
    }

    void store_cached(int n) {
        std::error_code ec;
        std::filesystem::create_directories(opts_.cache_dir, ec);
        for (int sel = 0; sel <= 6; ++sel) {
            auto path = cache_file(n, static_cast<Pattern>(sel));
            auto tmp = path;
            tmp += ".tmp";
            {
                std::ofstream out(tmp);
                if (!out) return;
                out << tables_.at(std::make_pair(n, sel)).to_json().dump(1) << '\n';
            }
            std::filesystem::rename(tmp, path, ec);  // atomic publish
        }
    }

    Options opts_;
    std::mutex mu_;
    std::map<std::pair<int, int>, OracleTable> tables_;
    int cache_hits_ = 0;
};

}  // namespace stacksort::oracle
