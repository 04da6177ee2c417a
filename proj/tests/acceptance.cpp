// Acceptance suite: runs every advertised guarantee end to end and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.
//
// Criterion 1 (closed forms vs enumeration) and criterion 3 (published table
// rows) are expected to report a genuine divergence: the catalogued closed
// forms for the unrestricted t=n-4 / exactly-(n-3) layers disagree with the
// brute-force enumeration from n=9 on. The forms are kept exactly as
// catalogued; the suite reports the disagreement instead of hiding it. See
// the analysis notes printed below the affected criteria.

#include <algorithm>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "stacksort/classical.hpp"
#include "stacksort/closed_forms.hpp"
#include "stacksort/oracle.hpp"
#include "stacksort/verify.hpp"

using namespace stacksort;

namespace {

struct Criterion {
    std::string name;
    bool pass = true;
    std::vector<std::string> details;

    void fail(std::string detail) {
        pass = false;
        details.push_back(std::move(detail));
    }
};

void print(const Criterion& c) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "\n";
    for (const auto& d : c.details) std::cout << "       " << d << "\n";
}

IntPolynomial poly(std::initializer_list<long long> coeffs) {
    std::vector<BigInt> c;
    for (long long v : coeffs) c.emplace_back(v);
    return IntPolynomial(std::move(c));
}

}  // namespace

int main(int argc, char** argv) {
    int n_max = 10;
    int jobs = 4;
    std::string table_file = STACKSORT_TABLES_FILE;
    std::string cache_dir;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--n-max") && i + 1 < argc) n_max = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--jobs") && i + 1 < argc) jobs = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--tables") && i + 1 < argc) table_file = argv[++i];
        else if (!std::strcmp(argv[i], "--cache-dir") && i + 1 < argc) cache_dir = argv[++i];
        else {
            std::cerr << "usage: acceptance [--n-max N] [--jobs K] [--tables FILE]"
                         " [--cache-dir DIR]\n";
            return 2;
        }
    }

    oracle::Oracle engine({jobs, cache_dir, false});
    harness::RunConfig cfg;
    cfg.n_max = n_max;
    cfg.jobs = jobs;
    cfg.cache_dir = cache_dir;
    cfg.table_file = table_file;
    auto report = harness::run_verification(cfg, engine);

    std::vector<Criterion> criteria;

    // ----- 1: closed forms equal the enumeration oracle, 4 <= n <= n_max ----
    {
        Criterion c{"criterion 1: every catalogued W/E closed form equals the "
                    "enumeration oracle on its validity range (4 <= n <= " +
                    std::to_string(n_max) + ", exact)"};
        for (const auto& rec : report.runs) {
            if (rec.id.variant || rec.status != harness::Status::mismatch) continue;
            if (rec.id.family == forms::Family::Count) continue;
            c.fail(rec.id.to_string() + " (" + rec.source + ") at n=" +
                   std::to_string(rec.n) + ": closed " + rec.closed.to_string() +
                   " vs oracle " + rec.oracle.to_string());
        }
        criteria.push_back(std::move(c));
    }

    // ----- 2: point reproductions ------------------------------------------
    {
        Criterion c{"criterion 2: published point values (t=n-4 base cases, all "
                    "eighteen count sequences for n=4.." +
                    std::to_string(std::min(n_max, 10)) + ")"};
        if (forms::w_closed(4, forms::TSpec::relative(4), Pattern::none) != poly({1}))
            c.fail("W[t=n-4] at n=4 is not the bare identity polynomial");
        if (forms::w_closed(5, forms::TSpec::relative(4), Pattern::none) !=
            poly({1, 10, 20, 10, 1}))
            c.fail("W[t=n-4] at n=5 is not 1+10x+20x^2+10x^3+x^4");
        for (const auto& rec : report.runs) {
            if (rec.id.family != forms::Family::Count) continue;
            if (rec.status == harness::Status::mismatch)
                c.fail(rec.id.to_string() + " at n=" + std::to_string(rec.n) +
                       ": closed " + rec.closed_count->str() + ", oracle " +
                       rec.oracle_count->str() +
                       (rec.published ? ", published " + std::to_string(*rec.published)
                                      : ""));
        }
        criteria.push_back(std::move(c));
    }

    // ----- 3: glob table rows and unions ------------------------------------
    {
        Criterion c{"criterion 3: every transcribed table row matches its stated "
                    "descent polynomial; row unions match the layer forms (exact)"};
        for (const auto& rec : report.rows)
            if (rec.status == harness::Status::mismatch)
                c.fail("row " + rec.group + "/" + rec.case_id + " at n=" +
                       std::to_string(rec.n) + ": enumerated " + rec.actual.to_string() +
                       " vs stated " + rec.expected.to_string());
        for (const auto& rec : report.unions)
            if (rec.status == harness::Status::mismatch)
                c.fail("union " + rec.name + " at n=" + std::to_string(rec.n) +
                       (rec.disjoint ? "" : " (overlap at " + rec.overlap + ")") +
                       ": enumerated " + rec.actual.to_string() + " vs closed form " +
                       rec.expected.to_string());
        criteria.push_back(std::move(c));
    }

    // ----- 4: conjecture suite ----------------------------------------------
    {
        Criterion c{"criterion 4: 213-vs-321 equinumerosity for all t <= n-1 and "
                    "the restricted-class correspondence for t=1..5, n <= " +
                    std::to_string(n_max) + ", with published count rows"};
        auto rep = engine.check_conjectures(n_max, 5);
        for (const auto& cell : rep.c1_matches)
            if (!cell.match)
                c.fail("213/321 mismatch at n=" + std::to_string(cell.n) +
                       ", t=" + std::to_string(cell.t) + ": " + cell.lhs.str() + " vs " +
                       cell.rhs.str());
        for (const auto& cell : rep.c2_matches)
            if (!cell.match)
                c.fail("class correspondence mismatch at n=" + std::to_string(cell.n) +
                       ", t=" + std::to_string(cell.t) + ": " + cell.lhs.str() + " vs " +
                       cell.rhs.str());
        const auto& published = harness::published_sortable_counts();
        for (int t = 1; t <= 5; ++t) {
            const auto& row = rep.sequences[static_cast<std::size_t>(t - 1)];
            const auto& pub = published[static_cast<std::size_t>(t - 1)];
            for (std::size_t i = 0; i < row.size() && i < pub.size(); ++i)
                if (row[i] != pub[i])
                    c.fail("count row t=" + std::to_string(t) + " diverges at n=" +
                           std::to_string(i + 1) + ": computed " + row[i].str() +
                           ", published " + std::to_string(pub[i]));
        }
        criteria.push_back(std::move(c));
    }

    // ----- 5: property suites ------------------------------------------------
    {
        Criterion c{"criterion 5: dual-route, palindromicity, operator and "
                    "determinism properties"};
        for (int n = 1; n <= 20; ++n) {
            if (eulerian_stirling(n) != eulerian(n))
                c.fail("eulerian routes disagree at n=" + std::to_string(n));
            if (narayana_recurrence(n) != narayana(n))
                c.fail("narayana routes disagree at n=" + std::to_string(n));
            if (eval_int(eulerian(n), 1) != factorial(n))
                c.fail("eulerian total is not n! at n=" + std::to_string(n));
            if (eval_int(narayana(n), 1) != catalan(n))
                c.fail("narayana total is not catalan at n=" + std::to_string(n));
            if (!eulerian(n).is_palindromic(n - 1) || !narayana(n).is_palindromic(n - 1))
                c.fail("family not palindromic at n=" + std::to_string(n));
        }
        for (int n = 1; n <= 9; ++n)
            for (int t = 1; t <= n - 1; ++t)
                if (!engine.w(n, t, Pattern::none).is_palindromic(n - 1))
                    c.fail("oracle W not palindromic at n=" + std::to_string(n) +
                           ", t=" + std::to_string(t));
        for (int n = 0; n <= 9; ++n) {
            bool ok = true;
            for_each_permutation(n, [&](const int* p, int len) {
                Permutation pi{std::vector<int>(p, p + len)};
                if (stack_sort(pi) != stack_sort_recursive(pi)) ok = false;
                if (len >= 1 &&
                    is_t_stack_sortable(pi, 1) != avoids(pi, Pattern::p231))
                    ok = false;
            });
            if (!ok) c.fail("operator identities fail at n=" + std::to_string(n));
        }
        for (const auto& rec : report.telescopes)
            if (rec.status == harness::Status::mismatch)
                c.fail("telescoping fails for " +
                       std::string(to_string(rec.pattern)) + " at t=" +
                       rec.t.to_string() + ", n=" + std::to_string(rec.n));
        {
            oracle::Oracle seq({1, "", false}), par({4, "", false});
            for (Pattern p : kAllPatterns)
                if (seq.table(9, p).to_json().dump() != par.table(9, p).to_json().dump())
                    c.fail(std::string("sharded table differs for pattern ") +
                           to_string(p));
            harness::RunConfig small = cfg;
            small.n_max = 6;
            oracle::Oracle e1({small.jobs, "", false}), e2({small.jobs, "", false});
            if (harness::render_json(harness::run_verification(small, e1)) !=
                harness::render_json(harness::run_verification(small, e2)))
                c.fail("verification report is not byte-stable across runs");
        }
        criteria.push_back(std::move(c));
    }

    // ----- 6: discrepancy arbitration is documented --------------------------
    {
        Criterion c{"criterion 6: the report names the arbitrated 123-descent "
                    "reading and flags the decrement-shorthand table cells"};
        const auto& arb = report.arbitration;
        if (!arb.default_all_match)
            c.fail("the default 123-descent reading does not match the oracle");
        if (arb.alternative_all_match)
            c.fail("the alternative reading also matches; arbitration inconclusive");
        if (arb.alternative_first_divergence != 4)
            c.fail("expected the alternative reading to diverge first at n=4, got n=" +
                   std::to_string(arb.alternative_first_divergence));
        if (arb.shorthand_notes.size() != 2)
            c.fail("expected exactly two decrement-shorthand cell notes");
        for (const auto& note : arb.shorthand_notes) c.details.push_back(note);
        criteria.push_back(std::move(c));
    }

    int failed = 0;
    for (const auto& c : criteria) {
        print(c);
        failed += !c.pass;
    }

    bool known_divergence = false;
    for (const auto& rec : report.runs)
        if (!rec.id.variant && rec.status == harness::Status::mismatch &&
            rec.id.pattern == Pattern::none && rec.id.family != forms::Family::Count &&
            rec.n >= 9)
            known_divergence = true;
    if (known_divergence) {
        std::cout
            << "\nanalysis of the failing comparisons:\n"
               "  The catalogued closed forms for the unrestricted t=n-4 sortable\n"
               "  class and the exactly-(n-3) layer (and the two table rows they\n"
               "  sum, n3_cases/5(d) and 5(h)) disagree with the brute-force\n"
               "  enumeration from n=9 on. The divergence is confirmed by an\n"
               "  independent implementation, and the enumerated layer is\n"
               "  palindromic while the catalogued polynomial is not, which rules\n"
               "  the catalogued form out on symmetry grounds. Totals at x=1 are\n"
               "  unaffected. The closed forms are kept exactly as catalogued and\n"
               "  the disagreement is reported rather than patched.\n";
    }

    std::cout << "\n" << (failed == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILED: ")
              << (failed == 0 ? std::string() : std::to_string(failed)) << "\n";
    return failed == 0 ? 0 : 1;
}
