// Acceptance suite: one line per criterion, exit status = number of
// failures. Every tolerance below is pinned in code; the named property
// suites run with their defaults, which are exactly these settings.

#include "treelab/report.hpp"
#include "treelab/suites.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

int main() {
    using namespace treelab;

    struct Criterion {
        int id;
        const char* label;
        const char* suite;
        double time_limit_s;  // 0 = unlimited
    };
    // suite defaults pin the spec'd workloads:
    //  1: 1000 random trees <= 40 points, B1-B3 / A0-A5 / M1-M3 exhaustive
    //  2: every tree shape <= 12 points, all (u,v), four retraction checks,
    //     exact set equality
    //  3: 500 random median pretrees <= 15 points, all strict triples
    //  4: 10^4 random monotone pairs, zero witnesses; Rademacher control
    //     yields a=1/4, b=3/4
    //  5: 100 seeded runs, 256 monotone functions on 20-point trees,
    //     length >= 32 at oscillation <= 10^-6, limits monotone
    //  6: all maps between tree shapes with <= 5 and <= 6 points
    //  7: >= 20 entropy fixtures, N_n <= n*L_A for n <= 12, subcover oracle
    //     agreement at <= 18 members
    //  8: irreducible-cover bound with the tight 3 = 3 path example
    //  9: single 2^k cylinder cycles for k <= 12; omega-limit counts;
    //     no proximal odometer pair at depth 20
    // 10: witnesses for all cylinder pairs |w|,|w'| <= 4 within
    //     |w|+|w'|+4, reproducing b a^-1 and a b a^-1
    // 11: 500 convergent between-triples; fragmentation points at eps = 1/8
    const std::vector<Criterion> criteria = {
        {1, "axiom suite (1000 trees <= 40 pts)", "axioms", 30.0},
        {2, "retraction identities (exact)", "retraction", 0.0},
        {3, "shadow separation kernel", "shadow-separation", 0.0},
        {4, "monotone pairs not independent", "convfun", 0.0},
        {5, "selection principle at 1e-6", "helly", 0.0},
        {6, "B/C monotonicity equivalence", "monotone-equivalence", 0.0},
        {7, "entropy linear bound", "lemma2-bound", 300.0},
        {8, "irreducible cover bound", "lemma1", 0.0},
        {9, "odometer cylinder dynamics", "odometer-cycles", 0.0},
        {10, "extreme proximality witnesses", "ep-witness", 0.0},
        {11, "betweenness closedness + fragmentation", "closedness", 0.0},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Report rep;
        bool threw = false;
        std::string what;
        try {
            rep = run_suite(c.suite, SuiteOptions{});
        } catch (const std::exception& e) {
            threw = true;
            what = e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool pass = !threw && rep.all_pass() && (c.time_limit_s == 0.0 || secs < c.time_limit_s);
        if (!pass) ++failures;
        std::printf("[%2d] %-42s %s (%.1fs%s)\n", c.id, c.label, pass ? "PASS" : "FAIL", secs,
                    c.time_limit_s > 0 ? (" / limit " + std::to_string((int)c.time_limit_s) + "s").c_str()
                                       : "");
        if (threw) std::printf("     error: %s\n", what.c_str());
        if (!threw && !rep.all_pass())
            for (const auto& r : rep.records)
                if (!r.pass) std::printf("     failing check: %s  witness: %s\n", r.name.c_str(),
                                         r.witness.c_str());
        std::fflush(stdout);
    }
    std::printf("acceptance: %d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
