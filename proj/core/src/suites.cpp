#include "treelab/suites.hpp"

#include "treelab/betweenness.hpp"
#include "treelab/cover.hpp"
#include "treelab/random.hpp"
#include "treelab/shadow.hpp"
#include "treelab/tameness.hpp"
#include "treelab/ztree.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <memory>
#include <sstream>
#include <thread>

namespace treelab {

namespace {

long long dflt(long long v, long long d) { return v > 0 ? v : d; }
int dflt(int v, int d) { return v > 0 ? v : d; }
Rat dflt(const Rat& v, const Rat& d) { return v > Rat(0) ? v : d; }

// Runs fn(i) over [0, count) on a few threads; failure strings are sorted
// so reports do not depend on scheduling.
template <typename Fn>
std::vector<std::string> scan_failures(long long count, Fn fn) {
    unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::future<std::vector<std::string>>> futs;
    for (unsigned w = 0; w < workers; ++w)
        futs.push_back(std::async(std::launch::async, [&fn, w, workers, count] {
            std::vector<std::string> local;
            for (long long i = w; i < count; i += workers)
                if (auto f = fn(i)) local.push_back(*f);
            return local;
        }));
    std::vector<std::string> all;
    for (auto& f : futs) {
        auto part = f.get();
        all.insert(all.end(), part.begin(), part.end());
    }
    std::sort(all.begin(), all.end());
    return all;
}

void add_scan_record(Report& rep, const std::string& name, const std::vector<std::string>& failures,
                     const std::string& detail) {
    std::string witness;
    if (!failures.empty()) {
        witness = failures.front();
        if (failures.size() > 1) witness += " (+" + std::to_string(failures.size() - 1) + " more)";
    }
    rep.add(name, failures.empty(), witness, detail);
}

int tree_size(Rng& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// ---------------------------------------------------------------- axioms

Report axioms_suite(const SuiteOptions& opt) {
    Report rep;
    const long long trials = dflt(opt.trials, 1000LL);
    const int cap = dflt(opt.max_points, 40);

    auto tree_at = [&](long long i) {
        Rng rng(mix_seed(opt.seed, static_cast<std::uint64_t>(i)));
        int n = tree_size(rng, 2, cap);
        return random_tree(n, rng);
    };

    auto ax_failures = scan_failures(trials, [&](long long i) -> std::optional<std::string> {
        auto T = tree_at(i);
        auto r = check_axioms(T);
        if (r.all_pass()) return std::nullopt;
        for (const auto& c : r.checks)
            if (!c.pass) return "tree " + std::to_string(i) + " fails " + c.axiom;
        return "tree " + std::to_string(i);
    });
    add_scan_record(rep, "pretree-axioms-B1-B3-A0-A5", ax_failures,
                    "trees=" + std::to_string(trials) + " points<=" + std::to_string(cap));

    auto med_failures = scan_failures(trials, [&](long long i) -> std::optional<std::string> {
        auto T = tree_at(i);
        if (!is_median_pretree(T)) return "tree " + std::to_string(i) + " is not median";
        auto r = check_median_algebra(T);
        if (r.all_pass()) return std::nullopt;
        for (const auto& c : r.checks)
            if (!c.pass) return "tree " + std::to_string(i) + " fails " + c.axiom;
        return "tree " + std::to_string(i);
    });
    add_scan_record(rep, "median-algebra-M1-M3", med_failures,
                    "trees=" + std::to_string(trials) + " exhaustive quintuples");
    return rep;
}

// ------------------------------------------------------------- retraction

Report retraction_suite(const SuiteOptions& opt) {
    Report rep;
    const int cap = dflt(opt.max_points, 12);

    std::vector<BetweennessStructure> fixtures;
    for (int n = 2; n <= cap; ++n)
        for (const auto& edges : all_tree_shapes(n)) fixtures.push_back(BetweennessStructure::from_tree(edges));
    long long tree_count = static_cast<long long>(fixtures.size());
    for (int n = 2; n <= std::min(cap, 8); ++n) {
        std::vector<std::string> pts;
        for (int i = 0; i < n; ++i) pts.push_back(std::to_string(i));
        fixtures.push_back(BetweennessStructure::from_order(pts));
    }

    long long pairs = 0;
    for (const auto& T : fixtures) pairs += static_cast<long long>(T.size()) * (T.size() - 1);

    auto failures =
        scan_failures(static_cast<long long>(fixtures.size()), [&](long long i) -> std::optional<std::string> {
            const auto& T = fixtures[static_cast<std::size_t>(i)];
            auto topo = generate_topology(T);
            for (const auto& u : T.point_names())
                for (const auto& v : T.point_names()) {
                    if (u == v) continue;
                    auto r = retraction_report(T, u, v, &topo);
                    if (!r.all_pass())
                        return "fixture " + std::to_string(i) + " pair (" + u + "," + v +
                               "): " + r.witness;
                }
            return std::nullopt;
        });
    add_scan_record(rep, "retraction-identities-exhaustive", failures,
                    "tree-shapes=" + std::to_string(tree_count) + " orders=" +
                        std::to_string(fixtures.size() - static_cast<std::size_t>(tree_count)) +
                        " pairs=" + std::to_string(pairs));
    return rep;
}

// ------------------------------------------------------ shadow separation

Report shadow_separation_suite(const SuiteOptions& opt) {
    Report rep;
    const long long trials = dflt(opt.trials, 500LL);
    const int cap = dflt(opt.max_points, 15);
    auto failures = scan_failures(trials, [&](long long i) -> std::optional<std::string> {
        Rng rng(mix_seed(opt.seed, static_cast<std::uint64_t>(i)));
        auto T = random_tree(tree_size(rng, 2, cap), rng);
        auto r = shadow_separation(T);
        if (r.pass) return std::nullopt;
        std::string w = "tree " + std::to_string(i);
        if (!r.violations.empty())
            w += " triple (" + r.violations[0][0] + "," + r.violations[0][1] + "," +
                 r.violations[0][2] + ")";
        return w;
    });
    add_scan_record(rep, "shadow-separation-strict-triples", failures,
                    "trees=" + std::to_string(trials) + " points<=" + std::to_string(cap));
    return rep;
}

// ---------------------------------------------------------------- convfun

Report convfun_suite(const SuiteOptions& opt) {
    Report rep;
    const long long trials = dflt(opt.trials, 10000LL);
    const int cap = dflt(opt.max_points, 20);

    auto failures = scan_failures(trials, [&](long long i) -> std::optional<std::string> {
        Rng rng(mix_seed(opt.seed, static_cast<std::uint64_t>(i)));
        auto carrier = std::make_shared<BetweennessStructure>(random_tree(tree_size(rng, 2, cap), rng));
        auto f = random_monotone_function(*carrier, rng);
        auto g = random_monotone_function(*carrier, rng);
        auto F = FunctionFamily::make(carrier, {f, g}, Rat(0), Rat(1));
        if (is_independent(F)) return "trial " + std::to_string(i) + " produced an independent pair";
        return std::nullopt;
    });
    add_scan_record(rep, "random-monotone-pairs-not-independent", failures,
                    "pairs=" + std::to_string(trials));

    // positive control with the pinned thresholds
    auto carrier = std::make_shared<BetweennessStructure>(BetweennessStructure::path(4));
    auto F = FunctionFamily::make(
        carrier, {{Rat(0), Rat(0), Rat(1), Rat(1)}, {Rat(0), Rat(1), Rat(0), Rat(1)}}, Rat(0), Rat(1));
    auto w = is_independent(F);
    bool control = w && w->a == Rat(1, 4) && w->b == Rat(3, 4);
    rep.add("rademacher-control-witness", control,
            control ? "" : (w ? "a=" + to_string(w->a) + " b=" + to_string(w->b) : "no witness"),
            "expected a=1/4 b=3/4");
    return rep;
}

// ------------------------------------------------------------------ helly

Report helly_suite(const SuiteOptions& opt) {
    Report rep;
    const long long runs = dflt(opt.trials, 100LL);
    const Rat eps = dflt(opt.epsilon, Rat(1, 1000000));
    const int target = dflt(opt.target, 32);

    auto failures = scan_failures(runs, [&](long long r) -> std::optional<std::string> {
        Rng rng(mix_seed(opt.seed, static_cast<std::uint64_t>(r)));
        auto carrier = std::make_shared<BetweennessStructure>(random_tree(20, rng));
        auto F = random_monotone_sequence(carrier, 3, 256, rng);
        auto out = helly_select(F, eps, target);
        auto* sel = std::get_if<SelectionResult>(&out);
        if (!sel) return "run " + std::to_string(r) + ": selection fell below the target";
        if (static_cast<int>(sel->indices.size()) < target)
            return "run " + std::to_string(r) + ": too few indices";
        if (!std::is_sorted(sel->indices.begin(), sel->indices.end()))
            return "run " + std::to_string(r) + ": indices not increasing";
        if (sel->oscillation > eps) return "run " + std::to_string(r) + ": oscillation too large";
        if (!monotone_into_rationals(*carrier, sel->limit))
            return "run " + std::to_string(r) + ": limit not monotone";
        return std::nullopt;
    });
    add_scan_record(rep, "selection-with-monotone-limit", failures,
                    "runs=" + std::to_string(runs) + " len=256 target=" + std::to_string(target) +
                        " eps=" + to_string(eps));
    return rep;
}

// --------------------------------------------------- monotone equivalence

Report monotone_equivalence_suite(const SuiteOptions& opt) {
    Report rep;
    const int src_cap = dflt(opt.max_points, 5);
    const int tgt_cap = src_cap + 1;

    std::vector<BetweennessStructure> sources, targets;
    for (int n = 1; n <= src_cap; ++n)
        for (const auto& e : all_tree_shapes(n))
            sources.push_back(n == 1 ? BetweennessStructure::path(1) : BetweennessStructure::from_tree(e));
    for (int n = 1; n <= tgt_cap; ++n)
        for (const auto& e : all_tree_shapes(n))
            targets.push_back(n == 1 ? BetweennessStructure::path(1) : BetweennessStructure::from_tree(e));

    long long total_maps = 0;
    std::vector<std::string> failures;
    for (std::size_t i = 0; i < sources.size(); ++i)
        for (std::size_t j = 0; j < targets.size(); ++j) {
            auto r = monotone_equivalence(sources[i], targets[j]);
            total_maps += r.total_maps;
            if (!r.agree())
                failures.push_back("pair (" + std::to_string(i) + "," + std::to_string(j) + "): " +
                                   std::to_string(r.disagreements) + " disagreements");
        }
    add_scan_record(rep, "B-monotone-iff-C-monotone", failures,
                    "shape-pairs=" + std::to_string(sources.size() * targets.size()) +
                        " maps=" + std::to_string(total_maps));
    return rep;
}

// ------------------------------------------------------- entropy fixtures

std::vector<std::pair<std::string, std::string>> chain_edges(int k) {
    std::vector<std::pair<std::string, std::string>> e;
    for (int i = 0; i + 1 < k; ++i) e.emplace_back("p" + std::to_string(i), "p" + std::to_string(i + 1));
    return e;
}

CellCover star_cover(const CellComplex& X) {
    CellCover A;
    for (int c = 0; c < X.cells(); ++c) {
        if (!X.is_vertex_cell(c)) continue;
        CellSet s = X.empty_set();
        s.set(static_cast<std::size_t>(c));
        for (int e : X.incident_edges(c)) s.set(static_cast<std::size_t>(e));
        A.members.push_back(s);
    }
    return A;
}

std::vector<std::string> path_cell_order(int k, int m) {
    std::vector<std::string> cells;
    for (int i = 0; i + 1 < k; ++i) {
        std::string u = "p" + std::to_string(i), v = "p" + std::to_string(i + 1);
        cells.push_back(u);
        for (int s = 1; s <= m; ++s) {
            cells.push_back(u + "-" + v + ".e" + std::to_string(s));
            if (s < m) cells.push_back(u + "-" + v + ".v" + std::to_string(s));
        }
    }
    cells.push_back("p" + std::to_string(k - 1));
    return cells;
}

CellCover window_cover(const CellComplex& X, int k, int m) {
    auto order = path_cell_order(k, m);
    CellCover A;
    A.members.push_back(X.make_set({order[0], order[1]}));
    std::size_t i = 1;
    while (i + 2 < order.size()) {
        A.members.push_back(X.make_set({order[i], order[i + 1], order[i + 2]}));
        i += 2;
    }
    A.members.push_back(X.make_set({order[order.size() - 2], order.back()}));
    return A;
}

long long oracle_min_subcover(const CellComplex& X, const CellCover& A) {
    const int k = static_cast<int>(A.members.size());
    long long best = k;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        if (__builtin_popcount(mask) >= best) continue;
        CellSet u = X.empty_set();
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) u |= A.members[static_cast<std::size_t>(i)];
        if (u.all()) best = __builtin_popcount(mask);
    }
    return best;
}

Report lemma2_suite(const SuiteOptions& opt) {
    Report rep;
    const int nmax = dflt(opt.nmax, 12);

    struct Fixture {
        std::string name;
        CellComplex X;
        CellCover A;
        AutoSeq S;
    };
    std::vector<Fixture> fixtures;
    auto add = [&](std::string name, CellComplex X, CellCover A, AutoSeq S) {
        validate_cover(X, A);
        fixtures.push_back({std::move(name), std::move(X), std::move(A), std::move(S)});
    };

    for (int k : {3, 4, 5})
        for (int m : {1, 2}) {
            auto X = CellComplex::build(chain_edges(k), m);
            std::string tag = "path" + std::to_string(k) + "m" + std::to_string(m);
            add(tag + "-stars-reflect", X, star_cover(X), AutoSeq::of_powers(reflection_automorphism(X)));
            add(tag + "-windows-reflect", X, window_cover(X, k, m),
                AutoSeq::of_powers(reflection_automorphism(X)));
            add(tag + "-stars-identity", X, star_cover(X), AutoSeq::of_powers(identity_automorphism(X)));
        }
    for (int m : {1, 2}) {
        auto X = CellComplex::build({{"c", "x"}, {"c", "y"}, {"c", "z"}}, m);
        add("star3m" + std::to_string(m) + "-swap", X, star_cover(X),
            AutoSeq::of_powers(swap_automorphism(X, "x", "y")));
    }
    for (int m : {1, 2}) {
        auto X = CellComplex::build(
            {{"r", "l"}, {"r", "s"}, {"l", "l0"}, {"l", "l1"}, {"s", "s0"}, {"s", "s1"}}, m);
        add("bintree-m" + std::to_string(m) + "-branch-swap", X, star_cover(X),
            AutoSeq::of_powers(swap_automorphism(X, "l", "s")));
        // alternate swaps at two levels
        add("bintree-m" + std::to_string(m) + "-mixed", X, star_cover(X),
            AutoSeq::of_list([&] {
                std::vector<Automorphism> seq;
                auto outer = swap_automorphism(X, "l", "s");
                auto inner = swap_automorphism(X, "l0", "l1");
                for (int i = 0; i < nmax; ++i) seq.push_back(i % 2 == 0 ? outer : inner);
                return seq;
            }()));
    }

    std::vector<std::string> bound_failures, oracle_failures, trend_failures;
    long long oracle_checks = 0;
    for (const auto& fx : fixtures) {
        auto rows = sequence_entropy(fx.X, fx.A, fx.S, nmax);
        for (const auto& row : rows) {
            if (row.bound_violated)
                bound_failures.push_back(fx.name + " n=" + std::to_string(row.n));
        }
        const auto& last = rows.back();
        if (last.subcover_size > last.bound) trend_failures.push_back(fx.name);

        // re-derive the joins to compare against the all-subsets oracle
        CellCover joined;
        for (int n = 1; n <= nmax; ++n) {
            auto pulled = pull_back(fx.S.at(fx.X, n), fx.A);
            joined = (n == 1) ? pulled : join_refinement(joined, pulled);
            if (joined.members.size() <= 18) {
                ++oracle_checks;
                if (minimum_subcover(fx.X, joined).cardinality() != oracle_min_subcover(fx.X, joined))
                    oracle_failures.push_back(fx.name + " n=" + std::to_string(n));
            }
        }
    }
    add_scan_record(rep, "linear-bound-N_n<=n*L", bound_failures,
                    "fixtures=" + std::to_string(fixtures.size()) + " nmax=" + std::to_string(nmax));
    add_scan_record(rep, "trend-h(nmax)<=log(nmax*L)/nmax", trend_failures,
                    "fixtures=" + std::to_string(fixtures.size()));
    add_scan_record(rep, "minimum-subcover-oracle-agreement", oracle_failures,
                    "instances=" + std::to_string(oracle_checks));
    rep.add("fixture-count>=20", fixtures.size() >= 20, "", std::to_string(fixtures.size()));
    return rep;
}

// ----------------------------------------------------------------- lemma1

Report lemma1_suite(const SuiteOptions& opt) {
    Report rep;
    // the tight path instance: three members, three boundary points
    auto X = CellComplex::build({{"v0", "v1"}, {"v1", "v2"}}, 1);
    CellCover B;
    B.members.push_back(X.make_set({"v0", "v0-v1.e1"}));
    B.members.push_back(X.make_set({"v0-v1.e1", "v1", "v1-v2.e1"}));
    B.members.push_back(X.make_set({"v1-v2.e1", "v2"}));
    auto tight = lemma1_check(X, B);
    rep.add("tight-path-example-3<=3", tight.cover_size == 3 && tight.boundary_points == 3,
            tight.cover_size == 3 && tight.boundary_points == 3
                ? ""
                : std::to_string(tight.cover_size) + " vs " + std::to_string(tight.boundary_points),
            "irreducible window cover of the two-edge path");

    const long long trials = dflt(opt.trials, 40LL);
    std::vector<std::string> failures;
    long long checked = 0;
    for (long long i = 0; i < trials; ++i) {
        Rng rng(mix_seed(opt.seed, static_cast<std::uint64_t>(i)));
        auto edges = random_tree_edges(tree_size(rng, 2, 6), rng);
        auto Z = CellComplex::build(edges, 1 + static_cast<int>(rng() % 3));
        auto A = irreducible_subcover(Z, star_cover(Z));
        if (A.members.size() < 2) continue;
        ++checked;
        auto r = lemma1_check(Z, A);
        if (!r.holds())
            failures.push_back("fixture " + std::to_string(i) + ": " + std::to_string(r.cover_size) +
                               " > " + std::to_string(r.boundary_points));
    }
    add_scan_record(rep, "irreducible-cover<=boundary-points", failures,
                    "fixtures=" + std::to_string(checked));
    return rep;
}

// -------------------------------------------------------- odometer cycles

Report odometer_suite(const SuiteOptions& opt) {
    Report rep;
    Generator g;
    g.name = "T";
    g.kind = Generator::Kind::Odometer;
    auto action = make_action(RuleTree::rooted(2), {g});

    std::vector<std::string> cycle_failures;
    const int kmax = dflt(opt.max_points, 12);
    for (int k = 1; k <= kmax; ++k) {
        auto r = cylinder_dynamics(action, k);
        if (!(r.single_cycle() && r.cycle_lengths[0] == (1LL << k)))
            cycle_failures.push_back("depth " + std::to_string(k));
    }
    add_scan_record(rep, "single-2^k-cycles", cycle_failures, "depths 1.." + std::to_string(kmax));

    auto zero = canonicalize_end(action.tree, "", "0");
    bool omega8 = omega_limit_approx(action, zero, 3, 8).size() == 8;
    bool omega4 = omega_limit_approx(action, zero, 3, 4).size() == 4;
    rep.add("omega-limit-depth3", omega8 && omega4, omega8 && omega4 ? "" : "cylinder count off",
            "steps 8 -> 8 cylinders, steps 4 -> 4");

    const long long target = dflt(opt.trials, 20LL);
    auto one = canonicalize_end(action.tree, "1", "0");
    auto res = detect_proximal(action, zero, one, target, static_cast<int>(target));
    bool not_found = std::holds_alternative<SearchNotFound>(res);
    rep.add("no-proximal-pair-at-depth-" + std::to_string(target), not_found,
            not_found ? "" : "certificate found for an equicontinuous system",
            "bounded search, radius " + std::to_string(target));
    return rep;
}

// ------------------------------------------------------------- ep witness

Report ep_witness_suite(const SuiteOptions& opt) {
    Report rep;
    const int cap = dflt(opt.max_points, 4);
    const int slack = dflt(opt.radius, 4);
    auto tree = RuleTree::free_group(2);
    Generator a{"a", Generator::Kind::Translate, "a", {}, "", ""};
    Generator b{"b", Generator::Kind::Translate, "b", {}, "", ""};
    auto action = make_action(tree, {a, b});

    std::vector<Word> cylinders;
    {
        Word w;
        auto rec = [&](auto&& self) -> void {
            if (!w.empty()) cylinders.push_back(w);
            if (static_cast<int>(w.size()) == cap) return;
            for (char c : tree.letters()) {
                if (!w.empty() && c == tree.inverse(w.back())) continue;
                w.push_back(c);
                self(self);
                w.pop_back();
            }
        };
        rec(rec);
    }
    const long long pairs = static_cast<long long>(cylinders.size()) * static_cast<long long>(cylinders.size());

    auto failures = scan_failures(pairs, [&](long long idx) -> std::optional<std::string> {
        const Word& w = cylinders[static_cast<std::size_t>(idx) / cylinders.size()];
        const Word& wp = cylinders[static_cast<std::size_t>(idx) % cylinders.size()];
        int radius = static_cast<int>(w.size() + wp.size()) + slack;
        auto r = extreme_proximality_witness(action, w, wp, radius);
        if (!r.witness) return "no witness for (" + w + "," + wp + ") within " + std::to_string(radius);
        return std::nullopt;
    });
    add_scan_record(rep, "witnesses-within-radius", failures,
                    "pairs=" + std::to_string(pairs) + " |w|,|w'|<=" + std::to_string(cap) +
                        " slack=" + std::to_string(slack));

    auto r1 = extreme_proximality_witness(action, "a", "b", 2 + slack);
    auto r2 = extreme_proximality_witness(action, "a", "a", 2 + slack);
    bool pinned = r1.witness && *r1.witness == "bA" && r2.witness && *r2.witness == "abA";
    rep.add("pinned-witnesses-bA-abA", pinned,
            pinned ? ""
                   : (r1.witness ? *r1.witness : std::string("none")) + " / " +
                         (r2.witness ? *r2.witness : std::string("none")),
            "(w=a,w'=b) -> b a^-1 and (w=a,w'=a) -> a b a^-1");
    return rep;
}

// ------------------------------------------------------------- closedness

Report closedness_suite(const SuiteOptions& opt) {
    Report rep;
    const long long samples = dflt(opt.trials, 500LL);
    const Rat eps = dflt(opt.epsilon, Rat(1, 8));

    auto free2 = RuleTree::free_group(2);
    auto bin = RuleTree::rooted(2);
    auto r1 = closedness_test_RB(free2, samples / 2, opt.seed);
    auto r2 = closedness_test_RB(bin, samples - samples / 2, mix_seed(opt.seed, 99));
    rep.add("limits-of-between-triples-are-between", r1.pass && r2.pass,
            !r1.pass ? r1.witness : (!r2.pass ? r2.witness : ""),
            "samples=" + std::to_string(samples));

    struct Fixture {
        std::string name;
        RuleTree tree;
        AxisFunction f;
        ClosedSetSpec C;
        int depth;
    };
    std::vector<Fixture> fixtures;
    {
        auto xi = canonicalize_end(bin, "", "0");
        auto eta = canonicalize_end(bin, "", "1");
        auto f = make_axis_function(bin, xi, eta);
        ClosedSetSpec ray;
        ray.rays = {xi};
        fixtures.push_back({"binary-ray-to-end", bin, f, ray, 8});
        ClosedSetSpec whole;
        whole.cylinders = {""};
        fixtures.push_back({"binary-whole-space", bin, f, whole, 8});
        ClosedSetSpec off;
        off.cylinders = {"01", "110"};
        fixtures.push_back({"binary-off-axis", bin, f, off, 8});

        auto xi2 = canonicalize_end(bin, "1", "0");
        auto f2 = make_axis_function(bin, xi2, eta);
        ClosedSetSpec ray2;
        ray2.rays = {xi2};
        ray2.ends = {eta};
        fixtures.push_back({"binary-shifted-axis", bin, f2, ray2, 10});
    }
    {
        auto xi = canonicalize_end(free2, "", "a");
        auto eta = canonicalize_end(free2, "", "b");
        auto f = make_axis_function(free2, xi, eta);
        ClosedSetSpec ray;
        ray.rays = {xi, eta};
        fixtures.push_back({"free-double-ray", free2, f, ray, 8});
        ClosedSetSpec ends;
        ends.ends = {xi, canonicalize_end(free2, "", "aB"), canonicalize_end(free2, "b", "a")};
        fixtures.push_back({"free-end-set", free2, f, ends, 8});
    }

    std::vector<std::string> failures;
    for (const auto& fx : fixtures) {
        auto r = fragment_scan(fx.tree, fx.f, fx.C, eps, fx.depth);
        if (!r.point) failures.push_back(fx.name);
    }
    add_scan_record(rep, "fragmentation-point-found", failures,
                    "fixtures=" + std::to_string(fixtures.size()) + " eps=" + to_string(eps));
    return rep;
}

}  // namespace

const std::vector<SuiteInfo>& list_suites() {
    static const std::vector<SuiteInfo> suites = {
        {"axioms", "pretree-median-axioms", "random trees satisfy B1-B3, A0-A5 and M1-M3"},
        {"retraction", "median-retraction-identities",
         "retraction, Sholander, continuity and preimage identities on all small median pretrees"},
        {"shadow-separation", "shadow-separation-kernel",
         "shadow complements separate every strict between-triple"},
        {"convfun", "monotone-pairs-not-independent",
         "random monotone pairs admit no independence witness"},
        {"helly", "monotone-selection-principle",
         "bounded monotone sequences admit pointwise-stable subsequences with monotone limits"},
        {"monotone-equivalence", "interval-vs-connected-monotonicity",
         "B- and C-monotonicity agree on every map between small trees"},
        {"lemma1", "irreducible-cover-boundary-bound",
         "irreducible covers have at most as many members as boundary points"},
        {"lemma2-bound", "cover-entropy-linear-bound",
         "iterated join subcovers stay under the linear boundary bound"},
        {"odometer-cycles", "odometer-cylinder-dynamics",
         "the adding machine is a full cycle on every cylinder level and has no proximal pairs"},
        {"ep-witness", "boundary-extreme-proximality",
         "group elements compressing any co-cylinder into any cylinder"},
        {"closedness", "betweenness-closedness-fragmentation",
         "betweenness is closed under confluence limits; monotone functions have continuity points"},
    };
    return suites;
}

Report run_suite(const std::string& name, const SuiteOptions& opt) {
    Report rep;
    if (name == "axioms")
        rep = axioms_suite(opt);
    else if (name == "retraction")
        rep = retraction_suite(opt);
    else if (name == "shadow-separation")
        rep = shadow_separation_suite(opt);
    else if (name == "convfun")
        rep = convfun_suite(opt);
    else if (name == "helly")
        rep = helly_suite(opt);
    else if (name == "monotone-equivalence")
        rep = monotone_equivalence_suite(opt);
    else if (name == "lemma1")
        rep = lemma1_suite(opt);
    else if (name == "lemma2-bound")
        rep = lemma2_suite(opt);
    else if (name == "odometer-cycles")
        rep = odometer_suite(opt);
    else if (name == "ep-witness")
        rep = ep_witness_suite(opt);
    else if (name == "closedness")
        rep = closedness_suite(opt);
    else
        throw std::invalid_argument("unknown suite: " + name);
    rep.suite = name;
    rep.seed = opt.seed;
    for (const auto& info : list_suites())
        if (info.name == name) rep.property_id = info.property_id;
    return rep;
}

}  // namespace treelab
