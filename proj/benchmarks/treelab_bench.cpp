#include <benchmark/benchmark.h>

#include "treelab/betweenness.hpp"
#include "treelab/cover.hpp"
#include "treelab/random.hpp"
#include "treelab/shadow.hpp"
#include "treelab/tameness.hpp"
#include "treelab/ztree.hpp"

#include <memory>

using namespace treelab;

namespace {

BetweennessStructure bench_tree(int n, std::uint64_t seed) {
    Rng rng(seed);
    return random_tree(n, rng);
}

void BM_check_axioms(benchmark::State& state) {
    auto T = bench_tree(static_cast<int>(state.range(0)), 42);
    for (auto _ : state) benchmark::DoNotOptimize(check_axioms(T).all_pass());
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_check_axioms)->Arg(10)->Arg(20)->Arg(40)->Complexity();

void BM_median_algebra(benchmark::State& state) {
    auto T = bench_tree(static_cast<int>(state.range(0)), 43);
    for (auto _ : state) benchmark::DoNotOptimize(check_median_algebra(T).all_pass());
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_median_algebra)->Arg(10)->Arg(20)->Arg(40)->Complexity();

void BM_generate_topology(benchmark::State& state) {
    auto T = bench_tree(static_cast<int>(state.range(0)), 44);
    for (auto _ : state) benchmark::DoNotOptimize(generate_topology(T).closed.size());
}
BENCHMARK(BM_generate_topology)->Arg(8)->Arg(12)->Arg(15);

void BM_retraction_report(benchmark::State& state) {
    auto T = bench_tree(12, 45);
    auto topo = generate_topology(T);
    for (auto _ : state)
        benchmark::DoNotOptimize(retraction_report(T, "0", "5", &topo).all_pass());
}
BENCHMARK(BM_retraction_report);

void BM_independence_pair(benchmark::State& state) {
    Rng rng(46);
    auto carrier = std::make_shared<BetweennessStructure>(random_tree(40, rng));
    auto f = random_monotone_function(*carrier, rng);
    auto g = random_monotone_function(*carrier, rng);
    auto F = FunctionFamily::make(carrier, {f, g}, Rat(0), Rat(1));
    for (auto _ : state) benchmark::DoNotOptimize(is_independent(F).has_value());
}
BENCHMARK(BM_independence_pair);

void BM_helly_256(benchmark::State& state) {
    Rng rng(47);
    auto carrier = std::make_shared<BetweennessStructure>(random_tree(20, rng));
    auto F = random_monotone_sequence(carrier, 3, 256, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(helly_select(F, Rat(1, 1000000), 32).index());
}
BENCHMARK(BM_helly_256);

void BM_minimum_subcover(benchmark::State& state) {
    std::vector<std::pair<std::string, std::string>> chain;
    for (int i = 0; i + 1 < 6; ++i)
        chain.emplace_back("p" + std::to_string(i), "p" + std::to_string(i + 1));
    auto X = CellComplex::build(chain, 2);
    CellCover A;
    for (int c = 0; c < X.cells(); ++c) {
        if (!X.is_vertex_cell(c)) continue;
        CellSet s = X.empty_set();
        s.set(static_cast<std::size_t>(c));
        for (int e : X.incident_edges(c)) s.set(static_cast<std::size_t>(e));
        A.members.push_back(s);
    }
    auto refl = reflection_automorphism(X);
    auto joined = join_refinement(A, pull_back(refl, A));
    for (auto _ : state) benchmark::DoNotOptimize(minimum_subcover(X, joined).cardinality());
}
BENCHMARK(BM_minimum_subcover);

void BM_ep_witness(benchmark::State& state) {
    auto tree = RuleTree::free_group(2);
    Generator a{"a", Generator::Kind::Translate, "a", {}, "", ""};
    Generator b{"b", Generator::Kind::Translate, "b", {}, "", ""};
    auto action = make_action(tree, {a, b});
    for (auto _ : state)
        benchmark::DoNotOptimize(extreme_proximality_witness(action, "ab", "ba", 8).witness.has_value());
}
BENCHMARK(BM_ep_witness);

void BM_odometer_end(benchmark::State& state) {
    Generator g{"T", Generator::Kind::Odometer, "", {}, "", ""};
    auto action = make_action(RuleTree::rooted(2), {g});
    auto x = canonicalize_end(action.tree, "0110", "01");
    for (auto _ : state) {
        x = apply_generator(action, 0, 1, x);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_odometer_end);

}  // namespace

BENCHMARK_MAIN();
