#include <doctest.h>

#include "treelab/cover.hpp"
#include "treelab/random.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

using namespace treelab;

namespace {

// path with two original edges and no subdivision: cells v0 e1 v1 e2 v2
CellComplex path2() { return CellComplex::build({{"v0", "v1"}, {"v1", "v2"}}, 1); }

CellCover b_cover(const CellComplex& X) {
    CellCover A;
    A.members.push_back(X.make_set({"v0", "v0-v1.e1"}));
    A.members.push_back(X.make_set({"v0-v1.e1", "v1", "v1-v2.e1"}));
    A.members.push_back(X.make_set({"v1-v2.e1", "v2"}));
    return A;
}

// all-subsets oracle for the exact minimum subcover (members <= 18)
long long oracle_min_subcover(const CellComplex& X, const CellCover& A) {
    const int k = static_cast<int>(A.members.size());
    REQUIRE(k <= 18);
    long long best = k + 1;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        CellSet u = X.empty_set();
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) u |= A.members[static_cast<std::size_t>(i)];
        if (u.all()) best = std::min<long long>(best, __builtin_popcount(mask));
    }
    return best;
}

// every vertex cell's star: the canonical open cover of a complex
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

}  // namespace

TEST_CASE("is_open and boundary") {
    auto X = path2();
    CHECK(X.cells() == 5);

    auto O1 = X.make_set({"v0-v1.e1", "v1", "v1-v2.e1"});
    CHECK(is_open(X, O1));
    CHECK(X.set_names(boundary(X, O1)) == std::vector<std::string>{"v0", "v2"});

    auto O2 = X.make_set({"v1"});
    CHECK_FALSE(is_open(X, O2));

    auto O3 = X.make_set({"v0-v1.e1"});
    CHECK(is_open(X, O3));
    CHECK(X.set_names(boundary(X, O3)) == std::vector<std::string>{"v0", "v1"});

    CHECK_THROWS_AS(X.make_set({"nope"}), std::invalid_argument);
}

TEST_CASE("irreducible_subcover") {
    auto X = path2();
    auto B = b_cover(X);

    CellCover with_whole = B;
    with_whole.members.insert(with_whole.members.begin(), X.full_set());
    auto r1 = irreducible_subcover(X, with_whole);
    CHECK(r1.members.size() == 1);
    CHECK(r1.members[0] == X.full_set());

    auto r2 = irreducible_subcover(X, B);
    CHECK(r2.members.size() == 3);  // each member is essential

    CellCover dup = B;
    dup.members.push_back(B.members[1]);
    auto r3 = irreducible_subcover(X, dup);
    CHECK(r3.members.size() == 3);

    CellCover not_cover;
    not_cover.members.push_back(B.members[0]);
    CHECK_THROWS_AS(irreducible_subcover(X, not_cover), std::invalid_argument);
}

TEST_CASE("minimum_subcover: examples and the all-subsets oracle") {
    auto X = path2();
    auto B = b_cover(X);

    CellCover with_whole = B;
    with_whole.members.push_back(X.full_set());
    CHECK(minimum_subcover(X, with_whole).cardinality() == 1);

    CHECK(oracle_min_subcover(X, B) == 3);
    CHECK(minimum_subcover(X, B).cardinality() == 3);

    // overlapping 3-cell windows on a longer subdivided path
    auto Y = CellComplex::build({{"a", "b"}, {"b", "c"}, {"c", "d"}}, 2);
    CellCover W = star_cover(Y);
    CHECK(minimum_subcover(Y, W).cardinality() == oracle_min_subcover(Y, W));

    // randomized: star covers plus random open unions
    Rng rng(2028);
    for (int t = 0; t < 25; ++t) {
        auto edges = random_tree_edges(2 + static_cast<int>(rng() % 4), rng);
        auto Z = CellComplex::build(edges, 1 + static_cast<int>(rng() % 2));
        auto S = star_cover(Z);
        // add a few random unions to create slack
        CellCover A = S;
        for (int j = 0; j < 3 && A.members.size() < 16; ++j) {
            CellSet u = S.members[rng() % S.members.size()] | S.members[rng() % S.members.size()];
            A.members.push_back(u);
        }
        CAPTURE(t);
        CHECK(minimum_subcover(Z, A).cardinality() == oracle_min_subcover(Z, A));
    }
}

TEST_CASE("lemma1: irreducible cover size is at most the boundary-point count") {
    auto X = path2();
    auto B = b_cover(X);
    auto rep = lemma1_check(X, B);
    CHECK(rep.cover_size == 3);
    CHECK(rep.boundary_points == 3);  // tight
    CHECK(rep.holds());

    // two overlapping halves of one subdivided edge
    auto Y = CellComplex::build({{"u", "v"}}, 3);
    CellCover halves;
    halves.members.push_back(Y.make_set({"u", "u-v.e1", "u-v.v1", "u-v.e2"}));
    halves.members.push_back(Y.make_set({"u-v.e2", "u-v.v2", "u-v.e3", "v"}));
    auto rep2 = lemma1_check(Y, halves);
    CHECK(rep2.cover_size == 2);
    CHECK(rep2.boundary_points == 2);
    CHECK(rep2.holds());

    // randomized irreducible covers on random complexes
    Rng rng(515);
    for (int t = 0; t < 30; ++t) {
        auto edges = random_tree_edges(2 + static_cast<int>(rng() % 5), rng);
        auto Z = CellComplex::build(edges, 1 + static_cast<int>(rng() % 3));
        auto A = irreducible_subcover(Z, star_cover(Z));
        if (A.members.size() < 2) continue;
        CHECK(lemma1_check(Z, A).holds());
    }

    CHECK_THROWS_AS(lemma1_check(X, CellCover{{X.full_set()}}), std::invalid_argument);
}

TEST_CASE("pull_back and join_refinement") {
    auto X = path2();
    auto B = b_cover(X);

    auto id = identity_automorphism(X);
    CHECK(pull_back(id, B.members[0]) == B.members[0]);

    auto refl = reflection_automorphism(X);
    auto mirrored = pull_back(refl, X.make_set({"v0", "v0-v1.e1"}));
    CHECK(X.set_names(mirrored) == std::vector<std::string>{"v2", "v1-v2.e1"});

    // automorphisms preserve openness and boundary size
    for (const auto& m : B.members) {
        auto im = pull_back(refl, m);
        CHECK(is_open(X, im));
        CHECK(boundary(X, im).count() == boundary(X, m).count());
    }

    auto self = join_refinement(B, B);
    CHECK(self.members.size() == B.members.size() + 2);  // adjacent overlaps appear once

    CellCover bb{{B.members[0], B.members[1]}};
    auto jj = join_refinement(bb, bb);
    std::set<CellSet> unique(jj.members.begin(), jj.members.end());
    CHECK(unique.size() == jj.members.size());  // deduplicated
}

TEST_CASE("automorphism invariance of the minimum subcover") {
    auto Y = CellComplex::build({{"a", "b"}, {"b", "c"}, {"c", "d"}}, 2);
    auto refl = reflection_automorphism(Y);
    auto A = star_cover(Y);
    auto n0 = minimum_subcover(Y, A).cardinality();
    auto n1 = minimum_subcover(Y, pull_back(refl, A)).cardinality();
    CHECK(n0 == n1);

    // N(A v B) >= max(N(A), N(B)) and N(A v B) <= N(A) * N(B)
    auto BJ = join_refinement(A, pull_back(refl, A));
    auto nj = minimum_subcover(Y, BJ).cardinality();
    CHECK(nj >= std::max(n0, n1));
    CHECK(nj <= n0 * n1);
}

TEST_CASE("swap automorphism on a binary tree") {
    auto X = CellComplex::build({{"r", "l"}, {"r", "s"}, {"l", "l0"}, {"l", "l1"}, {"s", "s0"}, {"s", "s1"}}, 1);
    auto sw = swap_automorphism(X, "l", "s");
    CHECK(sw.vertex_map[static_cast<std::size_t>(X.original_vertex_id("l"))] ==
          X.original_vertex_id("s"));
    auto A = star_cover(X);
    for (const auto& m : A.members) CHECK(is_open(X, pull_back(sw, m)));
    CHECK_THROWS_AS(swap_automorphism(X, "l0", "s0"), std::invalid_argument);  // no common neighbor
}

TEST_CASE("sequence_entropy") {
    auto X = path2();
    auto B = b_cover(X);
    const long long weight = boundary_weight(X, B);
    CHECK(weight == 4);  // 1 + 2 + 1

    // identity sequence: N_n stays N_1 and h(n) = log(N_1)/n -> 0
    auto rows_id = sequence_entropy(X, B, AutoSeq::of_powers(identity_automorphism(X)), 6);
    for (const auto& r : rows_id) {
        CHECK(r.subcover_size == rows_id[0].subcover_size);
        CHECK_FALSE(r.bound_violated);
    }
    CHECK(rows_id.back().h == doctest::Approx(std::log(3.0) / 6));

    // reflection powers: N_n <= n * L_A throughout
    auto rows_refl = sequence_entropy(X, B, AutoSeq::of_powers(reflection_automorphism(X)), 8);
    for (const auto& r : rows_refl) {
        CHECK(r.subcover_size <= r.bound);
        CHECK_FALSE(r.bound_violated);
    }

    // branch swaps on a subdivided binary tree
    auto Y = CellComplex::build({{"r", "l"}, {"r", "s"}, {"l", "l0"}, {"l", "l1"}, {"s", "s0"}, {"s", "s1"}}, 2);
    auto rows_swap =
        sequence_entropy(Y, star_cover(Y), AutoSeq::of_powers(swap_automorphism(Y, "l", "s")), 6);
    for (const auto& r : rows_swap) CHECK_FALSE(r.bound_violated);

    CHECK_THROWS_AS(sequence_entropy(X, B, AutoSeq::of_powers(identity_automorphism(X)), 13),
                    std::invalid_argument);
}
