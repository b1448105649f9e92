#pragma once

#include "treelab/betweenness.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace treelab {

using Rng = std::mt19937_64;

/// Stateless mix used to derive independent per-trial seeds from a master
/// seed, so sampled suites are reproducible under any scheduling.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

/// Uniform random labeled tree on n points (decimal names), via a random
/// Pruefer sequence.
std::vector<std::pair<std::string, std::string>> random_tree_edges(int n, Rng& rng);
BetweennessStructure random_tree(int n, Rng& rng);

/// Canonical form of a free tree (rooted at its center); equal strings
/// iff isomorphic.
std::string tree_canonical_string(int n, const std::vector<std::pair<int, int>>& edges);

/// Every unlabeled tree shape on exactly n points, one edge list per
/// shape (vertex names "0".."n-1"). Enumerated via canonical rooted trees
/// and deduplicated by the free canonical form.
std::vector<std::vector<std::pair<std::string, std::string>>> all_tree_shapes(int n);

/// Unlabeled tree counts for n = 0..12, used by tests to confirm the
/// shape enumeration is exhaustive.
extern const long long kFreeTreeCounts[13];

}  // namespace treelab
