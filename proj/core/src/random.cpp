#include "treelab/random.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace treelab {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    // splitmix64 finalizer over the combined value
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<std::pair<std::string, std::string>> random_tree_edges(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("tree size must be positive");
    std::vector<std::pair<std::string, std::string>> edges;
    if (n == 1) return edges;
    if (n == 2) {
        edges.emplace_back("0", "1");
        return edges;
    }
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> pruefer(n - 2);
    for (auto& p : pruefer) p = pick(rng);
    std::vector<int> degree(n, 1);
    for (int p : pruefer) ++degree[p];
    std::set<int> leaves;
    for (int i = 0; i < n; ++i)
        if (degree[i] == 1) leaves.insert(i);
    for (int p : pruefer) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.emplace_back(std::to_string(leaf), std::to_string(p));
        if (--degree[p] == 1) leaves.insert(p);
    }
    int u = *leaves.begin(), v = *std::next(leaves.begin());
    edges.emplace_back(std::to_string(u), std::to_string(v));
    return edges;
}

BetweennessStructure random_tree(int n, Rng& rng) {
    if (n == 1) return BetweennessStructure::from_tree({}, {"0"});
    return BetweennessStructure::from_tree(random_tree_edges(n, rng));
}

namespace {

std::string ahu(int v, int parent, const std::vector<std::vector<int>>& adj) {
    std::vector<std::string> kids;
    for (int w : adj[v])
        if (w != parent) kids.push_back(ahu(w, v, adj));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids) s += k;
    s += ")";
    return s;
}

std::vector<int> tree_centers(int n, const std::vector<std::vector<int>>& adj) {
    if (n == 1) return {0};
    std::vector<int> deg(n);
    std::vector<int> layer;
    for (int i = 0; i < n; ++i) {
        deg[i] = static_cast<int>(adj[i].size());
        if (deg[i] <= 1) layer.push_back(i);
    }
    int remaining = n;
    while (remaining > 2) {
        remaining -= static_cast<int>(layer.size());
        std::vector<int> next;
        for (int v : layer)
            for (int w : adj[v])
                if (--deg[w] == 1) next.push_back(w);
        layer = std::move(next);
    }
    return layer;
}

}  // namespace

std::string tree_canonical_string(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    auto centers = tree_centers(n, adj);
    std::string best;
    for (int c : centers) {
        std::string s = ahu(c, -1, adj);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

const long long kFreeTreeCounts[13] = {1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551};

namespace {

struct RootedTree {
    int size = 1;
    std::string canon = "()";
    std::vector<int> children;  // indices into the pool
};

// Pool of all canonical rooted trees by size, sizes 1..max_n.
struct RootedPool {
    std::vector<RootedTree> trees;
    std::vector<std::vector<int>> by_size;  // size -> indices

    explicit RootedPool(int max_n) : by_size(max_n + 1) {
        trees.push_back({});
        by_size[1].push_back(0);
        for (int n = 2; n <= max_n; ++n) {
            // candidate children, largest-first so multisets are generated
            // in a canonical non-increasing order
            std::vector<int> cand;
            for (int s = n - 1; s >= 1; --s)
                for (int idx : by_size[s]) cand.push_back(idx);
            std::vector<int> chosen;
            build(n, n - 1, 0, cand, chosen);
        }
    }

    void build(int n, int remaining, int start, const std::vector<int>& cand,
               std::vector<int>& chosen) {
        if (remaining == 0) {
            RootedTree t;
            t.size = n;
            t.children = chosen;
            std::vector<std::string> kids;
            for (int c : chosen) kids.push_back(trees[c].canon);
            std::sort(kids.begin(), kids.end());
            t.canon = "(";
            for (const auto& k : kids) t.canon += k;
            t.canon += ")";
            by_size[n].push_back(static_cast<int>(trees.size()));
            trees.push_back(std::move(t));
            return;
        }
        for (int i = start; i < static_cast<int>(cand.size()); ++i) {
            int sz = trees[cand[i]].size;
            if (sz > remaining) continue;
            chosen.push_back(cand[i]);
            build(n, remaining - sz, i, cand, chosen);
            chosen.pop_back();
        }
    }

    void edges_of(int idx, int my_id, int& next_id, std::vector<std::pair<int, int>>& out) const {
        for (int c : trees[idx].children) {
            int child_id = next_id++;
            out.emplace_back(my_id, child_id);
            edges_of(c, child_id, next_id, out);
        }
    }
};

}  // namespace

std::vector<std::vector<std::pair<std::string, std::string>>> all_tree_shapes(int n) {
    if (n < 1 || n > 14) throw std::invalid_argument("shape enumeration supported for 1..14 points");
    RootedPool pool(n);
    std::set<std::string> seen;
    std::vector<std::vector<std::pair<std::string, std::string>>> shapes;
    for (int idx : pool.by_size[n]) {
        std::vector<std::pair<int, int>> edges;
        int next_id = 1;
        pool.edges_of(idx, 0, next_id, edges);
        std::string canon = tree_canonical_string(n, edges);
        if (!seen.insert(canon).second) continue;
        std::vector<std::pair<std::string, std::string>> named;
        for (auto [u, v] : edges) named.emplace_back(std::to_string(u), std::to_string(v));
        shapes.push_back(std::move(named));
    }
    return shapes;
}

}  // namespace treelab
