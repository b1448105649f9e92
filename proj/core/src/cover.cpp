#include "treelab/cover.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace treelab {

CellComplex CellComplex::build(const std::vector<std::pair<std::string, std::string>>& tree_edges,
                               int subdivision) {
    if (subdivision < 1) throw std::invalid_argument("subdivision factor must be >= 1");
    CellComplex X;
    X.m_ = subdivision;
    auto add_orig = [&X](const std::string& name) {
        if (X.orig_ids_.count(name)) return;
        X.orig_ids_[name] = static_cast<int>(X.orig_names_.size());
        X.orig_names_.push_back(name);
    };
    for (const auto& e : tree_edges) {
        add_orig(e.first);
        add_orig(e.second);
    }
    if (X.orig_names_.empty()) throw std::invalid_argument("complex needs at least one edge");
    const int n = static_cast<int>(X.orig_names_.size());
    if (static_cast<int>(tree_edges.size()) != n - 1)
        throw std::invalid_argument("underlying graph is not a tree");

    auto add_cell = [&X](const std::string& name, bool vertex) {
        if (X.ids_.count(name)) throw std::invalid_argument("duplicate cell name: " + name);
        int id = static_cast<int>(X.names_.size());
        X.ids_[name] = id;
        X.names_.push_back(name);
        X.is_vertex_.push_back(vertex ? 1 : 0);
        X.vertex_edges_.emplace_back();
        return id;
    };
    for (const auto& name : X.orig_names_) add_cell(name, true);

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& e : tree_edges) {
        int u = X.orig_ids_[e.first], v = X.orig_ids_[e.second];
        if (u == v) throw std::invalid_argument("self-loop edge");
        X.orig_edges_.emplace_back(u, v);
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);

        const std::string base = e.first + "-" + e.second;
        int prev_vertex = X.ids_[e.first];
        for (int i = 1; i <= X.m_; ++i) {
            int seg = add_cell(base + ".e" + std::to_string(i), false);
            int next_vertex = (i == X.m_)
                                  ? X.ids_[e.second]
                                  : add_cell(base + ".v" + std::to_string(i), true);
            X.edge_ends_[seg] = {prev_vertex, next_vertex};
            X.vertex_edges_[static_cast<std::size_t>(prev_vertex)].push_back(seg);
            X.vertex_edges_[static_cast<std::size_t>(next_vertex)].push_back(seg);
            prev_vertex = next_vertex;
        }
    }
    // connectivity of the original tree
    std::vector<char> vis(static_cast<std::size_t>(n), 0);
    std::deque<int> q{0};
    vis[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : adj[static_cast<std::size_t>(u)])
            if (!vis[static_cast<std::size_t>(v)]) {
                vis[static_cast<std::size_t>(v)] = 1;
                ++reached;
                q.push_back(v);
            }
    }
    if (reached != n) throw std::invalid_argument("underlying graph is disconnected");
    return X;
}

int CellComplex::cell_id(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) throw std::invalid_argument("unknown cell: " + name);
    return it->second;
}

const std::vector<int>& CellComplex::incident_edges(int vertex_cell) const {
    if (!is_vertex_cell(vertex_cell)) throw std::invalid_argument("not a vertex cell");
    return vertex_edges_.at(static_cast<std::size_t>(vertex_cell));
}

const std::pair<int, int>& CellComplex::edge_ends(int edge_cell) const {
    auto it = edge_ends_.find(edge_cell);
    if (it == edge_ends_.end()) throw std::invalid_argument("not an edge cell");
    return it->second;
}

int CellComplex::original_vertex_id(const std::string& name) const {
    auto it = orig_ids_.find(name);
    if (it == orig_ids_.end()) throw std::invalid_argument("unknown vertex: " + name);
    return it->second;
}

CellSet CellComplex::make_set(const std::vector<std::string>& cell_names) const {
    CellSet s = empty_set();
    for (const auto& n : cell_names) s.set(static_cast<std::size_t>(cell_id(n)));
    return s;
}

std::vector<std::string> CellComplex::set_names(const CellSet& s) const {
    std::vector<std::string> out;
    for (std::size_t i = s.find_first(); i != CellSet::npos; i = s.find_next(i))
        out.push_back(names_[i]);
    return out;
}

bool is_open(const CellComplex& X, const CellSet& O) {
    for (std::size_t i = O.find_first(); i != CellSet::npos; i = O.find_next(i)) {
        if (!X.is_vertex_cell(static_cast<int>(i))) continue;
        for (int e : X.incident_edges(static_cast<int>(i)))
            if (!O.test(static_cast<std::size_t>(e))) return false;
    }
    return true;
}

CellSet boundary(const CellComplex& X, const CellSet& O) {
    CellSet b = X.empty_set();
    for (std::size_t i = O.find_first(); i != CellSet::npos; i = O.find_next(i)) {
        if (X.is_vertex_cell(static_cast<int>(i))) continue;
        auto [u, v] = X.edge_ends(static_cast<int>(i));
        if (!O.test(static_cast<std::size_t>(u))) b.set(static_cast<std::size_t>(u));
        if (!O.test(static_cast<std::size_t>(v))) b.set(static_cast<std::size_t>(v));
    }
    return b;
}

void validate_cover(const CellComplex& X, const CellCover& A) {
    if (A.members.empty()) throw std::invalid_argument("input is not a cover: no members");
    CellSet all = X.empty_set();
    for (const auto& m : A.members) {
        if (m.size() != static_cast<std::size_t>(X.cells()))
            throw std::invalid_argument("member has wrong cell count");
        if (!is_open(X, m)) throw std::invalid_argument("cover member is not open");
        all |= m;
    }
    if (!all.all()) throw std::invalid_argument("input is not a cover: cells left uncovered");
}

long long boundary_weight(const CellComplex& X, const CellCover& A) {
    long long total = 0;
    for (const auto& m : A.members) total += static_cast<long long>(boundary(X, m).count());
    return total;
}

CellCover irreducible_subcover(const CellComplex& X, const CellCover& A) {
    validate_cover(X, A);
    std::vector<CellSet> members;
    for (const auto& m : A.members)  // duplicates are redundant by definition
        if (std::find(members.begin(), members.end(), m) == members.end()) members.push_back(m);
    // drop the smallest redundant member first (ties by index), so a
    // member covering the whole space survives its redundant companions
    bool removed = true;
    while (removed && members.size() > 1) {
        removed = false;
        std::size_t pick = members.size();
        for (std::size_t i = 0; i < members.size(); ++i) {
            CellSet rest(static_cast<std::size_t>(X.cells()));
            for (std::size_t j = 0; j < members.size(); ++j)
                if (j != i) rest |= members[j];
            if (rest.all() && (pick == members.size() || members[i].count() < members[pick].count()))
                pick = i;
        }
        if (pick < members.size()) {
            members.erase(members.begin() + static_cast<std::ptrdiff_t>(pick));
            removed = true;
        }
    }
    return {members};
}

MinimumSubcover minimum_subcover(const CellComplex& X, const CellCover& A) {
    validate_cover(X, A);
    const int k = static_cast<int>(A.members.size());
    const std::size_t cells = static_cast<std::size_t>(X.cells());

    // scarcity order: cells covered by the fewest members first
    std::vector<std::vector<int>> coverers(cells);
    for (int i = 0; i < k; ++i)
        for (std::size_t c = A.members[static_cast<std::size_t>(i)].find_first(); c != CellSet::npos;
             c = A.members[static_cast<std::size_t>(i)].find_next(c))
            coverers[c].push_back(i);
    std::vector<int> order(cells);
    for (std::size_t c = 0; c < cells; ++c) order[c] = static_cast<int>(c);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return coverers[static_cast<std::size_t>(a)].size() <
                                                coverers[static_cast<std::size_t>(b)].size(); });

    std::size_t largest = 0;
    for (const auto& m : A.members) largest = std::max(largest, m.count());

    std::vector<int> best(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) best[static_cast<std::size_t>(i)] = i;
    std::vector<int> chosen;
    CellSet covered(cells);

    std::function<void()> rec = [&] {
        if (covered.all()) {
            if (chosen.size() < best.size()) best = chosen;
            return;
        }
        std::size_t uncovered = cells - covered.count();
        std::size_t lower = (uncovered + largest - 1) / largest;
        if (chosen.size() + lower >= best.size()) return;
        int target = -1;
        for (int c : order)
            if (!covered.test(static_cast<std::size_t>(c))) {
                target = c;
                break;
            }
        for (int i : coverers[static_cast<std::size_t>(target)]) {
            CellSet saved = covered;
            covered |= A.members[static_cast<std::size_t>(i)];
            chosen.push_back(i);
            rec();
            chosen.pop_back();
            covered = saved;
        }
    };
    rec();

    MinimumSubcover out;
    out.chosen = best;
    std::sort(out.chosen.begin(), out.chosen.end());
    for (int i : out.chosen) out.cover.members.push_back(A.members[static_cast<std::size_t>(i)]);
    return out;
}

Lemma1Report lemma1_check(const CellComplex& X, const CellCover& A) {
    validate_cover(X, A);
    if (A.members.size() < 2)
        throw std::invalid_argument("lemma1_check requires at least two members");
    for (std::size_t i = 0; i < A.members.size(); ++i) {
        CellSet rest(static_cast<std::size_t>(X.cells()));
        for (std::size_t j = 0; j < A.members.size(); ++j)
            if (j != i) rest |= A.members[j];
        if (rest.all()) throw std::invalid_argument("lemma1_check requires an irreducible cover");
    }
    CellSet P = X.empty_set();
    for (const auto& m : A.members) P |= boundary(X, m);
    Lemma1Report rep;
    rep.cover_size = static_cast<long long>(A.members.size());
    rep.boundary_points = static_cast<long long>(P.count());
    return rep;
}

Automorphism make_automorphism(const CellComplex& X, const std::vector<int>& original_vertex_map) {
    const int n = X.original_vertex_count();
    if (static_cast<int>(original_vertex_map.size()) != n)
        throw std::invalid_argument("vertex map size mismatch");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : original_vertex_map) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("vertex map is not a bijection");
        seen[static_cast<std::size_t>(v)] = 1;
    }
    // adjacency preservation; record the image edge of each edge
    std::set<std::pair<int, int>> edge_set;
    for (auto [u, v] : X.original_edges()) edge_set.insert(std::minmax(u, v));
    for (auto [u, v] : X.original_edges()) {
        auto img = std::minmax(original_vertex_map[static_cast<std::size_t>(u)],
                               original_vertex_map[static_cast<std::size_t>(v)]);
        if (!edge_set.count(img))
            throw std::invalid_argument("vertex map does not preserve adjacency");
    }

    Automorphism s;
    s.vertex_map = original_vertex_map;
    s.cell_map.assign(static_cast<std::size_t>(X.cells()), -1);
    const auto& names = X.original_vertex_names();
    for (int u = 0; u < n; ++u)
        s.cell_map[static_cast<std::size_t>(X.cell_id(names[static_cast<std::size_t>(u)]))] =
            X.cell_id(names[static_cast<std::size_t>(original_vertex_map[static_cast<std::size_t>(u)])]);

    const int m = X.subdivision();
    auto edge_base = [&](int u, int v) {
        return names[static_cast<std::size_t>(u)] + "-" + names[static_cast<std::size_t>(v)];
    };
    std::set<std::pair<int, int>> oriented;
    for (auto [u, v] : X.original_edges()) oriented.insert({u, v});
    for (auto [u, v] : X.original_edges()) {
        int su = s.vertex_map[static_cast<std::size_t>(u)], sv = s.vertex_map[static_cast<std::size_t>(v)];
        bool flipped = !oriented.count({su, sv});
        if (flipped) std::swap(su, sv);
        const std::string from = edge_base(u, v), to = edge_base(su, sv);
        for (int i = 1; i <= m; ++i) {
            int ti = flipped ? m + 1 - i : i;
            s.cell_map[static_cast<std::size_t>(X.cell_id(from + ".e" + std::to_string(i)))] =
                X.cell_id(to + ".e" + std::to_string(ti));
            if (i < m) {
                int tv = flipped ? m - i : i;
                s.cell_map[static_cast<std::size_t>(X.cell_id(from + ".v" + std::to_string(i)))] =
                    X.cell_id(to + ".v" + std::to_string(tv));
            }
        }
    }
    return s;
}

Automorphism identity_automorphism(const CellComplex& X) {
    std::vector<int> id(static_cast<std::size_t>(X.original_vertex_count()));
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
    return make_automorphism(X, id);
}

Automorphism reflection_automorphism(const CellComplex& X) {
    // valid only when the original tree is a path: reverse the path order
    const int n = X.original_vertex_count();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [u, v] : X.original_edges()) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    int start = -1;
    for (int i = 0; i < n; ++i) {
        if (adj[static_cast<std::size_t>(i)].size() > 2)
            throw std::invalid_argument("reflection requires a path");
        if (adj[static_cast<std::size_t>(i)].size() <= 1 && start < 0) start = i;
    }
    std::vector<int> order;
    int prev = -1, cur = start;
    while (cur != -1) {
        order.push_back(cur);
        int next = -1;
        for (int w : adj[static_cast<std::size_t>(cur)])
            if (w != prev) next = w;
        prev = cur;
        cur = next;
    }
    if (static_cast<int>(order.size()) != n) throw std::invalid_argument("reflection requires a path");
    std::vector<int> map(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < order.size(); ++i)
        map[static_cast<std::size_t>(order[i])] = order[order.size() - 1 - i];
    return make_automorphism(X, map);
}

namespace {

// canonical form + deterministic matching of two rooted subtrees
std::string rooted_canon(int v, int parent, const std::vector<std::vector<int>>& adj) {
    std::vector<std::string> kids;
    for (int w : adj[static_cast<std::size_t>(v)])
        if (w != parent) kids.push_back(rooted_canon(w, v, adj));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids) s += k;
    return s + ")";
}

void match_subtrees(int a, int pa, int b, int pb, const std::vector<std::vector<int>>& adj,
                    std::vector<int>& map) {
    map[static_cast<std::size_t>(a)] = b;
    map[static_cast<std::size_t>(b)] = a;
    auto kids = [&](int v, int p) {
        std::vector<std::pair<std::string, int>> out;
        for (int w : adj[static_cast<std::size_t>(v)])
            if (w != p) out.emplace_back(rooted_canon(w, v, adj), w);
        std::sort(out.begin(), out.end());
        return out;
    };
    auto ka = kids(a, pa), kb = kids(b, pb);
    if (ka.size() != kb.size()) throw std::invalid_argument("subtrees are not isomorphic");
    for (std::size_t i = 0; i < ka.size(); ++i) {
        if (ka[i].first != kb[i].first) throw std::invalid_argument("subtrees are not isomorphic");
        match_subtrees(ka[i].second, a, kb[i].second, b, adj, map);
    }
}

}  // namespace

Automorphism swap_automorphism(const CellComplex& X, const std::string& a, const std::string& b) {
    const int n = X.original_vertex_count();
    int va = X.original_vertex_id(a), vb = X.original_vertex_id(b);
    if (va == vb) throw std::invalid_argument("swap needs two distinct vertices");
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [u, v] : X.original_edges()) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    int anchor = -1;
    for (int w : adj[static_cast<std::size_t>(va)])
        for (int w2 : adj[static_cast<std::size_t>(vb)])
            if (w == w2) anchor = w;
    if (anchor < 0) throw std::invalid_argument("swap vertices need a common neighbor");
    std::vector<int> map(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) map[static_cast<std::size_t>(i)] = i;
    match_subtrees(va, anchor, vb, anchor, adj, map);
    return make_automorphism(X, map);
}

Automorphism compose(const CellComplex& X, const Automorphism& f, const Automorphism& g) {
    Automorphism h;
    h.vertex_map.resize(f.vertex_map.size());
    for (std::size_t i = 0; i < f.vertex_map.size(); ++i)
        h.vertex_map[i] = f.vertex_map[static_cast<std::size_t>(g.vertex_map[i])];
    h.cell_map.resize(static_cast<std::size_t>(X.cells()));
    for (std::size_t i = 0; i < h.cell_map.size(); ++i)
        h.cell_map[i] = f.cell_map[static_cast<std::size_t>(g.cell_map[i])];
    return h;
}

CellSet pull_back(const Automorphism& s, const CellSet& A) {
    CellSet out(A.size());
    for (std::size_t i = A.find_first(); i != CellSet::npos; i = A.find_next(i))
        out.set(static_cast<std::size_t>(s.cell_map[i]));
    return out;
}

CellCover pull_back(const Automorphism& s, const CellCover& A) {
    CellCover out;
    for (const auto& m : A.members) out.members.push_back(pull_back(s, m));
    return out;
}

CellCover join_refinement(const CellCover& A, const CellCover& B) {
    CellCover out;
    for (const auto& a : A.members)
        for (const auto& b : B.members) {
            CellSet c = a & b;
            if (c.none()) continue;
            if (std::find(out.members.begin(), out.members.end(), c) == out.members.end())
                out.members.push_back(c);
        }
    return out;
}

AutoSeq AutoSeq::of_powers(Automorphism sigma) {
    AutoSeq s;
    s.powers = true;
    s.base = std::move(sigma);
    return s;
}

AutoSeq AutoSeq::of_list(std::vector<Automorphism> autos) {
    if (autos.empty()) throw std::invalid_argument("automorphism sequence must be nonempty");
    AutoSeq s;
    s.explicit_seq = std::move(autos);
    return s;
}

Automorphism AutoSeq::at(const CellComplex& X, int i) const {
    if (i < 1) throw std::invalid_argument("sequence index is 1-based");
    if (!powers) {
        if (static_cast<std::size_t>(i) > explicit_seq.size())
            throw std::invalid_argument("sequence index out of range");
        return explicit_seq[static_cast<std::size_t>(i - 1)];
    }
    Automorphism acc = identity_automorphism(X);
    for (int k = 1; k < i; ++k) acc = compose(X, base, acc);
    return acc;
}

std::vector<EntropyRow> sequence_entropy(const CellComplex& X, const CellCover& A, const AutoSeq& S,
                                         int n_max) {
    if (n_max < 1 || n_max > 12) throw std::invalid_argument("n_max must be in 1..12");
    validate_cover(X, A);
    const long long weight = boundary_weight(X, A);
    std::vector<EntropyRow> rows;
    CellCover joined;
    for (int n = 1; n <= n_max; ++n) {
        CellCover pulled = pull_back(S.at(X, n), A);
        joined = (n == 1) ? pulled : join_refinement(joined, pulled);
        if (joined.members.size() > 4096)
            throw std::invalid_argument("join refinement grew past the supported size");
        auto mc = minimum_subcover(X, joined);
        EntropyRow row;
        row.n = n;
        row.subcover_size = mc.cardinality();
        row.join_members = static_cast<long long>(joined.members.size());
        row.bound = static_cast<long long>(n) * weight;
        row.bound_violated = row.subcover_size > row.bound;
        row.h = std::log(static_cast<double>(row.subcover_size)) / n;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace treelab
