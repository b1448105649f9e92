#include "treelab/betweenness.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <deque>
#include <set>

namespace treelab {

namespace {

void add_point(std::vector<std::string>& names, std::unordered_map<std::string, int>& index,
               const std::string& p) {
    if (index.count(p)) return;
    if (names.size() >= 64) throw std::invalid_argument("structures are capped at 64 points");
    index.emplace(p, static_cast<int>(names.size()));
    names.push_back(p);
}

}  // namespace

int BetweennessStructure::index(const std::string& point) const {
    auto it = index_.find(point);
    if (it == index_.end()) throw std::invalid_argument("unknown point identifier: " + point);
    return it->second;
}

const std::vector<std::vector<int>>& BetweennessStructure::adjacency() const {
    if (backend_ != Backend::Tree) throw std::invalid_argument("adjacency requires a tree backend");
    return adj_;
}

BetweennessStructure BetweennessStructure::from_tree(
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::vector<std::string>& isolated) {
    BetweennessStructure t;
    t.backend_ = Backend::Tree;
    for (const auto& e : edges) {
        add_point(t.names_, t.index_, e.first);
        add_point(t.names_, t.index_, e.second);
    }
    for (const auto& p : isolated) add_point(t.names_, t.index_, p);
    t.n_ = static_cast<int>(t.names_.size());
    if (t.n_ == 0) throw std::invalid_argument("empty tree");
    t.adj_.assign(t.n_, {});
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
        int u = t.index_[e.first], v = t.index_[e.second];
        if (u == v) throw std::invalid_argument("self-loop edge: " + e.first);
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) throw std::invalid_argument("duplicate edge");
        t.adj_[u].push_back(v);
        t.adj_[v].push_back(u);
    }
    if (static_cast<int>(edges.size()) != t.n_ - 1)
        throw std::invalid_argument("not a tree: need exactly n-1 edges");
    // connectivity (acyclicity follows from the edge count)
    std::vector<char> vis(t.n_, 0);
    std::deque<int> q{0};
    vis[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : t.adj_[u])
            if (!vis[v]) {
                vis[v] = 1;
                ++reached;
                q.push_back(v);
            }
    }
    if (reached != t.n_) throw std::invalid_argument("not a tree: graph is disconnected");

    // interval masks from unique simple paths: BFS parents from each source
    t.itv_.assign(static_cast<std::size_t>(t.n_) * t.n_, 0);
    std::vector<int> parent(t.n_);
    for (int a = 0; a < t.n_; ++a) {
        std::fill(parent.begin(), parent.end(), -2);
        parent[a] = -1;
        std::deque<int> bfs{a};
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop_front();
            for (int v : t.adj_[u])
                if (parent[v] == -2) {
                    parent[v] = u;
                    bfs.push_back(v);
                }
        }
        for (int c = 0; c < t.n_; ++c) {
            Mask m = 0;
            for (int x = c; x != -1; x = parent[x]) m |= bit(x);
            t.itv_[static_cast<std::size_t>(a) * t.n_ + c] = m;
        }
    }
    t.finish_build();
    return t;
}

BetweennessStructure BetweennessStructure::from_order(const std::vector<std::string>& points) {
    BetweennessStructure t;
    t.backend_ = Backend::Order;
    for (const auto& p : points) add_point(t.names_, t.index_, p);
    if (t.names_.size() != points.size()) throw std::invalid_argument("duplicate point in order");
    t.n_ = static_cast<int>(t.names_.size());
    if (t.n_ == 0) throw std::invalid_argument("empty order");
    t.rank_.assign(t.n_, 0);
    for (int i = 0; i < t.n_; ++i) t.rank_[i] = i;  // names listed in order
    t.itv_.assign(static_cast<std::size_t>(t.n_) * t.n_, 0);
    for (int u = 0; u < t.n_; ++u)
        for (int v = 0; v < t.n_; ++v) {
            auto [lo, hi] = std::minmax(t.rank_[u], t.rank_[v]);
            Mask m = 0;
            for (int x = 0; x < t.n_; ++x)
                if (t.rank_[x] >= lo && t.rank_[x] <= hi) m |= bit(x);
            t.itv_[static_cast<std::size_t>(u) * t.n_ + v] = m;
        }
    t.finish_build();
    return t;
}

BetweennessStructure BetweennessStructure::from_triples(const std::vector<std::string>& points,
                                                        const std::vector<Triple>& triples) {
    BetweennessStructure t;
    t.backend_ = Backend::Explicit;
    for (const auto& p : points) add_point(t.names_, t.index_, p);
    for (const auto& tr : triples) {
        add_point(t.names_, t.index_, tr.a);
        add_point(t.names_, t.index_, tr.b);
        add_point(t.names_, t.index_, tr.c);
    }
    t.n_ = static_cast<int>(t.names_.size());
    if (t.n_ == 0) throw std::invalid_argument("empty relation");
    t.itv_.assign(static_cast<std::size_t>(t.n_) * t.n_, 0);
    // (a,b,c) and (c,b,a) share one record, so B1 holds by representation
    for (const auto& tr : triples) {
        int a = t.index_[tr.a], b = t.index_[tr.b], c = t.index_[tr.c];
        t.itv_[static_cast<std::size_t>(a) * t.n_ + c] |= bit(b);
        t.itv_[static_cast<std::size_t>(c) * t.n_ + a] |= bit(b);
    }
    t.finish_build();
    return t;
}

BetweennessStructure BetweennessStructure::path(int k) {
    if (k < 1) throw std::invalid_argument("path needs at least one point");
    if (k == 1) return from_tree({}, {"0"});
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i + 1 < k; ++i) edges.emplace_back(std::to_string(i), std::to_string(i + 1));
    return from_tree(edges);
}

BetweennessStructure BetweennessStructure::star(const std::string& center,
                                                const std::vector<std::string>& leaves) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& l : leaves) edges.emplace_back(center, l);
    return from_tree(edges);
}

BetweennessStructure BetweennessStructure::antichain(const std::vector<std::string>& points) {
    std::vector<Triple> triples;
    for (const auto& u : points)
        for (const auto& v : points) {
            triples.push_back({u, u, v});
            triples.push_back({u, v, v});
        }
    return from_triples(points, triples);
}

void BetweennessStructure::finish_build() {
    shd_.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (int v = 0; v < n_; ++v)
        for (int u = 0; u < n_; ++u) {
            Mask m = 0;
            for (int x = 0; x < n_; ++x)
                if (has_bit(interval_mask_idx(x, v), u)) m |= bit(x);
            shd_[static_cast<std::size_t>(v) * n_ + u] = m;
        }
}

bool BetweennessStructure::between(const std::string& a, const std::string& b,
                                   const std::string& c) const {
    return between_idx(index(a), index(b), index(c));
}

Mask BetweennessStructure::interval_mask(const std::string& u, const std::string& v) const {
    return interval_mask_idx(index(u), index(v));
}

std::vector<std::string> BetweennessStructure::interval(const std::string& u,
                                                        const std::string& v) const {
    return to_names(interval_mask(u, v));
}

std::vector<std::string> BetweennessStructure::to_names(Mask m) const {
    std::vector<std::string> out;
    for (int i = 0; i < n_; ++i)
        if (has_bit(m, i)) out.push_back(names_[i]);
    return out;
}

Mask BetweennessStructure::to_mask(const std::vector<std::string>& points) const {
    Mask m = 0;
    for (const auto& p : points) m |= bit(index(p));
    return m;
}

bool AxiomReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

const AxiomCheck* AxiomReport::find(const std::string& axiom) const {
    for (const auto& c : checks)
        if (c.axiom == axiom) return &c;
    return nullptr;
}

namespace {

constexpr int kMaxWitnesses = 3;

void record(AxiomCheck& check, std::initializer_list<const std::string*> pts) {
    check.pass = false;
    if (static_cast<int>(check.witnesses.size()) >= kMaxWitnesses) return;
    std::vector<std::string> w;
    for (const auto* p : pts) w.push_back(*p);
    check.witnesses.push_back(std::move(w));
}

}  // namespace

AxiomReport check_axioms(const BetweennessStructure& T) {
    const int n = T.size();
    const Mask full = T.full_mask();
    const auto& nm = T.point_names();
    AxiomReport rep;

    AxiomCheck b1{"B1", true, {}};
    for (int a = 0; a < n && b1.witnesses.size() < kMaxWitnesses; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (T.between_idx(a, b, c) != T.between_idx(c, b, a)) record(b1, {&nm[a], &nm[b], &nm[c]});

    AxiomCheck b2{"B2", true, {}};
    for (int a = 0; a < n && b2.witnesses.size() < kMaxWitnesses; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                bool both = T.between_idx(a, b, c) && T.between_idx(a, c, b);
                if (both != (b == c)) record(b2, {&nm[a], &nm[b], &nm[c]});
            }

    AxiomCheck b3{"B3", true, {}};
    for (int a = 0; a < n && b3.witnesses.size() < kMaxWitnesses; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (!T.between_idx(a, b, c)) continue;
                // {d : <a,b,d>} | {d : <d,b,c>} must cover every d
                Mask ok = T.shadow_mask_idx(b, a) | T.shadow_mask_idx(b, c);
                if (ok != full) {
                    int d = __builtin_ctzll(~ok & full);
                    record(b3, {&nm[a], &nm[b], &nm[c], &nm[d]});
                }
            }

    AxiomCheck a0{"A0", true, {}};
    AxiomCheck a1{"A1", true, {}};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Mask m = T.interval_mask_idx(a, b);
            if ((m & (bit(a) | bit(b))) != (bit(a) | bit(b)))
                if (a0.witnesses.size() < kMaxWitnesses) record(a0, {&nm[a], &nm[b]});
            if (m != T.interval_mask_idx(b, a))
                if (a1.witnesses.size() < kMaxWitnesses) record(a1, {&nm[a], &nm[b]});
        }

    AxiomCheck a2{"A2", true, {}};
    for (int a = 0; a < n && a2.witnesses.size() < kMaxWitnesses; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (b != c && T.between_idx(a, c, b) && T.between_idx(a, b, c))
                    record(a2, {&nm[a], &nm[b], &nm[c]});

    AxiomCheck a3{"A3", true, {}};
    AxiomCheck a4{"A4", true, {}};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Mask ab = T.interval_mask_idx(a, b);
            for (int c = 0; c < n; ++c) {
                Mask split = T.interval_mask_idx(a, c) | T.interval_mask_idx(c, b);
                if ((ab & ~split) != 0 && a3.witnesses.size() < kMaxWitnesses)
                    record(a3, {&nm[a], &nm[b], &nm[c]});
                if (has_bit(ab, c) && ab != split && a4.witnesses.size() < kMaxWitnesses)
                    record(a4, {&nm[a], &nm[b], &nm[c]});
            }
        }

    AxiomCheck a5{"A5", true, {}};
    for (int a = 0; a < n && a5.witnesses.size() < kMaxWitnesses; ++a)
        for (int c = 0; c < n; ++c) {
            Mask bs = T.interval_mask_idx(a, c);       // b with b in [a,c]
            Mask ds = T.shadow_mask_idx(c, a);         // d with c in [a,d]
            for (int b = 0; b < n; ++b) {
                if (!has_bit(bs, b)) continue;
                Mask good = T.shadow_mask_idx(c, b);   // d with c in [b,d]
                Mask bad = ds & ~good;
                if (bad != 0) {
                    int d = __builtin_ctzll(bad);
                    record(a5, {&nm[a], &nm[b], &nm[c], &nm[d]});
                }
            }
        }

    rep.checks = {b1, b2, b3, a0, a1, a2, a3, a4, a5};
    return rep;
}

int median_idx(const BetweennessStructure& T, int a, int b, int c) {
    Mask m = T.interval_mask_idx(a, b) & T.interval_mask_idx(a, c) & T.interval_mask_idx(b, c);
    int k = popcount(m);
    if (k == 0) return -1;
    if (k > 1)
        throw StructuralInconsistency("median of (" + T.name(a) + "," + T.name(b) + "," + T.name(c) +
                                      ") is not a singleton; input is not a pretree");
    return __builtin_ctzll(m);
}

std::optional<std::string> median(const BetweennessStructure& T, const std::string& a,
                                  const std::string& b, const std::string& c) {
    int m = median_idx(T, T.index(a), T.index(b), T.index(c));
    if (m < 0) return std::nullopt;
    return T.name(m);
}

bool is_median_pretree(const BetweennessStructure& T) {
    const int n = T.size();
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = b; c < n; ++c)
                if (median_idx(T, a, b, c) < 0) return false;
    return true;
}

namespace {

// Flat n^3 median table; entry 0xff marks an empty median.
std::vector<std::uint8_t> median_table(const BetweennessStructure& T) {
    const int n = T.size();
    std::vector<std::uint8_t> med(static_cast<std::size_t>(n) * n * n, 0xff);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                int m = median_idx(T, a, b, c);
                if (m >= 0) med[(static_cast<std::size_t>(a) * n + b) * n + c] = static_cast<std::uint8_t>(m);
            }
    return med;
}

}  // namespace

AxiomReport check_median_algebra(const BetweennessStructure& T) {
    const int n = T.size();
    const auto& nm = T.point_names();
    auto med = median_table(T);
    for (auto v : med)
        if (v == 0xff) throw std::invalid_argument("check_median_algebra requires a median pretree");
    auto M = [&](int a, int b, int c) -> int {
        return med[(static_cast<std::size_t>(a) * n + b) * n + c];
    };

    AxiomCheck m1{"M1", true, {}};
    for (int x = 0; x < n && m1.witnesses.size() < kMaxWitnesses; ++x)
        for (int y = 0; y < n; ++y)
            if (M(x, x, y) != x) record(m1, {&nm[x], &nm[y]});

    AxiomCheck m2{"M2", true, {}};
    for (int x = 0; x < n && m2.witnesses.size() < kMaxWitnesses; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                int v = M(x, y, z);
                if (M(x, z, y) != v || M(y, x, z) != v || M(y, z, x) != v || M(z, x, y) != v ||
                    M(z, y, x) != v)
                    record(m2, {&nm[x], &nm[y], &nm[z]});
            }

    AxiomCheck m3{"M3", true, {}};
    // With M2 verified, m is symmetric in its last two arguments, so the
    // quintuple space can be folded by u<=v and y<=z without losing
    // exhaustiveness.
    const bool fold = m2.pass;
    const std::uint8_t* tab = med.data();
    std::array<std::uint8_t, 64> A{};
    for (int u = 0; u < n && m3.pass; ++u) {
        for (int v = fold ? u : 0; v < n && m3.pass; ++v) {
            for (int w = 0; w < n; ++w) A[w] = tab[(static_cast<std::size_t>(w) * n + u) * n + v];
            for (int x = 0; x < n && m3.pass; ++x) {
                for (int y = 0; y < n; ++y) {
                    const std::uint8_t* Mxy = tab + (static_cast<std::size_t>(x) * n + y) * n;
                    const std::uint8_t* MxAy = tab + (static_cast<std::size_t>(x) * n + A[y]) * n;
                    for (int z = fold ? y : 0; z < n; ++z) {
                        if (A[Mxy[z]] != MxAy[A[z]]) {
                            record(m3, {&nm[x], &nm[y], &nm[z], &nm[u], &nm[v]});
                            break;
                        }
                    }
                    if (!m3.pass) break;
                }
            }
        }
    }

    AxiomReport rep;
    rep.checks = {m1, m2, m3};
    return rep;
}

bool is_convex(const BetweennessStructure& T, Mask subset) {
    const int n = T.size();
    for (int u = 0; u < n; ++u) {
        if (!has_bit(subset, u)) continue;
        for (int v = u; v < n; ++v) {
            if (!has_bit(subset, v)) continue;
            if ((T.interval_mask_idx(u, v) & ~subset) != 0) return false;
        }
    }
    return true;
}

bool is_convex(const BetweennessStructure& T, const std::vector<std::string>& subset) {
    return is_convex(T, T.to_mask(subset));
}

std::vector<int> interval_chain(const BetweennessStructure& T, int u, int v) {
    std::vector<int> chain;
    Mask m = T.interval_mask_idx(u, v);
    for (int x = 0; x < T.size(); ++x)
        if (has_bit(m, x)) chain.push_back(x);
    std::sort(chain.begin(), chain.end(),
              [&](int x, int y) { return x != y && T.between_idx(x, y, v); });
    return chain;
}

Mapping Mapping::from_names(const BetweennessStructure& source, const BetweennessStructure& target,
                            const std::vector<std::pair<std::string, std::string>>& pairs) {
    Mapping f;
    f.source = &source;
    f.target = &target;
    f.table.assign(source.size(), -1);
    for (const auto& [s, t] : pairs) f.table[source.index(s)] = target.index(t);
    for (int i = 0; i < source.size(); ++i)
        if (f.table[i] < 0)
            throw std::invalid_argument("mapping is not total: missing image of " + source.name(i));
    return f;
}

namespace {

MonotoneVerdict check_monotone_b(const Mapping& f) {
    const auto& S = *f.source;
    const auto& T = *f.target;
    const int n = S.size();
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w)
            for (int v = 0; v < n; ++v) {
                if (!S.between_idx(u, w, v)) continue;
                if (!T.between_idx(f.table[u], f.table[w], f.table[v]))
                    return {false, {S.name(u), S.name(w), S.name(v)}, {}};
            }
    return {};
}

MonotoneVerdict check_monotone_c(const Mapping& f) {
    const auto& S = *f.source;
    const auto& T = *f.target;
    if (S.backend() == Backend::Explicit || T.backend() == Backend::Explicit)
        throw std::invalid_argument("mode C is undefined on explicit backends");
    if (T.size() > 16) throw std::invalid_argument("mode C target limited to 16 points");
    const Mask tfull = T.full_mask();
    for (Mask A = 1; A <= tfull; ++A) {
        if (!is_convex(T, A)) continue;
        Mask pre = 0;
        for (int x = 0; x < S.size(); ++x)
            if (has_bit(A, f.table[x])) pre |= bit(x);
        if (pre != 0 && !is_convex(S, pre)) return {false, {}, T.to_names(A)};
    }
    return {};
}

}  // namespace

MonotoneVerdict check_monotone(const Mapping& f, MonotoneMode mode) {
    if (!f.source || !f.target) throw std::invalid_argument("mapping without structures");
    return mode == MonotoneMode::B ? check_monotone_b(f) : check_monotone_c(f);
}

EquivalenceReport monotone_equivalence(const BetweennessStructure& source,
                                       const BetweennessStructure& target) {
    if (source.backend() != Backend::Tree || target.backend() != Backend::Tree)
        throw std::invalid_argument("monotone_equivalence requires tree backends");
    if (source.size() > 6 || target.size() > 6)
        throw std::invalid_argument("monotone_equivalence size limit exceeded (6 points)");
    const int ns = source.size(), nt = target.size();

    // Precompute convexity of every subset on both sides.
    std::vector<char> src_convex(std::size_t{1} << ns), tgt_convex(std::size_t{1} << nt);
    for (Mask m = 0; m < (Mask{1} << ns); ++m) src_convex[m] = is_convex(source, m);
    std::vector<Mask> tgt_convex_sets;
    for (Mask m = 1; m < (Mask{1} << nt); ++m)
        if (is_convex(target, m)) tgt_convex_sets.push_back(m);

    EquivalenceReport rep;
    std::vector<int> f(ns, 0);
    while (true) {
        ++rep.total_maps;
        bool bmono = true;
        for (int u = 0; u < ns && bmono; ++u)
            for (int w = 0; w < ns && bmono; ++w)
                for (int v = 0; v < ns; ++v)
                    if (source.between_idx(u, w, v) && !target.between_idx(f[u], f[w], f[v])) {
                        bmono = false;
                        break;
                    }
        bool cmono = true;
        for (Mask A : tgt_convex_sets) {
            Mask pre = 0;
            for (int x = 0; x < ns; ++x)
                if (has_bit(A, f[x])) pre |= bit(x);
            if (!src_convex[pre]) {
                cmono = false;
                break;
            }
        }
        if (bmono != cmono) {
            ++rep.disagreements;
            if (!rep.counterexample) {
                Mapping m;
                m.source = &source;
                m.target = &target;
                m.table = f;
                rep.counterexample = m;
            }
        }
        int i = 0;
        for (; i < ns; ++i) {
            if (++f[i] < nt) break;
            f[i] = 0;
        }
        if (i == ns) break;
    }
    return rep;
}

}  // namespace treelab
