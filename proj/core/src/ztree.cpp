#include "treelab/ztree.hpp"

#include <algorithm>
#include <climits>
#include <deque>

namespace treelab {

RuleTree RuleTree::rooted(int k) {
    if (k < 1 || k > 10) throw std::invalid_argument("rooted arity must be in 1..10");
    return {Kind::Rooted, k};
}

RuleTree RuleTree::free_group(int rank) {
    if (rank < 1 || rank > 13) throw std::invalid_argument("free-group rank must be in 1..13");
    return {Kind::FreeGroup, rank};
}

bool RuleTree::valid_letter(char c) const {
    if (kind == Kind::Rooted) return c >= '0' && c < '0' + arity;
    if (c >= 'a' && c < 'a' + arity) return true;
    return c >= 'A' && c < 'A' + arity;
}

char RuleTree::inverse(char c) const {
    if (kind != Kind::FreeGroup)
        throw std::invalid_argument("inverse letters exist only for free groups");
    if (c >= 'a' && c < 'a' + arity) return static_cast<char>(c - 'a' + 'A');
    if (c >= 'A' && c < 'A' + arity) return static_cast<char>(c - 'A' + 'a');
    throw std::invalid_argument(std::string("invalid letter: ") + c);
}

bool RuleTree::is_reduced(const Word& w) const {
    for (char c : w)
        if (!valid_letter(c)) return false;
    if (kind == Kind::FreeGroup)
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i + 1] == inverse(w[i])) return false;
    return true;
}

void RuleTree::validate_word(const Word& w) const {
    for (char c : w)
        if (!valid_letter(c)) throw std::invalid_argument(std::string("invalid letter: ") + c);
    if (kind == Kind::FreeGroup && !is_reduced(w))
        throw std::invalid_argument("non-reduced free-group word: " + w);
}

Word RuleTree::reduce_concat(const Word& lhs, const Word& rhs) const {
    if (kind == Kind::Rooted) return lhs + rhs;
    Word out = lhs;
    for (char c : rhs) {
        if (!out.empty() && out.back() == inverse(c))
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

Word RuleTree::invert_word(const Word& w) const {
    Word out(w.rbegin(), w.rend());
    for (char& c : out) c = inverse(c);
    return out;
}

std::vector<char> RuleTree::letters() const {
    std::vector<char> out;
    if (kind == Kind::Rooted) {
        for (int i = 0; i < arity; ++i) out.push_back(static_cast<char>('0' + i));
    } else {
        for (int i = 0; i < arity; ++i) {
            out.push_back(static_cast<char>('a' + i));
            out.push_back(static_cast<char>('A' + i));
        }
    }
    return out;
}

ExtendedPoint ExtendedPoint::vertex(const RuleTree& t, Word w) {
    t.validate_word(w);
    ExtendedPoint p;
    p.pre = std::move(w);
    return p;
}

std::string ExtendedPoint::str() const {
    if (!is_end) return "v:" + pre;
    return "e:" + pre + ":" + per;
}

namespace {

Word rotate_left(const Word& w, std::size_t k) {
    k %= w.size();
    return w.substr(k) + w.substr(0, k);
}

}  // namespace

ExtendedPoint canonicalize_end(const RuleTree& t, Word pre, Word per) {
    if (per.empty()) throw std::invalid_argument("end period must be nonempty");
    t.validate_word(pre);
    t.validate_word(per);

    if (t.kind == RuleTree::Kind::FreeGroup) {
        // cyclic reduction of the period moves letters onto the preperiod
        // (reducing against its tail)
        while (per.size() >= 2 && per.front() == t.inverse(per.back())) {
            if (!pre.empty() && pre.back() == t.inverse(per.front()))
                pre.pop_back();
            else
                pre.push_back(per.front());
            per = per.substr(1, per.size() - 2);
        }
        if (per.empty()) throw std::invalid_argument("end period cancels to the identity");
        // boundary cancellation rotates the period
        while (!pre.empty() && pre.back() == t.inverse(per.front())) {
            pre.pop_back();
            per = rotate_left(per, 1);
        }
    }

    // primitive period
    for (std::size_t d = 1; d <= per.size() / 2; ++d) {
        if (per.size() % d != 0) continue;
        bool repeats = true;
        for (std::size_t i = d; i < per.size() && repeats; ++i)
            if (per[i] != per[i % d]) repeats = false;
        if (repeats) {
            per = per.substr(0, d);
            break;
        }
    }

    // shortest preperiod: while the preperiod ends with the period's last
    // letter, the phase rotates one step back
    while (!pre.empty() && pre.back() == per.back()) {
        pre.pop_back();
        per = per.back() + per.substr(0, per.size() - 1);
    }

    ExtendedPoint p;
    p.is_end = true;
    p.pre = std::move(pre);
    p.per = std::move(per);
    return p;
}

std::optional<char> expansion_letter(const ExtendedPoint& p, long long i) {
    if (i < static_cast<long long>(p.pre.size())) return p.pre[static_cast<std::size_t>(i)];
    if (!p.is_end) return std::nullopt;
    return p.per[static_cast<std::size_t>(i - p.pre.size()) % p.per.size()];
}

Word expansion_prefix(const ExtendedPoint& p, long long len) {
    Word out;
    for (long long i = 0; i < len; ++i) {
        auto c = expansion_letter(p, i);
        if (!c) break;
        out.push_back(*c);
    }
    return out;
}

Confluence confluence(const RuleTree&, const ExtendedPoint& x, const ExtendedPoint& y) {
    if (x == y) return {true, 0};
    long long bound = static_cast<long long>(x.pre.size() + y.pre.size() +
                                             std::max<std::size_t>(1, x.per.size()) *
                                                 std::max<std::size_t>(1, y.per.size())) +
                      4;
    for (long long i = 0;; ++i) {
        auto a = expansion_letter(x, i);
        auto b = expansion_letter(y, i);
        if (!a || !b || *a != *b) return {false, i};
        if (i > bound) throw std::logic_error("confluence bound exceeded for distinct points");
    }
}

namespace {

bool prefix_of_expansion(const ExtendedPoint& p, const Word& w) {
    if (!p.is_end && w.size() > p.pre.size()) return false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto c = expansion_letter(p, static_cast<long long>(i));
        if (!c || *c != w[i]) return false;
    }
    return true;
}

}  // namespace

bool between_ext(const RuleTree& t, const ExtendedPoint& u, const ExtendedPoint& w,
                 const ExtendedPoint& v) {
    if (w == u || w == v) return true;
    if (u == v) return false;
    if (w.is_end) return false;  // a third end never lies on a geodesic
    long long d = confluence(t, u, v).depth;
    if (static_cast<long long>(w.pre.size()) < d) return false;
    return prefix_of_expansion(u, w.pre) || prefix_of_expansion(v, w.pre);
}

ExtendedPoint median_ext(const RuleTree& t, const ExtendedPoint& a, const ExtendedPoint& b,
                         const ExtendedPoint& c) {
    if (a == b || a == c) return a;
    if (b == c) return b;
    long long dab = confluence(t, a, b).depth;
    long long dac = confluence(t, a, c).depth;
    long long dbc = confluence(t, b, c).depth;
    long long m = std::max({dab, dac, dbc});
    const ExtendedPoint& rep = (dab == m || dac == m) ? a : b;
    return ExtendedPoint::vertex(t, expansion_prefix(rep, m));
}

BetweennessStructure induced_structure(const RuleTree& t, const std::vector<ExtendedPoint>& pts) {
    std::vector<std::string> names;
    for (const auto& p : pts) names.push_back(p.str());
    std::vector<Triple> triples;
    for (const auto& u : pts)
        for (const auto& w : pts)
            for (const auto& v : pts)
                if (between_ext(t, u, w, v)) triples.push_back({u.str(), w.str(), v.str()});
    return BetweennessStructure::from_triples(names, triples);
}

const Generator& TreeAction::generator(const std::string& name) const {
    return generators.at(static_cast<std::size_t>(generator_index(name)));
}

int TreeAction::generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown generator: " + name);
}

TreeAction make_action(RuleTree tree, std::vector<Generator> gens) {
    TreeAction a;
    a.tree = tree;
    for (const auto& g : gens) {
        if (g.name.empty()) throw std::invalid_argument("generator needs a name");
        for (const auto& other : a.generators)
            if (other.name == g.name) throw std::invalid_argument("duplicate generator: " + g.name);
        switch (g.kind) {
            case Generator::Kind::Translate:
                if (tree.kind != RuleTree::Kind::FreeGroup)
                    throw std::invalid_argument("translations act on free-group trees");
                tree.validate_word(g.word);
                break;
            case Generator::Kind::Odometer:
                if (tree.kind != RuleTree::Kind::Rooted || tree.arity != 2)
                    throw std::invalid_argument("the odometer acts on the rooted binary tree");
                break;
            case Generator::Kind::Relabel: {
                if (tree.kind != RuleTree::Kind::Rooted)
                    throw std::invalid_argument("relabeling acts on rooted trees");
                if (static_cast<int>(g.perm.size()) != tree.arity)
                    throw std::invalid_argument("relabel permutation size mismatch");
                std::vector<char> seen(static_cast<std::size_t>(tree.arity), 0);
                for (int v : g.perm) {
                    if (v < 0 || v >= tree.arity || seen[static_cast<std::size_t>(v)])
                        throw std::invalid_argument("relabel permutation is not a bijection");
                    seen[static_cast<std::size_t>(v)] = 1;
                }
                break;
            }
            case Generator::Kind::SwapVertices:
                tree.validate_word(g.swap_a);
                tree.validate_word(g.swap_b);
                break;
        }
        a.generators.push_back(g);
    }
    return a;
}

GroupWord parse_group_word(const TreeAction& a, const std::string& text) {
    GroupWord g;
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        int sign = 1;
        std::string name = tok;
        if (name.size() > 3 && name.substr(name.size() - 3) == "^-1") {
            sign = -1;
            name = name.substr(0, name.size() - 3);
        }
        g.emplace_back(a.generator_index(name), sign);
        tok.clear();
    };
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '*')
            flush();
        else
            tok.push_back(c);
    }
    flush();
    return g;
}

std::string group_word_str(const TreeAction& a, const GroupWord& g) {
    if (g.empty()) return "e";
    std::string out;
    for (const auto& [idx, sign] : g) {
        if (!out.empty()) out += ' ';
        out += a.generators[static_cast<std::size_t>(idx)].name;
        if (sign < 0) out += "^-1";
    }
    return out;
}

namespace {

ExtendedPoint apply_translate(const RuleTree& t, const Word& word, const ExtendedPoint& x) {
    if (!x.is_end) return ExtendedPoint::vertex(t, t.reduce_concat(word, x.pre));
    Word w = t.reduce_concat(word, x.pre);
    Word per = x.per;
    std::size_t i = 0;
    while (!w.empty() && w.back() == t.inverse(per[i % per.size()])) {
        w.pop_back();
        ++i;
    }
    return canonicalize_end(t, w, rotate_left(per, i % per.size()));
}

// LSB-first add-one (or subtract-one) with carry: carry digits flip until
// the first absorbing digit flips back.
ExtendedPoint apply_odometer(const RuleTree& t, bool add, const ExtendedPoint& x) {
    const char stop = add ? '0' : '1';
    if (!x.is_end) {
        Word w = x.pre;
        for (auto& c : w) {
            bool absorbed = (c == stop);
            c = (c == '1') ? '0' : '1';
            if (absorbed) break;
        }
        return ExtendedPoint::vertex(t, w);  // with no absorber the carry wraps
    }
    long long horizon = static_cast<long long>(x.pre.size() + x.per.size());
    long long j = -1;
    for (long long i = 0; i < horizon; ++i)
        if (*expansion_letter(x, i) == stop) {
            j = i;
            break;
        }
    if (j < 0) return canonicalize_end(t, "", Word(1, stop));  // infinite carry
    long long P = std::max<long long>(static_cast<long long>(x.pre.size()), j + 1);
    Word pre;
    for (long long i = 0; i < P; ++i) {
        if (i < j)
            pre.push_back(stop == '0' ? '0' : '1');
        else if (i == j)
            pre.push_back(stop == '0' ? '1' : '0');
        else
            pre.push_back(*expansion_letter(x, i));
    }
    std::size_t phase =
        static_cast<std::size_t>(P - static_cast<long long>(x.pre.size())) % x.per.size();
    return canonicalize_end(t, pre, rotate_left(x.per, phase));
}

ExtendedPoint apply_relabel(const RuleTree& t, const std::vector<int>& perm, bool forward,
                            const ExtendedPoint& x) {
    std::vector<int> map(perm.size());
    if (forward)
        for (std::size_t i = 0; i < perm.size(); ++i) map[i] = perm[i];
    else
        for (std::size_t i = 0; i < perm.size(); ++i) map[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    auto remap = [&](Word w) {
        for (auto& c : w) c = static_cast<char>('0' + map[static_cast<std::size_t>(c - '0')]);
        return w;
    };
    if (!x.is_end) return ExtendedPoint::vertex(t, remap(x.pre));
    return canonicalize_end(t, remap(x.pre), remap(x.per));
}

}  // namespace

ExtendedPoint apply_generator(const TreeAction& a, int gen, int sign, const ExtendedPoint& x) {
    const Generator& g = a.generators.at(static_cast<std::size_t>(gen));
    switch (g.kind) {
        case Generator::Kind::Translate:
            return apply_translate(a.tree, sign > 0 ? g.word : a.tree.invert_word(g.word), x);
        case Generator::Kind::Odometer:
            return apply_odometer(a.tree, sign > 0, x);
        case Generator::Kind::Relabel:
            return apply_relabel(a.tree, g.perm, sign > 0, x);
        case Generator::Kind::SwapVertices: {
            if (x.is_end) return x;
            if (x.pre == g.swap_a) return ExtendedPoint::vertex(a.tree, g.swap_b);
            if (x.pre == g.swap_b) return ExtendedPoint::vertex(a.tree, g.swap_a);
            return x;
        }
    }
    throw std::logic_error("unreachable generator kind");
}

ExtendedPoint act(const TreeAction& a, const GroupWord& g, const ExtendedPoint& x) {
    ExtendedPoint y = x;
    for (auto it = g.rbegin(); it != g.rend(); ++it) y = apply_generator(a, it->first, it->second, y);
    return y;
}

ExtendedPoint random_point(const RuleTree& t, Rng& rng, int max_depth) {
    auto letters = t.letters();
    auto random_word = [&](int len) {
        Word w;
        char prev = 0;
        for (int i = 0; i < len; ++i) {
            char c;
            do {
                c = letters[rng() % letters.size()];
            } while (t.kind == RuleTree::Kind::FreeGroup && prev != 0 && c == t.inverse(prev));
            w.push_back(c);
            prev = c;
        }
        return w;
    };
    if (rng() % 2 == 0)
        return ExtendedPoint::vertex(
            t, random_word(static_cast<int>(rng() % static_cast<std::uint64_t>(max_depth + 1))));
    Word pre = random_word(static_cast<int>(rng() % 4));
    Word per = random_word(1 + static_cast<int>(rng() % 3));
    return canonicalize_end(t, pre, per);
}

ActionMonotoneReport check_action_monotone(const TreeAction& a, long long sample_size,
                                           std::uint64_t seed) {
    ActionMonotoneReport rep;
    rep.samples = sample_size;
    for (long long s = 0; s < sample_size; ++s) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
        auto p1 = random_point(a.tree, rng);
        auto p2 = random_point(a.tree, rng);
        auto p3 = random_point(a.tree, rng);
        auto m = median_ext(a.tree, p1, p2, p3);
        for (int gi = 0; gi < static_cast<int>(a.generators.size()); ++gi)
            for (int sign : {1, -1}) {
                auto lhs = apply_generator(a, gi, sign, m);
                auto rhs = median_ext(a.tree, apply_generator(a, gi, sign, p1),
                                      apply_generator(a, gi, sign, p2),
                                      apply_generator(a, gi, sign, p3));
                if (!(lhs == rhs)) {
                    rep.pass = false;
                    if (rep.witness.empty())
                        rep.witness = a.generators[static_cast<std::size_t>(gi)].name +
                                      (sign < 0 ? "^-1" : "") + " on (" + p1.str() + "," + p2.str() +
                                      "," + p3.str() + ")";
                }
            }
    }
    return rep;
}

std::variant<ProximalityCertificate, SearchNotFound> detect_proximal(const TreeAction& a,
                                                                     const ExtendedPoint& x,
                                                                     const ExtendedPoint& y,
                                                                     long long target_depth,
                                                                     int search_len) {
    if (target_depth < 1) throw std::invalid_argument("target depth must be positive");
    if (x == y) {
        ProximalityCertificate cert;
        cert.elements.push_back({});
        cert.depths.push_back(target_depth);
        return cert;
    }
    struct Node {
        GroupWord word;
        ExtendedPoint gx, gy;
    };
    auto depth_of = [&](const ExtendedPoint& u, const ExtendedPoint& v) -> long long {
        auto c = confluence(a.tree, u, v);
        return c.equal ? LLONG_MAX : c.depth;
    };
    std::vector<std::optional<GroupWord>> level(static_cast<std::size_t>(target_depth) + 1);
    std::vector<long long> level_depth(static_cast<std::size_t>(target_depth) + 1, 0);
    long long filled = 0;
    auto note = [&](const GroupWord& w, long long d) {
        for (long long l = 1; l <= std::min(d, target_depth); ++l) {
            auto& slot = level[static_cast<std::size_t>(l)];
            if (!slot) {
                slot = w;
                level_depth[static_cast<std::size_t>(l)] = d;
                ++filled;
            }
        }
    };
    std::deque<Node> queue;
    note({}, depth_of(x, y));
    queue.push_back({{}, x, y});
    long long explored = 1;
    while (!queue.empty() && filled < target_depth) {
        Node node = queue.front();
        queue.pop_front();
        if (static_cast<int>(node.word.size()) >= search_len) continue;
        for (int gi = 0; gi < static_cast<int>(a.generators.size()) && filled < target_depth; ++gi)
            for (int sign : {1, -1}) {
                if (!node.word.empty() && node.word.front().first == gi &&
                    node.word.front().second == -sign)
                    continue;  // immediate cancellation
                Node next;
                next.word = node.word;
                next.word.insert(next.word.begin(), {gi, sign});
                next.gx = apply_generator(a, gi, sign, node.gx);
                next.gy = apply_generator(a, gi, sign, node.gy);
                note(next.word, depth_of(next.gx, next.gy));
                if (filled >= target_depth) break;
                queue.push_back(std::move(next));
                if (++explored > 2'000'000)
                    throw std::invalid_argument("proximality search space too large");
            }
    }
    if (filled < target_depth) return SearchNotFound{search_len};
    ProximalityCertificate cert;
    for (long long l = 1; l <= target_depth; ++l) {
        const auto& w = *level[static_cast<std::size_t>(l)];
        if (!cert.elements.empty() && cert.elements.back() == w) continue;
        cert.elements.push_back(w);
        cert.depths.push_back(std::min(level_depth[static_cast<std::size_t>(l)], target_depth));
    }
    return cert;
}

CylinderReport cylinder_dynamics(const TreeAction& a, int k) {
    if (k < 1 || k > 16) throw std::invalid_argument("cylinder depth must be in 1..16");
    if (a.generators.empty() || a.generators[0].kind != Generator::Kind::Odometer)
        throw std::invalid_argument("cylinder_dynamics requires an odometer action");
    const long long count = 1LL << k;
    std::vector<long long> image(static_cast<std::size_t>(count));
    for (long long v = 0; v < count; ++v) {
        Word w;
        for (int i = 0; i < k; ++i) w.push_back(((v >> i) & 1) ? '1' : '0');
        auto out = apply_generator(a, 0, 1, ExtendedPoint::vertex(a.tree, w));
        long long u = 0;
        for (int i = 0; i < k; ++i)
            if (out.pre[static_cast<std::size_t>(i)] == '1') u |= 1LL << i;
        image[static_cast<std::size_t>(v)] = u;
    }
    std::vector<char> seen(static_cast<std::size_t>(count), 0);
    CylinderReport rep;
    rep.depth = k;
    for (long long v = 0; v < count; ++v) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        long long len = 0, cur = v;
        while (!seen[static_cast<std::size_t>(cur)]) {
            seen[static_cast<std::size_t>(cur)] = 1;
            cur = image[static_cast<std::size_t>(cur)];
            ++len;
        }
        rep.cycle_lengths.push_back(len);
    }
    std::sort(rep.cycle_lengths.rbegin(), rep.cycle_lengths.rend());
    return rep;
}

std::set<Word> omega_limit_approx(const TreeAction& a, const ExtendedPoint& x, int k,
                                  long long steps) {
    if (a.generators.size() != 1)
        throw std::invalid_argument("omega_limit_approx requires a cyclic (single generator) action");
    if (!x.is_end && static_cast<int>(x.pre.size()) < k)
        throw std::invalid_argument("point is too shallow for depth-k cylinders");
    std::set<Word> visited;
    ExtendedPoint cur = x;
    for (long long i = 0; i < steps; ++i) {
        visited.insert(expansion_prefix(cur, k));
        cur = apply_generator(a, 0, 1, cur);
    }
    return visited;
}

namespace {

// Exact check of g.(Y \ [w]) in [w'] by pruned descent over reduced
// cylinder prefixes: a branch is decided as soon as it lies inside [w]
// (excluded from A) or it has diverged from w with the cancellation
// against g settled and |w'| image letters determined. Every
// depth-(|w|+|g|) cylinder is covered by a decided ancestor, so the
// verdict equals full cylinder enumeration.
struct EpChecker {
    const RuleTree& t;
    const Word& g;
    Word ginv;
    const Word& w;
    const Word& wp;
    long long depth;  // |w| + |g|
    std::vector<char> letters;

    bool run() {
        Word q;
        return rec(q);
    }

    bool rec(Word& q) {
        const std::size_t len = q.size();
        bool membership_open = false;
        if (len <= w.size() && std::equal(q.begin(), q.end(), w.begin())) {
            if (len == w.size()) return true;  // inside [w]: excluded
            membership_open = true;
        }
        if (!membership_open) {
            std::size_t c = 0;
            while (c < len && c < ginv.size() && q[c] == ginv[c]) ++c;
            const bool still_cancelling = (c == len && len < ginv.size());
            if (!still_cancelling) {
                const std::size_t rlen = g.size() - c + len - c;
                if (rlen >= wp.size()) {
                    for (std::size_t i = 0; i < wp.size(); ++i) {
                        char ri = i < g.size() - c ? g[i] : q[c + i - (g.size() - c)];
                        if (ri != wp[i]) return false;
                    }
                    return true;
                }
            }
            if (static_cast<long long>(len) == depth) return false;  // image cylinder too shallow
        }
        for (char c : letters) {
            if (t.kind == RuleTree::Kind::FreeGroup && !q.empty() && c == t.inverse(q.back()))
                continue;
            q.push_back(c);
            bool ok = rec(q);
            q.pop_back();
            if (!ok) return false;
        }
        return true;
    }
};

bool ep_check_pruned(const RuleTree& t, const Word& g, const Word& w, const Word& wp) {
    EpChecker chk{t, g, t.invert_word(g), w, wp, static_cast<long long>(w.size() + g.size()),
                  t.letters()};
    return chk.run();
}

}  // namespace

bool ep_witness_valid(const RuleTree& t, const Word& g, const Word& w, const Word& wp) {
    // reference semantics: enumerate every depth-(|w|+|g|) reduced cylinder
    // outside [w] and require its image cylinder to lie inside [w']
    t.validate_word(g);
    t.validate_word(w);
    t.validate_word(wp);
    const std::size_t D = w.size() + g.size();
    const auto letters = t.letters();
    Word q;
    bool ok = true;
    auto rec = [&](auto&& self, Word& cur) -> void {
        if (!ok) return;
        if (cur.size() == D) {
            if (std::equal(w.begin(), w.end(), cur.begin())) return;  // inside [w]
            Word r = t.reduce_concat(g, cur);
            if (r.size() < wp.size() || !std::equal(wp.begin(), wp.end(), r.begin())) ok = false;
            return;
        }
        for (char c : letters) {
            if (t.kind == RuleTree::Kind::FreeGroup && !cur.empty() && c == t.inverse(cur.back()))
                continue;
            cur.push_back(c);
            self(self, cur);
            cur.pop_back();
            if (!ok) return;
        }
    };
    rec(rec, q);
    return ok;
}

EPResult extreme_proximality_witness(const TreeAction& a, const Word& w, const Word& w_prime,
                                     int radius) {
    if (a.tree.kind != RuleTree::Kind::FreeGroup)
        throw std::invalid_argument("extreme proximality search runs on the free-group boundary");
    for (const auto& g : a.generators)
        if (g.kind != Generator::Kind::Translate)
            throw std::invalid_argument("extreme proximality search requires a translation action");
    if (w.empty() || w_prime.empty()) throw std::invalid_argument("cylinder words must be nonempty");
    a.tree.validate_word(w);
    a.tree.validate_word(w_prime);

    EPResult res;
    res.radius = radius;
    if (ep_check_pruned(a.tree, "", w, w_prime)) {
        res.witness = "";
        return res;
    }
    const auto letters = a.tree.letters();

    // Rank >= 2: every non-identity witness extends w' (two divergent
    // uncancelled continuations pin the image prefix to g itself), so only
    // suffixes of w' need enumeration. Rank 1 scans all reduced words.
    const bool restricted = a.tree.arity >= 2;
    const Word base = restricted ? w_prime : Word{};
    for (int len = std::max<int>(1, static_cast<int>(base.size())); len <= radius && !res.witness;
         ++len) {
        Word q = base;
        auto rec = [&](auto&& self) -> bool {
            if (static_cast<int>(q.size()) == len)
                return ep_check_pruned(a.tree, q, w, w_prime) ? (res.witness = q, true) : false;
            for (char c : letters) {
                if (!q.empty() && c == a.tree.inverse(q.back())) continue;
                q.push_back(c);
                bool found = self(self);
                q.pop_back();
                if (found) return true;
            }
            return false;
        };
        if (static_cast<int>(base.size()) > len) continue;
        rec(rec);
    }
    return res;
}

ClosednessReport closedness_test_RB(const RuleTree& t, long long sample_size, std::uint64_t seed) {
    ClosednessReport rep;
    rep.samples = sample_size;
    for (long long s = 0; s < sample_size; ++s) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
        ExtendedPoint u = random_point(t, rng);
        ExtendedPoint v = random_point(t, rng);
        int guard = 0;
        while (u == v && guard++ < 50) v = random_point(t, rng);
        if (u == v) continue;
        long long d = confluence(t, u, v).depth;

        // w on the geodesic: a prefix of one side's expansion past the split
        const ExtendedPoint& side = (rng() % 2 == 0) ? u : v;
        long long max_len = side.is_end ? d + 1 + static_cast<long long>(rng() % 4)
                                        : static_cast<long long>(side.pre.size());
        long long wl = d;
        if (max_len > d) wl += static_cast<long long>(rng() % static_cast<std::uint64_t>(max_len - d + 1));
        ExtendedPoint w = ExtendedPoint::vertex(t, expansion_prefix(side, wl));

        long long base = std::max<long long>(static_cast<long long>(w.pre.size()), d) + 1 +
                         static_cast<long long>(rng() % 3);
        auto term = [&](const ExtendedPoint& p, long long n) {
            if (!p.is_end) return p;
            return ExtendedPoint::vertex(t, expansion_prefix(p, base + n));
        };
        for (long long n : {0LL, 1LL, 4LL, 9LL}) {
            if (!between_ext(t, term(u, n), w, term(v, n))) {
                rep.pass = false;
                if (rep.witness.empty())
                    rep.witness = "term n=" + std::to_string(n) + " of (" + u.str() + "," + w.str() +
                                  "," + v.str() + ")";
            }
        }
        if (!between_ext(t, u, w, v)) {
            rep.pass = false;
            if (rep.witness.empty())
                rep.witness = "limit (" + u.str() + "," + w.str() + "," + v.str() + ")";
        }
    }
    return rep;
}

AxisFunction make_axis_function(const RuleTree& t, const ExtendedPoint& xi,
                                const ExtendedPoint& eta) {
    if (!xi.is_end || !eta.is_end) throw std::invalid_argument("axis endpoints must be ends");
    if (xi == eta) throw std::invalid_argument("axis endpoints must be distinct");
    t.validate_word(xi.pre);
    t.validate_word(xi.per);
    t.validate_word(eta.pre);
    t.validate_word(eta.per);
    return AxisFunction{xi, eta};
}

namespace {

Rat embed_axis_index(long long i) {
    Rat x(i, std::llabs(i) + 1);
    return (x + Rat(1)) / 2;
}

}  // namespace

Rat axis_value(const RuleTree& t, const AxisFunction& f, const ExtendedPoint& x) {
    if (x == f.xi) return Rat(0);
    if (x == f.eta) return Rat(1);
    ExtendedPoint m = median_ext(t, f.xi, x, f.eta);
    if (m == f.xi) return Rat(0);
    if (m == f.eta) return Rat(1);
    long long d = confluence(t, f.xi, f.eta).depth;
    long long len = static_cast<long long>(m.pre.size());
    if (len > d && prefix_of_expansion(f.xi, m.pre)) return embed_axis_index(-(len - d));
    return embed_axis_index(len - d);
}

namespace {

struct ValueRange {
    Rat lo, hi;
};

void merge_range(std::optional<ValueRange>& acc, const ValueRange& r) {
    if (!acc)
        acc = r;
    else {
        acc->lo = std::min(acc->lo, r.lo);
        acc->hi = std::max(acc->hi, r.hi);
    }
}

}  // namespace

FragmentResult fragment_scan(const RuleTree& t, const AxisFunction& f, const ClosedSetSpec& C,
                             const Rat& epsilon, int depth) {
    if (epsilon <= Rat(0)) throw std::invalid_argument("fragment_scan requires epsilon > 0");
    if (depth < 1) throw std::invalid_argument("fragment_scan requires depth >= 1");
    for (const auto& q : C.cylinders) t.validate_word(q);
    for (const auto& e : C.ends)
        if (!e.is_end) throw std::invalid_argument("end component must be an end");
    for (const auto& r : C.rays)
        if (!r.is_end) throw std::invalid_argument("ray component is specified by its end");

    const long long d = confluence(t, f.xi, f.eta).depth;

    auto cylinder_range = [&](const Word& s) -> ValueRange {
        bool on_xi = prefix_of_expansion(f.xi, s);
        bool on_eta = prefix_of_expansion(f.eta, s);
        long long len = static_cast<long long>(s.size());
        if (len <= d && (on_xi || on_eta)) return {Rat(0), Rat(1)};  // contains the whole axis
        if (on_xi) return {Rat(0), embed_axis_index(-(len - d))};
        if (on_eta) return {embed_axis_index(len - d), Rat(1)};
        Rat v = axis_value(t, f, ExtendedPoint::vertex(t, s));
        return {v, v};
    };

    auto oscillation_at = [&](const ExtendedPoint& p) -> Rat {
        if (!p.is_end && static_cast<long long>(p.pre.size()) < depth)
            return Rat(0);  // vertices above the depth horizon are isolated
        Word tw = expansion_prefix(p, depth);
        std::optional<ValueRange> acc;
        for (const auto& q : C.cylinders) {
            const Word* s = nullptr;
            if (q.size() <= tw.size() && std::equal(q.begin(), q.end(), tw.begin()))
                s = &tw;
            else if (tw.size() < q.size() && std::equal(tw.begin(), tw.end(), q.begin()))
                s = &q;
            if (s) merge_range(acc, cylinder_range(*s));
        }
        for (const auto& e : C.ends)
            if (expansion_prefix(e, depth) == tw) {
                Rat v = axis_value(t, f, e);
                merge_range(acc, {v, v});
            }
        for (const auto& r : C.rays)
            if (prefix_of_expansion(r, tw)) {
                // f is monotone along a ray, so the endpoints are the
                // depth-cut vertex and the end itself
                Rat a = axis_value(t, f, ExtendedPoint::vertex(t, expansion_prefix(r, depth)));
                Rat b = axis_value(t, f, r);
                merge_range(acc, {std::min(a, b), std::max(a, b)});
            }
        if (!acc) return Rat(0);
        return acc->hi - acc->lo;
    };

    std::vector<ExtendedPoint> candidates;
    for (const auto& e : C.ends) candidates.push_back(e);
    for (const auto& r : C.rays) candidates.push_back(r);
    for (const auto& q : C.cylinders) candidates.push_back(ExtendedPoint::vertex(t, q));
    for (const auto& r : C.rays)
        candidates.push_back(ExtendedPoint::vertex(t, expansion_prefix(r, depth)));

    for (const auto& p : candidates) {
        Rat osc = oscillation_at(p);
        if (osc < epsilon) return {p, osc};
    }
    return {std::nullopt, Rat(0)};
}

}  // namespace treelab
