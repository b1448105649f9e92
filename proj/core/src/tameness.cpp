#include "treelab/tameness.hpp"

#include <algorithm>
#include <set>

namespace treelab {

FunctionFamily FunctionFamily::make(std::shared_ptr<const BetweennessStructure> carrier,
                                    std::vector<std::vector<Rat>> values) {
    if (!carrier) throw std::invalid_argument("family needs a carrier");
    Rat lo{0}, hi{1};
    bool first = true;
    for (const auto& f : values)
        for (const auto& v : f) {
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    return make(std::move(carrier), std::move(values), lo, hi);
}

FunctionFamily FunctionFamily::make(std::shared_ptr<const BetweennessStructure> carrier,
                                    std::vector<std::vector<Rat>> values, Rat lo, Rat hi) {
    if (!carrier) throw std::invalid_argument("family needs a carrier");
    if (hi < lo) throw std::invalid_argument("family bounds must satisfy lo <= hi");
    FunctionFamily F;
    F.carrier = std::move(carrier);
    F.lo = lo;
    F.hi = hi;
    for (const auto& f : values) {
        if (static_cast<int>(f.size()) != F.carrier->size())
            throw std::invalid_argument("family function is not total on the carrier");
        for (const auto& v : f)
            if (v < lo || v > hi) throw std::invalid_argument("family value outside declared bounds");
    }
    F.values = std::move(values);
    return F;
}

FunctionFamily FunctionFamily::subfamily(const std::vector<int>& indices) const {
    FunctionFamily S;
    S.carrier = carrier;
    S.lo = lo;
    S.hi = hi;
    for (int i : indices) S.values.push_back(values.at(i));
    return S;
}

std::optional<IndependenceWitness> is_independent(const FunctionFamily& F) {
    const int n = F.size();
    if (n < 1) return std::nullopt;
    if (n > 16) throw std::invalid_argument("independence check limited to 16 functions");
    const int pts = F.carrier_size();

    std::vector<Rat> grid;
    for (const auto& f : F.values)
        for (const auto& v : f) grid.push_back(v);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const int V = static_cast<int>(grid.size());
    if (V < 2) return std::nullopt;

    // value ranks; all threshold predicates become integer comparisons
    std::vector<std::vector<int>> rank(n, std::vector<int>(pts));
    for (int i = 0; i < n; ++i)
        for (int p = 0; p < pts; ++p)
            rank[i][p] = static_cast<int>(
                std::lower_bound(grid.begin(), grid.end(), F.values[i][p]) - grid.begin());

    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::vector<char> covered(std::size_t{1} << n);
    std::vector<int> point_of(std::size_t{1} << n);

    for (int k = 0; k + 1 < V; ++k) {
        std::fill(covered.begin(), covered.end(), 0);
        std::size_t remaining = covered.size();
        for (int p = 0; p < pts && remaining > 0; ++p) {
            // both thresholds sit inside gap k, so every value is strictly
            // below a or strictly above b and the point realizes exactly
            // one pattern: M = {i : rank_i > k}
            std::uint32_t high = 0;
            for (int i = 0; i < n; ++i)
                if (rank[i][p] > k) high |= 1u << i;
            if (!covered[high]) {
                covered[high] = 1;
                point_of[high] = p;
                --remaining;
            }
        }
        if (remaining == 0) {
            IndependenceWitness w;
            Rat width = grid[k + 1] - grid[k];
            w.a = grid[k] + width / 4;
            w.b = grid[k] + Rat(3) * width / 4;
            for (std::uint32_t m = 0; m <= full; ++m)
                w.pattern_points.push_back(F.carrier->name(point_of[m]));
            return w;
        }
    }
    return std::nullopt;
}

TameVerdict tame_check(const FunctionFamily& F, int max_len) {
    if (max_len > 12) throw std::invalid_argument("tame_check limited to sub-families of length 12");
    TameVerdict v;
    if (max_len < 2) return v;
    // Any independent sub-family restricts to an independent pair with the
    // same thresholds, so pairs decide all lengths up to max_len.
    for (int i = 0; i < F.size(); ++i)
        for (int j = i + 1; j < F.size(); ++j) {
            auto w = is_independent(F.subfamily({i, j}));
            if (w) {
                v.tame = false;
                v.subfamily = {i, j};
                v.witness = std::move(w);
                return v;
            }
        }
    return v;
}

std::vector<Rat> monotone_separator(const BetweennessStructure& T, const std::string& u,
                                    const std::string& v) {
    int ui = T.index(u), vi = T.index(v);
    if (ui == vi) throw std::invalid_argument("monotone_separator requires u != v");
    auto chain = interval_chain(T, ui, vi);
    std::vector<int> pos(T.size(), -1);
    for (int i = 0; i < static_cast<int>(chain.size()); ++i) pos[chain[i]] = i;
    const long long den = static_cast<long long>(chain.size()) - 1;
    std::vector<Rat> f(T.size());
    for (int x = 0; x < T.size(); ++x) {
        int m = median_idx(T, ui, x, vi);
        if (m < 0) throw std::invalid_argument("monotone_separator requires a median pretree");
        f[x] = Rat(pos[m], den);
    }
    return f;
}

bool monotone_into_rationals(const BetweennessStructure& T, const std::vector<Rat>& f) {
    const int n = T.size();
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w)
            for (int v = 0; v < n; ++v) {
                if (!T.between_idx(u, w, v)) continue;
                if (f[w] < std::min(f[u], f[v]) || f[w] > std::max(f[u], f[v])) return false;
            }
    return true;
}

SeparatingFamilyReport separating_tame_family(const BetweennessStructure& T,
                                              const std::vector<Mapping>& automorphisms) {
    const int n = T.size();
    SeparatingFamilyReport rep;
    auto carrier = std::make_shared<BetweennessStructure>(T);
    std::vector<std::vector<Rat>> fs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            fs.push_back(monotone_separator(*carrier, carrier->name(u), carrier->name(v)));
    rep.family = FunctionFamily::make(carrier, fs, Rat(0), Rat(1));

    for (int p = 0; p < n && rep.separates; ++p)
        for (int q = p + 1; q < n; ++q) {
            bool sep = false;
            for (const auto& f : rep.family.values)
                if (f[p] != f[q]) {
                    sep = true;
                    break;
                }
            if (!sep) {
                rep.separates = false;
                rep.witness = "points " + T.name(p) + "," + T.name(q);
                break;
            }
        }

    for (int i = 0; i < rep.family.size() && rep.tame_pairs; ++i)
        for (int j = i + 1; j < rep.family.size(); ++j)
            if (is_independent(rep.family.subfamily({i, j}))) {
                rep.tame_pairs = false;
                rep.witness = "independent pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
                break;
            }

    for (const auto& g : automorphisms) {
        if (g.source != nullptr && static_cast<int>(g.table.size()) != n)
            throw std::invalid_argument("automorphism carrier mismatch");
        for (const auto& f : rep.family.values) {
            std::vector<Rat> fg(n);
            for (int x = 0; x < n; ++x) fg[x] = f[g.table[x]];
            if (!monotone_into_rationals(T, fg)) {
                rep.invariant = false;
                if (rep.witness.empty()) rep.witness = "f o g not monotone";
            }
        }
    }
    return rep;
}

std::vector<Rat> random_monotone_function(const BetweennessStructure& T, Rng& rng) {
    const int n = T.size();
    if (n < 2) return std::vector<Rat>(n, Rat(0));
    int u = static_cast<int>(rng() % n);
    int v = static_cast<int>(rng() % n);
    while (v == u) v = static_cast<int>(rng() % n);
    auto base = monotone_separator(T, T.name(u), T.name(v));

    // nondecreasing rational step map on the separator's value grid
    std::vector<Rat> grid = base;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<long long> steps(grid.size());
    long long total = 0;
    for (auto& s : steps) {
        s = static_cast<long long>(rng() % 4);
        total += s;
    }
    if (total == 0) total = 1;
    std::vector<Rat> image(grid.size());
    long long acc = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        acc += steps[i];
        image[i] = Rat(acc, total);
    }
    std::vector<Rat> f(n);
    for (int x = 0; x < n; ++x) {
        auto it = std::lower_bound(grid.begin(), grid.end(), base[x]);
        f[x] = image[it - grid.begin()];
    }
    return f;
}

ConvFunReport convfun_property_test(const BetweennessStructure& T, long long trials,
                                    std::uint64_t seed) {
    ConvFunReport rep;
    rep.trials = trials;
    auto carrier = std::make_shared<BetweennessStructure>(T);
    for (long long t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
        auto f = random_monotone_function(*carrier, rng);
        auto g = random_monotone_function(*carrier, rng);
        auto F = FunctionFamily::make(carrier, {f, g}, Rat(0), Rat(1));
        if (is_independent(F)) {
            ++rep.independent_pairs;
            if (rep.first_bad_trial < 0) rep.first_bad_trial = t;
        }
    }
    return rep;
}

std::variant<SelectionResult, HellyInsufficient> helly_select(const FunctionFamily& F,
                                                              const Rat& epsilon, int target_len) {
    if (epsilon <= Rat(0)) throw std::invalid_argument("helly_select requires epsilon > 0");
    if (target_len < 1) throw std::invalid_argument("helly_select requires target_len >= 1");
    const int pts = F.carrier_size();
    std::vector<int> current(F.size());
    for (int i = 0; i < F.size(); ++i) current[i] = i;

    // ceil((hi-lo)/eps) buckets; the top value folds into the last bucket
    // so the pigeonhole bound over bucket counts is exact
    long long nbuckets = std::max<long long>(1, -rat_floor(-(F.hi - F.lo) / epsilon));

    std::vector<Rat> limit(pts, Rat(0));
    for (int p = 0; p < pts; ++p) {
        // bucket k = [lo + k*eps, lo + (k+1)*eps), last bucket closed
        std::vector<std::pair<long long, int>> bucketed;
        for (int idx : current)
            bucketed.emplace_back(
                std::min(nbuckets - 1, rat_floor((F.values[idx][p] - F.lo) / epsilon)), idx);
        std::stable_sort(bucketed.begin(), bucketed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        long long best_bucket = 0;
        std::size_t best_count = 0, i = 0;
        while (i < bucketed.size()) {
            std::size_t j = i;
            while (j < bucketed.size() && bucketed[j].first == bucketed[i].first) ++j;
            // strict > keeps the earlier (smaller-midpoint) bucket on ties
            if (j - i > best_count) {
                best_count = j - i;
                best_bucket = bucketed[i].first;
            }
            i = j;
        }
        std::vector<int> kept;
        for (const auto& [k, idx] : bucketed)
            if (k == best_bucket) kept.push_back(idx);
        std::sort(kept.begin(), kept.end());
        current = std::move(kept);
        limit[p] = F.lo + (Rat(best_bucket) + Rat(1, 2)) * epsilon;
        if (static_cast<int>(current.size()) < target_len) return HellyInsufficient{current.size()};
    }

    SelectionResult res;
    res.indices = current;
    res.limit = std::move(limit);
    for (int p = 0; p < pts; ++p) {
        Rat mn = F.values[current.front()][p], mx = mn;
        for (int idx : current) {
            mn = std::min(mn, F.values[idx][p]);
            mx = std::max(mx, F.values[idx][p]);
        }
        res.oscillation = std::max(res.oscillation, mx - mn);
    }
    return res;
}

FunctionFamily random_monotone_sequence(std::shared_ptr<const BetweennessStructure> carrier,
                                        int pool_size, int len, Rng& rng) {
    if (pool_size < 1) throw std::invalid_argument("pool_size must be positive");
    std::vector<std::vector<Rat>> pool;
    for (int i = 0; i < pool_size; ++i) pool.push_back(random_monotone_function(*carrier, rng));
    std::vector<std::vector<Rat>> seq;
    for (int i = 0; i < len; ++i) seq.push_back(pool[rng() % pool.size()]);
    return FunctionFamily::make(std::move(carrier), std::move(seq), Rat(0), Rat(1));
}

}  // namespace treelab
