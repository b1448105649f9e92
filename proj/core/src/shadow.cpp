#include "treelab/shadow.hpp"

#include <algorithm>
#include <set>

namespace treelab {

ShadowSet shadow(const BetweennessStructure& T, const std::string& u, const std::string& v) {
    int ui = T.index(u), vi = T.index(v);
    if (ui == vi) throw std::invalid_argument("shadow requires an ordered pair u != v");
    return {u, v, T.shadow_mask_idx(ui, vi)};
}

bool FiniteTopology::is_closed(Mask m) const {
    return std::binary_search(closed.begin(), closed.end(), m);
}

Mask FiniteTopology::closure(Mask m) const {
    Mask out = carrier;
    for (Mask c : closed)
        if ((m & ~c) == 0) out &= c;
    return out;
}

bool FiniteTopology::discrete() const {
    for (int i = 0; i < n; ++i)
        if (has_bit(carrier, i) && point_closure[i] != bit(i)) return false;
    return true;
}

FiniteTopology topology_from_closed_subbase(int n, Mask carrier, const std::vector<Mask>& subbase) {
    if (n > 16) throw std::invalid_argument("topology enumeration limited to 16 points");
    FiniteTopology topo;
    topo.n = n;
    topo.carrier = carrier;
    // Point closures: cl{x} is the intersection of the subbase elements
    // containing x. Every closed set is a union of point closures, and
    // that family is already closed under union and intersection.
    topo.point_closure.assign(n, 0);
    for (int x = 0; x < n; ++x) {
        if (!has_bit(carrier, x)) continue;
        Mask k = carrier;
        for (Mask s : subbase)
            if (has_bit(s, x)) k &= s;
        topo.point_closure[x] = k;
    }
    std::set<Mask> family{0};
    std::set<Mask> distinct;
    for (int x = 0; x < n; ++x)
        if (has_bit(carrier, x)) distinct.insert(topo.point_closure[x]);
    for (Mask k : distinct) {
        std::set<Mask> grown = family;
        for (Mask f : family) grown.insert(f | k);
        family = std::move(grown);
    }
    topo.closed.assign(family.begin(), family.end());
    topo.min_open.assign(n, 0);
    for (int x = 0; x < n; ++x) {
        if (!has_bit(carrier, x)) continue;
        Mask open = carrier;
        for (Mask c : topo.closed)
            if (!has_bit(c, x)) open &= ~c;
        topo.min_open[x] = open;
    }
    return topo;
}

FiniteTopology generate_topology(const BetweennessStructure& T) {
    const int n = T.size();
    if (n < 2) throw std::invalid_argument("generate_topology requires at least 2 points");
    std::vector<Mask> subbase;
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u)
            if (u != v) subbase.push_back(T.shadow_mask_idx(u, v));
    return topology_from_closed_subbase(n, T.full_mask(), subbase);
}

bool is_hausdorff(const BetweennessStructure& T) {
    const int n = T.size();
    for (int x = 0; x < n; ++x) {
        Mask k = T.full_mask();
        for (int v = 0; v < n; ++v)
            for (int u = 0; u < n; ++u)
                if (u != v && has_bit(T.shadow_mask_idx(u, v), x)) k &= T.shadow_mask_idx(u, v);
        if (k != bit(x)) return false;
    }
    return true;
}

std::string retraction(const BetweennessStructure& T, const std::string& u, const std::string& v,
                       const std::string& x) {
    auto m = median(T, u, x, v);
    if (!m)
        throw std::invalid_argument("retraction undefined: median of (" + u + "," + x + "," + v +
                                    ") is empty (not a median pretree)");
    return *m;
}

RetractionReport retraction_report(const BetweennessStructure& T, const std::string& u,
                                   const std::string& v, const FiniteTopology* topology) {
    const int n = T.size();
    int ui = T.index(u), vi = T.index(v);
    if (ui == vi) throw std::invalid_argument("retraction_report requires u != v");

    std::vector<int> phi(n);
    for (int x = 0; x < n; ++x) {
        int m = median_idx(T, ui, x, vi);
        if (m < 0) throw std::invalid_argument("retraction_report requires a median pretree");
        phi[x] = m;
    }
    Mask interval = T.interval_mask_idx(ui, vi);

    RetractionReport rep;
    auto fail = [&](bool& flag, const std::string& w) {
        flag = false;
        if (rep.witness.empty()) rep.witness = w;
    };

    for (int x = 0; x < n; ++x) {
        if (!has_bit(interval, phi[x])) fail(rep.retraction_ok, "image " + T.name(x));
        if (has_bit(interval, x) && phi[x] != x) fail(rep.retraction_ok, "fixpoint " + T.name(x));
        if (phi[phi[x]] != phi[x]) fail(rep.retraction_ok, "idempotence " + T.name(x));
    }

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                int lhs = median_idx(T, phi[a], phi[b], phi[c]);
                int rhs = phi[median_idx(T, a, b, c)];
                if (lhs != rhs)
                    fail(rep.median_preserving_ok,
                         "(" + T.name(a) + "," + T.name(b) + "," + T.name(c) + ")");
            }

    // Continuity: the computed closed family is union-closed, and the
    // preimage of any subspace-closed set is the union of its fibers, so
    // checking every fiber phi^{-1}(y) decides all preimages.
    FiniteTopology local;
    if (!topology) {
        local = generate_topology(T);
        topology = &local;
    }
    for (int y = 0; y < n; ++y) {
        if (!has_bit(interval, y)) continue;
        Mask fiber = 0;
        for (int x = 0; x < n; ++x)
            if (phi[x] == y) fiber |= bit(x);
        if (!topology->is_closed(fiber)) fail(rep.continuity_ok, "fiber of " + T.name(y));
    }

    // Cross-check: subspace topology on [u,v] vs the interval topology of
    // the chain order. Both families are the union closures of their point
    // closures, so the families agree iff the point closures do; both
    // sides are computed, not assumed equal.
    {
        auto chain = interval_chain(T, ui, vi);
        for (std::size_t i = 0; i < chain.size(); ++i) {
            Mask ray_closure = interval;
            Mask lo = 0, hi = 0;
            for (std::size_t j = 0; j <= i; ++j) lo |= bit(chain[j]);
            for (std::size_t j = i; j < chain.size(); ++j) hi |= bit(chain[j]);
            ray_closure &= lo & hi;
            Mask subspace_closure = topology->point_closure[chain[i]] & interval;
            if (ray_closure != subspace_closure)
                fail(rep.subspace_interval_agree, "point closure of " + T.name(chain[i]));
        }
    }

    for (int w = 0; w < n; ++w) {
        if (!has_bit(interval, w)) continue;
        if (w != vi) {
            Mask pre = 0;
            Mask uw = T.interval_mask_idx(ui, w);
            for (int x = 0; x < n; ++x)
                if (has_bit(uw, phi[x])) pre |= bit(x);
            if (pre != T.shadow_mask_idx(w, vi))
                fail(rep.preimage_identity_ok, "phi^{-1}[u," + T.name(w) + "] != S^v_" + T.name(w));
        }
        if (w != ui) {
            Mask pre = 0;
            Mask wv = T.interval_mask_idx(w, vi);
            for (int x = 0; x < n; ++x)
                if (has_bit(wv, phi[x])) pre |= bit(x);
            if (pre != T.shadow_mask_idx(w, ui))
                fail(rep.preimage_identity_ok, "phi^{-1}[" + T.name(w) + ",v] != S^u_" + T.name(w));
        }
    }
    return rep;
}

ShadowSeparationReport shadow_separation(const BetweennessStructure& T) {
    const int n = T.size();
    const Mask full = T.full_mask();
    ShadowSeparationReport rep;
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w) {
            if (w == u) continue;
            for (int v = 0; v < n; ++v) {
                if (w == v || !T.between_idx(u, w, v)) continue;
                ++rep.strict_triples;
                Mask U = full & ~T.shadow_mask_idx(w, u);
                Mask V = full & ~T.shadow_mask_idx(w, v);
                bool ok = has_bit(U, u) && has_bit(V, v);
                if (ok) {
                    for (int x = 0; x < n && ok; ++x) {
                        if (!has_bit(U, x)) continue;
                        // {y : w in [x,y]} must cover V
                        if ((V & ~T.shadow_mask_idx(w, x)) != 0) ok = false;
                    }
                }
                if (!ok) {
                    rep.pass = false;
                    if (rep.violations.size() < 5)
                        rep.violations.push_back({T.name(u), T.name(w), T.name(v)});
                }
            }
        }
    return rep;
}

std::optional<std::string> stability_for_pair(const BetweennessStructure& T,
                                              const FiniteTopology& topo, const std::string& u,
                                              const std::string& v) {
    int ui = T.index(u), vi = T.index(v);
    if (ui == vi) throw std::invalid_argument("stability_for_pair requires u != v");
    Mask strict = T.interval_mask_idx(ui, vi) & ~bit(ui) & ~bit(vi);
    // Minimal open neighborhoods suffice: shrinking U and V only weakens
    // the requirement.
    Mask U = topo.min_open[ui], V = topo.min_open[vi];
    for (int w = 0; w < T.size(); ++w) {
        if (!has_bit(strict, w)) continue;
        bool ok = true;
        for (int x = 0; x < T.size() && ok; ++x) {
            if (!has_bit(U, x)) continue;
            if ((V & ~T.shadow_mask_idx(w, x)) != 0) ok = false;
        }
        if (ok) return T.name(w);
    }
    return std::nullopt;
}

StabilityResult stability_check(const BetweennessStructure& T, const FiniteTopology& topo) {
    StabilityResult res;
    res.note = "weak stability quantifies over infinite subsets; none exist on a finite carrier";
    const int n = T.size();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (!stability_for_pair(T, topo, T.name(u), T.name(v))) {
                res.stable = false;
                res.witness_u = T.name(u);
                res.witness_v = T.name(v);
                return res;
            }
        }
    return res;
}

}  // namespace treelab
