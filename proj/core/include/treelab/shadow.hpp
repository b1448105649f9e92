#pragma once

#include "treelab/betweenness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace treelab {

/// S^v_u = {x : u in [x,v]} for an ordered pair u != v: the shadow cast by
/// the base point u with the light source at v.
struct ShadowSet {
    std::string base;   // u
    std::string light;  // v
    Mask members = 0;
};

ShadowSet shadow(const BetweennessStructure& T, const std::string& u, const std::string& v);

/// The lattice of closed sets generated by a closed subbase on a finite
/// carrier. Closed under finite union and intersection; contains the
/// empty set and the carrier.
struct FiniteTopology {
    int n = 0;
    Mask carrier = 0;
    std::vector<Mask> closed;           // sorted, deduplicated
    std::vector<Mask> point_closure;    // cl{x} per point
    std::vector<Mask> min_open;         // smallest open neighborhood per point

    bool is_closed(Mask m) const;
    Mask closure(Mask m) const;
    bool discrete() const;
};

FiniteTopology topology_from_closed_subbase(int n, Mask carrier, const std::vector<Mask>& subbase);

/// Closes the shadow subbase {S^v_u} to the full closed-set lattice of
/// the shadow topology. Carrier limited to 16 points (the family is
/// materialized extensionally).
FiniteTopology generate_topology(const BetweennessStructure& T);

/// On a finite carrier Hausdorff is equivalent to discrete, which holds
/// iff every point closure under the shadow subbase is a singleton.
bool is_hausdorff(const BetweennessStructure& T);

/// phi_{u,v}(x) = m(u,x,v). Throws if the median is empty.
std::string retraction(const BetweennessStructure& T, const std::string& u, const std::string& v,
                       const std::string& x);

struct RetractionReport {
    bool retraction_ok = true;        // image in [u,v], fixes [u,v] pointwise
    bool median_preserving_ok = true; // m(phi x1, phi x2, phi x3) = phi(m(x1,x2,x3))
    bool continuity_ok = true;        // preimages of subspace-closed sets are closed
    bool preimage_identity_ok = true; // phi^{-1}[u,w] = S^v_w and phi^{-1}[w,v] = S^u_w
    bool subspace_interval_agree = true;  // cross-check of the two interval topologies
    std::string witness;
    bool all_pass() const {
        return retraction_ok && median_preserving_ok && continuity_ok && preimage_identity_ok &&
               subspace_interval_agree;
    }
};

/// Pass a precomputed generate_topology(T) result to amortize the closed
/// family across many pairs.
RetractionReport retraction_report(const BetweennessStructure& T, const std::string& u,
                                   const std::string& v, const FiniteTopology* topology = nullptr);

/// The separation kernel: for every strict triple <u,w,v> the shadow
/// complements U = X \ S^u_w and V = X \ S^v_w satisfy u in U, v in V and
/// w in [x,y] for every x in U, y in V.
struct ShadowSeparationReport {
    bool pass = true;
    long long strict_triples = 0;
    std::vector<std::vector<std::string>> violations;  // (u,w,v[,x,y])
};

ShadowSeparationReport shadow_separation(const BetweennessStructure& T);

struct StabilityResult {
    bool stable = true;
    std::string witness_u, witness_v;  // first pair with no stabilizing w
    bool weak_stable = true;
    std::string note;
};

/// Decides stability of the betweenness relation for a pair: a point
/// w strictly between u and v such that w in [x,y] for all x,y in the
/// minimal open neighborhoods of u and v. Returns the first such w.
std::optional<std::string> stability_for_pair(const BetweennessStructure& T,
                                              const FiniteTopology& topo, const std::string& u,
                                              const std::string& v);

/// Exact decision of the stability property over all pairs of distinct
/// points. Weak stability quantifies over infinite subsets, which a
/// finite carrier has none of; it is reported vacuously true.
StabilityResult stability_check(const BetweennessStructure& T, const FiniteTopology& topo);

}  // namespace treelab
