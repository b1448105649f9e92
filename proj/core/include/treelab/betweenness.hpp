#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace treelab {

/// Point sets are capped at 64 identifiers so every subset fits in one
/// machine word. All spec'd workloads stay well below this.
using Mask = std::uint64_t;

inline Mask bit(int i) { return Mask{1} << i; }
inline bool has_bit(Mask m, int i) { return (m >> i) & 1; }
inline int popcount(Mask m) { return __builtin_popcountll(m); }

/// Raised when an operation derives a structural contradiction from its
/// input (e.g. a non-singleton median on a relation that claims to be a
/// pretree).
struct StructuralInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Backend { Tree, Order, Explicit };

struct Triple {
    std::string a, b, c;
};

/// A finite set of opaque point identifiers with a ternary betweenness
/// relation, backed by a graph-theoretic tree, a total order, or an
/// explicit (B1-normalized) triple table.
class BetweennessStructure {
public:
    static BetweennessStructure from_tree(const std::vector<std::pair<std::string, std::string>>& edges,
                                          const std::vector<std::string>& isolated = {});
    static BetweennessStructure from_order(const std::vector<std::string>& points);
    static BetweennessStructure from_triples(const std::vector<std::string>& points,
                                             const std::vector<Triple>& triples);

    /// Path 0-1-...-(k-1) with decimal point names.
    static BetweennessStructure path(int k);
    /// Star with center name and leaf names.
    static BetweennessStructure star(const std::string& center, const std::vector<std::string>& leaves);
    /// k-point antichain: [u,v] = {u,v} for every pair. Passes B1-B3 but is
    /// not median for k >= 3.
    static BetweennessStructure antichain(const std::vector<std::string>& points);

    Backend backend() const { return backend_; }
    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& point_names() const { return names_; }
    const std::string& name(int idx) const { return names_.at(idx); }
    int index(const std::string& point) const;
    bool has_point(const std::string& point) const { return index_.count(point) > 0; }
    Mask full_mask() const { return size() == 64 ? ~Mask{0} : (bit(size()) - 1); }

    /// Tree backend only: adjacency lists of the underlying tree.
    const std::vector<std::vector<int>>& adjacency() const;

    bool between(const std::string& a, const std::string& b, const std::string& c) const;
    bool between_idx(int a, int b, int c) const { return has_bit(interval_mask_idx(a, c), b); }

    Mask interval_mask(const std::string& u, const std::string& v) const;
    Mask interval_mask_idx(int u, int v) const { return itv_[static_cast<std::size_t>(u) * n_ + v]; }
    std::vector<std::string> interval(const std::string& u, const std::string& v) const;

    /// {x : w in [x, light]}; the table row used by shadows and axiom B3.
    Mask shadow_mask_idx(int w, int light) const { return shd_[static_cast<std::size_t>(light) * n_ + w]; }

    std::vector<std::string> to_names(Mask m) const;
    Mask to_mask(const std::vector<std::string>& points) const;

private:
    BetweennessStructure() = default;
    void finish_build();

    Backend backend_ = Backend::Explicit;
    int n_ = 0;
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> adj_;   // tree backend
    std::vector<int> rank_;               // order backend
    std::vector<Mask> raw_;               // raw relation rows: raw_[a*n+c] over b
    std::vector<Mask> itv_;               // interval masks [u,v] over middle points
    std::vector<Mask> shd_;               // shd_[v*n+u] = {x : u in [x,v]}
};

/// Verdict for one axiom; failing axioms carry at least one witness tuple.
struct AxiomCheck {
    std::string axiom;
    bool pass = true;
    std::vector<std::vector<std::string>> witnesses;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool all_pass() const;
    const AxiomCheck* find(const std::string& axiom) const;
};

/// Exhaustive verification of B1-B3 over all triples (B3 over all
/// quadruples) and of the interval properties A0-A5.
AxiomReport check_axioms(const BetweennessStructure& T);

/// Median of a triple: the unique point of [a,b] n [a,c] n [b,c], or
/// nullopt when that intersection is empty. Throws StructuralInconsistency
/// if the intersection has two or more points.
std::optional<std::string> median(const BetweennessStructure& T, const std::string& a,
                                  const std::string& b, const std::string& c);
int median_idx(const BetweennessStructure& T, int a, int b, int c);  // -1 = empty

bool is_median_pretree(const BetweennessStructure& T);

/// Exhaustive verification of the median-algebra axioms M1-M3 for the
/// induced median function (M3 over all quintuples). Requires a median
/// pretree.
AxiomReport check_median_algebra(const BetweennessStructure& T);

bool is_convex(const BetweennessStructure& T, Mask subset);
bool is_convex(const BetweennessStructure& T, const std::vector<std::string>& subset);

/// Members of [u,v] sorted by the chain order x <= y iff <x,y,v>; u comes
/// first and v last.
std::vector<int> interval_chain(const BetweennessStructure& T, int u, int v);

/// A total map between two structures.
struct Mapping {
    const BetweennessStructure* source = nullptr;
    const BetweennessStructure* target = nullptr;
    std::vector<int> table;  // source index -> target index

    static Mapping from_names(const BetweennessStructure& source, const BetweennessStructure& target,
                              const std::vector<std::pair<std::string, std::string>>& pairs);
    int apply_idx(int i) const { return table[i]; }
};

enum class MonotoneMode { B, C };

struct MonotoneVerdict {
    bool monotone = true;
    /// Mode B: the violating triple (u,w,v) in the source.
    std::vector<std::string> witness_triple;
    /// Mode C: the connected target subset with disconnected preimage.
    std::vector<std::string> witness_subset;
};

/// Mode B: f[u,v] subset of [f(u),f(v)] for all pairs. Mode C: the
/// preimage of every connected (= convex) target subset is convex or
/// empty. Mode C rejects explicit backends.
MonotoneVerdict check_monotone(const Mapping& f, MonotoneMode mode);

struct EquivalenceReport {
    long long total_maps = 0;
    long long disagreements = 0;
    std::optional<Mapping> counterexample;
    bool agree() const { return disagreements == 0; }
};

/// Enumerates every total map between two tree-backed structures of at
/// most 6 points each and compares the B- and C-monotonicity verdicts.
EquivalenceReport monotone_equivalence(const BetweennessStructure& source,
                                       const BetweennessStructure& target);

}  // namespace treelab
