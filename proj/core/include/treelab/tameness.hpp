#pragma once

#include "treelab/betweenness.hpp"
#include "treelab/random.hpp"
#include "treelab/rational.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace treelab {

/// A finite ordered family of exact-rational-valued functions on the
/// points of a carrier structure, with declared bounds lo <= hi.
struct FunctionFamily {
    std::shared_ptr<const BetweennessStructure> carrier;
    std::vector<std::vector<Rat>> values;  // [function][point index]
    Rat lo{0}, hi{1};

    static FunctionFamily make(std::shared_ptr<const BetweennessStructure> carrier,
                               std::vector<std::vector<Rat>> values);
    static FunctionFamily make(std::shared_ptr<const BetweennessStructure> carrier,
                               std::vector<std::vector<Rat>> values, Rat lo, Rat hi);

    int size() const { return static_cast<int>(values.size()); }
    int carrier_size() const { return carrier->size(); }
    FunctionFamily subfamily(const std::vector<int>& indices) const;
};

/// Thresholds a < b together with, for every assignment of the family's
/// indices to {P, M} (encoded as the bitmask of M-indices), a carrier
/// point realizing that pattern: f_i < a for i in P and f_i > b for i in M.
struct IndependenceWitness {
    Rat a, b;
    std::vector<std::string> pattern_points;  // size 2^n, indexed by M-mask
};

/// Decides independence of the whole family. Candidate thresholds come
/// from the gaps between consecutive distinct values: any real pair a < b
/// witnessing independence can be moved gap-canonically without changing
/// any of the strict predicates, and a witness with both thresholds in
/// one gap dominates every two-gap witness, so scanning single gaps (with
/// the pair placed at the gap's quartiles) is complete. Family size is
/// limited to 16 (2^n pattern enumeration).
std::optional<IndependenceWitness> is_independent(const FunctionFamily& F);

struct TameVerdict {
    bool tame = true;
    std::vector<int> subfamily;  // indices of an independent sub-family
    std::optional<IndependenceWitness> witness;
};

/// True iff no sub-family of length 2..max_len (order preserved) is
/// independent. An independent sub-family restricts to independent pairs,
/// so scanning pairs decides every length. max_len <= 12.
TameVerdict tame_check(const FunctionFamily& F, int max_len);

/// The canonical monotone separator f = e o phi_{u,v}: the median
/// retraction onto [u,v] followed by the evenly spaced order embedding of
/// the chain into [0,1]. Guarantees f(u) = 0, f(v) = 1 and B-monotonicity
/// into the rational order.
std::vector<Rat> monotone_separator(const BetweennessStructure& T, const std::string& u,
                                    const std::string& v);

/// B-monotonicity into the reals: <u,w,v> implies f(w) lies (weakly)
/// between f(u) and f(v).
bool monotone_into_rationals(const BetweennessStructure& T, const std::vector<Rat>& f);

struct SeparatingFamilyReport {
    FunctionFamily family;
    bool separates = true;
    bool tame_pairs = true;
    bool invariant = true;
    std::string witness;
    bool all_pass() const { return separates && tame_pairs && invariant; }
};

/// {monotone_separator(T,u,v) : u < v} with three verified properties:
/// point separation, pairwise non-independence, and monotonicity of f o g
/// for every supplied automorphism g.
SeparatingFamilyReport separating_tame_family(const BetweennessStructure& T,
                                              const std::vector<Mapping>& automorphisms = {});

struct ConvFunReport {
    long long trials = 0;
    long long independent_pairs = 0;
    long long first_bad_trial = -1;
};

/// Random monotone pairs on a median pretree are never independent;
/// per-trial seeds derive deterministically from the master seed.
ConvFunReport convfun_property_test(const BetweennessStructure& T, long long trials,
                                    std::uint64_t seed);

struct SelectionResult {
    std::vector<int> indices;   // strictly increasing into the input family
    std::vector<Rat> limit;     // bucket-midpoint limit per carrier point
    Rat oscillation{0};         // max pointwise spread of the selection
};

struct HellyInsufficient {
    std::size_t survivors = 0;
};

/// Pigeonhole refinement: at each carrier point in index order, partition
/// the current subsequence's values into width-epsilon buckets and keep
/// the largest one (ties keep the smaller bucket midpoint). Succeeds when
/// at least target_len indices survive every point.
std::variant<SelectionResult, HellyInsufficient> helly_select(const FunctionFamily& F,
                                                              const Rat& epsilon, int target_len);

/// Random monotone function: a separator for a random pair composed with
/// a random nondecreasing rational step map.
std::vector<Rat> random_monotone_function(const BetweennessStructure& T, Rng& rng);

/// Pool-based sampling used by the selection fixtures: draws `len`
/// functions with repetition from a pool of `pool_size` random monotone
/// functions, so refinements retain large classes.
FunctionFamily random_monotone_sequence(std::shared_ptr<const BetweennessStructure> carrier,
                                        int pool_size, int len, Rng& rng);

}  // namespace treelab
