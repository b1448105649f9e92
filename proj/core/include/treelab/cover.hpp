#pragma once

#include <boost/dynamic_bitset.hpp>

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace treelab {

using CellSet = boost::dynamic_bitset<>;

/// Face structure of a finite tree with every edge subdivided into m
/// segments: cells are vertices (0-cells) and open segments (1-cells).
/// Star-open subsets of this poset play the role of open sets with finite
/// boundary.
class CellComplex {
public:
    static CellComplex build(const std::vector<std::pair<std::string, std::string>>& tree_edges,
                             int subdivision);

    int cells() const { return static_cast<int>(names_.size()); }
    int subdivision() const { return m_; }
    const std::vector<std::string>& cell_names() const { return names_; }
    const std::string& cell_name(int id) const { return names_.at(static_cast<std::size_t>(id)); }
    int cell_id(const std::string& name) const;
    bool is_vertex_cell(int id) const { return is_vertex_[static_cast<std::size_t>(id)] != 0; }
    const std::vector<int>& incident_edges(int vertex_cell) const;
    const std::pair<int, int>& edge_ends(int edge_cell) const;

    int original_vertex_count() const { return static_cast<int>(orig_names_.size()); }
    const std::vector<std::string>& original_vertex_names() const { return orig_names_; }
    const std::vector<std::pair<int, int>>& original_edges() const { return orig_edges_; }
    int original_vertex_id(const std::string& name) const;

    CellSet empty_set() const { return CellSet(static_cast<std::size_t>(cells())); }
    CellSet full_set() const { return ~empty_set(); }
    CellSet make_set(const std::vector<std::string>& cell_names) const;
    std::vector<std::string> set_names(const CellSet& s) const;

private:
    int m_ = 1;
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> ids_;
    std::vector<char> is_vertex_;
    std::vector<std::vector<int>> vertex_edges_;
    std::unordered_map<int, std::pair<int, int>> edge_ends_;
    std::vector<std::string> orig_names_;
    std::unordered_map<std::string, int> orig_ids_;
    std::vector<std::pair<int, int>> orig_edges_;
};

/// Open: every vertex in the set carries all its incident 1-cells.
bool is_open(const CellComplex& X, const CellSet& O);
/// Vertices incident to a 1-cell of O but not in O themselves.
CellSet boundary(const CellComplex& X, const CellSet& O);

struct CellCover {
    std::vector<CellSet> members;
};

/// Throws unless every member is open and the union covers all cells.
void validate_cover(const CellComplex& X, const CellCover& A);
/// Total boundary point count, summed over members.
long long boundary_weight(const CellComplex& X, const CellCover& A);

/// Greedily drops redundant members (first removable by index, repeated)
/// until no proper subcover remains; exact duplicates collapse.
CellCover irreducible_subcover(const CellComplex& X, const CellCover& A);

struct MinimumSubcover {
    std::vector<int> chosen;  // indices into the input cover
    CellCover cover;
    long long cardinality() const { return static_cast<long long>(chosen.size()); }
};

/// Exact minimum-cardinality subcover by branch and bound over cells,
/// scarcest cell first; ties between optimal solutions resolve to the one
/// found first in member-index order.
MinimumSubcover minimum_subcover(const CellComplex& X, const CellCover& A);

struct Lemma1Report {
    long long cover_size = 0;
    long long boundary_points = 0;
    bool holds() const { return cover_size <= boundary_points; }
};

/// |cover| <= |union of member boundaries| for irreducible covers of a
/// connected complex with at least two members.
Lemma1Report lemma1_check(const CellComplex& X, const CellCover& A);

/// A cell bijection induced by an automorphism of the underlying tree.
struct Automorphism {
    std::vector<int> vertex_map;  // original vertex -> original vertex
    std::vector<int> cell_map;    // cell id -> cell id
};

Automorphism make_automorphism(const CellComplex& X, const std::vector<int>& original_vertex_map);
/// Path reflection (valid when the underlying tree is a path).
Automorphism reflection_automorphism(const CellComplex& X);
/// Exchanges the two isomorphic branches hanging at a common neighbor of
/// a and b, fixing everything else.
Automorphism swap_automorphism(const CellComplex& X, const std::string& a, const std::string& b);
Automorphism identity_automorphism(const CellComplex& X);
Automorphism compose(const CellComplex& X, const Automorphism& f, const Automorphism& g);

CellSet pull_back(const Automorphism& s, const CellSet& A);
CellCover pull_back(const Automorphism& s, const CellCover& A);

/// All nonempty pairwise intersections, deduplicated in first-seen order.
CellCover join_refinement(const CellCover& A, const CellCover& B);

/// s_1, s_2, ... given explicitly or as powers sigma^0, sigma^1, ... of a
/// single automorphism.
struct AutoSeq {
    std::vector<Automorphism> explicit_seq;
    bool powers = false;
    Automorphism base;

    static AutoSeq of_powers(Automorphism sigma);
    static AutoSeq of_list(std::vector<Automorphism> autos);
    Automorphism at(const CellComplex& X, int i) const;  // 1-based
};

struct EntropyRow {
    int n = 0;
    long long subcover_size = 0;   // N_n, exact
    long long join_members = 0;
    long long bound = 0;           // n * L_A
    bool bound_violated = false;
    double h = 0.0;                // log(N_n) / n, for trend inspection only
};

/// For each n <= n_max: N_n = minimum subcover cardinality of the join of
/// s_1(A),...,s_n(A), flagged against the linear bound n * L_A.
std::vector<EntropyRow> sequence_entropy(const CellComplex& X, const CellCover& A,
                                         const AutoSeq& S, int n_max);

}  // namespace treelab
