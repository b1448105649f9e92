#pragma once

#include "treelab/betweenness.hpp"
#include "treelab/cover.hpp"
#include "treelab/tameness.hpp"
#include "treelab/ztree.hpp"

#include <iosfwd>
#include <memory>
#include <string>

namespace treelab {

/// Line-oriented structure file:
///   tree <n>      followed by `edge <u> <v>` lines (and optional
///                 `point <name>` lines for isolated points)
///   order <p...>  a total order listed left to right
///   triples       followed by `<a> <b> <c>` lines
/// Blank lines and lines starting with '#' are ignored.
BetweennessStructure parse_structure(std::istream& in);
BetweennessStructure parse_structure_text(const std::string& text);

/// `map` header followed by `<src> <dst>` lines.
Mapping parse_mapping(std::istream& in, const BetweennessStructure& source,
                      const BetweennessStructure& target);

/// `family <n>` header; one line per function of `<point>=<rational>`
/// pairs. The carrier is the explicit trivial structure on the mentioned
/// points in first-appearance order; pass a structure file separately to
/// operations that need real betweenness.
FunctionFamily parse_family(std::istream& in);
FunctionFamily parse_family_text(const std::string& text);

/// `ruletree rooted <k>` or `ruletree free <rank>`, then
///   gen <name> odometer
///   gen <name> translate <word>
///   gen <name> relabel <digit image string>
///   gen <name> swapverts <w1> <w2>
TreeAction parse_action(std::istream& in);
TreeAction parse_action_text(const std::string& text);

/// `v:<word>` or `e:<pre>:<per>`.
ExtendedPoint parse_point(const RuleTree& t, const std::string& text);

/// Tree file syntax plus a `subdivide <m>` line.
CellComplex parse_complex(std::istream& in);
CellComplex parse_complex_text(const std::string& text);

/// One `set <name> <cell> <cell> ...` line per member.
CellCover parse_cover(std::istream& in, const CellComplex& X);
CellCover parse_cover_text(const std::string& text, const CellComplex& X);

/// Either a single `reflect` / `swap <a> <b>` line, or `<u> <v>` vertex
/// permutation lines.
Automorphism parse_automorphism(std::istream& in, const CellComplex& X);
Automorphism parse_automorphism_text(const std::string& text, const CellComplex& X);

}  // namespace treelab
