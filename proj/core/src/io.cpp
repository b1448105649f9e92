#include "treelab/io.hpp"

#include <sstream>
#include <vector>

namespace treelab {

namespace {

struct ParsedFile {
    std::vector<std::vector<std::string>> lines;  // tokenized, comments stripped
};

ParsedFile tokenize(std::istream& in) {
    ParsedFile f;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) f.lines.push_back(std::move(toks));
    }
    return f;
}

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument("parse error: " + what); }

long long to_int(const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::logic_error&) {
        fail("expected an integer, got '" + s + "'");
    }
    if (used != s.size()) fail("expected an integer, got '" + s + "'");
    return v;
}

}  // namespace

BetweennessStructure parse_structure(std::istream& in) {
    auto f = tokenize(in);
    if (f.lines.empty()) fail("empty structure file");
    const auto& head = f.lines.front();
    if (head[0] == "tree") {
        if (head.size() != 2) fail("tree header needs a point count");
        long long n = to_int(head[1]);
        std::vector<std::pair<std::string, std::string>> edges;
        std::vector<std::string> isolated;
        for (std::size_t i = 1; i < f.lines.size(); ++i) {
            const auto& l = f.lines[i];
            if (l[0] == "edge" && l.size() == 3)
                edges.emplace_back(l[1], l[2]);
            else if (l[0] == "point" && l.size() == 2)
                isolated.push_back(l[1]);
            else
                fail("unexpected line in tree file: " + l[0]);
        }
        if (n == 1 && edges.empty() && isolated.empty()) isolated.push_back("0");
        auto T = BetweennessStructure::from_tree(edges, isolated);
        if (T.size() != n) fail("tree point count does not match the edges");
        return T;
    }
    if (head[0] == "order") {
        if (head.size() < 2) fail("order needs at least one point");
        return BetweennessStructure::from_order({head.begin() + 1, head.end()});
    }
    if (head[0] == "triples") {
        std::vector<Triple> triples;
        std::vector<std::string> points;
        for (std::size_t i = 1; i < f.lines.size(); ++i) {
            const auto& l = f.lines[i];
            if (l[0] == "point" && l.size() == 2)
                points.push_back(l[1]);
            else if (l.size() == 3)
                triples.push_back({l[0], l[1], l[2]});
            else
                fail("triple lines need exactly three points");
        }
        return BetweennessStructure::from_triples(points, triples);
    }
    fail("unknown structure header: " + head[0]);
}

BetweennessStructure parse_structure_text(const std::string& text) {
    std::istringstream in(text);
    return parse_structure(in);
}

Mapping parse_mapping(std::istream& in, const BetweennessStructure& source,
                      const BetweennessStructure& target) {
    auto f = tokenize(in);
    if (f.lines.empty() || f.lines[0][0] != "map") fail("mapping file needs a `map` header");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 1; i < f.lines.size(); ++i) {
        if (f.lines[i].size() != 2) fail("map lines are `<src> <dst>`");
        pairs.emplace_back(f.lines[i][0], f.lines[i][1]);
    }
    return Mapping::from_names(source, target, pairs);
}

FunctionFamily parse_family(std::istream& in) {
    auto f = tokenize(in);
    if (f.lines.empty() || f.lines[0][0] != "family") fail("family file needs a `family <n>` header");
    if (f.lines[0].size() != 2) fail("family header needs a function count");
    long long n = to_int(f.lines[0][1]);
    if (static_cast<long long>(f.lines.size()) - 1 != n) fail("family line count mismatch");

    std::vector<std::string> points;
    std::vector<std::vector<std::pair<std::string, Rat>>> raw;
    for (std::size_t i = 1; i < f.lines.size(); ++i) {
        raw.emplace_back();
        for (const auto& tok : f.lines[i]) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) fail("family entries are `<point>=<rational>`");
            std::string p = tok.substr(0, eq);
            Rat v = parse_rational(tok.substr(eq + 1));
            raw.back().emplace_back(p, v);
            if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(p);
        }
    }
    auto carrier = std::make_shared<BetweennessStructure>(BetweennessStructure::antichain(points));
    std::vector<std::vector<Rat>> values;
    for (const auto& fn : raw) {
        std::vector<Rat> row(points.size(), Rat(0));
        std::vector<char> seen(points.size(), 0);
        for (const auto& [p, v] : fn) {
            int idx = carrier->index(p);
            row[static_cast<std::size_t>(idx)] = v;
            seen[static_cast<std::size_t>(idx)] = 1;
        }
        for (char s : seen)
            if (!s) fail("family function is not total on the mentioned points");
        values.push_back(std::move(row));
    }
    return FunctionFamily::make(std::move(carrier), std::move(values));
}

FunctionFamily parse_family_text(const std::string& text) {
    std::istringstream in(text);
    return parse_family(in);
}

TreeAction parse_action(std::istream& in) {
    auto f = tokenize(in);
    if (f.lines.empty() || f.lines[0][0] != "ruletree") fail("action file needs a `ruletree` header");
    const auto& head = f.lines[0];
    if (head.size() != 3) fail("ruletree header is `ruletree <rooted|free> <arity>`");
    RuleTree tree = head[1] == "rooted"   ? RuleTree::rooted(static_cast<int>(to_int(head[2])))
                    : head[1] == "free" ? RuleTree::free_group(static_cast<int>(to_int(head[2])))
                                        : (fail("unknown ruletree kind: " + head[1]), RuleTree{});
    std::vector<Generator> gens;
    for (std::size_t i = 1; i < f.lines.size(); ++i) {
        const auto& l = f.lines[i];
        if (l[0] != "gen" || l.size() < 3) fail("generator lines are `gen <name> <spec>`");
        Generator g;
        g.name = l[1];
        const std::string& kind = l[2];
        if (kind == "odometer" && l.size() == 3) {
            g.kind = Generator::Kind::Odometer;
        } else if (kind == "translate" && l.size() == 4) {
            g.kind = Generator::Kind::Translate;
            g.word = l[3];
        } else if (kind == "relabel" && l.size() == 4) {
            g.kind = Generator::Kind::Relabel;
            for (char c : l[3]) g.perm.push_back(c - '0');
        } else if (kind == "swapverts" && l.size() == 5) {
            g.kind = Generator::Kind::SwapVertices;
            g.swap_a = l[3];
            g.swap_b = l[4];
        } else {
            fail("unknown generator spec: " + kind);
        }
        gens.push_back(std::move(g));
    }
    return make_action(tree, std::move(gens));
}

TreeAction parse_action_text(const std::string& text) {
    std::istringstream in(text);
    return parse_action(in);
}

ExtendedPoint parse_point(const RuleTree& t, const std::string& text) {
    if (text.rfind("v:", 0) == 0) return ExtendedPoint::vertex(t, text.substr(2));
    if (text.rfind("e:", 0) == 0) {
        auto rest = text.substr(2);
        auto colon = rest.find(':');
        if (colon == std::string::npos) fail("end points are `e:<pre>:<per>`");
        return canonicalize_end(t, rest.substr(0, colon), rest.substr(colon + 1));
    }
    fail("points are `v:<word>` or `e:<pre>:<per>`");
}

CellComplex parse_complex(std::istream& in) {
    auto f = tokenize(in);
    if (f.lines.empty() || f.lines[0][0] != "tree") fail("complex file needs a `tree` header");
    std::vector<std::pair<std::string, std::string>> edges;
    int m = 1;
    for (std::size_t i = 1; i < f.lines.size(); ++i) {
        const auto& l = f.lines[i];
        if (l[0] == "edge" && l.size() == 3)
            edges.emplace_back(l[1], l[2]);
        else if (l[0] == "subdivide" && l.size() == 2)
            m = static_cast<int>(to_int(l[1]));
        else
            fail("unexpected line in complex file: " + l[0]);
    }
    return CellComplex::build(edges, m);
}

CellComplex parse_complex_text(const std::string& text) {
    std::istringstream in(text);
    return parse_complex(in);
}

CellCover parse_cover(std::istream& in, const CellComplex& X) {
    auto f = tokenize(in);
    CellCover A;
    for (const auto& l : f.lines) {
        if (l[0] != "set" || l.size() < 3) fail("cover lines are `set <name> <cell> ...`");
        A.members.push_back(X.make_set({l.begin() + 2, l.end()}));
    }
    validate_cover(X, A);
    return A;
}

CellCover parse_cover_text(const std::string& text, const CellComplex& X) {
    std::istringstream in(text);
    return parse_cover(in, X);
}

Automorphism parse_automorphism(std::istream& in, const CellComplex& X) {
    auto f = tokenize(in);
    if (f.lines.empty()) fail("empty automorphism file");
    if (f.lines[0][0] == "reflect") return reflection_automorphism(X);
    if (f.lines[0][0] == "swap") {
        if (f.lines[0].size() != 3) fail("swap needs two vertices");
        return swap_automorphism(X, f.lines[0][1], f.lines[0][2]);
    }
    std::vector<int> map(static_cast<std::size_t>(X.original_vertex_count()), -1);
    for (const auto& l : f.lines) {
        if (l.size() != 2) fail("vertex permutation lines are `<u> <v>`");
        map[static_cast<std::size_t>(X.original_vertex_id(l[0]))] = X.original_vertex_id(l[1]);
    }
    for (int v : map)
        if (v < 0) fail("vertex permutation is not total");
    return make_automorphism(X, map);
}

Automorphism parse_automorphism_text(const std::string& text, const CellComplex& X) {
    std::istringstream in(text);
    return parse_automorphism(in, X);
}

}  // namespace treelab
