#pragma once

// Marked cubical sets: a cubical set with a set of marked edges containing
// every degenerate edge.

#include <string>
#include <vector>

#include "cubical/lifting.hpp"
#include "cubical/nerve.hpp"

namespace cubical {

struct MarkedCubicalSet {
    CSetPtr set;
    EdgeMarking marked;   // per 1-cube
    bool exact = true;    // false when the marking came from a bounded equivalence search
    int path_bound = 0;   // bound used for the natural marking, 0 otherwise

    int num_marked() const { return int(std::count(marked.begin(), marked.end(), 1)); }
};

enum class MarkingKind { flat, sharp, natural };

inline EdgeMarking degenerate_edges(const CubicalSet& x) {
    EdgeMarking m(x.count(1), 0);
    if (x.dim >= 1)
        for (int v = 0; v < x.count(0); ++v) m[x.up[1][0][v]] = 1;
    return m;
}

inline bool is_valid_marking(const CubicalSet& x, const EdgeMarking& m) {
    if (int(m.size()) != x.count(1)) return false;
    const auto deg = degenerate_edges(x);
    for (std::size_t e = 0; e < m.size(); ++e)
        if (deg[e] && !m[e]) return false;
    return true;
}

/// Inner open box inclusions of every dimension 2..max_dim.
inline std::vector<FamilyMember> inner_box_family(int max_dim, int d) {
    std::vector<FamilyMember> out;
    for (int n = 2; n <= max_dim; ++n)
        for (int i = 1; i <= n; ++i)
            for (int e = 0; e < 2; ++e)
                out.push_back({"inner-box(" + std::to_string(n) + "," + std::to_string(i) + "," + std::to_string(e) + ")",
                               inner_box_inclusion(n, i, e, d),
                               {},
                               {}});
    return out;
}

/// Fills every inner open box up to the truncation dimension.
inline bool is_quasicategory(const CSetPtr& x, std::size_t node_cap = kDefaultNodeCap) {
    return check_rlp(to_point(x), inner_box_family(x->dim, x->dim), {}, {}, node_cap).pass;
}

inline MarkedCubicalSet mark(MarkingKind kind, const CSetPtr& x, int path_bound = kDefaultPathBound) {
    MarkedCubicalSet m{x, degenerate_edges(*x), true, 0};
    switch (kind) {
        case MarkingKind::flat: break;
        case MarkingKind::sharp: std::fill(m.marked.begin(), m.marked.end(), 1); break;
        case MarkingKind::natural: {
            if (!is_quasicategory(x))
                throw PreconditionError("natural marking needs a set that fills all inner open boxes");
            const HomotopyCategory h = homotopy_category(*x, path_bound);
            m.exact = h.exact;
            m.path_bound = path_bound;
            for (int e = 0; e < x->count(1); ++e)
                if (is_invertible(h.category, h.edge_class[e])) m.marked[e] = 1;
            break;
        }
    }
    return m;
}

struct MarkedProduct {
    MarkedCubicalSet object;
    Product product;
};

/// Underlying geometric product; marked edges are (f, y) with f marked, y a
/// vertex, and (x, g) with x a vertex, g marked.
inline MarkedProduct marked_product(const MarkedCubicalSet& a, const MarkedCubicalSet& b) {
    Product p = geometric_product(*a.set, *b.set);
    MarkedCubicalSet m{p.object, degenerate_edges(*p.object), a.exact && b.exact, std::max(a.path_bound, b.path_bound)};
    if (p.object->dim >= 1) {
        for (int x = 0; x < a.set->count(1); ++x)
            if (a.marked[x])
                for (int y = 0; y < b.set->count(0); ++y) m.marked[p.cube(1, x, 0, y)] = 1;
        for (int x = 0; x < a.set->count(0); ++x)
            for (int y = 0; y < b.set->count(1); ++y)
                if (b.marked[y]) m.marked[p.cube(0, x, 1, y)] = 1;
    }
    return {std::move(m), std::move(p)};
}

/// Is the given cubical map marking-preserving.
inline bool preserves_marking(const Levels& m, const MarkedCubicalSet& a, const MarkedCubicalSet& b) {
    if (m.size() < 2) return true;
    for (int e = 0; e < a.set->count(1); ++e)
        if (a.marked[e] && !b.marked[m[1][e]]) return false;
    return true;
}

/// Counts marking-preserving maps between marked sets.
inline std::uint64_t count_marked_maps(const MarkedCubicalSet& a, const MarkedCubicalSet& b,
                                       std::size_t node_cap = kDefaultNodeCap) {
    MapSearchOptions o;
    o.node_cap = node_cap;
    const EdgeMarking ma = a.marked, mb = b.marked;
    o.filter = [ma, mb](int k, int x, int y) { return k != 1 || !ma[x] || mb[y]; };
    return count_maps(*a.set, *b.set, o);
}

/// Isomorphism of marked sets: underlying isomorphism matching markings exactly.
inline std::optional<Levels> find_marked_isomorphism(const MarkedCubicalSet& a, const MarkedCubicalSet& b,
                                                     std::size_t node_cap = kDefaultNodeCap) {
    if (a.set->dim != b.set->dim || a.set->counts != b.set->counts || a.num_marked() != b.num_marked())
        return std::nullopt;
    MapSearchOptions o;
    o.injective = true;
    o.node_cap = node_cap;
    o.top_down = true;
    o.refine = true;
    const EdgeMarking ma = a.marked, mb = b.marked;
    o.filter = [ma, mb](int k, int x, int y) { return k != 1 || ma[x] == mb[y]; };
    return find_map(*a.set, *b.set, o);
}

}  // namespace cubical
