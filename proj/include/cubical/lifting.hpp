#pragma once

// Lifting problems and right-lifting-property checks against families of monos.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubical/cset.hpp"

namespace cubical {

/// Marked 1-cubes as a flag per edge. An empty vector means "no constraint".
using EdgeMarking = std::vector<char>;

/// Commuting square i: A -> B, f: A -> X, p: X -> Y, b: B -> Y with p f = b i.
struct LiftingProblem {
    CSetMorphism i;
    CSetMorphism f;
    CSetMorphism p;
    CSetMorphism b;
    EdgeMarking marked_b;  // edges of B that must land on marked edges of X
    EdgeMarking marked_x;
};

struct LiftingResult {
    bool found = false;
    std::optional<Levels> filler;
    std::size_t nodes = 0;
};

inline bool square_commutes(const LiftingProblem& prob) {
    const int d = std::min({prob.i.source->dim, prob.p.source->dim, prob.b.source->dim});
    for (int k = 0; k <= d; ++k)
        for (int a = 0; a < prob.i.source->count(k); ++a)
            if (prob.p.map[k][prob.f.map[k][a]] != prob.b.map[k][prob.i.map[k][a]]) return false;
    return true;
}

inline MapSearchOptions lifting_options(const LiftingProblem& prob, std::size_t node_cap) {
    MapSearchOptions o;
    o.node_cap = node_cap;
    const int d = std::min(prob.i.target->dim, prob.p.source->dim);
    for (int k = 0; k <= d; ++k)
        for (int a = 0; a < prob.i.source->count(k); ++a) o.preassign.emplace_back(k, prob.i.map[k][a], prob.f.map[k][a]);
    const CSetMorphism p = prob.p;
    const CSetMorphism b = prob.b;
    const EdgeMarking mb = prob.marked_b, mx = prob.marked_x;
    o.filter = [p, b, mb, mx](int k, int x, int y) {
        if (p.map[k][y] != b.map[k][x]) return false;
        if (k == 1 && !mb.empty() && mb[x] && !mx[y]) return false;
        return true;
    };
    return o;
}

/// A filler B -> X, or a certified absence. Hitting the node cap throws ResourceError.
inline LiftingResult solve_lifting(const LiftingProblem& prob, std::size_t node_cap = kDefaultNodeCap) {
    if (!square_commutes(prob)) throw PreconditionError("lifting square does not commute");
    detail::GradedSearch<CubicalShape> g(*prob.i.target, *prob.p.source, lifting_options(prob, node_cap));
    HomSearch search(g.sa, g.sb, g.opts);
    auto h = search.find_first();
    LiftingResult r;
    r.nodes = search.nodes();
    if (h) {
        r.found = true;
        r.filler = unflatten(*h, *prob.i.target, *prob.p.source, g.d);
    }
    return r;
}

/// One mono of a generator family, with optional markings of its ends.
struct FamilyMember {
    std::string name;
    CSetMorphism inclusion;
    EdgeMarking marked_a;
    EdgeMarking marked_b;
};

struct RlpReport {
    bool pass = true;
    int max_dim = 0;
    std::size_t members = 0;
    std::size_t squares = 0;
    std::string failing_member;
    std::optional<LiftingProblem> witness;
};

/// Edges that carry a marking into a morphism's target; unmarked ends admit everything.
inline bool marking_respected(const Levels& m, const EdgeMarking& src, const EdgeMarking& tgt) {
    if (src.empty() || m.size() < 2) return true;
    for (std::size_t e = 0; e < src.size(); ++e)
        if (src[e] && !tgt.empty() && !tgt[m[1][e]]) return false;
    return true;
}

/// Runs every commuting square from every family member into p through the solver.
inline RlpReport check_rlp(const CSetMorphism& p, const std::vector<FamilyMember>& family,
                           const EdgeMarking& marked_x = {}, const EdgeMarking& marked_y = {},
                           std::size_t node_cap = kDefaultNodeCap) {
    RlpReport rep;
    rep.members = family.size();
    for (const auto& mem : family) {
        rep.max_dim = std::max(rep.max_dim, mem.inclusion.target->dim);
        const CubicalSet& A = *mem.inclusion.source;
        const CubicalSet& B = *mem.inclusion.target;
        // All maps b: B -> Y respecting markings.
        MapSearchOptions ob;
        ob.node_cap = node_cap;
        if (!mem.marked_b.empty() && !marked_y.empty()) {
            const EdgeMarking mb = mem.marked_b, my = marked_y;
            ob.filter = [mb, my](int k, int x, int y) { return k != 1 || !mb[x] || my[y]; };
        }
        const auto bs = all_maps(B, *p.target, ob);
        for (const Levels& bm : bs) {
            MapSearchOptions of;
            of.node_cap = node_cap;
            const CSetMorphism incl = mem.inclusion;
            const EdgeMarking ma = mem.marked_a, mx = marked_x;
            of.filter = [incl, bm, p, ma, mx](int k, int a, int x) {
                if (p.map[k][x] != bm[k][incl.map[k][a]]) return false;
                if (k == 1 && !ma.empty() && !mx.empty() && ma[a] && !mx[x]) return false;
                return true;
            };
            bool stop = false;
            for_each_map(A, *p.source, of, [&](const Levels& fm) {
                ++rep.squares;
                LiftingProblem prob{mem.inclusion,
                                    CSetMorphism{mem.inclusion.source, p.source, fm},
                                    p,
                                    CSetMorphism{mem.inclusion.target, p.target, bm},
                                    mem.marked_b,
                                    marked_x};
                if (!solve_lifting(prob, node_cap).found) {
                    rep.pass = false;
                    rep.failing_member = mem.name;
                    rep.witness = std::move(prob);
                    stop = true;
                    return false;
                }
                return true;
            });
            if (stop) return rep;
        }
    }
    return rep;
}

/// Unique map to the point.
inline CSetMorphism to_point(const CSetPtr& x) {
    const CSetPtr pt = share(point(x->dim));
    CSetMorphism m{x, pt, Levels(x->dim + 1)};
    for (int k = 0; k <= x->dim; ++k) m.map[k].assign(x->count(k), 0);
    return m;
}

/// The map from the standard n-cube picking out the n-cube y of X (Yoneda).
inline CSetMorphism yoneda_map(const CSetPtr& x, int n, int y, const CSetPtr& cube = nullptr) {
    const int d = x->dim;
    const CSetPtr c = cube ? cube : share(standard_cube(n, d));
    CSetMorphism m{c, x, Levels(d + 1)};
    for (int k = 0; k <= d; ++k)
        for (const CubeMap& u : enumerate_maps(k, n, std::max(kDefaultDimensionCap, std::max(n, d))))
            m.map[k].push_back(apply_operator(*x, y, u));
    return m;
}

}  // namespace cubical
