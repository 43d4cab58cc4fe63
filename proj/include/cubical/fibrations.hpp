#pragma once

// Generator families, inner and left fibrations, cocartesian edges, and the
// marked left fibration recognition tests.

#include <optional>
#include <string>
#include <vector>

#include "cubical/marked.hpp"

namespace cubical {

enum class FamilyKind { boundary, open_box, left_open_box, inner_box, left_anodyne, marked_left };

inline std::string family_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::boundary: return "boundary";
        case FamilyKind::open_box: return "open-box";
        case FamilyKind::left_open_box: return "left-open-box";
        case FamilyKind::inner_box: return "inner-box";
        case FamilyKind::left_anodyne: return "left-anodyne";
        case FamilyKind::marked_left: return "ml";
    }
    return "?";
}

inline FamilyKind parse_family(const std::string& s) {
    for (auto k : {FamilyKind::boundary, FamilyKind::open_box, FamilyKind::left_open_box, FamilyKind::inner_box,
                   FamilyKind::left_anodyne, FamilyKind::marked_left})
        if (family_name(k) == s) return k;
    throw ParseError("unknown family: " + s);
}

namespace detail {

inline std::string box_name(const char* tag, int n, int i, int e) {
    return std::string(tag) + "(" + std::to_string(n) + "," + std::to_string(i) + "," + std::to_string(e) + ")";
}

inline EdgeMarking mark_edge(EdgeMarking m, int e) {
    m[e] = 1;
    return m;
}

}  // namespace detail

/// The generating monos of a family, for cube dimensions up to max_dim, in
/// cubical sets truncated at d >= max_dim.
inline std::vector<FamilyMember> generator_family(FamilyKind kind, int max_dim, int d) {
    if (max_dim > d) throw PreconditionError("family dimension exceeds the truncation");
    std::vector<FamilyMember> out;
    auto add_left = [&] {
        for (int n = 1; n <= max_dim; ++n)
            for (int i = 1; i <= n; ++i)
                out.push_back({detail::box_name("left-open-box", n, i, 1), open_box_inclusion(n, i, 1, d), {}, {}});
    };
    switch (kind) {
        case FamilyKind::boundary:
            out.push_back({"boundary(0)", CSetMorphism{share(empty_set<CubicalShape>(d)), share(point(d)), Levels(d + 1)}, {}, {}});
            for (int n = 1; n <= max_dim; ++n)
                out.push_back({"boundary(" + std::to_string(n) + ")", boundary_inclusion(n, d), {}, {}});
            break;
        case FamilyKind::open_box:
            for (int n = 1; n <= max_dim; ++n)
                for (int i = 1; i <= n; ++i)
                    for (int e = 0; e < 2; ++e)
                        out.push_back({detail::box_name("open-box", n, i, e), open_box_inclusion(n, i, e, d), {}, {}});
            break;
        case FamilyKind::left_open_box: add_left(); break;
        case FamilyKind::inner_box:
            out = inner_box_family(max_dim, d);
            break;
        case FamilyKind::left_anodyne: {
            add_left();
            auto inner = inner_box_family(max_dim, d);
            out.insert(out.end(), inner.begin(), inner.end());
            break;
        }
        case FamilyKind::marked_left: {
            // Left open boxes with the critical edge marked on both ends.
            for (int n = 2; n <= max_dim; ++n)
                for (int i = 1; i <= n; ++i) {
                    const CSetMorphism inc = open_box_inclusion(n, i, 1, d);
                    const auto keep = [i](const CubeMap& u) { return has_constant_coordinate(u, i, 1); };
                    const CubeMap c = critical_edge(n, i, 1);
                    out.push_back({detail::box_name("ml1", n, i, 1), inc,
                                   detail::mark_edge(degenerate_edges(*inc.source), yoneda_index(n, d, c, keep)),
                                   detail::mark_edge(degenerate_edges(*inc.target), cube_cell(n, d, c))});
                }
            if (max_dim >= 1) {
                const CSetMorphism v = yoneda_map(share(standard_cube(1, d)), 0, 0);
                EdgeMarking all(v.target->count(1), 1);
                out.push_back({"ml2", v, degenerate_edges(*v.source), all});
            }
            for (auto& m : inner_box_family(max_dim, d)) {
                m.name = "ml3-" + m.name;
                m.marked_a = degenerate_edges(*m.inclusion.source);
                m.marked_b = degenerate_edges(*m.inclusion.target);
                out.push_back(std::move(m));
            }
            if (max_dim >= 1) {
                const E1Set e1 = special_e1(d);
                const CSetPtr x = e1.nerve.object;
                out.push_back({"ml4", identity_morphism(x), degenerate_edges(*x), EdgeMarking(x->count(1), 1)});
            }
            if (max_dim >= 2)
                for (int i = 1; i <= 2; ++i) {
                    const CSetPtr sq = share(standard_cube(2, d));
                    const auto keep = [i](const CubeMap& u) { return has_constant_coordinate(u, i, 1); };
                    EdgeMarking ma = degenerate_edges(*sq);
                    for (const CubeMap& u : enumerate_maps(1, 2))
                        if (keep(u)) ma[cube_cell(2, d, u)] = 1;
                    out.push_back({"ml5(" + std::to_string(i) + ")", identity_morphism(sq), ma, EdgeMarking(sq->count(1), 1)});
                }
            break;
        }
    }
    return out;
}

/// Inner fibration test: right lifting against inner open box inclusions.
inline RlpReport check_inner_fibration(const CSetMorphism& p, std::size_t node_cap = kDefaultNodeCap) {
    return check_rlp(p, generator_family(FamilyKind::inner_box, p.source->dim, p.source->dim), {}, {}, node_cap);
}

inline RlpReport check_left_fibration(const CSetMorphism& p, std::size_t node_cap = kDefaultNodeCap) {
    return check_rlp(p, generator_family(FamilyKind::left_anodyne, p.source->dim, p.source->dim), {}, {}, node_cap);
}

// ---------------------------------------------------------------------------
// Cocartesian edges

/// e is cocartesian over p when every left open box of dimension n >= 2 sending
/// its critical edge to e, together with a filler of the image in Y, lifts.
inline bool is_cocartesian(const CSetMorphism& p, int e, int max_dim, std::size_t node_cap = kDefaultNodeCap) {
    const int d = p.source->dim;
    for (int n = 2; n <= max_dim; ++n)
        for (int i = 1; i <= n; ++i) {
            const CSetMorphism inc = open_box_inclusion(n, i, 1, d);
            const auto keep = [i](const CubeMap& u) { return has_constant_coordinate(u, i, 1); };
            const int crit = yoneda_index(n, d, critical_edge(n, i, 1), keep);
            MapSearchOptions of;
            of.node_cap = node_cap;
            of.preassign.emplace_back(1, crit, e);
            bool ok = true;
            for_each_map(*inc.source, *p.source, of, [&](const Levels& fm) {
                MapSearchOptions ob;
                ob.node_cap = node_cap;
                for (int k = 0; k <= d; ++k)
                    for (int a = 0; a < inc.source->count(k); ++a)
                        ob.preassign.emplace_back(k, inc.map[k][a], p.map[k][fm[k][a]]);
                for_each_map(*inc.target, *p.target, ob, [&](const Levels& bm) {
                    LiftingProblem prob{inc, CSetMorphism{inc.source, p.source, fm}, p,
                                        CSetMorphism{inc.target, p.target, bm}, {}, {}};
                    if (!solve_lifting(prob, node_cap).found) ok = false;
                    return ok;
                });
                return ok;
            });
            if (!ok) return false;
        }
    return true;
}

inline EdgeMarking cocartesian_edges(const CSetMorphism& p, int max_dim, std::size_t node_cap = kDefaultNodeCap) {
    if (max_dim > p.source->dim) throw PreconditionError("box dimension exceeds the truncation");
    EdgeMarking out(p.source->count(1), 0);
    for (int e = 0; e < p.source->count(1); ++e) out[e] = is_cocartesian(p, e, max_dim, node_cap) ? 1 : 0;
    return out;
}

/// Squares a = s d(2,0), b = s d(1,0), c = s d(2,1), d = s d(1,1) with a and b
/// cocartesian but exactly one of c and d cocartesian. Returns the first such
/// square, if any.
inline std::optional<int> four_of_three_violation(const CubicalSet& x, const EdgeMarking& coc) {
    if (x.dim < 2) return std::nullopt;
    const int f20 = CubicalShape::face_index(2, 0), f10 = CubicalShape::face_index(1, 0);
    const int f21 = CubicalShape::face_index(2, 1), f11 = CubicalShape::face_index(1, 1);
    for (int s = 0; s < x.count(2); ++s) {
        const auto& dn = x.down[2];
        if (coc[dn[f20][s]] && coc[dn[f10][s]] && coc[dn[f21][s]] != coc[dn[f11][s]]) return s;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Fibers, shadows and transport

struct Fiber {
    CSetPtr object;
    CSetMorphism inclusion;  // fiber -> X
};

/// Pullback of p along the vertex y of the base.
inline Fiber fiber(const CSetMorphism& p, int y) {
    const CSetMorphism v = yoneda_map(p.target, 0, y, share(point(p.target->dim)));
    const CSetConstruction pb = pullback(p, v);
    return {pb.object, pb.legs[0]};
}

struct Shadow {
    int square = kNone;      // 2-cube s of X
    int chosen_edge = kNone; // cocartesian edge over p(e) used for s d(2,0)
    int edge = kNone;        // s d(1,1), an edge of the fiber over p(target of e)
};

/// Shadow of the edge e against a chosen cocartesian edge over p(e) from its source.
inline Shadow shadow(const CSetMorphism& p, int e, const EdgeMarking& coc) {
    const CubicalSet& X = *p.source;
    const CubicalSet& Y = *p.target;
    if (X.dim < 2) throw PreconditionError("shadows need truncation >= 2");
    const int src = X.down[1][0][e], tgt = X.down[1][1][e];
    const int pe = p.map[1][e];
    const int base = Y.up[2][CubicalShape::connection_index(2, 1, 0)][pe];
    const int f20 = CubicalShape::face_index(2, 0), f10 = CubicalShape::face_index(1, 0);
    const int f21 = CubicalShape::face_index(2, 1), f11 = CubicalShape::face_index(1, 1);
    const int dx1 = X.up[1][0][tgt];
    for (int s = 0; s < X.count(2); ++s) {
        if (p.map[2][s] != base) continue;
        const int c = X.down[2][f20][s];
        if (!coc[c] || X.down[1][0][c] != src) continue;
        if (X.down[2][f10][s] != e || X.down[2][f21][s] != dx1) continue;
        return Shadow{s, c, X.down[2][f11][s]};
    }
    throw UndecidedError("no shadow square found up to the truncation");
}

/// Edges whose shadow is an equivalence of the fiber over the target of their image.
inline EdgeMarking shadow_equivalence_edges(const CSetMorphism& p, const EdgeMarking& coc,
                                            int bound = kDefaultPathBound) {
    const CubicalSet& X = *p.source;
    EdgeMarking out(X.count(1), 0);
    for (int e = 0; e < X.count(1); ++e) {
        const Shadow sh = shadow(p, e, coc);
        const Fiber f = fiber(p, p.map[0][X.down[1][1][e]]);
        int local = kNone;
        for (int z = 0; z < f.object->count(1); ++z)
            if (f.inclusion.map[1][z] == sh.edge) local = z;
        if (local == kNone) throw ConstructionError("shadow does not lie in the fiber");
        out[e] = is_equivalence_edge(*f.object, local, EquivalenceMethod::homotopy_category, bound).equivalence ? 1 : 0;
    }
    return out;
}

struct Transport {
    Fiber source;
    Fiber target;
    Levels map;  // source fiber -> target fiber
};

/// Transport along the base edge f: fills F (x) [1] -> X over f with the edges
/// (x, id) cocartesian, extending the fiber inclusion at 0, then restricts to 1.
inline Transport transport(const CSetMorphism& p, int f, const EdgeMarking& coc,
                                          std::size_t node_cap = kDefaultNodeCap) {
    const int d = p.source->dim;
    const CubicalSet& Y = *p.target;
    const Fiber f0 = fiber(p, Y.down[1][0][f]);
    const Fiber f1 = fiber(p, Y.down[1][1][f]);
    const CSetPtr I = share(standard_cube(1, d));
    const CSetPtr pt = share(point(d));
    const Product cyl = geometric_product(*f0.object, *I, d);
    const Product end0 = geometric_product(*f0.object, *pt, d);
    const CSetMorphism id = identity_morphism(f0.object);
    const CSetMorphism at0 = product_map(end0, cyl, id, yoneda_map(I, 0, 0, pt));
    const CSetMorphism at1 = product_map(end0, cyl, id, yoneda_map(I, 0, 1, pt));
    // end0 -> F is the canonical iso (x, pt) -> x.
    CSetMorphism proj0{end0.object, f0.object, Levels(d + 1)};
    for (int k = 0; k <= d; ++k) {
        proj0.map[k].assign(end0.object->count(k), kNone);
        for (int x = 0; x < f0.object->count(k); ++x) proj0.map[k][end0.cube(k, x, 0, 0)] = x;
        for (int c : proj0.map[k])
            if (c == kNone) throw ConstructionError("unexpected cell in fiber times point");
    }
    const CSetMorphism fm = compose(f0.inclusion, proj0);
    const CSetMorphism fy = yoneda_map(p.target, 1, f, I);
    CSetMorphism b{cyl.object, p.target, Levels(d + 1)};
    for (int k = 0; k <= d; ++k)
        for (const auto& [m, x, y] : cyl.cells.pairs[k]) b.map[k].push_back(fy.map[k - m][y]);
    EdgeMarking mb(cyl.object->count(1), 0);
    for (int v = 0; v < f0.object->count(0); ++v) mb[cyl.cube(0, v, 1, top_cell(1, d))] = 1;
    LiftingProblem prob{at0, fm, p, b, mb, coc};
    const auto r = solve_lifting(prob, node_cap);
    if (!r.found) throw UndecidedError("no cocartesian filler for transport up to the truncation");
    // Restrict to the end at 1 and factor through the fiber over the target.
    Transport t{f0, f1, Levels(d + 1)};
    for (int k = 0; k <= d; ++k) {
        std::vector<int> inv(p.source->count(k), kNone);
        for (int z = 0; z < f1.object->count(k); ++z) inv[f1.inclusion.map[k][z]] = z;
        for (int x = 0; x < f0.object->count(k); ++x) {
            const int c = at1.map[k][end0.cube(k, x, 0, 0)];
            const int img = inv[(*r.filler)[k][c]];
            if (img == kNone) throw ConstructionError("transport left the target fiber");
            t.map[k].push_back(img);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Marked left fibrations

enum class RecognitionMethod { lifting, characterization };

struct MarkedFibrationReport {
    bool result = false;
    std::string reason;
};

/// Right lifting against the marked left anodyne generators.
inline MarkedFibrationReport marked_left_fibration_by_lifting(const CSetMorphism& p, const MarkedCubicalSet& x,
                                                              const MarkedCubicalSet& y,
                                                              std::size_t node_cap = kDefaultNodeCap) {
    const auto rep = check_rlp(p, generator_family(FamilyKind::marked_left, p.source->dim, p.source->dim), x.marked,
                               y.marked, node_cap);
    return {rep.pass, rep.pass ? "" : "no lift against " + rep.failing_member};
}

/// Inner fibration, marked edges lift from every vertex, and the marked edges
/// are exactly the cocartesian edges over marked edges.
inline MarkedFibrationReport marked_left_fibration_by_characterization(const CSetMorphism& p,
                                                                       const MarkedCubicalSet& x,
                                                                       const MarkedCubicalSet& y,
                                                                       std::size_t node_cap = kDefaultNodeCap) {
    const CubicalSet& X = *p.source;
    const CubicalSet& Y = *p.target;
    const auto inner = check_inner_fibration(p, node_cap);
    if (!inner.pass) return {false, "not an inner fibration (" + inner.failing_member + ")"};
    for (int v = 0; v < X.count(0); ++v)
        for (int g = 0; g < Y.count(1); ++g) {
            if (!y.marked[g] || Y.down[1][0][g] != p.map[0][v]) continue;
            bool found = false;
            for (int e = 0; e < X.count(1) && !found; ++e)
                found = x.marked[e] && X.down[1][0][e] == v && p.map[1][e] == g;
            if (!found) return {false, "a marked base edge has no marked lift"};
        }
    const EdgeMarking coc = cocartesian_edges(p, X.dim, node_cap);
    for (int e = 0; e < X.count(1); ++e) {
        const bool want = coc[e] && y.marked[p.map[1][e]];
        if (bool(x.marked[e]) != want) return {false, "marked edges differ from cocartesian edges over marked edges"};
    }
    return {true, ""};
}

inline MarkedFibrationReport is_marked_left_fibration(const CSetMorphism& p, const MarkedCubicalSet& x,
                                                      const MarkedCubicalSet& y, RecognitionMethod method,
                                                      std::size_t node_cap = kDefaultNodeCap) {
    if (x.set != p.source && x.set->counts != p.source->counts) throw PreconditionError("marking does not match source");
    if (y.set != p.target && y.set->counts != p.target->counts) throw PreconditionError("marking does not match target");
    return method == RecognitionMethod::lifting ? marked_left_fibration_by_lifting(p, x, y, node_cap)
                                                : marked_left_fibration_by_characterization(p, x, y, node_cap);
}

// ---------------------------------------------------------------------------
// Pushout products

struct PushoutProduct {
    CSetPtr object;      // (A (x) D) glued with (B (x) C) along A (x) C
    CSetMorphism map;    // into B (x) D
    Product target;
};

inline PushoutProduct pushout_product(const CSetMorphism& f, const CSetMorphism& g) {
    const Product ac = geometric_product(*f.source, *g.source);
    const Product ad = geometric_product(*f.source, *g.target);
    const Product bc = geometric_product(*f.target, *g.source);
    const Product bd = geometric_product(*f.target, *g.target);
    const CSetMorphism ida = identity_morphism(f.source);
    const CSetMorphism idb = identity_morphism(f.target);
    const CSetMorphism idc = identity_morphism(g.source);
    const CSetMorphism idd = identity_morphism(g.target);
    const CSetMorphism ac_ad = product_map(ac, ad, ida, g);
    const CSetMorphism ac_bc = product_map(ac, bc, f, idc);
    const CSetConstruction po = pushout(ac_ad, ac_bc);
    const CSetMorphism ad_bd = product_map(ad, bd, f, idd);
    const CSetMorphism bc_bd = product_map(bc, bd, idb, g);
    CSetMorphism m{po.object, bd.object, Levels(po.object->dim + 1)};
    for (int k = 0; k <= po.object->dim; ++k) {
        m.map[k].assign(po.object->count(k), kNone);
        for (int c = 0; c < ad.object->count(k); ++c) m.map[k][po.legs[0].map[k][c]] = ad_bd.map[k][c];
        for (int c = 0; c < bc.object->count(k); ++c) m.map[k][po.legs[1].map[k][c]] = bc_bd.map[k][c];
    }
    return {po.object, std::move(m), bd};
}

}  // namespace cubical
