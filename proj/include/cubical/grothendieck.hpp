#pragma once

// The cubical Grothendieck construction over a finite category, its left
// adjoint Rect, and the unit and counit of the adjunction.

#include <bit>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cubical/marked.hpp"
#include "cubical/nerve.hpp"

namespace cubical {

// ---------------------------------------------------------------------------
// Faces of the n-cube

/// A face of [1]^n: each coordinate free, pinned at 0 or pinned at 1.
struct SideElement {
    int n = 0;
    Vertex free = 0;  // free coordinates
    Vertex ones = 0;  // coordinates pinned at 1

    int dim() const { return std::popcount(free); }
    /// The maximal vertex of the face.
    Vertex last_vertex() const { return free | ones; }
    bool contains(Vertex v) const { return (v & ~free) == ones; }
    bool operator<(const SideElement& o) const { return std::tie(n, free, ones) < std::tie(o.n, o.free, o.ones); }
    bool operator==(const SideElement& o) const = default;
};

/// Face inclusion S <= T.
inline bool side_leq(const SideElement& s, const SideElement& t) {
    return (s.free & ~t.free) == 0 && (s.ones & ~t.free) == t.ones;
}

/// All 3^n faces, by dimension then encoding.
inline std::vector<SideElement> side_poset(int n) {
    std::vector<SideElement> out;
    const Vertex all = (Vertex{1} << n) - 1;
    for (Vertex f = 0; f <= all; ++f)
        for (Vertex o = 0; o <= all; ++o)
            if ((o & f) == 0) out.push_back({n, f, o});
    std::stable_sort(out.begin(), out.end(), [](const SideElement& a, const SideElement& b) {
        return a.dim() != b.dim() ? a.dim() < b.dim() : a < b;
    });
    return out;
}

namespace detail {

/// Places the bits of w on the set bits of mask, in order.
inline Vertex spread(Vertex w, Vertex mask) {
    Vertex out = 0;
    int t = 0;
    for (int i = 0; mask >> i; ++i)
        if (mask >> i & 1U) out |= ((w >> t++) & 1U) << i;
    return out;
}

/// Reads the bits of v at the set bits of mask, packed in order.
inline Vertex gather(Vertex v, Vertex mask) {
    Vertex out = 0;
    int t = 0;
    for (int i = 0; mask >> i; ++i)
        if (mask >> i & 1U) out |= ((v >> i) & 1U) << t++;
    return out;
}

inline CubeMap table_map(int source, int target, std::vector<Vertex> table) {
    CubeMap u;
    u.source = source;
    u.target = target;
    u.table = std::move(table);
    return u;
}

/// The inclusion of a face S into the lower face with free coordinates S.free | S.ones.
inline CubeMap pin_ones(const SideElement& s) {
    const Vertex full = s.free | s.ones;
    std::vector<Vertex> t;
    for (Vertex w = 0; w < (Vertex{1} << s.dim()); ++w) t.push_back(gather(spread(w, s.free) | s.ones, full));
    return table_map(s.dim(), std::popcount(full), std::move(t));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Diagrams of cubical sets

struct CSetDiagram {
    FiniteCategory base;
    std::vector<CSetPtr> values;            // per object
    std::vector<CSetMorphism> arrow_maps;   // per arrow
};

inline int diagram_dim(const CSetDiagram& f) {
    int d = f.values.empty() ? 0 : f.values.front()->dim;
    for (const auto& v : f.values) d = std::min(d, v->dim);
    return d;
}

inline void require_cset_diagram(const CSetDiagram& f) {
    const auto& c = f.base;
    require_category(c);
    if (int(f.values.size()) != c.num_objects || int(f.arrow_maps.size()) != c.num_arrows())
        throw ConstructionError("diagram sizes do not match its category");
    for (int a = 0; a < c.num_arrows(); ++a) {
        const auto& m = f.arrow_maps[a];
        if (m.source != f.values[c.src[a]] && m.source->counts != f.values[c.src[a]]->counts)
            throw ConstructionError("diagram arrow has the wrong source");
        if (!is_morphism(*f.values[c.src[a]], *f.values[c.tgt[a]], m.map))
            throw ConstructionError("diagram arrow is not a cubical map");
    }
    for (int x = 0; x < c.num_objects; ++x)
        if (f.arrow_maps[c.identity[x]].map != identity_morphism(f.values[x]).map)
            throw ConstructionError("diagram does not preserve identities");
    for (int g = 0; g < c.num_arrows(); ++g)
        for (int h = 0; h < c.num_arrows(); ++h)
            if (c.comp[g][h] != kNone && compose(f.arrow_maps[g], f.arrow_maps[h]).map != f.arrow_maps[c.comp[g][h]].map)
                throw ConstructionError("diagram does not preserve composition");
}

inline CSetDiagram constant_diagram(const FiniteCategory& c, const CSetPtr& x) {
    CSetDiagram f{c, std::vector<CSetPtr>(c.num_objects, x), {}};
    for (int a = 0; a < c.num_arrows(); ++a) f.arrow_maps.push_back(identity_morphism(x));
    return f;
}

/// Objectwise nerve of a diagram of categories.
inline CSetDiagram nerve_diagram(const CatDiagram& g, int d) {
    require_cat_diagram(g);
    std::vector<Nerve> nerves;
    CSetDiagram f;
    f.base = g.base;
    for (const auto& v : g.values) {
        nerves.push_back(nerve(v, d));
        f.values.push_back(nerves.back().object);
    }
    for (int a = 0; a < g.base.num_arrows(); ++a)
        f.arrow_maps.push_back(nerve_map(nerves[g.base.src[a]], nerves[g.base.tgt[a]], g.arrow_maps[a]));
    return f;
}

/// Natural transformations as homomorphisms between flattened diagrams.
inline Structure flatten_diagram(const CSetDiagram& f, int d) {
    Structure s;
    std::vector<std::vector<int>> off(f.values.size());
    for (std::size_t c = 0; c < f.values.size(); ++c) {
        off[c] = level_offsets(*f.values[c], d);
        for (int k = 0; k <= d; ++k) s.add_sort(f.values[c]->count(k));
    }
    const int per = d + 1;
    int base = 0;
    std::vector<int> start(f.values.size());
    for (std::size_t c = 0; c < f.values.size(); ++c) {
        start[c] = base;
        base += level_offsets(*f.values[c], d).back();
    }
    for (std::size_t c = 0; c < f.values.size(); ++c) {
        const Structure inner = flatten(*f.values[c], d);
        for (const auto& op : inner.ops) {
            Structure::Op o{int(c) * per + op.dom, int(c) * per + op.cod, {}};
            for (int v : op.table) o.table.push_back(v == kNone ? kNone : start[c] + v);
            s.ops.push_back(std::move(o));
        }
    }
    for (int a = 0; a < f.base.num_arrows(); ++a) {
        const int src = f.base.src[a], tgt = f.base.tgt[a];
        for (int k = 0; k <= d; ++k) {
            Structure::Op o{src * per + k, tgt * per + k, {}};
            for (int v : f.arrow_maps[a].map[k]) o.table.push_back(start[tgt] + off[tgt][k] + v);
            s.ops.push_back(std::move(o));
        }
    }
    s.finalize();
    return s;
}

/// A natural transformation: one cubical map per object.
using NatTrans = std::vector<Levels>;

inline NatTrans unflatten_nat(const std::vector<int>& h, const CSetDiagram& a, const CSetDiagram& b, int d) {
    NatTrans out;
    int sa = 0, sb = 0;
    for (std::size_t c = 0; c < a.values.size(); ++c) {
        Levels m(d + 1);
        const auto oa = level_offsets(*a.values[c], d), ob = level_offsets(*b.values[c], d);
        for (int k = 0; k <= d; ++k)
            for (int x = 0; x < a.values[c]->count(k); ++x) m[k].push_back(h[sa + oa[k] + x] - sb - ob[k]);
        sa += oa.back();
        sb += ob.back();
        out.push_back(std::move(m));
    }
    return out;
}

inline std::uint64_t count_nat_trans(const CSetDiagram& a, const CSetDiagram& b,
                                     std::size_t node_cap = kDefaultNodeCap) {
    const int d = std::min(diagram_dim(a), diagram_dim(b));
    const Structure sa = flatten_diagram(a, d), sb = flatten_diagram(b, d);
    if (!same_signature(sa, sb)) throw PreconditionError("diagrams over different categories");
    SearchOptions o;
    o.node_cap = node_cap;
    return HomSearch(sa, sb, o).count();
}

inline std::vector<NatTrans> all_nat_trans(const CSetDiagram& a, const CSetDiagram& b,
                                           std::size_t node_cap = kDefaultNodeCap) {
    const int d = std::min(diagram_dim(a), diagram_dim(b));
    const Structure sa = flatten_diagram(a, d), sb = flatten_diagram(b, d);
    if (!same_signature(sa, sb)) throw PreconditionError("diagrams over different categories");
    SearchOptions o;
    o.node_cap = node_cap;
    std::vector<NatTrans> out;
    HomSearch(sa, sb, o).for_each([&](const std::vector<int>& h) {
        out.push_back(unflatten_nat(h, a, b, d));
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// The Grothendieck construction

/// An n-cube of ∫F: a cube sigma of N(C) and, for every lower face A (free
/// coordinates A, the rest pinned at 0), a cube phi[A] of F(sigma(1_A)) of
/// dimension |A|. Faces pinned partly at 1 are restrictions of lower faces.
struct IntCube {
    int sigma = 0;
    std::vector<int> phi;  // indexed by the bitmask A
    bool operator<(const IntCube& o) const { return std::tie(sigma, phi) < std::tie(o.sigma, o.phi); }
};

struct IntConstruction {
    CSetDiagram diagram;
    Nerve base;
    CSetPtr object;
    CSetMorphism projection;  // to N(C)
    std::vector<std::vector<IntCube>> cubes;
    std::vector<std::map<IntCube, int>> index;

    /// The family member at an arbitrary face S.
    int face_value(int k, const IntCube& q, const SideElement& s) const {
        const Vertex full = s.free | s.ones;
        const int c = base.object_at(k, q.sigma, full);
        const CubeMap pin = detail::pin_ones(s);
        return apply_operator(*diagram.values[c], q.phi[full], pin);
    }
};

namespace detail {

/// sigma acting by u, family by "restrict along u".
inline IntCube act_int(const IntConstruction& ic, int n, const IntCube& q, const CubeMap& u, int new_sigma) {
    const int m = u.source;
    IntCube r{new_sigma, std::vector<int>(std::size_t(1) << m, kNone)};
    for (Vertex b = 0; b < (Vertex{1} << m); ++b) {
        const Vertex lo = u.table[0], hi = u.table[b];
        const SideElement img{n, hi & ~lo, lo};
        std::vector<Vertex> t;
        for (Vertex w = 0; w < (Vertex{1} << std::popcount(b)); ++w) t.push_back(gather(u.table[spread(w, b)], img.free));
        const CubeMap restricted = table_map(std::popcount(b), img.dim(), std::move(t));
        const int c = ic.base.object_at(n, q.sigma, img.last_vertex());
        r.phi[b] = apply_operator(*ic.diagram.values[c], ic.face_value(n, q, img), restricted);
    }
    return r;
}

}  // namespace detail

/// ∫F truncated at d (default: the diagram's truncation).
inline IntConstruction int_construction(const CSetDiagram& f, std::optional<int> dim = std::nullopt,
                                        std::size_t cap = kDefaultNodeCap) {
    require_cset_diagram(f);
    const int d = dim.value_or(diagram_dim(f));
    if (d > diagram_dim(f)) throw TruncationError("∫F above the diagram's truncation");
    IntConstruction ic;
    ic.diagram = f;
    ic.base = nerve(f.base, d);
    ic.cubes.resize(d + 1);
    ic.index.resize(d + 1);
    for (int n = 0; n <= d; ++n) {
        for (int s = 0; s < ic.base.object->count(n); ++s) {
            IntCube q{s, std::vector<int>(std::size_t(1) << n, kNone)};
            std::vector<Vertex> order;
            for (Vertex a = 0; a < (Vertex{1} << n); ++a) order.push_back(a);
            std::stable_sort(order.begin(), order.end(), [](Vertex a, Vertex b) { return std::popcount(a) < std::popcount(b); });
            std::function<void(std::size_t)> rec = [&](std::size_t t) {
                if (t == order.size()) {
                    ic.cubes[n].push_back(q);
                    if (ic.cubes[n].size() > cap) throw ResourceError("∫F enumeration exceeded cap");
                    return;
                }
                const Vertex a = order[t];
                const int dimA = std::popcount(a);
                const int c = ic.base.object_at(n, s, a);
                const CubicalSet& X = *f.values[c];
                // Required faces: phi[A] d_{pos(j),0} = F(sigma(1_{A-j} <= 1_A))(phi[A-j]).
                std::vector<std::pair<int, int>> need;  // (face op index, value)
                int pos = 0;
                for (int j = 0; j < n; ++j) {
                    if (!(a >> j & 1U)) continue;
                    ++pos;
                    const Vertex below = a & ~(Vertex{1} << j);
                    const int arrow = ic.base.arrow(n, s, below, a);
                    need.emplace_back(CubicalShape::face_index(pos, 0),
                                      f.arrow_maps[arrow].map[dimA - 1][q.phi[below]]);
                }
                for (int z = 0; z < X.count(dimA); ++z) {
                    bool ok = true;
                    for (auto [o, v] : need)
                        if (X.down[dimA][o][z] != v) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    q.phi[a] = z;
                    rec(t + 1);
                }
                q.phi[a] = kNone;
            };
            rec(0);
        }
        std::sort(ic.cubes[n].begin(), ic.cubes[n].end());
        for (int i = 0; i < int(ic.cubes[n].size()); ++i) ic.index[n][ic.cubes[n][i]] = i;
    }
    CubicalSet X(d);
    for (int n = 0; n <= d; ++n) X.set_count(n, int(ic.cubes[n].size()));
    for (int n = 1; n <= d; ++n) {
        for (int o = 0; o < CubicalShape::num_down(n); ++o) {
            const CubeMap u = generator(CubicalShape::down_operator(n, o));
            for (int x = 0; x < X.count(n); ++x) {
                const IntCube& q = ic.cubes[n][x];
                X.down[n][o][x] = ic.index[n - 1].at(detail::act_int(ic, n, q, u, ic.base.object->down[n][o][q.sigma]));
            }
        }
        for (int o = 0; o < CubicalShape::num_up(n); ++o) {
            const CubeMap u = generator(CubicalShape::up_operator(n, o));
            for (int y = 0; y < X.count(n - 1); ++y) {
                const IntCube& q = ic.cubes[n - 1][y];
                X.up[n][o][y] = ic.index[n].at(detail::act_int(ic, n - 1, q, u, ic.base.object->up[n][o][q.sigma]));
            }
        }
    }
    ic.object = share(std::move(X));
    ic.projection = CSetMorphism{ic.object, ic.base.object, Levels(d + 1)};
    for (int n = 0; n <= d; ++n)
        for (const auto& q : ic.cubes[n]) ic.projection.map[n].push_back(q.sigma);
    return ic;
}

/// ∫α for a natural transformation α: F -> G.
inline CSetMorphism int_map(const IntConstruction& a, const IntConstruction& b, const NatTrans& alpha) {
    const int d = std::min(a.object->dim, b.object->dim);
    CSetMorphism m{a.object, b.object, Levels(d + 1)};
    for (int n = 0; n <= d; ++n)
        for (const auto& q : a.cubes[n]) {
            IntCube r = q;
            for (Vertex s = 0; s < Vertex(q.phi.size()); ++s)
                r.phi[s] = alpha[a.base.object_at(n, q.sigma, s)][std::popcount(s)][q.phi[s]];
            m.map[n].push_back(b.index[n].at(r));
        }
    return m;
}

/// Marking of ∫⁺F: an edge (f, e) is marked when its fiber edge e is marked.
inline EdgeMarking int_marking(const IntConstruction& ic, const std::vector<EdgeMarking>& markings) {
    EdgeMarking out(ic.object->count(1), 0);
    if (ic.object->dim < 1) return out;
    for (int e = 0; e < ic.object->count(1); ++e) {
        const IntCube& q = ic.cubes[1][e];
        out[e] = markings[ic.base.object_at(1, q.sigma, 1)][q.phi[1]];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rectification

struct SliceData {
    Slice slice;
    Nerve nerve;
    CSetMorphism projection;  // N(C/c) -> N(C)
};

struct Rectification {
    CSetDiagram diagram;
    std::vector<SliceData> slices;
    std::vector<CSetConstruction> pullbacks;  // legs: Rect X(c) -> X, Rect X(c) -> N(C/c)
    std::vector<std::vector<std::map<std::pair<int, int>, int>>> index;  // per c, level: (x, tau) -> cell
};

/// The arrow of C/c over h from a to b.
inline int slice_arrow(const Slice& s, int a, int b, int h) {
    for (int f = 0; f < s.category.num_arrows(); ++f)
        if (s.category.src[f] == a && s.category.tgt[f] == b && s.projection.on_arrows[f] == h) return f;
    throw ConstructionError("no slice arrow over the given arrow");
}

inline int slice_object(const Slice& s, int arrow) {
    for (int a = 0; a < int(s.object_arrow.size()); ++a)
        if (s.object_arrow[a] == arrow) return a;
    throw ConstructionError("arrow is not an object of the slice");
}

/// Rect(X)(c) = X x_{N C} N(C/c), with arrows acting by post-composition.
inline Rectification rectify(const CSetMorphism& p, const Nerve& base) {
    const FiniteCategory& C = base.category;
    const int d = std::min(p.source->dim, base.object->dim);
    Rectification r;
    r.diagram.base = C;
    for (int c = 0; c < C.num_objects; ++c) {
        SliceData sd{slice(C, c, SliceSide::over), {}, {}};
        sd.nerve = nerve(sd.slice.category, d);
        sd.projection = nerve_map(sd.nerve, base, sd.slice.projection);
        r.pullbacks.push_back(pullback(p, sd.projection));
        r.diagram.values.push_back(r.pullbacks.back().object);
        std::vector<std::map<std::pair<int, int>, int>> idx(d + 1);
        const auto& pb = r.pullbacks.back();
        for (int k = 0; k <= d; ++k)
            for (int e = 0; e < pb.object->count(k); ++e) idx[k][{pb.legs[0].map[k][e], pb.legs[1].map[k][e]}] = e;
        r.index.push_back(std::move(idx));
        r.slices.push_back(std::move(sd));
    }
    for (int a = 0; a < C.num_arrows(); ++a) {
        const int c = C.src[a], c2 = C.tgt[a];
        const Slice& s1 = r.slices[c].slice;
        const Slice& s2 = r.slices[c2].slice;
        CatFunctor post;
        for (int o = 0; o < s1.category.num_objects; ++o) post.on_objects.push_back(slice_object(s2, C.comp[a][s1.object_arrow[o]]));
        for (int f = 0; f < s1.category.num_arrows(); ++f)
            post.on_arrows.push_back(slice_arrow(s2, post.on_objects[s1.category.src[f]], post.on_objects[s1.category.tgt[f]],
                                                 s1.projection.on_arrows[f]));
        const CSetMorphism nm = nerve_map(r.slices[c].nerve, r.slices[c2].nerve, post);
        const auto& pb = r.pullbacks[c];
        CSetMorphism m{pb.object, r.pullbacks[c2].object, Levels(d + 1)};
        for (int k = 0; k <= d; ++k)
            for (int e = 0; e < pb.object->count(k); ++e)
                m.map[k].push_back(r.index[c2][k].at({pb.legs[0].map[k][e], nm.map[k][pb.legs[1].map[k][e]]}));
        r.diagram.arrow_maps.push_back(std::move(m));
    }
    return r;
}

/// Marking of Rect⁺: (x, tau) is marked when x is.
inline std::vector<EdgeMarking> rect_marking(const Rectification& r, const EdgeMarking& marked) {
    std::vector<EdgeMarking> out;
    for (const auto& pb : r.pullbacks) {
        EdgeMarking m(pb.object->count(1), 0);
        for (int e = 0; e < pb.object->count(1); ++e) m[e] = marked[pb.legs[0].map[1][e]];
        out.push_back(std::move(m));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Unit, counit and the adjunction check

/// The tau of a face: vertex v of the face goes to sigma(v <= LV(S)) as an object of C/sigma(LV(S)).
inline int slice_cube(const Nerve& base, const SliceData& sd, int n, int sigma, const SideElement& s) {
    const int k = s.dim();
    const Vertex lv = s.last_vertex();
    const Vertex kv = Vertex{1} << k;
    std::vector<int> obj(kv);
    for (Vertex w = 0; w < kv; ++w) obj[w] = slice_object(sd.slice, base.arrow(n, sigma, detail::spread(w, s.free) | s.ones, lv));
    CubeFunctor t(std::size_t(kv) * kv, kNone);
    for (Vertex a = 0; a < kv; ++a)
        for (Vertex b = 0; b < kv; ++b)
            if (bits::leq(a, b)) {
                const int h = base.arrow(n, sigma, detail::spread(a, s.free) | s.ones, detail::spread(b, s.free) | s.ones);
                t[a * kv + b] = slice_arrow(sd.slice, obj[a], obj[b], h);
            }
    return sd.nerve.find(k, t);
}

/// η_X: X -> ∫Rect X.
inline CSetMorphism unit_map(const CSetMorphism& p, const Rectification& r, const IntConstruction& irx) {
    const int d = std::min(p.source->dim, irx.object->dim);
    const CubicalSet& X = *p.source;
    CSetMorphism m{p.source, irx.object, Levels(d + 1)};
    for (int n = 0; n <= d; ++n)
        for (int x = 0; x < X.count(n); ++x) {
            const int sigma = p.map[n][x];
            IntCube q{sigma, std::vector<int>(std::size_t(1) << n, kNone)};
            for (Vertex a = 0; a < (Vertex{1} << n); ++a) {
                const SideElement s{n, a, 0};
                const int c = irx.base.object_at(n, sigma, a);
                const int k = s.dim();
                std::vector<Vertex> t;
                for (Vertex w = 0; w < (Vertex{1} << k); ++w) t.push_back(detail::spread(w, a));
                const int xs = apply_operator(X, x, detail::table_map(k, n, std::move(t)));
                const int tau = slice_cube(irx.base, r.slices[c], n, sigma, s);
                q.phi[a] = r.index[c][k].at({xs, tau});
            }
            m.map[n].push_back(irx.index[n].at(q));
        }
    return m;
}

/// ε_F at every object: (∫F) x_{N C} N(C/c) -> F(c), ((sigma, phi), tau) -> F(tau(1^n))(phi_top).
inline NatTrans counit_map(const IntConstruction& ic, const Rectification& rif) {
    NatTrans out;
    const auto& C = ic.diagram.base;
    for (int c = 0; c < C.num_objects; ++c) {
        const auto& pb = rif.pullbacks[c];
        const int d = pb.object->dim;
        Levels m(d + 1);
        for (int n = 0; n <= d; ++n)
            for (int e = 0; e < pb.object->count(n); ++e) {
                const IntCube& q = ic.cubes[n][pb.legs[0].map[n][e]];
                const int tau = pb.legs[1].map[n][e];
                const Vertex top = (Vertex{1} << n) - 1;
                const int obj = rif.slices[c].nerve.object_at(n, tau, top);
                const int arrow = rif.slices[c].slice.object_arrow[obj];
                m[n].push_back(ic.diagram.arrow_maps[arrow].map[n][q.phi[top]]);
            }
        out.push_back(std::move(m));
    }
    return out;
}

struct AdjunctionReport {
    std::uint64_t left_count = 0;   // natural transformations Rect X -> F
    std::uint64_t right_count = 0;  // maps X -> ∫F over N(C)
    bool transpose_bijective = false;
    bool triangle_left = false;   // ε_{Rect X} o Rect(η_X) = id
    bool triangle_right = false;  // ∫ε_F o η_{∫F} = id
    bool unit_over_base = false;

    bool pass() const {
        return left_count == right_count && transpose_bijective && triangle_left && triangle_right && unit_over_base;
    }
};

/// Exhaustive check of Rect ⊣ ∫ on one instance: X over N(C) and a diagram F.
inline AdjunctionReport check_adjunction(const CSetMorphism& p, const Nerve& base, const CSetDiagram& f,
                                         std::size_t node_cap = kDefaultNodeCap) {
    AdjunctionReport rep;
    const Rectification rx = rectify(p, base);
    const IntConstruction iF = int_construction(f, base.object->dim);
    const IntConstruction irx = int_construction(rx.diagram, base.object->dim);
    const CSetMorphism eta = unit_map(p, rx, irx);
    // Unit lies over the base.
    rep.unit_over_base = is_morphism(eta);
    for (int n = 0; n <= eta.source->dim && rep.unit_over_base; ++n)
        for (int x = 0; x < eta.source->count(n); ++x)
            if (irx.projection.map[n][eta.map[n][x]] != p.map[n][x]) rep.unit_over_base = false;
    // Hom sets.
    const auto alphas = all_nat_trans(rx.diagram, f, node_cap);
    rep.left_count = alphas.size();
    MapSearchOptions o;
    o.node_cap = node_cap;
    const CSetMorphism q = iF.projection;
    const CSetMorphism pp = p;
    o.filter = [q, pp](int k, int x, int y) { return q.map[k][y] == pp.map[k][x]; };
    rep.right_count = count_maps(*p.source, *iF.object, o);
    std::set<Levels> seen;
    bool ok = true;
    for (const auto& a : alphas) {
        const CSetMorphism t = compose(int_map(irx, iF, a), eta);
        for (int n = 0; n <= t.source->dim && ok; ++n)
            for (int x = 0; x < t.source->count(n); ++x)
                if (q.map[n][t.map[n][x]] != p.map[n][x]) ok = false;
        if (!is_morphism(t)) ok = false;
        seen.insert(t.map);
    }
    rep.transpose_bijective = ok && seen.size() == alphas.size() && seen.size() == rep.right_count;
    // ∫ε_F o η_{∫F} = id.
    {
        const Rectification rif = rectify(iF.projection, base);
        const IntConstruction irif = int_construction(rif.diagram, base.object->dim);
        const CSetMorphism eta_f = unit_map(iF.projection, rif, irif);
        const NatTrans eps = counit_map(iF, rif);
        const CSetMorphism comp = compose(int_map(irif, iF, eps), eta_f);
        rep.triangle_right = comp.map == identity_morphism(iF.object).map;
    }
    // ε_{Rect X} o Rect(η_X) = id, objectwise.
    {
        const Rectification rr = rectify(irx.projection, base);
        const NatTrans eps = counit_map(irx, rr);
        rep.triangle_left = true;
        for (int c = 0; c < base.category.num_objects; ++c) {
            const auto& pb = rx.pullbacks[c];
            Levels m(pb.object->dim + 1);
            for (int n = 0; n <= pb.object->dim; ++n)
                for (int e = 0; e < pb.object->count(n); ++e) {
                    const int x = pb.legs[0].map[n][e], tau = pb.legs[1].map[n][e];
                    m[n].push_back(eps[c][n][rr.index[c][n].at({eta.map[n][x], tau})]);
                }
            if (m != identity_morphism(pb.object).map) rep.triangle_left = false;
        }
    }
    return rep;
}

}  // namespace cubical
