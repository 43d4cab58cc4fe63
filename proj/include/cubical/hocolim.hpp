#pragma once

// Homotopy colimits over finite categories: the cubical bar construction,
// its realization as a coend against standard cubes, weighted colimits, the
// fat (face-only) realization and the James cubical set.

#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "cubical/grothendieck.hpp"
#include "cubical/lifting.hpp"
#include "cubical/nerve.hpp"

namespace cubical {

/// A functor from the cube category (opposite) to cubical sets, for levels 0..dim.
/// down[n][o]: B_n -> B_{n-1} along the o-th face; up[n][o]: B_{n-1} -> B_n along the
/// o-th degeneracy or connection, both indexed as in CubicalShape.
struct CubicalObject {
    int dim = 0;
    std::vector<CSetPtr> levels;
    std::vector<std::vector<CSetMorphism>> down;
    std::vector<std::vector<CSetMorphism>> up;

    /// The map B_n -> B_m induced by one generator [1]^m -> [1]^n.
    const CSetMorphism& induced(const CubeOperator& op) const {
        switch (op.kind) {
            case OpKind::face: return down.at(op.n).at(CubicalShape::face_index(op.i, op.eps));
            case OpKind::degeneracy: return up.at(op.n).at(CubicalShape::degeneracy_index(op.i));
            default: return up.at(op.n).at(CubicalShape::connection_index(op.n, op.i, op.connection_sign()));
        }
    }

    /// u^*: B_{u.target} -> B_{u.source} along a word for u.
    CSetMorphism induced(const CubeMap& u) const {
        CSetMorphism m = identity_morphism(levels.at(u.target));
        for (const CubeOperator& g : canonical_word(u)) m = compose(induced(g), m);
        return m;
    }
};

/// Identity-table instances of the cubical identities on which B fails to be functorial.
inline std::vector<std::string> functoriality_violations(const CubicalObject& b) {
    std::vector<std::string> out;
    for (const IdentityInstance& inst : cubical_identity_instances(b.dim)) {
        auto along = [&](const std::vector<CubeOperator>& w) {
            CSetMorphism m = identity_morphism(b.levels.at(inst.target));
            for (const CubeOperator& g : w) m = compose(b.induced(g), m);
            return m.map;
        };
        if (along(inst.lhs) != along(inst.rhs)) out.push_back(describe(inst));
    }
    return out;
}

/// B_n = point for every n.
inline CubicalObject terminal_object(int levels, int d) {
    CubicalObject b;
    b.dim = levels;
    const CSetPtr pt = share(point(d));
    b.levels.assign(levels + 1, pt);
    b.down.resize(levels + 1);
    b.up.resize(levels + 1);
    for (int n = 1; n <= levels; ++n) {
        b.down[n].assign(CubicalShape::num_down(n), identity_morphism(pt));
        b.up[n].assign(CubicalShape::num_up(n), identity_morphism(pt));
    }
    return b;
}

/// B_n(*, C, F) = coproduct over functors d: [1]^n -> C of F(d(0)).
struct BarConstruction {
    CubicalObject object;
    Nerve base;
    // Level n, summand for the nerve cube d -> coproduct injection of F(d(0)).
    std::vector<std::vector<CSetMorphism>> injections;
};

inline BarConstruction bar_construction(const CSetDiagram& f, std::optional<int> levels = std::nullopt,
                                        std::size_t cap = kDefaultNodeCap) {
    require_cset_diagram(f);
    const int d = diagram_dim(f);
    const int top = levels.value_or(d);
    BarConstruction bc;
    bc.base = nerve(f.base, top, cap);
    const Nerve& nv = bc.base;
    CubicalObject& b = bc.object;
    b.dim = top;
    b.down.resize(top + 1);
    b.up.resize(top + 1);
    bc.injections.resize(top + 1);
    for (int n = 0; n <= top; ++n) {
        std::vector<CSetPtr> parts;
        for (int c = 0; c < nv.object->count(n); ++c) parts.push_back(f.values[nv.object_at(n, c, 0)]);
        auto sum = coproduct<CubicalShape>(parts, d);
        b.levels.push_back(sum.object);
        bc.injections[n] = std::move(sum.legs);
    }
    // The map B_n -> B_m for a generator u: [1]^m -> [1]^n, given d -> d.u on nerve cubes.
    auto structure = [&](int n, int m, const std::vector<int>& reindex, Vertex u0) {
        CSetMorphism h{b.levels[n], b.levels[m], Levels(d + 1)};
        for (int k = 0; k <= d; ++k) h.map[k].assign(b.levels[n]->count(k), kNone);
        for (int c = 0; c < nv.object->count(n); ++c) {
            const int a = nv.arrow(n, c, 0, u0);
            const CSetMorphism& fa = f.arrow_maps[a];
            const CSetMorphism& from = bc.injections[n][c];
            const CSetMorphism& to = bc.injections[m][reindex[c]];
            for (int k = 0; k <= d; ++k)
                for (int x = 0; x < from.source->count(k); ++x) h.map[k][from.map[k][x]] = to.map[k][fa.map[k][x]];
        }
        return h;
    };
    for (int n = 1; n <= top; ++n) {
        for (int o = 0; o < CubicalShape::num_down(n); ++o) {
            const CubeOperator g = CubicalShape::down_operator(n, o);
            b.down[n].push_back(structure(n, n - 1, nv.object->down[n][o], apply_operator_to_vertex(g, 0)));
        }
        for (int o = 0; o < CubicalShape::num_up(n); ++o) {
            const CubeOperator g = CubicalShape::up_operator(n, o);
            b.up[n].push_back(structure(n - 1, n, nv.object->up[n][o], apply_operator_to_vertex(g, 0)));
        }
    }
    return bc;
}

namespace detail {

/// u_*: cube(m) -> cube(n) for u: [1]^m -> [1]^n.
inline CSetMorphism cube_functor_map(const CSetPtr& from, const CSetPtr& to, const CubeMap& u) {
    return yoneda_map(to, u.source, cube_cell(u.target, to->dim, u), from);
}

// Coend of cube(n) (x) B_n over the generators selected by `use_up`.
inline CSetPtr coend_realization(const CubicalObject& b, bool use_up, std::optional<int> dim) {
    int d = dim.value_or(b.levels.front()->dim);
    for (const auto& l : b.levels) d = std::min(d, l->dim);
    const int top = std::min(b.dim, d);
    std::vector<CSetPtr> cubes;
    for (int n = 0; n <= top; ++n) cubes.push_back(share(standard_cube(n, d)));
    std::vector<Product> diag;
    std::vector<CSetPtr> parts;
    for (int n = 0; n <= top; ++n) {
        diag.push_back(geometric_product(*cubes[n], *b.levels[n], d));
        parts.push_back(diag.back().object);
    }
    const auto sum = coproduct<CubicalShape>(parts, d);
    std::vector<std::tuple<int, int, int>> pairs;
    // For u: [1]^m -> [1]^n, cube(m) (x) B_n: (u_* (x) id) ~ (id (x) u^*).
    auto glue = [&](int m, int n, const CubeMap& u, const CSetMorphism& ustar) {
        const Product mid = geometric_product(*cubes[m], *b.levels[n], d);
        const CSetMorphism left = product_map(mid, diag[n], cube_functor_map(cubes[m], cubes[n], u),
                                              identity_morphism(b.levels[n]));
        const CSetMorphism right = product_map(mid, diag[m], identity_morphism(cubes[m]), ustar);
        for (int k = 0; k <= d; ++k)
            for (int c = 0; c < mid.object->count(k); ++c)
                pairs.emplace_back(k, sum.legs[n].map[k][left.map[k][c]], sum.legs[m].map[k][right.map[k][c]]);
    };
    for (int n = 1; n <= top; ++n) {
        for (int o = 0; o < CubicalShape::num_down(n); ++o)
            glue(n - 1, n, generator(CubicalShape::down_operator(n, o)), b.down[n][o]);
        if (use_up)
            for (int o = 0; o < CubicalShape::num_up(n); ++o)
                glue(n, n - 1, generator(CubicalShape::up_operator(n, o)), b.up[n][o]);
    }
    return quotient(sum.object, pairs).object;
}

}  // namespace detail

/// |B| = coend of cube(n) (x) B_n over the cube category, levels <= dim.
inline CSetPtr realization(const CubicalObject& b, std::optional<int> dim = std::nullopt) {
    return detail::coend_realization(b, true, dim);
}

/// The same coend over faces only.
inline CSetPtr fat_realization(const CubicalObject& b, std::optional<int> dim = std::nullopt) {
    return detail::coend_realization(b, false, dim);
}

/// A contravariant diagram: arrow_maps[f] goes values[tgt f] -> values[src f].
struct CSetWeight {
    FiniteCategory base;
    std::vector<CSetPtr> values;
    std::vector<CSetMorphism> arrow_maps;
};

/// W(c) = N(C_{c/}); an arrow f: c -> c' acts by precomposition.
inline CSetWeight coslice_weight(const FiniteCategory& c, int d, std::size_t cap = kDefaultNodeCap) {
    CSetWeight w{c, {}, {}};
    std::vector<Slice> slices;
    std::vector<Nerve> nerves;
    for (int x = 0; x < c.num_objects; ++x) {
        slices.push_back(slice(c, x, SliceSide::under));
        nerves.push_back(nerve(slices.back().category, d, cap));
        w.values.push_back(nerves.back().object);
    }
    for (int f = 0; f < c.num_arrows(); ++f) {
        const Slice& from = slices[c.tgt[f]];
        const Slice& to = slices[c.src[f]];
        CatFunctor pre;
        for (int g : from.object_arrow) pre.on_objects.push_back(slice_object(to, c.compose(g, f)));
        for (int h = 0; h < from.category.num_arrows(); ++h) {
            const int a = pre.on_objects[from.category.src[h]], b = pre.on_objects[from.category.tgt[h]];
            pre.on_arrows.push_back(slice_arrow(to, a, b, from.projection.on_arrows[h]));
        }
        w.arrow_maps.push_back(nerve_map(nerves[c.tgt[f]], nerves[c.src[f]], pre));
    }
    return w;
}

inline CSetWeight constant_weight(const FiniteCategory& c, const CSetPtr& x) {
    CSetWeight w{c, std::vector<CSetPtr>(c.num_objects, x), {}};
    for (int f = 0; f < c.num_arrows(); ++f) w.arrow_maps.push_back(identity_morphism(x));
    return w;
}

/// W (x)_C F: coproduct of W(c) (x) F(c) modulo (W(f) w, x) ~ (w, F(f) x).
inline CSetPtr weighted_colimit(const CSetWeight& w, const CSetDiagram& f, std::optional<int> dim = std::nullopt) {
    require_cset_diagram(f);
    if (!(w.base == f.base)) throw PreconditionError("weight and diagram live over different categories");
    const auto& c = f.base;
    int d = dim.value_or(diagram_dim(f));
    d = std::min(d, diagram_dim(f));
    for (const auto& v : w.values) d = std::min(d, v->dim);
    std::vector<Product> diag;
    std::vector<CSetPtr> parts;
    for (int x = 0; x < c.num_objects; ++x) {
        diag.push_back(geometric_product(*w.values[x], *f.values[x], d));
        parts.push_back(diag.back().object);
    }
    if (parts.empty()) return share(empty_set<CubicalShape>(d));
    const auto sum = coproduct<CubicalShape>(parts, d);
    std::vector<std::tuple<int, int, int>> pairs;
    for (int a = 0; a < c.num_arrows(); ++a) {
        if (c.is_identity(a)) continue;
        const int s = c.src[a], t = c.tgt[a];
        const Product mid = geometric_product(*w.values[t], *f.values[s], d);
        const CSetMorphism left = product_map(mid, diag[s], w.arrow_maps[a], identity_morphism(f.values[s]));
        const CSetMorphism right = product_map(mid, diag[t], identity_morphism(w.values[t]), f.arrow_maps[a]);
        for (int k = 0; k <= d; ++k)
            for (int x = 0; x < mid.object->count(k); ++x)
                pairs.emplace_back(k, sum.legs[s].map[k][left.map[k][x]], sum.legs[t].map[k][right.map[k][x]]);
    }
    return quotient(sum.object, pairs).object;
}

/// Homotopy colimit by the coslice-nerve weight.
inline CSetPtr hocolim_weighted(const CSetDiagram& f, std::optional<int> dim = std::nullopt) {
    const int d = std::min(dim.value_or(diagram_dim(f)), diagram_dim(f));
    return weighted_colimit(coslice_weight(f.base, d), f, d);
}

/// Homotopy colimit as the realization of the bar construction.
inline CSetPtr hocolim_bar(const CSetDiagram& f, std::optional<int> dim = std::nullopt) {
    const int d = std::min(dim.value_or(diagram_dim(f)), diagram_dim(f));
    return realization(bar_construction(f, d).object, d);
}

/// The cubical set whose n-cubes are the maps out of [1]^n with no constant
/// output coordinate; u acts by the surjective part of the composite.
struct JamesSet {
    CSetPtr object;
    std::vector<std::vector<CubeMap>> cubes;  // per level, in cell order
};

inline JamesSet james(int d, int cap = kDefaultDimensionCap) {
    if (d < 0) throw ConstructionError("negative truncation dimension");
    if (d > cap) throw ResourceError("james set beyond dimension cap " + std::to_string(cap));
    using Key = std::pair<int, std::vector<Vertex>>;
    JamesSet j;
    std::vector<std::vector<Key>> keys(d + 1);
    j.cubes.resize(d + 1);
    for (int k = 0; k <= d; ++k) {
        j.cubes[k] = enumerate_surjections(k, cap);
        for (const CubeMap& s : j.cubes[k]) keys[k].emplace_back(s.target, s.table);
    }
    j.object = share(build_from_keys<CubicalShape>(d, keys, [](int k, bool up, int o, const Key& key) {
        const CubeOperator g = up ? CubicalShape::up_operator(k, o) : CubicalShape::down_operator(k, o);
        CubeMap s;
        s.source = up ? k - 1 : k;
        s.target = key.first;
        s.table = key.second;
        const CubeMap r = factorize(compose(s, generator(g))).surjective_part;
        return Key{r.target, r.table};
    }));
    return j;
}

}  // namespace cubical
