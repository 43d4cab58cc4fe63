#pragma once

// Truncated cubical sets with connections.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubical/cube_site.hpp"
#include "cubical/graded_set.hpp"

namespace cubical {

struct CubicalShape {
    static int num_down(int k) { return k == 0 ? 0 : 2 * k; }
    static int num_up(int k) { return k == 0 ? 0 : 3 * k - 2; }

    static int face_index(int i, int eps) { return 2 * (i - 1) + eps; }
    static int degeneracy_index(int i) { return i - 1; }
    static int connection_index(int k, int i, int eps) { return k + 2 * (i - 1) + eps; }

    // The generator carried by the o-th down/up table at level k.
    static CubeOperator down_operator(int k, int o) { return CubeOperator::face(k, o / 2 + 1, o % 2); }
    static CubeOperator up_operator(int k, int o) {
        if (o < k) return CubeOperator::degeneracy(k, o + 1);
        const int r = o - k;
        return CubeOperator::connection(k, r / 2 + 1, r % 2);
    }
};

using CubicalSet = GradedSet<CubicalShape>;
using CSetPtr = GradedPtr<CubicalShape>;
using CSetMorphism = GradedMap<CubicalShape>;
using CSetConstruction = Construction<CubicalShape>;

/// Acts on a cube by one generator. `x` lives in the generator's target dimension.
inline int act(const CubicalSet& X, int x, const CubeOperator& op) {
    check_operator(op);
    switch (op.kind) {
        case OpKind::face:
            if (op.n > X.dim) throw TruncationError("face out of dimension " + std::to_string(op.n));
            return X.down[op.n][CubicalShape::face_index(op.i, op.eps)][x];
        case OpKind::degeneracy:
            if (op.n > X.dim) throw TruncationError("degeneracy into dimension " + std::to_string(op.n));
            return X.up[op.n][CubicalShape::degeneracy_index(op.i)][x];
        default:
            if (op.n > X.dim) throw TruncationError("connection into dimension " + std::to_string(op.n));
            return X.up[op.n][CubicalShape::connection_index(op.n, op.i, op.connection_sign())][x];
    }
}

inline int act_word(const CubicalSet& X, int x, const std::vector<CubeOperator>& word) {
    for (const auto& g : word) x = act(X, x, g);
    return x;
}

/// x.u for a cube x of dimension u.target. Uses a word that stays within max(source, target).
inline int apply_operator(const CubicalSet& X, int x, const CubeMap& u) {
    if (u.source > X.dim || u.target > X.dim)
        throw TruncationError("operator " + u.word_str() + " leaves truncation dimension " + std::to_string(X.dim));
    return act_word(X, x, canonical_word(u));
}

struct IdentityViolation {
    std::string identity;
    int cube = 0;  // the cube both sides were applied to
    int dim = 0;
    int lhs = 0;
    int rhs = 0;
};

/// Every violated identity instance inside the truncation; empty means valid.
inline std::vector<IdentityViolation> validate(const CubicalSet& X) {
    std::vector<IdentityViolation> out;
    // Totality first: a table hole makes identity checks meaningless.
    for (int k = 1; k <= X.dim; ++k) {
        for (std::size_t o = 0; o < X.down[k].size(); ++o)
            for (int x = 0; x < X.count(k); ++x) {
                const int v = X.down[k][o][x];
                if (v < 0 || v >= X.count(k - 1))
                    out.push_back({"total " + CubicalShape::down_operator(k, int(o)).str(), x, k, v, v});
            }
        for (std::size_t o = 0; o < X.up[k].size(); ++o)
            for (int x = 0; x < X.count(k - 1); ++x) {
                const int v = X.up[k][o][x];
                if (v < 0 || v >= X.count(k))
                    out.push_back({"total " + CubicalShape::up_operator(k, int(o)).str(), x, k - 1, v, v});
            }
    }
    if (!out.empty()) return out;
    for (const auto& inst : cubical_identity_instances(X.dim))
        for (int x = 0; x < X.count(inst.target); ++x) {
            const int l = act_word(X, x, inst.lhs);
            const int r = act_word(X, x, inst.rhs);
            if (l != r) out.push_back({describe(inst), x, inst.target, l, r});
        }
    return out;
}

struct DegeneracyWitness {
    int base = 0;
    CubeOperator op;
};

/// A witness (y, op) with x = y.op where op is a degeneracy or connection, if any.
inline std::optional<DegeneracyWitness> is_degenerate(const CubicalSet& X, int k, int x) {
    if (k < 1 || k > X.dim) return std::nullopt;
    for (int o = 0; o < int(X.up[k].size()); ++o)
        for (int y = 0; y < X.count(k - 1); ++y)
            if (X.up[k][o][y] == x) return DegeneracyWitness{y, CubicalShape::up_operator(k, o)};
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Representables and their subobjects and quotients

namespace detail {

// Cells of a subobject of the representable: maps [1]^k -> [1]^n passing `keep`.
inline CubicalSet yoneda_subobject(int n, int d, const std::function<bool(const CubeMap&)>& keep) {
    std::vector<std::vector<std::vector<Vertex>>> keys(d + 1);
    for (int k = 0; k <= d; ++k)
        for (const CubeMap& u : enumerate_maps(k, n, std::max(kDefaultDimensionCap, std::max(n, d))))
            if (keep(u)) keys[k].push_back(u.table);
    return build_from_keys<CubicalShape>(d, keys, [n](int k, bool up, int o, const std::vector<Vertex>& t) {
        const CubeOperator g = up ? CubicalShape::up_operator(k, o) : CubicalShape::down_operator(k, o);
        const CubeMap gen = generator(g);
        CubeMap u;
        u.source = up ? k - 1 : k;
        u.target = n;
        u.table = t;
        return compose(u, gen).table;
    });
}

}  // namespace detail

/// Index of the cube u: [1]^k -> [1]^n inside cube(n, d) or one of its subobjects.
inline int yoneda_index(int n, int d, const CubeMap& u, const std::function<bool(const CubeMap&)>& keep = {}) {
    int i = 0;
    for (const CubeMap& v : enumerate_maps(u.source, n, std::max(kDefaultDimensionCap, std::max(n, d)))) {
        if (keep && !keep(v)) continue;
        if (v == u) return i;
        ++i;
    }
    throw ConstructionError("cube is not a cell of this representable subobject");
}

inline bool has_constant_coordinate(const CubeMap& u, int skip_i = 0, int skip_eps = 0) {
    for (auto [j, e] : constant_coordinates(u))
        if (!(j == skip_i && e == skip_eps)) return true;
    return false;
}

inline CubicalSet standard_cube(int n, int d) {
    if (n < 0) throw ConstructionError("negative cube dimension");
    return detail::yoneda_subobject(n, d, [](const CubeMap&) { return true; });
}

inline CubicalSet point(int d) { return standard_cube(0, d); }

inline CubicalSet boundary(int n, int d) {
    if (n < 1) throw ConstructionError("boundary needs n >= 1");
    return detail::yoneda_subobject(n, d, [](const CubeMap& u) { return has_constant_coordinate(u); });
}

inline void check_box_params(int n, int i, int eps) {
    if (n < 1 || i < 1 || i > n || (eps != 0 && eps != 1))
        throw ConstructionError("open box parameters out of range");
}

/// The open box: the boundary with the (i, eps) face removed.
inline CubicalSet open_box(int n, int i, int eps, int d) {
    check_box_params(n, i, eps);
    return detail::yoneda_subobject(n, d, [i, eps](const CubeMap& u) { return has_constant_coordinate(u, i, eps); });
}

/// The critical edge of the (i, eps) open box as a map [1] -> [1]^n: coordinate i
/// varies, all others sit at 1 - eps.
inline CubeMap critical_edge(int n, int i, int eps) {
    check_box_params(n, i, eps);
    CubeMap u;
    u.source = 1;
    u.target = n;
    u.table.resize(2);
    Vertex base = 0;
    for (int j = 1; j <= n; ++j)
        if (j != i && eps == 0) base |= Vertex{1} << (j - 1);
    u.table[0] = base;
    u.table[1] = base | (Vertex{1} << (i - 1));
    return with_canonical_word(u);
}

inline CSetMorphism yoneda_inclusion(const CSetPtr& sub, int n, int d, const std::function<bool(const CubeMap&)>& keep,
                                     const CSetPtr& ambient) {
    CSetMorphism f{sub, ambient, Levels(d + 1)};
    const int cap = std::max(kDefaultDimensionCap, std::max(n, d));
    for (int k = 0; k <= d; ++k) {
        int i = 0;
        for (const CubeMap& u : enumerate_maps(k, n, cap)) {
            if (keep(u)) f.map[k].push_back(i);
            ++i;
        }
    }
    return f;
}

namespace detail {

inline CSetConstruction collapse_critical_edge(const CSetPtr& x, int n, int i, int eps, int d,
                                              const std::function<bool(const CubeMap&)>& keep) {
    if (n < 2) throw ConstructionError("inner boxes need n >= 2");
    if (d < 1) throw ConstructionError("collapsing an edge needs truncation >= 1");
    const CubeMap e = critical_edge(n, i, eps);
    const int edge = yoneda_index(n, d, e, keep);
    const int deg = x->up[1][0][x->down[1][0][edge]];
    return quotient(x, {{1, edge, deg}});
}

}  // namespace detail

inline bool is_inner(int n, int i, int eps) { return n >= 2 && i >= 1 && i <= n && (eps == 0 || eps == 1); }

/// Open box with its critical edge collapsed to a vertex. Legs: quotient map.
inline CSetConstruction inner_open_box(int n, int i, int eps, int d) {
    check_box_params(n, i, eps);
    auto keep = [i, eps](const CubeMap& u) { return has_constant_coordinate(u, i, eps); };
    return detail::collapse_critical_edge(share(open_box(n, i, eps, d)), n, i, eps, d, keep);
}

inline CSetConstruction inner_cube(int n, int i, int eps, int d) {
    check_box_params(n, i, eps);
    return detail::collapse_critical_edge(share(standard_cube(n, d)), n, i, eps, d, [](const CubeMap&) { return true; });
}

enum class StandardKind { cube, boundary, open_box, inner_open_box, inner_cube };

struct StandardParams {
    int n = 0;
    int i = 1;
    int eps = 0;
};

inline CubicalSet standard_object(StandardKind kind, StandardParams p, int d) {
    switch (kind) {
        case StandardKind::cube: return standard_cube(p.n, d);
        case StandardKind::boundary: return boundary(p.n, d);
        case StandardKind::open_box: return open_box(p.n, p.i, p.eps, d);
        case StandardKind::inner_open_box: return *inner_open_box(p.n, p.i, p.eps, d).object;
        case StandardKind::inner_cube: return *inner_cube(p.n, p.i, p.eps, d).object;
    }
    throw ConstructionError("unknown standard object");
}

/// Inclusion of a standard subobject (boundary or open box) into the cube.
inline CSetMorphism boundary_inclusion(int n, int d) {
    auto keep = [](const CubeMap& u) { return has_constant_coordinate(u); };
    return yoneda_inclusion(share(boundary(n, d)), n, d, keep, share(standard_cube(n, d)));
}

inline CSetMorphism open_box_inclusion(int n, int i, int eps, int d) {
    auto keep = [i, eps](const CubeMap& u) { return has_constant_coordinate(u, i, eps); };
    return yoneda_inclusion(share(open_box(n, i, eps, d)), n, d, keep, share(standard_cube(n, d)));
}

/// Inclusion of the inner open box into the inner cube, induced from the box inclusion.
inline CSetMorphism inner_box_inclusion(int n, int i, int eps, int d) {
    const CSetMorphism box = open_box_inclusion(n, i, eps, d);
    const auto qb = inner_open_box(n, i, eps, d);
    const auto qc = inner_cube(n, i, eps, d);
    CSetMorphism f{qb.object, qc.object, Levels(d + 1)};
    for (int k = 0; k <= d; ++k) {
        f.map[k].assign(qb.object->count(k), kNone);
        for (int x = 0; x < box.source->count(k); ++x)
            f.map[k][qb.legs[0].map[k][x]] = qc.legs[0].map[k][box.map[k][x]];
    }
    return f;
}

/// The cube u of the standard n-cube, by its map.
inline int cube_cell(int n, int d, const CubeMap& u) { return yoneda_index(n, d, u); }

/// Top cube of the standard n-cube.
inline int top_cell(int n, int d) { return cube_cell(n, d, identity_map(n)); }

// ---------------------------------------------------------------------------
// Geometric product

struct ProductCells {
    // For each level k, the representative pair (m, x, y) of each cube.
    std::vector<std::vector<std::tuple<int, int, int>>> pairs;
    // Raw pair (m, x, y) at level k -> cube index.
    std::vector<std::map<std::tuple<int, int, int>, int>> index;
};

struct Product {
    CSetPtr object;
    ProductCells cells;

    int cube(int m, int x, int n, int y) const { return cells.index[m + n].at({m, x, y}); }
};

inline Product geometric_product(const CubicalSet& X, const CubicalSet& Y, std::optional<int> dim = std::nullopt) {
    const int d = std::min({X.dim, Y.dim, dim.value_or(X.dim)});
    // Raw structure on all pairs, then quotient by the identification.
    CubicalSet raw(d);
    std::vector<std::vector<std::tuple<int, int, int>>> raw_pairs(d + 1);
    std::vector<std::map<std::tuple<int, int, int>, int>> raw_index(d + 1);
    for (int k = 0; k <= d; ++k) {
        for (int m = 0; m <= k; ++m)
            for (int x = 0; x < X.count(m); ++x)
                for (int y = 0; y < Y.count(k - m); ++y) {
                    raw_index[k].emplace(std::make_tuple(m, x, y), int(raw_pairs[k].size()));
                    raw_pairs[k].emplace_back(m, x, y);
                }
        raw.set_count(k, int(raw_pairs[k].size()));
    }
    for (int k = 1; k <= d; ++k) {
        for (int c = 0; c < raw.counts[k]; ++c) {
            auto [m, x, y] = raw_pairs[k][c];
            const int n = k - m;
            for (int i = 1; i <= k; ++i)
                for (int e = 0; e < 2; ++e) {
                    const int o = CubicalShape::face_index(i, e);
                    raw.down[k][o][c] = i <= m ? raw_index[k - 1].at({m - 1, X.down[m][o][x], y})
                                               : raw_index[k - 1].at({m, x, Y.down[n][CubicalShape::face_index(i - m, e)][y]});
                }
        }
        for (int c = 0; c < raw.counts[k - 1]; ++c) {
            auto [m, x, y] = raw_pairs[k - 1][c];
            const int n = k - 1 - m;
            for (int i = 1; i <= k; ++i)
                raw.up[k][CubicalShape::degeneracy_index(i)][c] =
                    i <= m ? raw_index[k].at({m + 1, X.up[m + 1][CubicalShape::degeneracy_index(i)][x], y})
                           : raw_index[k].at({m, x, Y.up[n + 1][CubicalShape::degeneracy_index(i - m)][y]});
            for (int i = 1; i <= k - 1; ++i)
                for (int e = 0; e < 2; ++e)
                    raw.up[k][CubicalShape::connection_index(k, i, e)][c] =
                        i <= m ? raw_index[k].at({m + 1, X.up[m + 1][CubicalShape::connection_index(m + 1, i, e)][x], y})
                               : raw_index[k].at(
                                     {m, x, Y.up[n + 1][CubicalShape::connection_index(n + 1, i - m, e)][y]});
        }
    }
    std::vector<std::tuple<int, int, int>> ident;
    for (int k = 1; k <= d; ++k)
        for (int m = 0; m + 1 <= k; ++m) {
            const int n = k - 1 - m;
            for (int x = 0; x < X.count(m); ++x)
                for (int y = 0; y < Y.count(n); ++y) {
                    const int lhs = raw_index[k].at({m + 1, X.up[m + 1][CubicalShape::degeneracy_index(m + 1)][x], y});
                    const int rhs = raw_index[k].at({m, x, Y.up[n + 1][CubicalShape::degeneracy_index(1)][y]});
                    ident.emplace_back(k, lhs, rhs);
                }
        }
    auto q = quotient(share(std::move(raw)), ident);
    Product out;
    out.object = q.object;
    out.cells.pairs.resize(d + 1);
    out.cells.index.resize(d + 1);
    for (int k = 0; k <= d; ++k) {
        out.cells.pairs[k].assign(q.object->count(k), {});
        std::vector<char> seen(q.object->count(k), 0);
        for (int c = 0; c < int(raw_pairs[k].size()); ++c) {
            const int cls = q.legs[0].map[k][c];
            out.cells.index[k].emplace(raw_pairs[k][c], cls);
            if (!seen[cls]) {
                seen[cls] = 1;
                out.cells.pairs[k][cls] = raw_pairs[k][c];
            }
        }
    }
    return out;
}

/// f (x) g between products built by geometric_product.
inline CSetMorphism product_map(const Product& source, const Product& target, const CSetMorphism& f,
                                const CSetMorphism& g) {
    const int d = source.object->dim;
    CSetMorphism h{source.object, target.object, Levels(d + 1)};
    for (int k = 0; k <= d; ++k)
        for (const auto& [m, x, y] : source.cells.pairs[k])
            h.map[k].push_back(target.cells.index[k].at({m, f.map[m][x], g.map[k - m][y]}));
    return h;
}

}  // namespace cubical
