#pragma once

// Truncated simplicial sets and the bridges to cubical sets: triangulation T,
// cubification U, the cone and the quotient cubes Q[n], and the functor ∫.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "cubical/cset.hpp"
#include "cubical/lifting.hpp"

namespace cubical {

/// Level k carries faces d_0..d_k (down) and, into level k, degeneracies s_0..s_{k-1} (up).
struct SimplicialShape {
    static int num_down(int k) { return k == 0 ? 0 : k + 1; }
    static int num_up(int k) { return k == 0 ? 0 : k; }
};

using SimplicialSet = GradedSet<SimplicialShape>;
using SSetPtr = GradedPtr<SimplicialShape>;
using SSetMorphism = GradedMap<SimplicialShape>;
using SSetConstruction = Construction<SimplicialShape>;

/// Simplicial identities checked on every cell below the truncation; empty when all hold.
inline std::vector<std::string> validate(const SimplicialSet& s) {
    std::vector<std::string> out;
    auto bad = [&](const std::string& what, int k, int x) {
        if (out.size() < 20) out.push_back(what + " fails at level " + std::to_string(k) + " cell " + std::to_string(x));
    };
    for (int k = 1; k <= s.dim; ++k)
        for (const auto& t : s.down[k])
            for (int v : t)
                if (v < 0 || v >= s.count(k - 1)) bad("face table range", k, 0);
    for (int k = 1; k <= s.dim; ++k)
        for (const auto& t : s.up[k])
            for (int v : t)
                if (v < 0 || v >= s.count(k)) bad("degeneracy table range", k, 0);
    if (!out.empty()) return out;
    // d_i d_j = d_{j-1} d_i for i < j
    for (int k = 2; k <= s.dim; ++k)
        for (int x = 0; x < s.count(k); ++x)
            for (int j = 0; j <= k; ++j)
                for (int i = 0; i < j; ++i)
                    if (s.down[k - 1][i][s.down[k][j][x]] != s.down[k - 1][j - 1][s.down[k][i][x]]) bad("d_i d_j", k, x);
    for (int k = 1; k <= s.dim; ++k)
        for (int y = 0; y < s.count(k - 1); ++y)
            for (int j = 0; j < k; ++j) {
                const int z = s.up[k][j][y];
                for (int i = 0; i <= k; ++i) {
                    int lhs = s.down[k][i][z];
                    int rhs;
                    if (i == j || i == j + 1) rhs = y;
                    else if (i < j) rhs = s.up[k - 1][j - 1][s.down[k - 1][i][y]];
                    else rhs = s.up[k - 1][j][s.down[k - 1][i - 1][y]];
                    if (lhs != rhs) bad("d_i s_j", k, y);
                }
                if (k + 1 <= s.dim)
                    for (int i = 0; i <= j; ++i)
                        if (s.up[k + 1][i][s.up[k][j][y]] != s.up[k + 1][j + 1][s.up[k][i][y]]) bad("s_i s_j", k, y);
            }
    return out;
}

// ---------------------------------------------------------------------------
// Standard objects

namespace detail {

using Seq = std::vector<int>;

inline Seq erase_at(Seq s, int o) {
    s.erase(s.begin() + o);
    return s;
}

inline Seq dup_at(Seq s, int o) {
    s.insert(s.begin() + o, s[o]);
    return s;
}

inline void monotone_sequences(int len, int lo, int hi, Seq& cur, std::vector<Seq>& out) {
    if (int(cur.size()) == len) {
        out.push_back(cur);
        return;
    }
    for (int v = lo; v <= hi; ++v) {
        cur.push_back(v);
        monotone_sequences(len, v, hi, cur, out);
        cur.pop_back();
    }
}

inline auto sequence_action = [](int, bool up, int o, const Seq& s) { return up ? dup_at(s, o) : erase_at(s, o); };

}  // namespace detail

/// Δⁿ truncated at d: k-simplices are monotone maps [k] -> [n].
inline SimplicialSet standard_simplex(int n, int d) {
    if (n < 0) throw ConstructionError("negative simplex dimension");
    std::vector<std::vector<detail::Seq>> keys(d + 1);
    for (int k = 0; k <= d; ++k) {
        detail::Seq cur;
        detail::monotone_sequences(k + 1, 0, n, cur, keys[k]);
    }
    return build_from_keys<SimplicialShape>(d, keys, detail::sequence_action);
}

/// ∂Δⁿ: the monotone maps that miss some vertex.
inline SimplicialSet simplex_boundary(int n, int d) {
    if (n < 1) throw ConstructionError("simplex boundary needs n >= 1");
    std::vector<std::vector<detail::Seq>> keys(d + 1);
    for (int k = 0; k <= d; ++k) {
        std::vector<detail::Seq> all;
        detail::Seq cur;
        detail::monotone_sequences(k + 1, 0, n, cur, all);
        for (auto& s : all) {
            std::vector<char> hit(n + 1, 0);
            for (int v : s) hit[v] = 1;
            if (std::count(hit.begin(), hit.end(), 1) < n + 1) keys[k].push_back(s);
        }
    }
    return build_from_keys<SimplicialShape>(d, keys, detail::sequence_action);
}

/// Level-wise product with componentwise operators.
inline SimplicialSet simplicial_product(const SimplicialSet& a, const SimplicialSet& b,
                                        std::optional<int> dim = std::nullopt) {
    const int d = std::min({a.dim, b.dim, dim.value_or(a.dim)});
    std::vector<std::vector<std::pair<int, int>>> keys(d + 1);
    for (int k = 0; k <= d; ++k)
        for (int x = 0; x < a.count(k); ++x)
            for (int y = 0; y < b.count(k); ++y) keys[k].emplace_back(x, y);
    return build_from_keys<SimplicialShape>(d, keys, [&](int k, bool up, int o, const std::pair<int, int>& p) {
        if (up) return std::make_pair(a.up[k][o][p.first], b.up[k][o][p.second]);
        return std::make_pair(a.down[k][o][p.first], b.down[k][o][p.second]);
    });
}

/// (Δ¹)ⁿ truncated at d: k-simplices are chains v_0 <= ... <= v_k in [1]^n.
struct ChainSet {
    int n = 0;
    SSetPtr object;
    std::vector<std::map<std::vector<Vertex>, int>> index;
    std::vector<std::vector<std::vector<Vertex>>> chains;
};

inline ChainSet cube_simplicial(int n, int d) {
    ChainSet cs;
    cs.n = n;
    cs.chains.resize(d + 1);
    cs.index.resize(d + 1);
    const Vertex top = (Vertex{1} << n) - 1;
    std::function<void(int, std::vector<Vertex>&)> grow = [&](int len, std::vector<Vertex>& cur) {
        if (int(cur.size()) == len) {
            cs.chains[len - 1].push_back(cur);
            return;
        }
        for (Vertex v = 0; v <= top; ++v)
            if (cur.empty() || bits::leq(cur.back(), v)) {
                cur.push_back(v);
                grow(len, cur);
                cur.pop_back();
            }
    };
    for (int k = 0; k <= d; ++k) {
        std::vector<Vertex> cur;
        grow(k + 1, cur);
        for (int i = 0; i < int(cs.chains[k].size()); ++i) cs.index[k][cs.chains[k][i]] = i;
    }
    using C = std::vector<Vertex>;
    cs.object = share(build_from_keys<SimplicialShape>(d, cs.chains, [](int, bool up, int o, const C& c) {
        C r = c;
        if (up) r.insert(r.begin() + o, r[o]);
        else r.erase(r.begin() + o);
        return r;
    }));
    return cs;
}

/// The simplicial map (Δ¹)^m -> (Δ¹)^n induced by a cube map.
inline Levels induced_chain_map(const ChainSet& from, const ChainSet& to, const CubeMap& u) {
    const int d = from.object->dim;
    Levels m(d + 1);
    for (int k = 0; k <= d; ++k)
        for (const auto& c : from.chains[k]) {
            std::vector<Vertex> img;
            for (Vertex v : c) img.push_back(u.table[v]);
            m[k].push_back(to.index[k].at(img));
        }
    return m;
}

// ---------------------------------------------------------------------------
// Triangulation

struct TriangulationCell {
    int k = 0;               // cube dimension
    int x = 0;               // cube of X
    std::vector<int> flips;  // coordinate i turns on at step flips[i]
};

struct Triangulation {
    SSetPtr object;
    std::vector<std::vector<TriangulationCell>> cells;  // a representative per simplex
};

namespace detail {

// A simplex of T(X) is represented by a cube x of dimension k and a chain in [1]^k
// from the bottom to the top vertex; constant coordinates are pushed into x.
struct TriKey {
    static std::uint64_t encode(int k, int x, const std::vector<int>& flips) {
        std::uint64_t key = std::uint64_t(x) << 32 | std::uint64_t(k) << 27;
        for (int i = 0; i < k; ++i) key |= std::uint64_t(flips[i]) << (3 * i);
        return key;
    }
    static TriangulationCell decode(std::uint64_t key) {
        TriangulationCell c;
        c.x = int(key >> 32);
        c.k = int((key >> 27) & 31);
        for (int i = 0; i < c.k; ++i) c.flips.push_back(int((key >> (3 * i)) & 7));
        return c;
    }
};

inline std::vector<Vertex> chain_of(int k, const std::vector<int>& flips, int j) {
    std::vector<Vertex> c(j + 1, 0);
    for (int s = 0; s <= j; ++s)
        for (int i = 0; i < k; ++i)
            if (s >= flips[i]) c[s] |= Vertex{1} << i;
    return c;
}

// First (op, base) with x = base.op for each degenerate cube, level by level.
struct WitnessTable {
    std::vector<std::vector<std::pair<int, int>>> first;

    explicit WitnessTable(const CubicalSet& X) : first(X.dim + 1) {
        for (int k = 0; k <= X.dim; ++k) {
            first[k].assign(X.count(k), {kNone, kNone});
            if (k == 0) continue;
            for (int o = 0; o < int(X.up[k].size()); ++o)
                for (int z = 0; z < X.count(k - 1); ++z) {
                    auto& w = first[k][X.up[k][o][z]];
                    if (w.first == kNone) w = {o, z};
                }
        }
    }
};

// Pushes constant coordinates into the cube by faces and degenerate cubes onto
// their first witness until the cube is nondegenerate and the chain is full.
inline std::uint64_t reduce_chain(const CubicalSet& X, const WitnessTable& w, int k, int x, std::vector<Vertex> c) {
    for (;;) {
        for (int i = k; i >= 1; --i) {
            const Vertex bit = Vertex{1} << (i - 1);
            bool all = true, none = true;
            for (Vertex v : c) {
                if (v & bit) none = false;
                else all = false;
            }
            if (!all && !none) continue;
            x = X.down[k][CubicalShape::face_index(i, all ? 1 : 0)][x];
            for (Vertex& v : c) v = bits::erase(v, i - 1);
            --k;
        }
        const auto [o, z] = w.first[k][x];
        if (o == kNone) break;
        const CubeOperator g = CubicalShape::up_operator(k, o);
        for (Vertex& v : c) v = apply_operator_to_vertex(g, v);
        x = z;
        --k;
    }
    std::vector<int> flips(k, 0);
    for (int i = 0; i < k; ++i)
        for (int s = int(c.size()) - 1; s >= 0; --s)
            if (c[s] >> i & 1) flips[i] = s;
    return TriKey::encode(k, x, flips);
}

inline void all_flips(int k, int j, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (int(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int t = 1; t <= j; ++t) {
        cur.push_back(t);
        all_flips(k, j, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// T(X) truncated at out_dim (default: X's truncation). X is read as its own
/// skeleton: no nondegenerate cubes above X.dim. A j-simplex is a nondegenerate
/// cube x of any dimension k <= X.dim with a chain of length j from the bottom to
/// the top vertex of [1]^k, modulo the identifications from degenerate cubes.
inline Triangulation triangulate(const CubicalSet& X, std::optional<int> out_dim = std::nullopt) {
    const int d = out_dim.value_or(X.dim);
    if (d > 7 || X.dim > 9) throw ResourceError("triangulation supports simplicial dimension <= 7 and cubes <= 9");
    const detail::WitnessTable w(X);
    const auto deg = degenerate_flags(X);
    std::vector<std::vector<std::vector<std::vector<int>>>> flips(d + 1);  // [j][k]
    std::vector<std::vector<std::uint64_t>> keys(d + 1);
    for (int j = 0; j <= d; ++j) {
        flips[j].resize(X.dim + 1);
        for (int k = 0; k <= X.dim; ++k) {
            std::vector<int> cur;
            if (k == 0) flips[j][k].push_back({});
            else if (j > 0) detail::all_flips(k, j, cur, flips[j][k]);
            for (int x = 0; x < X.count(k); ++x)
                if (!deg[k][x])
                    for (const auto& f : flips[j][k]) keys[j].push_back(detail::TriKey::encode(k, x, f));
        }
    }
    std::vector<std::unordered_map<std::uint64_t, int>> index(d + 1);
    SimplicialSet raw(d);
    for (int j = 0; j <= d; ++j) {
        raw.set_count(j, int(keys[j].size()));
        for (int i = 0; i < int(keys[j].size()); ++i) index[j].emplace(keys[j][i], i);
    }
    for (int j = 1; j <= d; ++j) {
        for (int i = 0; i < int(keys[j].size()); ++i) {
            const auto c = detail::TriKey::decode(keys[j][i]);
            const auto chain = detail::chain_of(c.k, c.flips, j);
            for (int o = 0; o <= j; ++o) {
                auto sub = chain;
                sub.erase(sub.begin() + o);
                raw.down[j][o][i] = index[j - 1].at(detail::reduce_chain(X, w, c.k, c.x, sub));
            }
        }
        for (int i = 0; i < int(keys[j - 1].size()); ++i) {
            const auto c = detail::TriKey::decode(keys[j - 1][i]);
            for (int o = 0; o < j; ++o) {
                auto f = c.flips;
                for (int& t : f)
                    if (t > o) ++t;
                raw.up[j][o][i] = index[j].at(detail::TriKey::encode(c.k, c.x, f));
            }
        }
    }
    // (z.g, c) ~ (z, g c) for every degeneracy or connection g, both sides reduced.
    std::vector<std::tuple<int, int, int>> pairs;
    for (int j = 1; j <= d; ++j)
        for (int k = 1; k <= X.dim; ++k)
            for (int o = 0; o < CubicalShape::num_up(k); ++o) {
                const CubeOperator g = CubicalShape::up_operator(k, o);
                for (int z = 0; z < X.count(k - 1); ++z) {
                    const int zg = X.up[k][o][z];
                    if (w.first[k][zg] == std::make_pair(o, z)) continue;  // the reduction itself
                    for (const auto& f : flips[j][k]) {
                        const auto chain = detail::chain_of(k, f, j);
                        auto moved = chain;
                        for (Vertex& v : moved) v = apply_operator_to_vertex(g, v);
                        const int a = index[j].at(detail::reduce_chain(X, w, k, zg, chain));
                        const int b = index[j].at(detail::reduce_chain(X, w, k - 1, z, moved));
                        if (a != b) pairs.emplace_back(j, a, b);
                    }
                }
            }
    const SSetPtr rawp = share(std::move(raw));
    const auto q = quotient(rawp, pairs);
    Triangulation t{q.object, std::vector<std::vector<TriangulationCell>>(d + 1)};
    for (int j = 0; j <= d; ++j) {
        t.cells[j].resize(q.object->count(j));
        std::vector<char> seen(q.object->count(j), 0);
        for (int i = 0; i < rawp->count(j); ++i) {
            const int c = q.legs[0].map[j][i];
            if (!seen[c]) {
                seen[c] = 1;
                t.cells[j][c] = detail::TriKey::decode(keys[j][i]);
            }
        }
    }
    return t;
}

/// Marked triangulation: the images of marked 1-cubes, plus degenerate edges.
inline EdgeMarking triangulate_marking(const Triangulation& t, const EdgeMarking& marked) {
    EdgeMarking out(t.object->count(1), 0);
    if (t.object->dim < 1) return out;
    for (int v = 0; v < t.object->count(0); ++v) out[t.object->up[1][0][v]] = 1;
    for (int e = 0; e < t.object->count(1); ++e) {
        const auto& c = t.cells[1][e];
        if (c.k == 1 && marked[c.x]) out[e] = 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cubification

struct Cubification {
    CSetPtr object;
    std::vector<std::vector<Levels>> cubes;  // cube -> simplicial map (Δ¹)^k -> S
};

/// U(S)_n = sSet((Δ¹)ⁿ, S), truncated at d <= S.dim.
inline Cubification cubify(const SimplicialSet& S, std::optional<int> dim = std::nullopt,
                           std::size_t node_cap = kDefaultNodeCap) {
    const int d = dim.value_or(S.dim);
    if (d > S.dim) throw TruncationError("cubification above the simplicial truncation");
    std::vector<ChainSet> P;
    for (int n = 0; n <= d; ++n) P.push_back(cube_simplicial(n, d));
    Cubification out;
    out.cubes.resize(d + 1);
    std::vector<std::map<Levels, int>> index(d + 1);
    for (int n = 0; n <= d; ++n) {
        MapSearchOptions o;
        o.node_cap = node_cap;
        out.cubes[n] = all_maps(*P[n].object, S, o);
        for (int i = 0; i < int(out.cubes[n].size()); ++i) index[n][out.cubes[n][i]] = i;
    }
    CubicalSet X(d);
    for (int n = 0; n <= d; ++n) X.set_count(n, int(out.cubes[n].size()));
    auto precompose = [&](const Levels& f, const Levels& g) {
        Levels r(g.size());
        for (std::size_t k = 0; k < g.size(); ++k)
            for (int v : g[k]) r[k].push_back(f[k][v]);
        return r;
    };
    for (int k = 1; k <= d; ++k) {
        for (int o = 0; o < CubicalShape::num_down(k); ++o) {
            const Levels g = induced_chain_map(P[k - 1], P[k], generator(CubicalShape::down_operator(k, o)));
            for (int x = 0; x < X.count(k); ++x) X.down[k][o][x] = index[k - 1].at(precompose(out.cubes[k][x], g));
        }
        for (int o = 0; o < CubicalShape::num_up(k); ++o) {
            const Levels g = induced_chain_map(P[k], P[k - 1], generator(CubicalShape::up_operator(k, o)));
            for (int y = 0; y < X.count(k - 1); ++y) X.up[k][o][y] = index[k].at(precompose(out.cubes[k - 1][y], g));
        }
    }
    out.object = share(std::move(X));
    return out;
}

// ---------------------------------------------------------------------------
// Cones and the quotient cubes Q[n]

struct Cone {
    CSetPtr object;
    CSetMorphism from_cylinder;  // [1] (x) X -> CX
    Product cylinder;
};

/// Pushout of X -> point and X -> [1] (x) X at the end 1.
inline Cone cone(const CSetPtr& x) {
    const int d = x->dim;
    const CSetPtr I = share(standard_cube(1, d));
    Product cyl = geometric_product(*I, *x, d);
    CubeMap one;
    one.source = 0;
    one.target = 1;
    one.table = {1};
    const int v1 = cube_cell(1, d, with_canonical_word(one));
    CSetMorphism end{x, cyl.object, Levels(d + 1)};
    for (int k = 0; k <= d; ++k)
        for (int c = 0; c < x->count(k); ++c) end.map[k].push_back(cyl.cube(0, v1, k, c));
    const auto po = pushout(end, to_point(x));
    return {po.object, po.legs[0], std::move(cyl)};
}

struct QObject {
    CSetPtr object;
    int top = 0;                 // the n-cube that generates
    CSetMorphism quotient_map;   // standard n-cube -> Q[n]
};

/// Q[n] = n-fold cone of the point, truncated at d >= n.
inline QObject q_object(int n, int d) {
    if (n > d) throw TruncationError("Q[n] needs truncation >= n");
    CSetPtr q = share(point(d));
    int top = 0;
    const int i1 = top_cell(1, d);
    for (int m = 1; m <= n; ++m) {
        const Cone c = cone(q);
        top = c.from_cylinder.map[m][c.cylinder.cube(1, i1, m - 1, top)];
        q = c.object;
    }
    return {q, top, yoneda_map(q, n, top)};
}

namespace detail {

// Cube maps realising the simplicial operators on Q-cubes.
inline CubeMap q_face(int n, int i) {
    return generator(i == 0 ? CubeOperator::face(n, n, 1) : CubeOperator::face(n, n - i + 1, 0));
}

inline CubeMap q_degeneracy(int n, int i) {
    return generator(i == 0 ? CubeOperator::degeneracy(n, n) : CubeOperator::connection(n, n - i, 0));
}

}  // namespace detail

struct IntSimplicial {
    SSetPtr object;
    std::vector<std::vector<int>> cube;  // n-simplex -> n-cube of X (the image of the top cell)
};

/// (∫X)_n = cSet(Q[n], X): n-cubes of X constant on the kernel of the quotient □ⁿ -> Q[n].
inline IntSimplicial int_simplicial(const CubicalSet& X) {
    const int d = X.dim;
    IntSimplicial out;
    out.cube.resize(d + 1);
    for (int n = 0; n <= d; ++n) {
        const QObject q = q_object(n, d);
        // Group the cells of the standard n-cube (up to level n) by their image in Q[n].
        std::vector<std::vector<std::vector<CubeMap>>> groups(n + 1);
        for (int k = 0; k <= n; ++k) {
            groups[k].resize(q.object->count(k));
            const auto maps = enumerate_maps(k, n, std::max(kDefaultDimensionCap, d));
            for (int u = 0; u < int(maps.size()); ++u) groups[k][q.quotient_map.map[k][u]].push_back(maps[u]);
        }
        for (int y = 0; y < X.count(n); ++y) {
            bool ok = true;
            for (int k = 0; k <= n && ok; ++k)
                for (const auto& g : groups[k]) {
                    if (g.size() < 2) continue;
                    const int first = apply_operator(X, y, g.front());
                    for (std::size_t t = 1; t < g.size() && ok; ++t) ok = apply_operator(X, y, g[t]) == first;
                    if (!ok) break;
                }
            if (ok) out.cube[n].push_back(y);
        }
    }
    std::vector<std::vector<int>> keys = out.cube;
    out.object = share(build_from_keys<SimplicialShape>(d, keys, [&](int k, bool up, int o, int y) {
        return up ? apply_operator(X, y, detail::q_degeneracy(k, o)) : apply_operator(X, y, detail::q_face(k, o));
    }));
    return out;
}

/// Cosimplicial structure maps between Q-cubes, induced on top cells.
inline CSetMorphism q_structure_map(const QObject& from, int from_dim, const QObject& to, const CubeMap& u) {
    const int d = to.object->dim;
    CSetMorphism m{from.object, to.object, Levels(d + 1)};
    const auto cubes = yoneda_map(to.object, from_dim, apply_operator(*to.object, to.top, u), from.quotient_map.source);
    for (int k = 0; k <= d; ++k) {
        m.map[k].assign(from.object->count(k), kNone);
        for (int c = 0; c < from.quotient_map.source->count(k); ++c) {
            const int img = from.quotient_map.map[k][c];
            if (m.map[k][img] == kNone) m.map[k][img] = cubes.map[k][c];
            else if (m.map[k][img] != cubes.map[k][c]) throw ConstructionError("operator does not descend to Q");
        }
    }
    return m;
}

/// Q applied to a truncated simplicial set: the coend of Q[n] over its simplices.
inline CSetPtr q_extend(const SimplicialSet& K, int d) {
    const int top = std::min(K.dim, d);
    std::vector<QObject> Q;
    for (int n = 0; n <= top; ++n) Q.push_back(q_object(n, d));
    std::vector<CSetPtr> parts;
    std::vector<std::pair<int, int>> part_of;  // (n, simplex)
    std::map<std::pair<int, int>, int> part_index;
    for (int n = 0; n <= top; ++n)
        for (int s = 0; s < K.count(n); ++s) {
            part_index[{n, s}] = int(parts.size());
            parts.push_back(Q[n].object);
            part_of.emplace_back(n, s);
        }
    if (parts.empty()) return share(empty_set<CubicalShape>(d));
    const auto sum = coproduct<CubicalShape>(parts, d);
    std::vector<std::tuple<int, int, int>> pairs;
    auto glue = [&](int small_n, int small_s, int big_n, int big_s, const CSetMorphism& f) {
        // (s.theta, c) ~ (s, theta_*(c))
        const auto& a = sum.legs[part_index.at({small_n, small_s})];
        const auto& b = sum.legs[part_index.at({big_n, big_s})];
        for (int k = 0; k <= d; ++k)
            for (int c = 0; c < f.source->count(k); ++c) pairs.emplace_back(k, a.map[k][c], b.map[k][f.map[k][c]]);
    };
    for (int n = 1; n <= top; ++n)
        for (int i = 0; i <= n; ++i) {
            const CSetMorphism delta = q_structure_map(Q[n - 1], n - 1, Q[n], detail::q_face(n, i));
            for (int s = 0; s < K.count(n); ++s) glue(n - 1, K.down[n][i][s], n, s, delta);
        }
    for (int n = 0; n + 1 <= top; ++n)
        for (int i = 0; i <= n; ++i) {
            const CSetMorphism sigma = q_structure_map(Q[n + 1], n + 1, Q[n], detail::q_degeneracy(n + 1, i));
            for (int s = 0; s < K.count(n); ++s) glue(n + 1, K.up[n + 1][i][s], n, s, sigma);
        }
    return quotient(sum.object, pairs).object;
}

}  // namespace cubical
