#pragma once

// Cubical nerves of finite categories, homotopy categories of cubical sets,
// and detection of equivalence edges.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cubical/category.hpp"
#include "cubical/cset.hpp"

namespace cubical {

/// A functor [1]^n -> C stored as a dense table: entry a * 2^n + b is the
/// arrow sigma(a <= b), or kNone when a is not below b.
using CubeFunctor = std::vector<int>;

struct Nerve {
    FiniteCategory category;
    CSetPtr object;
    std::vector<std::vector<CubeFunctor>> cubes;      // per level
    std::vector<std::map<CubeFunctor, int>> index;    // per level

    int arrow(int k, int cube, Vertex a, Vertex b) const { return cubes[k][cube][(a << k) + b]; }
    int object_at(int k, int cube, Vertex v) const { return category.src[arrow(k, cube, v, v)]; }
    int find(int k, const CubeFunctor& f) const { return index[k].at(f); }
};

namespace detail {

inline std::vector<CubeFunctor> enumerate_cube_functors(const FiniteCategory& c, int n, std::size_t cap) {
    const Vertex nv = Vertex{1} << n;
    std::vector<CubeFunctor> out;
    std::vector<int> obj(nv, kNone);
    // cover[v][j]: arrow obj(v - e_j) -> obj(v) for bit j of v
    std::vector<std::vector<int>> cover(nv, std::vector<int>(n, kNone));
    std::function<void(Vertex)> rec = [&](Vertex v) {
        if (v == nv) {
            CubeFunctor t(std::size_t(nv) * nv, kNone);
            for (Vertex b = 0; b < nv; ++b) {
                t[b * nv + b] = c.identity[obj[b]];
                for (Vertex a = 0; a < nv; ++a) {
                    if (a == b || !bits::leq(a, b)) continue;
                    int j = 0;
                    while (!(((b & ~a) >> j) & 1U)) ++j;
                    t[a * nv + b] = c.comp[cover[b][j]][t[a * nv + (b & ~(Vertex{1} << j))]];
                }
            }
            out.push_back(std::move(t));
            if (out.size() > cap) throw ResourceError("nerve enumeration exceeded cap");
            return;
        }
        std::vector<int> js;
        for (int j = 0; j < n; ++j)
            if ((v >> j) & 1U) js.push_back(j);
        for (int x = 0; x < c.num_objects; ++x) {
            obj[v] = x;
            std::function<void(std::size_t)> choose = [&](std::size_t t) {
                if (t == js.size()) {
                    for (std::size_t p = 0; p < js.size(); ++p)
                        for (std::size_t q = p + 1; q < js.size(); ++q) {
                            const int j = js[p], k = js[q];
                            const Vertex vj = v & ~(Vertex{1} << j), vk = v & ~(Vertex{1} << k);
                            if (c.comp[cover[v][j]][cover[vj][k]] != c.comp[cover[v][k]][cover[vk][j]]) return;
                        }
                    rec(v + 1);
                    return;
                }
                const int j = js[t];
                const int from = obj[v & ~(Vertex{1} << j)];
                for (int f : c.hom(from, x)) {
                    cover[v][j] = f;
                    choose(t + 1);
                }
                cover[v][j] = kNone;
            };
            choose(0);
        }
        obj[v] = kNone;
    };
    rec(0);
    return out;
}

inline CubeFunctor precompose(const CubeFunctor& t, int n, const CubeMap& u) {
    const Vertex nv = Vertex{1} << n;
    const Vertex mv = Vertex{1} << u.source;
    CubeFunctor out(std::size_t(mv) * mv, kNone);
    for (Vertex a = 0; a < mv; ++a)
        for (Vertex b = 0; b < mv; ++b)
            if (bits::leq(a, b)) out[a * mv + b] = t[u.table[a] * nv + u.table[b]];
    return out;
}

}  // namespace detail

/// The cubical nerve truncated at d: n-cubes are functors [1]^n -> C.
inline Nerve nerve(const FiniteCategory& c, int d, std::size_t cap = kDefaultNodeCap) {
    require_category(c);
    Nerve nv;
    nv.category = c;
    nv.cubes.resize(d + 1);
    nv.index.resize(d + 1);
    for (int k = 0; k <= d; ++k) {
        nv.cubes[k] = detail::enumerate_cube_functors(c, k, cap);
        std::sort(nv.cubes[k].begin(), nv.cubes[k].end());
        for (int i = 0; i < int(nv.cubes[k].size()); ++i) nv.index[k].emplace(nv.cubes[k][i], i);
    }
    nv.object = share(build_from_keys<CubicalShape>(d, nv.cubes, [](int k, bool up, int o, const CubeFunctor& t) {
        const CubeOperator g = up ? CubicalShape::up_operator(k, o) : CubicalShape::down_operator(k, o);
        return detail::precompose(t, up ? k - 1 : k, generator(g));
    }));
    return nv;
}

/// N(F) for a functor F: C -> C'.
inline CSetMorphism nerve_map(const Nerve& a, const Nerve& b, const CatFunctor& f) {
    const int d = std::min(a.object->dim, b.object->dim);
    CSetMorphism m{a.object, b.object, Levels(d + 1)};
    for (int k = 0; k <= d; ++k)
        for (const CubeFunctor& t : a.cubes[k]) {
            CubeFunctor u(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) u[i] = t[i] == kNone ? kNone : f.on_arrows[t[i]];
            m.map[k].push_back(b.find(k, u));
        }
    return m;
}

// ---------------------------------------------------------------------------
// Homotopy category

inline constexpr int kDefaultPathBound = 4;

struct HomotopyCategory {
    FiniteCategory category;  // objects are the vertices; arrows are path classes
    bool exact = false;       // true when the bounded saturation certifies the full answer
    int bound = kDefaultPathBound;
    std::vector<int> edge_class;                 // class of each 1-cube
    std::vector<std::vector<int>> representative;  // shortest path (edge ids) per class
};

namespace detail {

struct PathSpace {
    std::vector<int> edge_src, edge_tgt;          // per 1-cube
    std::vector<char> nondegenerate;              // per 1-cube
    std::vector<std::pair<int, std::vector<int>>> paths;  // (start object, edges)
    std::map<std::pair<int, std::vector<int>>, int> index;

    int end_object(int p) const {
        const auto& [o, e] = paths[p];
        return e.empty() ? o : edge_tgt[e.back()];
    }
};

}  // namespace detail

inline HomotopyCategory homotopy_category(const CubicalSet& x, int bound = kDefaultPathBound) {
    if (x.dim < 1) {
        // No edges: the discrete category on the vertices.
        HomotopyCategory h;
        h.category = discrete_category(x.count(0));
        h.exact = true;
        h.bound = bound;
        for (int v = 0; v < x.count(0); ++v) h.representative.push_back({});
        return h;
    }
    if (bound < 1) throw PreconditionError("path bound must be positive");
    detail::PathSpace ps;
    const int nobj = x.count(0);
    const int nedge = x.count(1);
    ps.nondegenerate.assign(nedge, 1);
    for (int v = 0; v < nobj; ++v) ps.nondegenerate[x.up[1][0][v]] = 0;
    for (int e = 0; e < nedge; ++e) {
        ps.edge_src.push_back(x.down[1][CubicalShape::face_index(1, 0)][e]);
        ps.edge_tgt.push_back(x.down[1][CubicalShape::face_index(1, 1)][e]);
    }
    std::vector<int> edges;
    for (int e = 0; e < nedge; ++e)
        if (ps.nondegenerate[e]) edges.push_back(e);

    // Relations from 2-cubes: [d10, d21] ~ [d20, d11] in path order, degenerate edges dropped.
    std::vector<std::pair<std::vector<int>, std::vector<int>>> relations;
    std::vector<int> relation_start;
    if (x.dim >= 2) {
        std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
        for (int s = 0; s < x.count(2); ++s) {
            auto f = [&](int i, int e) { return x.down[2][CubicalShape::face_index(i, e)][s]; };
            std::vector<int> lhs, rhs;
            for (int e : {f(1, 0), f(2, 1)})
                if (ps.nondegenerate[e]) lhs.push_back(e);
            for (int e : {f(2, 0), f(1, 1)})
                if (ps.nondegenerate[e]) rhs.push_back(e);
            if (lhs == rhs) continue;
            if (rhs < lhs) std::swap(lhs, rhs);
            if (!seen.insert({lhs, rhs}).second) continue;
            relations.emplace_back(lhs, rhs);
            const int start = x.down[1][CubicalShape::face_index(1, 0)][x.down[2][CubicalShape::face_index(1, 0)][s]];
            relation_start.push_back(start);
        }
    }

    // Paths of length <= bound.
    auto add_path = [&](int o, std::vector<int> e) {
        auto key = std::make_pair(o, std::move(e));
        auto it = ps.index.find(key);
        if (it != ps.index.end()) return it->second;
        const int id = int(ps.paths.size());
        ps.index.emplace(key, id);
        ps.paths.push_back(std::move(key));
        return id;
    };
    for (int o = 0; o < nobj; ++o) add_path(o, {});
    std::vector<std::vector<int>> out_edges(nobj);
    for (int e : edges) out_edges[ps.edge_src[e]].push_back(e);
    {
        std::size_t begin = 0;
        for (int len = 1; len <= bound; ++len) {
            const std::size_t end = ps.paths.size();
            for (std::size_t p = begin; p < end; ++p) {
                const int o = ps.end_object(int(p));
                for (int e : out_edges[o]) {
                    auto w = ps.paths[p].second;
                    w.push_back(e);
                    add_path(ps.paths[p].first, std::move(w));
                    if (ps.paths.size() > kDefaultNodeCap) throw ResourceError("too many paths for homotopy category");
                }
            }
            begin = end;
        }
    }
    const int npaths = int(ps.paths.size());
    UnionFind uf(npaths);
    auto lookup = [&](int o, const std::vector<int>& w) -> int {
        if (int(w.size()) > bound) return kNone;
        auto it = ps.index.find({o, w});
        return it == ps.index.end() ? kNone : it->second;
    };
    for (int p = 0; p < npaths; ++p) {
        const auto& [o, w] = ps.paths[p];
        for (std::size_t r = 0; r < relations.size(); ++r)
            for (int dir = 0; dir < 2; ++dir) {
                const auto& from = dir == 0 ? relations[r].first : relations[r].second;
                const auto& to = dir == 0 ? relations[r].second : relations[r].first;
                if (from.empty()) {
                    // insert `to` at every junction sitting at the relation's object
                    for (std::size_t pos = 0; pos <= w.size(); ++pos) {
                        const int at = pos == 0 ? o : ps.edge_tgt[w[pos - 1]];
                        if (at != relation_start[r]) continue;
                        std::vector<int> v(w.begin(), w.begin() + long(pos));
                        v.insert(v.end(), to.begin(), to.end());
                        v.insert(v.end(), w.begin() + long(pos), w.end());
                        const int q = lookup(o, v);
                        if (q != kNone) uf.unite(p, q);
                    }
                    continue;
                }
                if (from.size() > w.size()) continue;
                for (std::size_t pos = 0; pos + from.size() <= w.size(); ++pos) {
                    if (!std::equal(from.begin(), from.end(), w.begin() + long(pos))) continue;
                    std::vector<int> v(w.begin(), w.begin() + long(pos));
                    v.insert(v.end(), to.begin(), to.end());
                    v.insert(v.end(), w.begin() + long(pos + from.size()), w.end());
                    const int q = lookup(o, v);
                    if (q != kNone) uf.unite(p, q);
                }
            }
    }

    // Classes, numbered by first appearance; representatives are shortest members.
    std::vector<int> cls(npaths, kNone);
    std::vector<int> rep;
    {
        std::map<int, int> root_class;
        for (int p = 0; p < npaths; ++p) {
            auto [it, inserted] = root_class.emplace(uf.find(p), int(rep.size()));
            if (inserted) rep.push_back(p);
            cls[p] = it->second;
        }
    }
    const int nclass = int(rep.size());
    HomotopyCategory h;
    h.bound = bound;
    bool exact = true;
    // (i) every class has a member shorter than the bound
    for (int c = 0; c < nclass; ++c)
        if (int(ps.paths[rep[c]].second.size()) >= bound) exact = false;
    // edge action on classes through short representatives
    auto act = [&](int c, int e) -> int {
        if (c == kNone || int(ps.paths[rep[c]].second.size()) >= bound) return kNone;
        auto w = ps.paths[rep[c]].second;
        w.push_back(e);
        const int q = lookup(ps.paths[rep[c]].first, w);
        return q == kNone ? kNone : cls[q];
    };
    auto act_word = [&](int c, const std::vector<int>& w) {
        for (int e : w) c = act(c, e);
        return c;
    };
    // (ii) the action is well defined on short members
    if (exact)
        for (int p = 0; p < npaths && exact; ++p) {
            if (int(ps.paths[p].second.size()) >= bound) continue;
            for (int e : out_edges[ps.end_object(p)]) {
                auto w = ps.paths[p].second;
                w.push_back(e);
                if (cls[ps.index.at({ps.paths[p].first, w})] != act(cls[p], e)) {
                    exact = false;
                    break;
                }
            }
        }
    // (iii) relations act identically
    if (exact)
        for (int c = 0; c < nclass && exact; ++c)
            for (std::size_t r = 0; r < relations.size(); ++r) {
                if (ps.end_object(rep[c]) != relation_start[r]) continue;
                if (act_word(c, relations[r].first) != act_word(c, relations[r].second)) {
                    exact = false;
                    break;
                }
            }
    h.exact = exact;

    FiniteCategory& k = h.category;
    k.num_objects = nobj;
    for (int c = 0; c < nclass; ++c) {
        k.src.push_back(ps.paths[rep[c]].first);
        k.tgt.push_back(ps.end_object(rep[c]));
        h.representative.push_back(ps.paths[rep[c]].second);
        std::string name;
        for (int e : ps.paths[rep[c]].second) name += (name.empty() ? "" : ".") + std::to_string(e);
        k.arrow_names.push_back(name.empty() ? "id" + std::to_string(ps.paths[rep[c]].first) : name);
    }
    for (int o = 0; o < nobj; ++o) {
        k.identity.push_back(cls[o]);
        k.object_names.push_back(std::to_string(o));
    }
    k.comp.assign(nclass, std::vector<int>(nclass, kNone));
    for (int g = 0; g < nclass; ++g)
        for (int f = 0; f < nclass; ++f)
            if (k.tgt[f] == k.src[g]) k.comp[g][f] = act_word(f, h.representative[g]);
    h.edge_class.resize(nedge);
    for (int e = 0; e < nedge; ++e)
        h.edge_class[e] = ps.nondegenerate[e] ? cls[ps.index.at({ps.edge_src[e], {e}})] : cls[ps.edge_src[e]];
    if (exact) require_category(k);
    return h;
}

/// Is arrow f invertible in a (possibly partial) composition table.
inline bool is_invertible(const FiniteCategory& c, int f) {
    for (int g = 0; g < c.num_arrows(); ++g)
        if (c.src[g] == c.tgt[f] && c.tgt[g] == c.src[f] && c.comp[g][f] == c.identity[c.src[f]] &&
            c.comp[f][g] == c.identity[c.tgt[f]])
            return true;
    return false;
}

/// Counit Ho(N C) -> C: a path class goes to the composite of its arrows.
inline CatFunctor homotopy_counit(const Nerve& n, const HomotopyCategory& h) {
    CatFunctor f;
    for (int o = 0; o < h.category.num_objects; ++o) f.on_objects.push_back(n.object_at(0, o, 0));
    for (int c = 0; c < h.category.num_arrows(); ++c) {
        int a = n.category.identity[f.on_objects[h.category.src[c]]];
        for (int e : h.representative[c]) a = n.category.comp[n.arrow(1, e, 0, 1)][a];
        f.on_arrows.push_back(a);
    }
    return f;
}

// ---------------------------------------------------------------------------
// The special sets K and E[1]

struct KSet {
    CSetPtr object;
    int middle_edge = 0;  // the edge 0 -> 1 shared by both squares
};

/// Two squares glued along the middle edge f: 0 -> 1, with the left square
/// exhibiting a right inverse of f and the right square a left inverse.
inline KSet special_k(int d) {
    if (d < 2) throw ConstructionError("K needs truncation >= 2");
    const CSetPtr sq = share(standard_cube(2, d));
    auto sum = coproduct<CubicalShape>({sq, sq});
    const int top = top_cell(2, d);
    const auto& s = *sum.object;
    auto face = [&](int part, int i, int e) {
        return s.down[2][CubicalShape::face_index(i, e)][sum.legs[part].map[2][top]];
    };
    auto degenerate_pair = [&](int edge) {
        const int v = s.down[1][CubicalShape::face_index(1, 0)][edge];
        return std::make_tuple(1, edge, s.up[1][0][v]);
    };
    std::vector<std::tuple<int, int, int>> pairs{
        {1, face(0, 2, 1), face(1, 1, 0)},
        degenerate_pair(face(0, 2, 0)),
        degenerate_pair(face(0, 1, 1)),
        degenerate_pair(face(1, 2, 0)),
        degenerate_pair(face(1, 1, 1)),
    };
    auto q = quotient(sum.object, pairs);
    return {q.object, q.legs[0].map[1][face(0, 2, 1)]};
}

struct E1Set {
    Nerve nerve;
    int forward_edge = 0;   // 0 -> 1
    int backward_edge = 0;  // 1 -> 0
};

inline E1Set special_e1(int d) {
    E1Set e{nerve(contractible_groupoid(2), d), 0, 0};
    const auto& c = e.nerve.category;
    for (int i = 0; i < e.nerve.object->count(1); ++i) {
        const int f = e.nerve.arrow(1, i, 0, 1);
        if (c.src[f] == 0 && c.tgt[f] == 1) e.forward_edge = i;
        if (c.src[f] == 1 && c.tgt[f] == 0) e.backward_edge = i;
    }
    return e;
}

enum class EquivalenceMethod { homotopy_category, k_factorization, e1_factorization };

struct EquivalenceVerdict {
    bool equivalence = false;
    bool exact = true;  // false when a bounded method could not certify a negative
};

inline EquivalenceVerdict is_equivalence_edge(const CubicalSet& x, int e,
                                              EquivalenceMethod method = EquivalenceMethod::homotopy_category,
                                              int bound = kDefaultPathBound, std::size_t node_cap = kDefaultNodeCap) {
    if (x.dim < 1 || e < 0 || e >= x.count(1)) throw PreconditionError("not an edge");
    switch (method) {
        case EquivalenceMethod::homotopy_category: {
            const HomotopyCategory h = homotopy_category(x, bound);
            const bool inv = is_invertible(h.category, h.edge_class[e]);
            return {inv, inv || h.exact};
        }
        case EquivalenceMethod::k_factorization: {
            if (x.dim < 2) return {x.up[1][0][x.down[1][0][e]] == e, true};
            const KSet k = special_k(x.dim);
            MapSearchOptions o;
            o.node_cap = node_cap;
            o.preassign = {{1, k.middle_edge, e}};
            return {find_map(*k.object, x, o).has_value(), true};
        }
        case EquivalenceMethod::e1_factorization: {
            const E1Set e1 = special_e1(x.dim);
            for (int edge : {e1.forward_edge, e1.backward_edge}) {
                MapSearchOptions o;
                o.node_cap = node_cap;
                o.preassign = {{1, edge, e}};
                if (find_map(*e1.nerve.object, x, o)) return {true, true};
            }
            return {false, true};
        }
    }
    return {};
}

}  // namespace cubical
