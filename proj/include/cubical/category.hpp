#pragma once

// Finite categories given by composition tables.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cubical/errors.hpp"
#include "cubical/structure.hpp"

namespace cubical {

struct FiniteCategory {
    int num_objects = 0;
    std::vector<int> src;
    std::vector<int> tgt;
    std::vector<int> identity;             // per object
    std::vector<std::vector<int>> comp;    // comp[g][f] = g o f, kNone if tgt f != src g
    std::vector<std::string> object_names;
    std::vector<std::string> arrow_names;

    int num_arrows() const { return int(src.size()); }
    int compose(int g, int f) const {
        const int h = comp[g][f];
        if (h == kNone) throw CompositionError("arrows are not composable");
        return h;
    }
    bool is_identity(int f) const { return identity[src[f]] == f; }

    std::vector<int> hom(int a, int b) const {
        std::vector<int> out;
        for (int f = 0; f < num_arrows(); ++f)
            if (src[f] == a && tgt[f] == b) out.push_back(f);
        return out;
    }

    friend bool operator==(const FiniteCategory& a, const FiniteCategory& b) {
        return a.num_objects == b.num_objects && a.src == b.src && a.tgt == b.tgt && a.identity == b.identity &&
               a.comp == b.comp;
    }
};

/// Empty string when the tables form a category; otherwise the first problem found.
inline std::string check_category(const FiniteCategory& c) {
    const int n = c.num_arrows();
    if (int(c.tgt.size()) != n || int(c.comp.size()) != n || int(c.identity.size()) != c.num_objects)
        return "table sizes disagree";
    for (int f = 0; f < n; ++f) {
        if (c.src[f] < 0 || c.src[f] >= c.num_objects || c.tgt[f] < 0 || c.tgt[f] >= c.num_objects)
            return "arrow endpoint out of range";
        if (int(c.comp[f].size()) != n) return "composition row has wrong size";
    }
    for (int x = 0; x < c.num_objects; ++x) {
        const int i = c.identity[x];
        if (i < 0 || i >= n || c.src[i] != x || c.tgt[i] != x) return "bad identity";
    }
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) {
            const int h = c.comp[g][f];
            if (c.tgt[f] != c.src[g]) {
                if (h != kNone) return "composite defined for non-composable pair";
                continue;
            }
            if (h < 0 || h >= n || c.src[h] != c.src[f] || c.tgt[h] != c.tgt[g]) return "composite has wrong endpoints";
        }
    for (int f = 0; f < n; ++f) {
        if (c.comp[c.identity[c.tgt[f]]][f] != f || c.comp[f][c.identity[c.src[f]]] != f) return "unit law fails";
    }
    for (int h = 0; h < n; ++h)
        for (int g = 0; g < n; ++g) {
            if (c.tgt[g] != c.src[h]) continue;
            for (int f = 0; f < n; ++f) {
                if (c.tgt[f] != c.src[g]) continue;
                if (c.comp[h][c.comp[g][f]] != c.comp[c.comp[h][g]][f]) return "associativity fails";
            }
        }
    return {};
}

inline void require_category(const FiniteCategory& c) {
    const std::string why = check_category(c);
    if (!why.empty()) throw ConstructionError("not a category: " + why);
}

/// Category of a finite preorder, given by a reflexive transitive relation.
inline FiniteCategory preorder_category(int n, const std::function<bool(int, int)>& leq) {
    FiniteCategory c;
    c.num_objects = n;
    std::map<std::pair<int, int>, int> arrow;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (leq(a, b)) {
                arrow[{a, b}] = int(c.src.size());
                c.src.push_back(a);
                c.tgt.push_back(b);
            }
    c.identity.resize(n);
    for (int a = 0; a < n; ++a) c.identity[a] = arrow.at({a, a});
    const int m = c.num_arrows();
    c.comp.assign(m, std::vector<int>(m, kNone));
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (c.tgt[f] == c.src[g]) c.comp[g][f] = arrow.at({c.src[f], c.tgt[g]});
    for (int a = 0; a < n; ++a) c.object_names.push_back(std::to_string(a));
    for (int f = 0; f < m; ++f) c.arrow_names.push_back(std::to_string(c.src[f]) + "->" + std::to_string(c.tgt[f]));
    require_category(c);
    return c;
}

/// The poset [n] = {0 < 1 < ... < n}.
inline FiniteCategory chain_category(int n) {
    return preorder_category(n + 1, [](int a, int b) { return a <= b; });
}

inline FiniteCategory terminal_category() { return chain_category(0); }

inline FiniteCategory discrete_category(int n) {
    return preorder_category(n, [](int a, int b) { return a == b; });
}

/// The free cospan 1 <- 0 -> 2.
inline FiniteCategory free_cospan() {
    return preorder_category(3, [](int a, int b) { return a == b || a == 0; });
}

/// All hom-sets singletons.
inline FiniteCategory contractible_groupoid(int n) {
    return preorder_category(n, [](int, int) { return true; });
}

/// Two objects, f: 0 -> 1 and g: 1 -> 0 with g f = id and f g = id, from explicit tables.
inline FiniteCategory walking_isomorphism() {
    FiniteCategory c;
    c.num_objects = 2;
    // arrows: 0 = id_0, 1 = id_1, 2 = f, 3 = g
    c.src = {0, 1, 0, 1};
    c.tgt = {0, 1, 1, 0};
    c.identity = {0, 1};
    const int N = kNone;
    c.comp = {
        {0, N, N, 3},  // id_0 o -
        {N, 1, 2, N},  // id_1 o -
        {2, N, N, 1},  // f o -
        {N, 3, 0, N},  // g o -
    };
    c.object_names = {"0", "1"};
    c.arrow_names = {"id0", "id1", "f", "g"};
    require_category(c);
    return c;
}

inline FiniteCategory product_category(const FiniteCategory& a, const FiniteCategory& b) {
    FiniteCategory c;
    c.num_objects = a.num_objects * b.num_objects;
    const int na = a.num_arrows(), nb = b.num_arrows();
    for (int f = 0; f < na; ++f)
        for (int g = 0; g < nb; ++g) {
            c.src.push_back(a.src[f] * b.num_objects + b.src[g]);
            c.tgt.push_back(a.tgt[f] * b.num_objects + b.tgt[g]);
        }
    for (int x = 0; x < a.num_objects; ++x)
        for (int y = 0; y < b.num_objects; ++y) c.identity.push_back(a.identity[x] * nb + b.identity[y]);
    const int m = na * nb;
    c.comp.assign(m, std::vector<int>(m, kNone));
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            const int f2 = p / nb, g2 = p % nb, f1 = q / nb, g1 = q % nb;
            if (a.comp[f2][f1] != kNone && b.comp[g2][g1] != kNone) c.comp[p][q] = a.comp[f2][f1] * nb + b.comp[g2][g1];
        }
    require_category(c);
    return c;
}

struct CatFunctor {
    std::vector<int> on_objects;
    std::vector<int> on_arrows;
};

inline bool is_functor(const FiniteCategory& a, const FiniteCategory& b, const CatFunctor& f) {
    if (int(f.on_objects.size()) != a.num_objects || int(f.on_arrows.size()) != a.num_arrows()) return false;
    for (int x = 0; x < a.num_objects; ++x)
        if (f.on_arrows[a.identity[x]] != b.identity[f.on_objects[x]]) return false;
    for (int g = 0; g < a.num_arrows(); ++g) {
        if (b.src[f.on_arrows[g]] != f.on_objects[a.src[g]] || b.tgt[f.on_arrows[g]] != f.on_objects[a.tgt[g]])
            return false;
        for (int h = 0; h < a.num_arrows(); ++h)
            if (a.comp[g][h] != kNone && f.on_arrows[a.comp[g][h]] != b.comp[f.on_arrows[g]][f.on_arrows[h]])
                return false;
    }
    return true;
}

inline CatFunctor compose(const CatFunctor& g, const CatFunctor& f) {
    CatFunctor h;
    for (int x : f.on_objects) h.on_objects.push_back(g.on_objects[x]);
    for (int a : f.on_arrows) h.on_arrows.push_back(g.on_arrows[a]);
    return h;
}

inline CatFunctor identity_functor(const FiniteCategory& c) {
    CatFunctor f;
    for (int x = 0; x < c.num_objects; ++x) f.on_objects.push_back(x);
    for (int a = 0; a < c.num_arrows(); ++a) f.on_arrows.push_back(a);
    return f;
}

/// Bijective on objects and arrows.
inline bool is_isomorphism(const FiniteCategory& a, const FiniteCategory& b, const CatFunctor& f) {
    if (!is_functor(a, b, f) || a.num_objects != b.num_objects || a.num_arrows() != b.num_arrows()) return false;
    std::vector<char> so(b.num_objects, 0), sa(b.num_arrows(), 0);
    for (int x : f.on_objects) {
        if (so[x]) return false;
        so[x] = 1;
    }
    for (int g : f.on_arrows) {
        if (sa[g]) return false;
        sa[g] = 1;
    }
    return true;
}

/// Searches for an isomorphism of categories (small instances only).
inline std::optional<CatFunctor> find_category_isomorphism(const FiniteCategory& a, const FiniteCategory& b) {
    if (a.num_objects != b.num_objects || a.num_arrows() != b.num_arrows()) return std::nullopt;
    std::vector<int> perm(a.num_objects);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        // Arrows between each pair of objects must be matched bijectively respecting composition.
        CatFunctor f;
        f.on_objects = perm;
        f.on_arrows.assign(a.num_arrows(), kNone);
        std::vector<int> order(a.num_arrows());
        std::iota(order.begin(), order.end(), 0);
        std::vector<char> used(b.num_arrows(), 0);
        std::function<bool(int)> rec = [&](int k) -> bool {
            if (k == a.num_arrows()) return is_functor(a, b, f);
            const int g = order[k];
            for (int h : b.hom(perm[a.src[g]], perm[a.tgt[g]])) {
                if (used[h]) continue;
                used[h] = 1;
                f.on_arrows[g] = h;
                if (rec(k + 1)) return true;
                used[h] = 0;
            }
            f.on_arrows[g] = kNone;
            return false;
        };
        if (rec(0)) return f;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

enum class SliceSide { over, under };

struct Slice {
    FiniteCategory category;
    std::vector<int> object_arrow;  // object of the slice -> arrow of C
    CatFunctor projection;          // forgetful functor to C
};

/// C_{/c} (objects: arrows into c) or C_{c/} (objects: arrows out of c).
inline Slice slice(const FiniteCategory& c, int obj, SliceSide side) {
    Slice s;
    for (int f = 0; f < c.num_arrows(); ++f)
        if ((side == SliceSide::over ? c.tgt[f] : c.src[f]) == obj) s.object_arrow.push_back(f);
    const int n = int(s.object_arrow.size());
    FiniteCategory& k = s.category;
    k.num_objects = n;
    std::vector<int> arrow_c;
    std::map<std::pair<std::pair<int, int>, int>, int> index;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int fa = s.object_arrow[a], fb = s.object_arrow[b];
            for (int h = 0; h < c.num_arrows(); ++h) {
                bool ok;
                if (side == SliceSide::over)
                    ok = c.src[h] == c.src[fa] && c.tgt[h] == c.src[fb] && c.comp[fb][h] == fa;
                else
                    ok = c.src[h] == c.tgt[fa] && c.tgt[h] == c.tgt[fb] && c.comp[h][fa] == fb;
                if (!ok) continue;
                index[{{a, b}, h}] = k.num_arrows();
                k.src.push_back(a);
                k.tgt.push_back(b);
                arrow_c.push_back(h);
            }
        }
    k.identity.resize(n);
    for (int a = 0; a < n; ++a) {
        const int base = side == SliceSide::over ? c.src[s.object_arrow[a]] : c.tgt[s.object_arrow[a]];
        k.identity[a] = index.at({{a, a}, c.identity[base]});
    }
    const int m = k.num_arrows();
    k.comp.assign(m, std::vector<int>(m, kNone));
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (k.tgt[f] == k.src[g]) k.comp[g][f] = index.at({{k.src[f], k.tgt[g]}, c.comp[arrow_c[g]][arrow_c[f]]});
    for (int a = 0; a < n; ++a) k.object_names.push_back(c.arrow_names.empty() ? std::to_string(a) : c.arrow_names[s.object_arrow[a]]);
    for (int f = 0; f < m; ++f) k.arrow_names.push_back(std::to_string(f));
    require_category(k);
    for (int a = 0; a < n; ++a)
        s.projection.on_objects.push_back(side == SliceSide::over ? c.src[s.object_arrow[a]] : c.tgt[s.object_arrow[a]]);
    s.projection.on_arrows = arrow_c;
    return s;
}

/// Functor C -> Cat given by tables.
struct CatDiagram {
    FiniteCategory base;
    std::vector<FiniteCategory> values;    // per object
    std::vector<CatFunctor> arrow_maps;    // per arrow
};

inline void require_cat_diagram(const CatDiagram& g) {
    const auto& c = g.base;
    if (int(g.values.size()) != c.num_objects || int(g.arrow_maps.size()) != c.num_arrows())
        throw ConstructionError("diagram tables have wrong size");
    for (int f = 0; f < c.num_arrows(); ++f)
        if (!is_functor(g.values[c.src[f]], g.values[c.tgt[f]], g.arrow_maps[f]))
            throw ConstructionError("diagram arrow is not a functor");
    for (int x = 0; x < c.num_objects; ++x)
        if (g.arrow_maps[c.identity[x]].on_arrows != identity_functor(g.values[x]).on_arrows)
            throw ConstructionError("diagram does not preserve identities");
    for (int a = 0; a < c.num_arrows(); ++a)
        for (int b = 0; b < c.num_arrows(); ++b)
            if (c.comp[a][b] != kNone &&
                compose(g.arrow_maps[a], g.arrow_maps[b]).on_arrows != g.arrow_maps[c.comp[a][b]].on_arrows)
                throw ConstructionError("diagram does not preserve composition");
}

struct GrothendieckCat {
    FiniteCategory category;
    std::vector<std::pair<int, int>> objects;  // (c, x)
    std::vector<std::pair<int, int>> arrows;   // (f, phi)
    CatFunctor projection;
};

/// Objects (c, x in G(c)); arrows (f: c -> c', phi: G(f)(x) -> x').
inline GrothendieckCat grothendieck_cat(const CatDiagram& g) {
    require_cat_diagram(g);
    const auto& c = g.base;
    GrothendieckCat out;
    std::map<std::pair<int, int>, int> obj_index;
    for (int a = 0; a < c.num_objects; ++a)
        for (int x = 0; x < g.values[a].num_objects; ++x) {
            obj_index[{a, x}] = int(out.objects.size());
            out.objects.emplace_back(a, x);
        }
    FiniteCategory& k = out.category;
    k.num_objects = int(out.objects.size());
    std::map<std::pair<int, int>, int> arrow_index;
    for (int f = 0; f < c.num_arrows(); ++f) {
        const auto& target = g.values[c.tgt[f]];
        for (int x = 0; x < g.values[c.src[f]].num_objects; ++x) {
            const int fx = g.arrow_maps[f].on_objects[x];
            for (int phi = 0; phi < target.num_arrows(); ++phi) {
                if (target.src[phi] != fx) continue;
                arrow_index[{f, phi}] = int(out.arrows.size());
                // phi's source fixes x only through G(f); record x separately via src.
                out.arrows.emplace_back(f, phi);
                k.src.push_back(obj_index.at({c.src[f], x}));
                k.tgt.push_back(obj_index.at({c.tgt[f], target.tgt[phi]}));
            }
        }
    }
    // Arrows with the same (f, phi) but different x are distinct; re-index by position.
    k.identity.resize(k.num_objects);
    for (int o = 0; o < k.num_objects; ++o) {
        auto [a, x] = out.objects[o];
        for (int e = 0; e < int(out.arrows.size()); ++e)
            if (k.src[e] == o && out.arrows[e].first == c.identity[a] && out.arrows[e].second == g.values[a].identity[x])
                k.identity[o] = e;
    }
    const int m = k.num_arrows();
    std::map<std::tuple<int, int, int>, int> by_source;  // (src object, f, phi)
    for (int e = 0; e < m; ++e) by_source[{k.src[e], out.arrows[e].first, out.arrows[e].second}] = e;
    k.comp.assign(m, std::vector<int>(m, kNone));
    for (int e2 = 0; e2 < m; ++e2)
        for (int e1 = 0; e1 < m; ++e1) {
            if (k.tgt[e1] != k.src[e2]) continue;
            auto [f, phi] = out.arrows[e1];
            auto [h, psi] = out.arrows[e2];
            const int hf = c.comp[h][f];
            // (h, psi) o (f, phi) = (h f, psi o G(h)(phi))
            const int moved = g.arrow_maps[h].on_arrows[phi];
            const int chi = g.values[c.tgt[h]].comp[psi][moved];
            k.comp[e2][e1] = by_source.at({k.src[e1], hf, chi});
        }
    for (auto [a, x] : out.objects) k.object_names.push_back("(" + std::to_string(a) + "," + std::to_string(x) + ")");
    for (int e = 0; e < m; ++e) k.arrow_names.push_back(std::to_string(e));
    require_category(k);
    for (auto [a, x] : out.objects) out.projection.on_objects.push_back(a);
    for (auto [f, phi] : out.arrows) out.projection.on_arrows.push_back(f);
    return out;
}

inline CatDiagram constant_cat_diagram(const FiniteCategory& base, const FiniteCategory& value) {
    CatDiagram g{base, std::vector<FiniteCategory>(base.num_objects, value), {}};
    for (int f = 0; f < base.num_arrows(); ++f) g.arrow_maps.push_back(identity_functor(value));
    return g;
}

}  // namespace cubical
