#pragma once

// Dimension-truncated graded sets with "down" operators X_k -> X_{k-1} and
// "up" operators X_{k-1} -> X_k. The Shape parameter fixes how many of each
// exist at every level; CubicalShape and SimplicialShape are the two used.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubical/errors.hpp"
#include "cubical/structure.hpp"

namespace cubical {

using Levels = std::vector<std::vector<int>>;

template <class Shape>
struct GradedSet {
    int dim = 0;
    std::vector<int> counts;
    // down[k][o][x] for x in X_k; up[k][o][y] for y in X_{k-1}.
    std::vector<std::vector<std::vector<int>>> down;
    std::vector<std::vector<std::vector<int>>> up;

    GradedSet() : GradedSet(0) {}
    explicit GradedSet(int d) : dim(d), counts(d + 1, 0), down(d + 1), up(d + 1) {
        if (d < 0) throw ConstructionError("negative truncation dimension");
        for (int k = 0; k <= d; ++k) {
            down[k].assign(Shape::num_down(k), {});
            up[k].assign(Shape::num_up(k), {});
        }
    }

    int count(int k) const { return k >= 0 && k <= dim ? counts[k] : 0; }
    int total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

    /// Resizes every table touching level k; new entries are kNone.
    void set_count(int k, int n) {
        counts[k] = n;
        for (auto& t : down[k]) t.assign(n, kNone);
        if (k + 1 <= dim)
            for (auto& t : up[k + 1]) t.assign(n, kNone);
    }

    friend bool operator==(const GradedSet&, const GradedSet&) = default;
};

template <class Shape>
using GradedPtr = std::shared_ptr<const GradedSet<Shape>>;

template <class Shape>
GradedPtr<Shape> share(GradedSet<Shape> x) {
    return std::make_shared<const GradedSet<Shape>>(std::move(x));
}

template <class Shape>
struct GradedMap {
    GradedPtr<Shape> source;
    GradedPtr<Shape> target;
    Levels map;

    int operator()(int k, int x) const { return map[k][x]; }
};

/// Result of a construction that comes with structure maps (injections, projections, quotient map).
template <class Shape>
struct Construction {
    GradedPtr<Shape> object;
    std::vector<GradedMap<Shape>> legs;
};

// ---------------------------------------------------------------------------
// Flattening and search

template <class Shape>
std::vector<int> level_offsets(const GradedSet<Shape>& x, int d) {
    std::vector<int> off(d + 2, 0);
    for (int k = 0; k <= d; ++k) off[k + 1] = off[k] + x.count(k);
    return off;
}

template <class Shape>
Structure flatten(const GradedSet<Shape>& x, int d) {
    Structure s;
    const auto off = level_offsets(x, d);
    for (int k = 0; k <= d; ++k) s.add_sort(x.count(k));
    for (int k = 1; k <= d; ++k) {
        for (const auto& t : x.down[k]) {
            Structure::Op op{k, k - 1, {}};
            op.table.reserve(t.size());
            for (int v : t) op.table.push_back(v == kNone ? kNone : off[k - 1] + v);
            s.ops.push_back(std::move(op));
        }
        for (const auto& t : x.up[k]) {
            Structure::Op op{k - 1, k, {}};
            op.table.reserve(t.size());
            for (int v : t) op.table.push_back(v == kNone ? kNone : off[k] + v);
            s.ops.push_back(std::move(op));
        }
    }
    s.finalize();
    return s;
}

template <class Shape>
Levels unflatten(const std::vector<int>& h, const GradedSet<Shape>& src, const GradedSet<Shape>& tgt, int d) {
    const auto off_s = level_offsets(src, d);
    const auto off_t = level_offsets(tgt, d);
    Levels out(d + 1);
    for (int k = 0; k <= d; ++k) {
        out[k].resize(src.count(k));
        for (int x = 0; x < src.count(k); ++x) out[k][x] = h[off_s[k] + x] - off_t[k];
    }
    return out;
}

template <class Shape>
std::vector<std::vector<bool>> degenerate_flags(const GradedSet<Shape>& x) {
    std::vector<std::vector<bool>> flags(x.dim + 1);
    for (int k = 0; k <= x.dim; ++k) {
        flags[k].assign(x.count(k), false);
        for (const auto& t : x.up[k])
            for (int v : t)
                if (v != kNone) flags[k][v] = true;
    }
    return flags;
}

template <class Shape>
int count_nondegenerate(const GradedSet<Shape>& x, int k) {
    const auto flags = degenerate_flags(x);
    return int(std::count(flags[k].begin(), flags[k].end(), false));
}

template <class Shape>
std::vector<int> nondegenerate_counts(const GradedSet<Shape>& x) {
    const auto flags = degenerate_flags(x);
    std::vector<int> out;
    for (int k = 0; k <= x.dim; ++k) out.push_back(int(std::count(flags[k].begin(), flags[k].end(), false)));
    return out;
}

struct MapSearchOptions {
    bool injective = false;
    std::size_t node_cap = kDefaultNodeCap;
    std::function<bool(int, int, int)> filter;  // (level, source cube, target cube)
    std::vector<std::tuple<int, int, int>> preassign;  // (level, source cube, target cube)
    bool top_down = false;  // decide nondegenerate cubes from the top level first
    bool refine = false;    // prune by colour refinement (only sound for isomorphisms)
    std::optional<int> dim;  // truncation used for the search; default min of both
};

namespace detail {

template <class Shape>
struct GradedSearch {
    int d;
    Structure sa, sb;
    std::vector<int> off_a, off_b;
    std::vector<int> level_a, level_b;
    SearchOptions opts;

    GradedSearch(const GradedSet<Shape>& a, const GradedSet<Shape>& b, const MapSearchOptions& o)
        : d(o.dim.value_or(std::min(a.dim, b.dim))) {
        if (d > a.dim || d > b.dim) throw PreconditionError("search dimension exceeds a truncation");
        sa = flatten(a, d);
        sb = flatten(b, d);
        off_a = level_offsets(a, d);
        off_b = level_offsets(b, d);
        level_a = sa.sort_of;
        level_b = sb.sort_of;
        opts.injective = o.injective;
        opts.node_cap = o.node_cap;
        for (auto [k, x, y] : o.preassign) {
            if (k > d) continue;
            opts.preassign.emplace_back(off_a[k] + x, off_b[k] + y);
        }
        if (o.filter) {
            auto f = o.filter;
            auto oa = off_a, ob = off_b, la = level_a;
            opts.filter = [f, oa, ob, la](int x, int y) {
                const int k = la[x];
                return f(k, x - oa[k], y - ob[k]);
            };
        }
        if (o.top_down) {
            const auto flags = degenerate_flags(a);
            for (int k = d; k >= 0; --k)
                for (int x = 0; x < a.count(k); ++x)
                    if (!flags[k][x]) opts.order.push_back(off_a[k] + x);
            for (int k = d; k >= 0; --k)
                for (int x = 0; x < a.count(k); ++x)
                    if (flags[k][x]) opts.order.push_back(off_a[k] + x);
        }
        if (o.refine) {
            auto [ca, cb] = refine_colors(sa, sb);
            opts.colors_a = std::move(ca);
            opts.colors_b = std::move(cb);
        }
    }
};

}  // namespace detail

template <class Shape>
std::optional<Levels> find_map(const GradedSet<Shape>& a, const GradedSet<Shape>& b, const MapSearchOptions& o = {}) {
    detail::GradedSearch<Shape> g(a, b, o);
    HomSearch search(g.sa, g.sb, g.opts);
    auto h = search.find_first();
    if (!h) return std::nullopt;
    return unflatten(*h, a, b, g.d);
}

template <class Shape>
std::uint64_t count_maps(const GradedSet<Shape>& a, const GradedSet<Shape>& b, const MapSearchOptions& o = {}) {
    detail::GradedSearch<Shape> g(a, b, o);
    HomSearch search(g.sa, g.sb, g.opts);
    return search.count();
}

template <class Shape>
void for_each_map(const GradedSet<Shape>& a, const GradedSet<Shape>& b, const MapSearchOptions& o,
                  const std::function<bool(const Levels&)>& visit) {
    detail::GradedSearch<Shape> g(a, b, o);
    HomSearch search(g.sa, g.sb, g.opts);
    search.for_each([&](const std::vector<int>& h) { return visit(unflatten(h, a, b, g.d)); });
}

template <class Shape>
std::vector<Levels> all_maps(const GradedSet<Shape>& a, const GradedSet<Shape>& b, const MapSearchOptions& o = {}) {
    std::vector<Levels> out;
    for_each_map(a, b, o, [&](const Levels& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

/// An isomorphism X -> Y, or nothing when none exists (exhaustively certified).
template <class Shape>
std::optional<GradedMap<Shape>> find_isomorphism(const GradedSet<Shape>& a, const GradedSet<Shape>& b,
                                                 std::size_t node_cap = kDefaultNodeCap) {
    if (a.dim != b.dim) throw PreconditionError("isomorphism search needs equal truncation dimensions");
    if (a.counts != b.counts) return std::nullopt;
    if (nondegenerate_counts(a) != nondegenerate_counts(b)) return std::nullopt;
    MapSearchOptions o;
    o.injective = true;
    o.node_cap = node_cap;
    o.top_down = true;
    o.refine = true;
    auto m = find_map(a, b, o);
    if (!m) return std::nullopt;
    return GradedMap<Shape>{share(a), share(b), std::move(*m)};
}

// ---------------------------------------------------------------------------
// Validation of morphisms and the generic builders

template <class Shape>
bool is_morphism(const GradedSet<Shape>& a, const GradedSet<Shape>& b, const Levels& m) {
    const int d = std::min(a.dim, b.dim);
    if (int(m.size()) < d + 1) return false;
    for (int k = 0; k <= d; ++k) {
        if (int(m[k].size()) != a.count(k)) return false;
        for (int v : m[k])
            if (v < 0 || v >= b.count(k)) return false;
    }
    for (int k = 1; k <= d; ++k) {
        for (std::size_t o = 0; o < a.down[k].size(); ++o)
            for (int x = 0; x < a.count(k); ++x)
                if (m[k - 1][a.down[k][o][x]] != b.down[k][o][m[k][x]]) return false;
        for (std::size_t o = 0; o < a.up[k].size(); ++o)
            for (int y = 0; y < a.count(k - 1); ++y)
                if (m[k][a.up[k][o][y]] != b.up[k][o][m[k - 1][y]]) return false;
    }
    return true;
}

template <class Shape>
bool is_morphism(const GradedMap<Shape>& f) {
    return is_morphism(*f.source, *f.target, f.map);
}

template <class Shape>
bool is_injective(const GradedMap<Shape>& f) {
    for (int k = 0; k < int(f.map.size()); ++k) {
        std::vector<char> seen(f.target->count(k), 0);
        for (int v : f.map[k]) {
            if (seen[v]) return false;
            seen[v] = 1;
        }
    }
    return true;
}

template <class Shape>
GradedMap<Shape> identity_morphism(const GradedPtr<Shape>& x) {
    GradedMap<Shape> f{x, x, Levels(x->dim + 1)};
    for (int k = 0; k <= x->dim; ++k) {
        f.map[k].resize(x->count(k));
        std::iota(f.map[k].begin(), f.map[k].end(), 0);
    }
    return f;
}

/// g o f.
template <class Shape>
GradedMap<Shape> compose(const GradedMap<Shape>& g, const GradedMap<Shape>& f) {
    const int d = std::min(int(f.map.size()), int(g.map.size())) - 1;
    GradedMap<Shape> h{f.source, g.target, Levels(d + 1)};
    for (int k = 0; k <= d; ++k)
        for (int v : f.map[k]) h.map[k].push_back(g.map[k][v]);
    return h;
}

/// Builds a graded set from keyed cells and an action on keys. `act(k, up, o, key)`
/// returns the key of the image of `key` under the o-th down operator at level k
/// (up = false, key at level k) or o-th up operator at level k (up = true, key at level k-1).
template <class Shape, class Key, class Act>
GradedSet<Shape> build_from_keys(int d, const std::vector<std::vector<Key>>& keys, Act act) {
    GradedSet<Shape> x(d);
    std::vector<std::map<Key, int>> index(d + 1);
    for (int k = 0; k <= d; ++k) {
        x.set_count(k, int(keys[k].size()));
        for (int i = 0; i < int(keys[k].size()); ++i) index[k].emplace(keys[k][i], i);
        if (int(index[k].size()) != x.counts[k]) throw ConstructionError("duplicate cell keys");
    }
    auto lookup = [&](int k, const Key& key) {
        auto it = index[k].find(key);
        if (it == index[k].end()) throw ConstructionError("operator leaves the cell set at level " + std::to_string(k));
        return it->second;
    };
    for (int k = 1; k <= d; ++k) {
        for (int o = 0; o < int(x.down[k].size()); ++o)
            for (int i = 0; i < x.counts[k]; ++i) x.down[k][o][i] = lookup(k - 1, act(k, false, o, keys[k][i]));
        for (int o = 0; o < int(x.up[k].size()); ++o)
            for (int i = 0; i < x.counts[k - 1]; ++i) x.up[k][o][i] = lookup(k, act(k, true, o, keys[k - 1][i]));
    }
    return x;
}

// ---------------------------------------------------------------------------
// Finite limits and colimits

template <class Shape>
Construction<Shape> coproduct(const std::vector<GradedPtr<Shape>>& parts, std::optional<int> dim = std::nullopt) {
    int d = dim.value_or(parts.empty() ? 0 : parts.front()->dim);
    for (const auto& p : parts) d = std::min(d, p->dim);
    GradedSet<Shape> x(d);
    std::vector<std::vector<int>> base(parts.size(), std::vector<int>(d + 1, 0));
    for (int k = 0; k <= d; ++k) {
        int n = 0;
        for (std::size_t p = 0; p < parts.size(); ++p) {
            base[p][k] = n;
            n += parts[p]->count(k);
        }
        x.set_count(k, n);
    }
    for (std::size_t p = 0; p < parts.size(); ++p) {
        const auto& y = *parts[p];
        for (int k = 1; k <= d; ++k) {
            for (std::size_t o = 0; o < y.down[k].size(); ++o)
                for (int i = 0; i < y.count(k); ++i) x.down[k][o][base[p][k] + i] = base[p][k - 1] + y.down[k][o][i];
            for (std::size_t o = 0; o < y.up[k].size(); ++o)
                for (int i = 0; i < y.count(k - 1); ++i) x.up[k][o][base[p][k - 1] + i] = base[p][k] + y.up[k][o][i];
        }
    }
    Construction<Shape> out{share(std::move(x)), {}};
    for (std::size_t p = 0; p < parts.size(); ++p) {
        GradedMap<Shape> inj{parts[p], out.object, Levels(d + 1)};
        for (int k = 0; k <= d; ++k)
            for (int i = 0; i < parts[p]->count(k); ++i) inj.map[k].push_back(base[p][k] + i);
        out.legs.push_back(std::move(inj));
    }
    return out;
}

/// Quotient by the smallest congruence containing the given (level, a, b) pairs.
/// Classes are numbered by their smallest member. The single leg is the quotient map.
template <class Shape>
Construction<Shape> quotient(const GradedPtr<Shape>& x, const std::vector<std::tuple<int, int, int>>& pairs) {
    const int d = x->dim;
    const Structure s = flatten(*x, d);
    const auto off = level_offsets(*x, d);
    std::vector<std::pair<int, int>> global;
    global.reserve(pairs.size());
    for (auto [k, a, b] : pairs) global.emplace_back(off[k] + a, off[k] + b);
    UnionFind uf = congruence_closure(s, global);
    GradedSet<Shape> q(d);
    GradedMap<Shape> leg{x, nullptr, Levels(d + 1)};
    std::vector<std::vector<int>> rep(d + 1);
    for (int k = 0; k <= d; ++k) {
        std::vector<int> cls(x->count(k), kNone);
        int n = 0;
        for (int i = 0; i < x->count(k); ++i) {
            const int root = uf.find(off[k] + i) - off[k];
            if (cls[root] == kNone) {
                cls[root] = n++;
                rep[k].push_back(i);
            }
            leg.map[k].push_back(cls[root]);
        }
        q.set_count(k, n);
    }
    for (int k = 1; k <= d; ++k) {
        for (std::size_t o = 0; o < x->down[k].size(); ++o)
            for (int c = 0; c < q.counts[k]; ++c) q.down[k][o][c] = leg.map[k - 1][x->down[k][o][rep[k][c]]];
        for (std::size_t o = 0; o < x->up[k].size(); ++o)
            for (int c = 0; c < q.counts[k - 1]; ++c) q.up[k][o][c] = leg.map[k][x->up[k][o][rep[k - 1][c]]];
    }
    leg.target = share(std::move(q));
    return {leg.target, {leg}};
}

/// Pushout of f: A -> B and g: A -> C. Legs: B -> P, C -> P.
template <class Shape>
Construction<Shape> pushout(const GradedMap<Shape>& f, const GradedMap<Shape>& g) {
    auto sum = coproduct<Shape>({f.target, g.target});
    const int d = sum.object->dim;
    std::vector<std::tuple<int, int, int>> pairs;
    for (int k = 0; k <= std::min(d, f.source->dim); ++k)
        for (int a = 0; a < f.source->count(k); ++a)
            pairs.emplace_back(k, sum.legs[0].map[k][f.map[k][a]], sum.legs[1].map[k][g.map[k][a]]);
    auto q = quotient(sum.object, pairs);
    return {q.object, {compose(q.legs[0], sum.legs[0]), compose(q.legs[0], sum.legs[1])}};
}

/// Pullback of f: B -> A and g: C -> A. Legs: P -> B, P -> C.
template <class Shape>
Construction<Shape> pullback(const GradedMap<Shape>& f, const GradedMap<Shape>& g) {
    const int d = std::min({f.source->dim, g.source->dim, f.target->dim});
    const auto& b = *f.source;
    const auto& c = *g.source;
    GradedSet<Shape> p(d);
    std::vector<std::map<std::pair<int, int>, int>> index(d + 1);
    Levels pb(d + 1), pc(d + 1);
    for (int k = 0; k <= d; ++k) {
        std::map<int, std::vector<int>> by_image;
        for (int j = 0; j < c.count(k); ++j) by_image[g.map[k][j]].push_back(j);
        for (int i = 0; i < b.count(k); ++i) {
            auto it = by_image.find(f.map[k][i]);
            if (it == by_image.end()) continue;
            for (int j : it->second) {
                index[k].emplace(std::make_pair(i, j), int(pb[k].size()));
                pb[k].push_back(i);
                pc[k].push_back(j);
            }
        }
        p.set_count(k, int(pb[k].size()));
    }
    for (int k = 1; k <= d; ++k) {
        for (std::size_t o = 0; o < b.down[k].size(); ++o)
            for (int e = 0; e < p.counts[k]; ++e)
                p.down[k][o][e] = index[k - 1].at({b.down[k][o][pb[k][e]], c.down[k][o][pc[k][e]]});
        for (std::size_t o = 0; o < b.up[k].size(); ++o)
            for (int e = 0; e < p.counts[k - 1]; ++e)
                p.up[k][o][e] = index[k].at({b.up[k][o][pb[k - 1][e]], c.up[k][o][pc[k - 1][e]]});
    }
    auto obj = share(std::move(p));
    return {obj, {GradedMap<Shape>{obj, f.source, pb}, GradedMap<Shape>{obj, g.source, pc}}};
}

/// Subobject spanned by the cells satisfying `keep`, which must be closed under all operators.
template <class Shape>
Construction<Shape> subobject(const GradedPtr<Shape>& x, const std::function<bool(int, int)>& keep) {
    const int d = x->dim;
    GradedSet<Shape> s(d);
    Levels incl(d + 1);
    std::vector<std::vector<int>> pos(d + 1);
    for (int k = 0; k <= d; ++k) {
        pos[k].assign(x->count(k), kNone);
        for (int i = 0; i < x->count(k); ++i)
            if (keep(k, i)) {
                pos[k][i] = int(incl[k].size());
                incl[k].push_back(i);
            }
        s.set_count(k, int(incl[k].size()));
    }
    auto at = [&](int k, int i) {
        if (pos[k][i] == kNone) throw ConstructionError("subobject predicate is not closed under operators");
        return pos[k][i];
    };
    for (int k = 1; k <= d; ++k) {
        for (std::size_t o = 0; o < x->down[k].size(); ++o)
            for (int e = 0; e < s.counts[k]; ++e) s.down[k][o][e] = at(k - 1, x->down[k][o][incl[k][e]]);
        for (std::size_t o = 0; o < x->up[k].size(); ++o)
            for (int e = 0; e < s.counts[k - 1]; ++e) s.up[k][o][e] = at(k, x->up[k][o][incl[k - 1][e]]);
    }
    auto obj = share(std::move(s));
    return {obj, {GradedMap<Shape>{obj, x, incl}}};
}

/// Image of a morphism as a subobject of its target.
template <class Shape>
Construction<Shape> image(const GradedMap<Shape>& f) {
    std::vector<std::vector<char>> hit(f.target->dim + 1);
    for (int k = 0; k <= f.target->dim; ++k) hit[k].assign(f.target->count(k), 0);
    for (int k = 0; k < int(f.map.size()); ++k)
        for (int v : f.map[k]) hit[k][v] = 1;
    return subobject<Shape>(f.target, [&](int k, int i) { return hit[k][i] != 0; });
}

/// The same data viewed at a lower truncation.
template <class Shape>
GradedSet<Shape> truncate(const GradedSet<Shape>& x, int d) {
    if (d > x.dim) throw TruncationError("cannot raise the truncation dimension");
    GradedSet<Shape> t(d);
    for (int k = 0; k <= d; ++k) {
        t.counts[k] = x.counts[k];
        t.down[k] = x.down[k];
        t.up[k] = x.up[k];
    }
    return t;
}

template <class Shape>
GradedSet<Shape> empty_set(int d) {
    return GradedSet<Shape>(d);
}

}  // namespace cubical
