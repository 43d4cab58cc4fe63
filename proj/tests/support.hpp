#pragma once

// Sample objects shared by the unit tests and the acceptance runner.

#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "cubical.hpp"

namespace samples {

using namespace cubical;

inline CSetPtr pt(int d) { return share(point(d)); }

inline CSetPtr two_points(int d) { return coproduct<CubicalShape>({pt(d), pt(d)}).object; }

/// Functor given on objects into a preorder-like target (first arrow of each hom-set).
inline CatFunctor functor_on_objects(const FiniteCategory& a, const FiniteCategory& b, const std::vector<int>& obj) {
    CatFunctor f;
    f.on_objects = obj;
    for (int x = 0; x < a.num_arrows(); ++x) f.on_arrows.push_back(b.hom(obj[a.src[x]], obj[a.tgt[x]]).at(0));
    return f;
}

/// F(c) = two points when `two(c)`, a point otherwise; every non-identity arrow collapses.
template <class Pred>
CSetDiagram two_or_one(const FiniteCategory& c, int d, Pred two) {
    CSetDiagram f;
    f.base = c;
    const CSetPtr p = pt(d), t = two_points(d);
    for (int o = 0; o < c.num_objects; ++o) f.values.push_back(two(o) ? t : p);
    for (int a = 0; a < c.num_arrows(); ++a) {
        const int s = c.src[a], tg = c.tgt[a];
        if (s == tg) {
            f.arrow_maps.push_back(identity_morphism(f.values[s]));
        } else {
            CSetMorphism m = to_point(f.values[s]);
            m.target = f.values[tg];
            if (f.values[tg]->count(0) != 1) throw PreconditionError("sample only collapses onto points");
            f.arrow_maps.push_back(m);
        }
    }
    return f;
}

/// The free cospan 1 <- 0 -> 2 with F(0) two points and F(1) = F(2) a point.
inline CSetDiagram cospan_sample(int d) {
    return two_or_one(free_cospan(), d, [](int o) { return o == 0; });
}

/// [1] -> Cat: 0 -> {a, b, c} (discrete), 1 -> {u, v} with a -> u, b, c -> v.
inline CatDiagram discrete_sample() {
    CatDiagram g;
    g.base = chain_category(1);
    g.values = {discrete_category(3), discrete_category(2)};
    const std::vector<int> fo{0, 1, 1};
    for (int a = 0; a < g.base.num_arrows(); ++a) {
        const int s = g.base.src[a], t = g.base.tgt[a];
        std::vector<int> obj;
        for (int x = 0; x < g.values[s].num_objects; ++x) obj.push_back(s == t ? x : fo[x]);
        g.arrow_maps.push_back(functor_on_objects(g.values[s], g.values[t], obj));
    }
    return g;
}

/// [1] -> Cat: 0 -> contractible groupoid on two objects, 1 -> point.
inline CatDiagram groupoid_sample() {
    CatDiagram g;
    g.base = chain_category(1);
    g.values = {contractible_groupoid(2), terminal_category()};
    for (int a = 0; a < g.base.num_arrows(); ++a) {
        const int s = g.base.src[a], t = g.base.tgt[a];
        g.arrow_maps.push_back(s == t ? identity_functor(g.values[s])
                                      : functor_on_objects(g.values[0], g.values[1], {0, 0}));
    }
    return g;
}

/// [1] -> Cat: 0 -> [1], 1 -> [0].
inline CatDiagram collapse_sample() {
    CatDiagram g;
    g.base = chain_category(1);
    g.values = {chain_category(1), terminal_category()};
    for (int a = 0; a < g.base.num_arrows(); ++a) {
        const int s = g.base.src[a], t = g.base.tgt[a];
        g.arrow_maps.push_back(s == t ? identity_functor(g.values[s])
                                      : functor_on_objects(g.values[0], g.values[1], {0, 0}));
    }
    return g;
}

/// [1] -> Cat: 0 -> [0], 1 -> [1] picking the object 0.
inline CatDiagram pick_sample() {
    CatDiagram g;
    g.base = chain_category(1);
    g.values = {terminal_category(), chain_category(1)};
    for (int a = 0; a < g.base.num_arrows(); ++a) {
        const int s = g.base.src[a], t = g.base.tgt[a];
        g.arrow_maps.push_back(s == t ? identity_functor(g.values[s])
                                      : functor_on_objects(g.values[0], g.values[1], {0}));
    }
    return g;
}

/// N(∫G) -> N([1]) for a diagram of categories.
struct GrothendieckFibration {
    GrothendieckCat cat;
    Nerve total;
    Nerve base;
    CSetMorphism p;
};

inline GrothendieckFibration grothendieck_fibration(const CatDiagram& g, int d) {
    GrothendieckFibration out{grothendieck_cat(g), {}, {}, {}};
    out.total = nerve(out.cat.category, d);
    out.base = nerve(g.base, d);
    out.p = nerve_map(out.total, out.base, out.cat.projection);
    return out;
}

/// The first nondegenerate n-cube of a nerve, or cube 0 when every n-cube is degenerate.
inline int some_cube(const CubicalSet& x, int n) {
    const auto flags = degenerate_flags(x);
    for (int y = 0; y < x.count(n); ++y)
        if (!flags[n][y]) return y;
    return 0;
}

inline int count_of(const EdgeMarking& m) { return int(std::count(m.begin(), m.end(), 1)); }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace samples
