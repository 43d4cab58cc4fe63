#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace cubical;
using namespace samples;

namespace {

constexpr int D = 3;

// Monotone maps {0,1}^k -> {0..n}.
int monotone_oracle(int k, int n) {
    const int verts = 1 << k;
    std::vector<int> val(verts, 0);
    int count = 0;
    std::function<void(int)> go = [&](int v) {
        if (v == verts) {
            ++count;
            return;
        }
        for (int x = 0; x <= n; ++x) {
            bool ok = true;
            for (int j = 0; j < k && ok; ++j)
                if ((v >> j) & 1) ok = val[v ^ (1 << j)] <= x;
            if (!ok) continue;
            val[v] = x;
            go(v + 1);
        }
    };
    go(0);
    return count;
}

// Arrows of the Grothendieck category counted directly: pairs (f, phi).
int grothendieck_arrow_oracle(const CatDiagram& g) {
    int total = 0;
    for (int f = 0; f < g.base.num_arrows(); ++f) {
        const auto& gf = g.arrow_maps[f];
        const auto& src = g.values[g.base.src[f]];
        const auto& tgt = g.values[g.base.tgt[f]];
        for (int x = 0; x < src.num_objects; ++x)
            for (int y = 0; y < tgt.num_objects; ++y) total += int(tgt.hom(gf.on_objects[x], y).size());
    }
    return total;
}

}  // namespace

TEST_CASE("categories are checked", "[cat_nerve]") {
    for (const auto& c : {chain_category(2), free_cospan(), walking_isomorphism(), contractible_groupoid(3),
                          product_category(chain_category(1), chain_category(1))})
        CHECK(check_category(c).empty());
    FiniteCategory bad = chain_category(1);
    bad.comp[0][0] = kNone;
    CHECK(!check_category(bad).empty());
}

TEST_CASE("nerve cell counts", "[cat_nerve]") {
    const Nerve n1 = nerve(chain_category(1), 1);
    CHECK(n1.object->count(0) == 2);
    CHECK(n1.object->count(1) == 3);
    const Nerve n2 = nerve(chain_category(2), 1);
    CHECK(n2.object->count(0) == 3);
    CHECK(n2.object->count(1) == 6);
    CHECK(find_isomorphism(*nerve(discrete_category(2), D).object, *two_points(D)).has_value());
}

TEST_CASE("nerves of chains count monotone cubes", "[cat_nerve][property]") {
    for (int n = 0; n <= 2; ++n) {
        const Nerve nv = nerve(chain_category(n), D);
        CHECK(validate(*nv.object).empty());
        for (int k = 0; k <= D; ++k) CHECK(nv.object->count(k) == monotone_oracle(k, n));
    }
}

TEST_CASE("nerves of groupoids are Kan", "[cat_nerve]") {
    const E1Set e1 = special_e1(D);
    CHECK(e1.nerve.object->count(0) == 2);
    CHECK(e1.nerve.object->count(1) == 4);
    CHECK(check_rlp(to_point(e1.nerve.object), generator_family(FamilyKind::open_box, 2, D)).pass);
}

TEST_CASE("the K set", "[cat_nerve]") {
    const KSet k = special_k(D);
    CHECK(k.object->count(0) == 2);
    CHECK(count_nondegenerate(*k.object, 2) == 2);
    CHECK(validate(*k.object).empty());
}

TEST_CASE("homotopy category", "[cat_nerve]") {
    const HomotopyCategory h1 = homotopy_category(standard_cube(1, D));
    CHECK(h1.category.num_objects == 2);
    CHECK(h1.category.num_arrows() == 3);
    CHECK(h1.exact);

    const Nerve n2 = nerve(chain_category(2), D);
    const HomotopyCategory h2 = homotopy_category(*n2.object);
    CHECK(is_isomorphism(h2.category, chain_category(2), homotopy_counit(n2, h2)));

    const HomotopyCategory h0 = homotopy_category(point(D));
    CHECK(h0.category.num_objects == 1);
    CHECK(h0.category.num_arrows() == 1);
}

TEST_CASE("equivalence edges", "[cat_nerve]") {
    const CubicalSet line = standard_cube(1, D);
    const int e = top_cell(1, D);
    for (auto m : {EquivalenceMethod::homotopy_category, EquivalenceMethod::k_factorization,
                   EquivalenceMethod::e1_factorization}) {
        CHECK_FALSE(is_equivalence_edge(line, e, m).equivalence);
        CHECK(is_equivalence_edge(line, line.up[1][0][0], m).equivalence);
    }
    const E1Set e1 = special_e1(D);
    for (int x = 0; x < e1.nerve.object->count(1); ++x) CHECK(is_equivalence_edge(*e1.nerve.object, x).equivalence);
}

TEST_CASE("slices", "[cat_nerve]") {
    CHECK(find_category_isomorphism(slice(chain_category(1), 1, SliceSide::over).category, chain_category(1)));
    CHECK(find_category_isomorphism(slice(chain_category(1), 0, SliceSide::over).category, terminal_category()));
    CHECK(slice(free_cospan(), 0, SliceSide::under).category.num_objects == 3);
}

TEST_CASE("Grothendieck category", "[cat_nerve]") {
    const FiniteCategory c = free_cospan();
    const GrothendieckCat t = grothendieck_cat(constant_cat_diagram(c, terminal_category()));
    CHECK(find_category_isomorphism(t.category, c));
    const GrothendieckCat p = grothendieck_cat(constant_cat_diagram(chain_category(1), chain_category(1)));
    CHECK(find_category_isomorphism(p.category, product_category(chain_category(1), chain_category(1))));

    const CatDiagram g = pick_sample();
    const GrothendieckCat pk = grothendieck_cat(g);
    CHECK(pk.category.num_objects == 3);
    CHECK(pk.category.num_arrows() == grothendieck_arrow_oracle(g));
    CHECK(check_category(pk.category).empty());
    CHECK(is_functor(pk.category, g.base, pk.projection));
}

TEST_CASE("Grothendieck arrows match the pair count", "[cat_nerve][property]") {
    for (const auto& g : {discrete_sample(), groupoid_sample(), collapse_sample(), pick_sample()}) {
        const GrothendieckCat gc = grothendieck_cat(g);
        CHECK(gc.category.num_arrows() == grothendieck_arrow_oracle(g));
        CHECK(check_category(gc.category).empty());
    }
}
