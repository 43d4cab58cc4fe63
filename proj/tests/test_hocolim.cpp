#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace cubical;
using namespace samples;

namespace {

constexpr int D = 3;

bool iso(const CubicalSet& a, const CubicalSet& b) { return find_isomorphism(a, b).has_value(); }

int vertex_count(const CSetPtr& x) { return x->count(0); }

}  // namespace

TEST_CASE("bar construction levels", "[hocolim]") {
    const CSetDiagram f = cospan_sample(D);
    const BarConstruction b = bar_construction(f, 2);
    int sum = 0;
    for (const auto& v : f.values) sum += v->count(0);
    CHECK(b.object.levels[0]->count(0) == sum);
    CHECK(functoriality_violations(b.object).empty());

    // F levelwise a point: one summand per functor [1] -> C, i.e. per arrow.
    const CSetDiagram ones = constant_diagram(free_cospan(), pt(D));
    const BarConstruction bo = bar_construction(ones, 2);
    CHECK(vertex_count(bo.object.levels[1]) == free_cospan().num_arrows());
    CHECK(vertex_count(bo.object.levels[1]) == 5);
    CHECK(vertex_count(bo.object.levels[2]) == nerve(free_cospan(), 2).object->count(2));

    // Terminal base category: every level is F(*).
    const CSetPtr x = share(boundary(2, D));
    const BarConstruction bt = bar_construction(constant_diagram(terminal_category(), x), 3);
    for (const auto& l : bt.object.levels) CHECK(iso(*l, *x));
}

TEST_CASE("realizations of the terminal object", "[hocolim]") {
    const CubicalObject t = terminal_object(D, D);
    CHECK(functoriality_violations(t).empty());
    CHECK(iso(*realization(t, D), point(D)));
    const CSetPtr fat = fat_realization(t, D);
    for (int k = 0; k <= D; ++k) CHECK(count_nondegenerate(*fat, k) == 1);
    CHECK(iso(*fat, *james(D).object));
}

TEST_CASE("fat realization of a single level", "[hocolim]") {
    CubicalObject b;
    b.dim = 0;
    b.levels = {share(boundary(2, D))};
    b.down.resize(1);
    b.up.resize(1);
    CHECK(iso(*fat_realization(b, D), boundary(2, D)));
}

TEST_CASE("weighted colimits", "[hocolim]") {
    const CSetDiagram f = cospan_sample(D);
    // Constant point weight gives the ordinary colimit: the two points get identified.
    CHECK(iso(*weighted_colimit(constant_weight(f.base, pt(D)), f, D), point(D)));

    const CSetWeight w = coslice_weight(f.base, D);
    for (int c = 0; c < f.base.num_objects; ++c)
        CHECK(iso(*w.values[c], *nerve(slice(f.base, c, SliceSide::under).category, D).object));
    CHECK(iso(*hocolim_weighted(f, D), *hocolim_bar(f, D)));
}

TEST_CASE("terminal object computes the value there", "[hocolim]") {
    const FiniteCategory c = chain_category(1);
    const CSetPtr x = share(boundary(2, D));
    for (const auto& f : {constant_diagram(c, x), two_or_one(c, D, [](int o) { return o == 0; })}) {
        const CSetPtr h = hocolim_weighted(f, D);
        CHECK(cubical_set_homology(*h) == cubical_set_homology(*f.values[1]));
    }
}

TEST_CASE("cospan hocolim is a circle", "[hocolim]") {
    const CSetPtr h = hocolim_weighted(cospan_sample(D), D);
    const Homology hs = cubical_set_homology(*h);
    REQUIRE(hs.valid_through >= 1);
    CHECK(hs.groups[0].is_z());
    CHECK(hs.groups[1].is_z());
    CHECK(hs.groups[2].is_zero());
    // The ordinary colimit is a point and loses the loop.
    CHECK(cubical_set_homology(*weighted_colimit(constant_weight(free_cospan(), pt(D)), cospan_sample(D), D))
              .groups[1]
              .is_zero());
}

TEST_CASE("James set", "[hocolim]") {
    const JamesSet j = james(D);
    const CubicalSet& x = *j.object;
    CHECK(x.count(0) == 1);
    CHECK(x.count(1) == 2);
    CHECK(x.count(2) == 6);
    CHECK(validate(x).empty());
    const auto deg = degenerate_flags(x);
    for (int k = 0; k <= D; ++k) {
        REQUIRE(count_nondegenerate(x, k) == 1);
        if (k == 0) continue;
        int top = 0;
        while (deg[k][top]) ++top;
        int below = 0;
        while (deg[k - 1][below]) ++below;
        for (int o = 0; o < CubicalShape::num_down(k); ++o) CHECK(x.down[k][o][top] == below);
    }
    // The connection cube in dimension 2 is degenerate by a connection.
    const CubeMap g = generator(CubeOperator::connection(2, 1, 0));
    int cell = kNone;
    for (int c = 0; c < x.count(2); ++c)
        if (j.cubes[2][c] == g) cell = c;
    REQUIRE(cell != kNone);
    const auto w = is_degenerate(x, 2, cell);
    REQUIRE(w);
    CHECK(w->op.is_connection());
    CHECK_THROWS_AS(james(7), ResourceError);
}

TEST_CASE("James action is functorial", "[hocolim][property]") {
    // Composite generators act as their table composite.
    const JamesSet j = james(4);
    const CubicalSet& x = *j.object;
    for (const auto& inst : cubical_identity_instances(4))
        for (int c = 0; c < x.count(inst.target); ++c) CHECK(act_word(x, c, inst.lhs) == act_word(x, c, inst.rhs));
    for (int k = 0; k <= 4; ++k)
        for (int c = 0; c < x.count(k); ++c)
            for (int o = 0; o < CubicalShape::num_down(k); ++o) {
                const CubeMap want =
                    factorize(compose(j.cubes[k][c], generator(CubicalShape::down_operator(k, o)))).surjective_part;
                CHECK(j.cubes[k - 1][x.down[k][o][c]] == want);
            }
}
