#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace cubical;
using namespace samples;

namespace {

constexpr int D = 3;

bool iso(const CubicalSet& a, const CubicalSet& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace

TEST_CASE("side posets", "[grothendieck_cset]") {
    CHECK(side_poset(1).size() == 3);
    CHECK(side_poset(2).size() == 9);
    // 3^n faces of the n-cube.
    CHECK(side_poset(3).size() == 27);
    // The face x1 = 0 of the square ends at the vertex (0, 1).
    for (const auto& s : side_poset(2))
        if (s.free == 0b10 && s.ones == 0) CHECK(s.last_vertex() == 0b10);
}

TEST_CASE("int construction", "[grothendieck_cset]") {
    const FiniteCategory c1 = chain_category(1);
    const IntConstruction pt_over = int_construction(constant_diagram(c1, pt(D)));
    CHECK(iso(*pt_over.object, *nerve(c1, D).object));
    CHECK(validate(*pt_over.object).empty());

    const IntConstruction two = int_construction(two_or_one(c1, D, [](int o) { return o == 0; }));
    CHECK(two.object->count(0) == 3);
    CHECK(is_morphism(two.projection));
}

TEST_CASE("vertices of the int construction are pairs", "[grothendieck_cset][property]") {
    for (const auto& g : {discrete_sample(), groupoid_sample(), collapse_sample(), pick_sample()}) {
        const CSetDiagram f = nerve_diagram(g, D);
        int pairs = 0;
        for (const auto& v : f.values) pairs += v->count(0);
        const IntConstruction ic = int_construction(f);
        CHECK(ic.object->count(0) == pairs);
        CHECK(validate(*ic.object).empty());
    }
}

TEST_CASE("nerve of the Grothendieck category", "[grothendieck_cset]") {
    for (const auto& g : {discrete_sample(), groupoid_sample(), collapse_sample(), pick_sample()}) {
        const Nerve total = nerve(grothendieck_cat(g).category, D);
        CHECK(iso(*total.object, *int_construction(nerve_diagram(g, D)).object));
    }
}

TEST_CASE("rectification", "[grothendieck_cset]") {
    const FiniteCategory c = chain_category(2);
    const Nerve base = nerve(c, D);

    // A vertex over 0: Rect(X)(d) is the discrete set Hom(0, d).
    const CSetMorphism v = yoneda_map(base.object, 0, 0);
    const Rectification rv = rectify(v, base);
    for (int d = 0; d < c.num_objects; ++d) {
        const CSetPtr x = rv.diagram.values[d];
        CHECK(x->count(0) == int(c.hom(0, d).size()));
        CHECK(count_nondegenerate(*x, 1) == 0);
    }

    // X = N(C) over itself: Rect(X)(d) is the nerve of the over-category.
    const Rectification rn = rectify(identity_morphism(base.object), base);
    for (int d = 0; d < c.num_objects; ++d)
        CHECK(iso(*rn.diagram.values[d], *nerve(slice(c, d, SliceSide::over).category, D).object));

    // The interval over N([1]); the two agree through dimension 2.
    const Nerve b1 = nerve(chain_category(1), 2);
    const CSetPtr line = share(standard_cube(1, 2));
    const auto m = find_isomorphism(*line, *b1.object);
    REQUIRE(m);
    const Rectification rl = rectify(CSetMorphism{line, b1.object, m->map}, b1);
    CHECK(iso(*rl.diagram.values[1], *line));
}

TEST_CASE("Rect is left adjoint to the int construction", "[grothendieck_cset][property]") {
    const FiniteCategory c = chain_category(1);
    const Nerve base = nerve(c, D);
    const std::vector<CSetDiagram> fs{constant_diagram(c, pt(D)), two_or_one(c, D, [](int o) { return o == 0; }),
                                      nerve_diagram(collapse_sample(), D)};
    for (int n = 0; n <= 2; ++n)
        for (const auto& f : fs) {
            const CSetMorphism p = yoneda_map(base.object, n, some_cube(*base.object, n));
            const AdjunctionReport r = check_adjunction(p, base, f);
            CHECK(r.left_count == r.right_count);
            CHECK(r.pass());
        }
}

TEST_CASE("counit at a constant point diagram", "[grothendieck_cset]") {
    const FiniteCategory c = chain_category(1);
    const Nerve base = nerve(c, D);
    const CSetDiagram f = constant_diagram(c, pt(D));
    const IntConstruction ic = int_construction(f);
    const Rectification r = rectify(ic.projection, base);
    // Into a levelwise point there is exactly one natural transformation.
    CHECK(count_nat_trans(r.diagram, f) == 1);
}
