#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace cubical;
using namespace samples;

namespace {

constexpr int D = 3;

bool iso(const CubicalSet& a, const CubicalSet& b) { return find_isomorphism(a, b).has_value(); }

// Coproduct of random small cubes and boundaries with a few vertices glued.
CubicalSet random_cset(std::mt19937& rng, int d) {
    std::vector<CSetPtr> parts;
    const int n = 1 + int(rng() % 3);
    for (int t = 0; t < n; ++t) {
        const int k = int(rng() % 3);
        parts.push_back(share(k >= 1 && rng() % 2 ? boundary(k, d) : standard_cube(k, d)));
    }
    const CSetPtr sum = coproduct<CubicalShape>(parts).object;
    std::vector<std::tuple<int, int, int>> pairs;
    const int v = sum->count(0);
    for (int t = 0; t < int(rng() % 3); ++t) pairs.emplace_back(0, int(rng() % v), int(rng() % v));
    return *quotient(sum, pairs).object;
}

}  // namespace

TEST_CASE("validate", "[cset]") {
    CHECK(validate(standard_cube(3, D)).empty());
    CHECK(validate(empty_set<CubicalShape>(D)).empty());

    CubicalSet bad = standard_cube(2, D);
    const int top = top_cell(2, D);
    std::swap(bad.down[2][CubicalShape::face_index(1, 0)][top], bad.down[2][CubicalShape::face_index(2, 0)][top]);
    const auto report = validate(bad);
    REQUIRE(!report.empty());
    bool face_face = false;
    for (const auto& v : report) face_face = face_face || v.identity.rfind("dd", 0) == 0;
    CHECK(face_face);
}

TEST_CASE("action on the representable is composition", "[cset]") {
    const CubicalSet sq = standard_cube(2, D);
    const int top = top_cell(2, D);
    CHECK(act(sq, top, CubeOperator::face(2, 1, 0)) == cube_cell(2, D, generator(CubeOperator::face(2, 1, 0))));
    for (int v = 0; v < sq.count(0); ++v)
        CHECK(act(sq, act(sq, v, CubeOperator::degeneracy(1, 1)), CubeOperator::face(1, 1, 0)) == v);
    const CubicalSet line = standard_cube(1, D);
    const int e = top_cell(1, D);
    const int ge = act(line, e, CubeOperator::connection(2, 1, 0));
    CHECK(act(line, ge, CubeOperator::face(2, 2, 0)) == e);
    CHECK(act(line, ge, CubeOperator::face(2, 1, 0)) == e);
    // max(x, 1) is constant.
    CHECK(is_degenerate(line, 1, act(line, ge, CubeOperator::face(2, 2, 1))));
    CHECK_THROWS_AS(act(standard_cube(1, 1), 0, CubeOperator::degeneracy(2, 1)), TruncationError);
}

TEST_CASE("degeneracy detection", "[cset]") {
    const CubicalSet line = standard_cube(1, D);
    const int v = 0;
    const int dv = line.up[1][0][v];
    const auto w = is_degenerate(line, 1, dv);
    REQUIRE(w);
    CHECK(w->base == v);
    CHECK(w->op == CubeOperator::degeneracy(1, 1));
    CHECK_FALSE(is_degenerate(standard_cube(2, D), 2, top_cell(2, D)));
}

TEST_CASE("standard objects", "[cset]") {
    CHECK(nondegenerate_counts(standard_cube(2, D)) == std::vector<int>{4, 4, 1, 0});
    CHECK(nondegenerate_counts(open_box(2, 1, 0, D)) == std::vector<int>{4, 3, 0, 0});
    CHECK(nondegenerate_counts(boundary(2, D)) == std::vector<int>{4, 4, 0, 0});
    CHECK(inner_open_box(2, 1, 0, D).object->count(0) == 3);
    for (int n = 0; n <= 3; ++n) CHECK(validate(standard_cube(n, D)).empty());
    CHECK_THROWS_AS(open_box(2, 3, 0, D), ConstructionError);
}

TEST_CASE("Yoneda: maps out of a cube are its cells", "[cset][property]") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const CubicalSet x = random_cset(rng, D);
        CHECK(validate(x).empty());
        for (int n = 0; n <= 2; ++n) CHECK(count_maps(standard_cube(n, D), x) == std::uint64_t(x.count(n)));
    }
}

TEST_CASE("geometric product", "[cset]") {
    CHECK(iso(*geometric_product(standard_cube(1, D), standard_cube(1, D)).object, standard_cube(2, D)));
    CHECK(geometric_product(empty_set<CubicalShape>(D), standard_cube(2, D)).object->total() == 0);

    const CubicalSet line = standard_cube(1, D);
    const Product p = geometric_product(line, line);
    const int e = top_cell(1, D);
    const int ee = p.cube(1, e, 1, e);
    const int e0 = line.down[1][CubicalShape::face_index(1, 0)][e];
    CHECK(p.object->down[2][CubicalShape::face_index(2, 0)][ee] == p.cube(1, e, 0, e0));
    CHECK(validate(*p.object).empty());
}

TEST_CASE("product cell counts", "[cset][property]") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const CubicalSet a = random_cset(rng, D), b = random_cset(rng, D);
        const auto ab = geometric_product(a, b).object;
        const auto ba = geometric_product(b, a).object;
        CHECK(validate(*ab).empty());
        CHECK(ab->counts == ba->counts);
        CHECK(ab->count(0) == a.count(0) * b.count(0));
    }
}

TEST_CASE("colimits", "[cset]") {
    // Wedge of two intervals.
    const CSetPtr line = share(standard_cube(1, D));
    const CSetPtr sum = coproduct<CubicalShape>({line, line}).object;
    const auto wedge = quotient(sum, {{0, 1, 2}});
    CHECK(nondegenerate_counts(*wedge.object) == std::vector<int>{3, 2, 0, 0});

    // Collapse the edge x1 = 1 of the square.
    const CSetPtr sq = share(standard_cube(2, D));
    const int edge = sq->down[2][CubicalShape::face_index(1, 1)][top_cell(2, D)];
    const int dv = sq->up[1][0][sq->down[1][0][edge]];
    const auto q = quotient(sq, {{1, edge, dv}});
    CHECK(nondegenerate_counts(*q.object) == std::vector<int>{3, 3, 1, 0});
    CHECK(validate(*q.object).empty());

    // Pushout along an isomorphism.
    const CSetMorphism inc = open_box_inclusion(2, 1, 0, D);
    const auto po = pushout(identity_morphism(inc.source), inc);
    CHECK(iso(*po.object, *inc.target));
}

TEST_CASE("limits", "[cset]") {
    const CSetMorphism b = boundary_inclusion(2, D);
    const CSetMorphism o = open_box_inclusion(2, 1, 0, D);
    CHECK(iso(*pullback(b, o).object, *o.source));
    const CSetPtr x = share(boundary(2, D));
    CHECK(iso(*pullback(identity_morphism(x), identity_morphism(x)).object, *x));
}

TEST_CASE("isomorphism search", "[cset]") {
    CHECK_FALSE(find_isomorphism(standard_cube(2, D), boundary(2, D)));
    const CubicalSet x = boundary(2, D);
    const auto m = find_isomorphism(x, x);
    REQUIRE(m);
    CHECK(is_morphism(*m));
    CHECK(is_injective(*m));
    // Rotating the boundary square is an automorphism; the identity is not the only one.
    CHECK(count_maps(x, x, [] {
              MapSearchOptions o;
              o.injective = true;
              return o;
          }()) > 1);
}
