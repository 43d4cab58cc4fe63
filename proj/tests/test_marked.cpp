#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace cubical;
using namespace samples;

namespace {

constexpr int D = 3;

int nondegenerate_marked(const MarkedCubicalSet& m) {
    const auto deg = degenerate_flags(*m.set);
    int c = 0;
    for (int e = 0; e < m.set->count(1); ++e) c += m.marked[e] && !deg[1][e];
    return c;
}

}  // namespace

TEST_CASE("flat, sharp and natural markings", "[marked]") {
    const CSetPtr line = share(standard_cube(1, D));
    CHECK(mark(MarkingKind::flat, line).num_marked() == 2);
    CHECK(mark(MarkingKind::sharp, line).num_marked() == 3);
    CHECK_THROWS_AS(mark(MarkingKind::natural, line), PreconditionError);

    const Nerve iso = nerve(walking_isomorphism(), D);
    const MarkedCubicalSet nat = mark(MarkingKind::natural, iso.object);
    CHECK(nat.num_marked() == iso.object->count(1));
    CHECK(nat.exact);
}

TEST_CASE("markings must contain degenerate edges", "[marked]") {
    const CubicalSet line = standard_cube(1, D);
    EdgeMarking m(line.count(1), 0);
    CHECK_FALSE(is_valid_marking(line, m));
    CHECK(is_valid_marking(line, degenerate_edges(line)));
}

TEST_CASE("marked product", "[marked]") {
    const CSetPtr line = share(standard_cube(1, D));
    const auto sf = marked_product(mark(MarkingKind::sharp, line), mark(MarkingKind::flat, line));
    CHECK(nondegenerate_marked(sf.object) == 2);

    const auto ff = marked_product(mark(MarkingKind::flat, line), mark(MarkingKind::flat, line));
    CHECK(ff.object.marked == degenerate_edges(*ff.object.set));

    const MarkedCubicalSet x = mark(MarkingKind::sharp, share(boundary(2, D)));
    const auto unit = marked_product(x, mark(MarkingKind::sharp, pt(D)));
    CHECK(find_marked_isomorphism(unit.object, x).has_value());
}

TEST_CASE("marked maps respect markings", "[marked][property]") {
    const CSetPtr line = share(standard_cube(1, D));
    const auto flat = mark(MarkingKind::flat, line), sharp = mark(MarkingKind::sharp, line);
    // sharp -> flat must send the nondegenerate edge to a degenerate one.
    CHECK(count_marked_maps(sharp, flat) == 2);
    CHECK(count_marked_maps(flat, sharp) == count_maps(*line, *line));
    CHECK(count_marked_maps(flat, flat) == count_maps(*line, *line));
}
