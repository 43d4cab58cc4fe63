#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "support.hpp"

using namespace cubical;
using namespace samples;

namespace fs = std::filesystem;

namespace {

constexpr int D = 3;

const fs::path fixtures{FIXTURE_DIR};

std::string parse_message(const std::function<void()>& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("fixtures round-trip byte for byte", "[cli_io]") {
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(fixtures)) {
        if (entry.path().extension() != ".json") continue;
        INFO(entry.path().string());
        CHECK(serialize(load(entry.path())) == read_file(entry.path().string()));
        ++seen;
    }
    CHECK(seen >= 10);
}

TEST_CASE("the square fixture is the standard square", "[cli_io]") {
    CHECK(decode_cset(load(fixtures / "square.cset.json")) == standard_cube(2, D));
    CHECK(decode_cset(load(fixtures / "boundary-square.cset.json")) == boundary(2, D));
}

TEST_CASE("references resolve relative to the document", "[cli_io]") {
    const CSetMorphism m = decode_morphism(load(fixtures / "interval-over-point.morphism.json"));
    CHECK(*m.source == standard_cube(1, D));
    CHECK(*m.target == point(D));
    CHECK(is_morphism(m));

    const CSetDiagram f = decode_diagram(load(fixtures / "cospan.diagram.json"));
    CHECK(f.base == free_cospan());
    CHECK(f.values[0]->count(0) == 2);
}

TEST_CASE("encode and decode are inverse", "[cli_io][property]") {
    for (const auto& x : {point(D), standard_cube(2, D), open_box(3, 2, 0, D), *james(D).object}) {
        const Document doc = encode_cset(x);
        CHECK(decode_cset(parse_document(Json::parse(serialize(doc)), "mem")) == x);
    }
    const SimplicialSet s = simplex_boundary(2, D);
    CHECK(decode_sset(encode_sset(s)) == s);

    const MarkedCubicalSet mk = mark(MarkingKind::sharp, share(standard_cube(1, D)));
    const MarkedCubicalSet back = decode_marked(encode_marked(mk));
    CHECK(*back.set == *mk.set);
    CHECK(back.marked == mk.marked);

    for (const auto& c : {free_cospan(), walking_isomorphism(), contractible_groupoid(3)})
        CHECK(decode_category(encode_category(c)) == c);

    const CSetMorphism inc = open_box_inclusion(2, 1, 1, D);
    const CSetMorphism mb = decode_morphism(encode_morphism(inc));
    CHECK(mb.map == inc.map);
    CHECK(*mb.target == *inc.target);

    const CSetDiagram f = cospan_sample(D);
    const CSetDiagram fb = decode_diagram(encode_diagram(f));
    CHECK(fb.base == f.base);
    for (int a = 0; a < f.base.num_arrows(); ++a) CHECK(fb.arrow_maps[a].map == f.arrow_maps[a].map);
}

TEST_CASE("parse errors", "[cli_io]") {
    Json j = to_json(load(fixtures / "square.cset.json"));
    j["payload"]["levels"][1]["down"][2].erase(1);
    const std::string msg = parse_message([&] { decode_cset(parse_document(j, "square")); });
    CHECK(msg.find("cube 2") != std::string::npos);
    CHECK(msg.find("missing entry") != std::string::npos);
    CHECK(msg.find("operator") != std::string::npos);

    Json wrong = to_json(encode_cset(point(D)));
    wrong["schema"] = "bogus";
    CHECK_THROWS_AS(parse_document(wrong, "x"), ParseError);
    wrong["schema"] = "cset";
    wrong["version"] = 99;
    CHECK_THROWS_AS(parse_document(wrong, "x"), ParseError);

    Json dangling = to_json(load(fixtures / "interval-over-point.morphism.json"));
    dangling["payload"]["source"] = Json{{"$ref", "missing.cset.json"}};
    CHECK_THROWS_AS(decode_morphism(parse_document(dangling, "x", fixtures)), ParseError);

    // A marking that leaves a degenerate edge out.
    Json mk = to_json(encode_marked(mark(MarkingKind::flat, share(standard_cube(1, D)))));
    mk["payload"]["marked"] = Json::array();
    CHECK_THROWS_AS(decode_marked(parse_document(mk, "x")), ParseError);

    // A non-morphism: swap two vertex images of the identity on the interval.
    Json mo = to_json(encode_morphism(identity_morphism(share(standard_cube(1, D)))));
    mo["payload"]["map"][0] = Json::array({1, 0});
    CHECK_THROWS_AS(decode_morphism(parse_document(mo, "x")), ParseError);

    CHECK_THROWS_AS(load(fixtures / "no-such-file.json"), ParseError);
}
