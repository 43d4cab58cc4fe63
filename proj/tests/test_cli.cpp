#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

#include "support.hpp"

using namespace cubical;
using namespace samples;

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    Json report;
};

Run run(const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("cubical_cli_test_" + std::to_string(counter++) + ".json");
    fs::remove(out);
    const std::string cmd = std::string(CLI_PATH) + " " + args + " -o " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (fs::exists(out)) r.report = to_json(load(out));
    return r;
}

std::string fx(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("homology command", "[cli_io]") {
    const Run r = run("homology " + fx("square.cset.json"));
    REQUIRE(r.code == 0);
    const Json& h = r.report["payload"]["homology"];
    CHECK(h["groups"][0] == "Z");
    for (std::size_t k = 1; k < h["groups"].size(); ++k) CHECK(h["groups"][k] == "0");
}

TEST_CASE("check command reports a witness box", "[cli_io]") {
    const Run r = run("check --family left-open-box --max-dim 2 " + fx("interval-over-point.morphism.json"));
    CHECK(r.code == 1);
    CHECK(r.report["payload"]["status"] == "fail");
    CHECK(r.report["payload"].contains("witness"));
}

TEST_CASE("iso command", "[cli_io]") {
    const Run r = run("iso " + fx("p1xp1.cset.json") + " " + fx("square.cset.json"));
    CHECK(r.code == 0);
    CHECK(r.report["payload"]["isomorphic"] == true);
    CHECK(run("iso " + fx("square.cset.json") + " " + fx("boundary-square.cset.json")).code == 1);
}

TEST_CASE("usage and parse errors exit with 2", "[cli_io]") {
    CHECK(run("").code == 2);
    CHECK(run("homology " + fx("no-such-file.json")).code == 2);
    CHECK(run("check --family nonsense " + fx("interval-over-point.morphism.json")).code == 2);
}

TEST_CASE("resource limits exit with 3", "[cli_io]") {
    CHECK(run("--cell-cap 1 iso " + fx("square.cset.json") + " " + fx("p1xp1.cset.json")).code == 3);
}

TEST_CASE("product and triangulate outputs load back", "[cli_io]") {
    const Run p = run("product " + fx("interval.cset.json") + " " + fx("interval.cset.json"));
    REQUIRE(p.code == 0);
    const CubicalSet sq = decode_cset(parse_document(p.report["payload"]["result"], "product"));
    CHECK(find_isomorphism(sq, standard_cube(2, 3)).has_value());
    const Run t = run("triangulate " + fx("square.cset.json"));
    REQUIRE(t.code == 0);
    const SimplicialSet ts = decode_sset(parse_document(t.report["payload"]["result"], "triangulate"));
    CHECK(nondegenerate_counts(ts) == std::vector<int>{4, 5, 2, 0});
}
