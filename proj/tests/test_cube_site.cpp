#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "support.hpp"

using namespace cubical;

namespace {

std::vector<Vertex> table_of(int m, std::function<Vertex(Vertex)> f) {
    std::vector<Vertex> t(std::size_t{1} << m);
    for (Vertex v = 0; v < t.size(); ++v) t[v] = f(v);
    return t;
}

// Monotone maps [1] -> [1]^n moving at most one coordinate.
std::size_t edge_oracle(int n) {
    std::size_t c = 0;
    for (Vertex a = 0; a < (Vertex{1} << n); ++a)
        for (Vertex b = 0; b < (Vertex{1} << n); ++b)
            if (bits::leq(a, b) && std::popcount(a ^ b) <= 1) ++c;
    return c;
}

// A random composable word of generators ending in [1]^target.
std::vector<CubeOperator> random_word(std::mt19937& rng, int source, int len, int max_dim) {
    std::vector<CubeOperator> word;  // applied right to left
    int cur = source;
    for (int t = 0; t < len; ++t) {
        std::vector<CubeOperator> options;
        if (cur + 1 <= max_dim)
            for (int i = 1; i <= cur + 1; ++i)
                for (int e = 0; e < 2; ++e) options.push_back(CubeOperator::face(cur + 1, i, e));
        for (int i = 1; i <= cur; ++i) options.push_back(CubeOperator::degeneracy(cur, i));
        for (int i = 1; i + 1 <= cur; ++i)
            for (int e = 0; e < 2; ++e) options.push_back(CubeOperator::connection(cur, i, e));
        if (options.empty()) break;
        const CubeOperator g = options[rng() % options.size()];
        word.insert(word.begin(), g);
        cur = g.target_dim();
    }
    return word;
}

}  // namespace

TEST_CASE("generator tables", "[cube_site]") {
    const CubeMap f = generator(CubeOperator::face(2, 1, 0));
    CHECK(f.source == 1);
    CHECK(f.target == 2);
    // (x) -> (0, x): coordinate 1 is bit 0.
    CHECK(f.table == std::vector<Vertex>{0b00, 0b10});

    const CubeMap g = generator(CubeOperator::connection(2, 1, 0));
    CHECK(g.table == table_of(2, [](Vertex v) { return Vertex(bits::get(v, 0) | bits::get(v, 1)); }));
    CHECK(g(0b01) == 1);

    const CubeMap pg = generator(CubeOperator::connection(2, 1, 1));
    CHECK(pg.table == table_of(2, [](Vertex v) { return Vertex(bits::get(v, 0) & bits::get(v, 1)); }));

    const CubeMap s = generator(CubeOperator::degeneracy(1, 1));
    CHECK(s.source == 1);
    CHECK(s.target == 0);
    CHECK(s.table == std::vector<Vertex>{0, 0});
}

TEST_CASE("invalid operators throw", "[cube_site]") {
    CHECK_THROWS_AS(generator(CubeOperator::face(2, 3, 0)), InvalidOperator);
    CHECK_THROWS_AS(generator(CubeOperator::face(2, 1, 2)), InvalidOperator);
    CHECK_THROWS_AS(generator(CubeOperator::connection(1, 1, 0)), InvalidOperator);
    CHECK_THROWS_AS(generator(CubeOperator::degeneracy(0, 1)), InvalidOperator);
}

TEST_CASE("composition", "[cube_site]") {
    const CubeMap id1 = identity_map(1);
    CHECK(compose(generator(CubeOperator::connection(2, 1, 0)), generator(CubeOperator::face(2, 1, 0))) == id1);
    CHECK(compose(generator(CubeOperator::degeneracy(2, 1)), generator(CubeOperator::face(2, 1, 0))) == id1);
    const CubeMap f = generator(CubeOperator::face(3, 2, 1));
    CHECK(compose(identity_map(3), f) == f);
    CHECK(compose(f, identity_map(2)) == f);
    CHECK_THROWS_AS(compose(f, f), CompositionError);
}

TEST_CASE("cubical identities hold on tables", "[cube_site]") {
    const auto inst = cubical_identity_instances(4);
    REQUIRE(!inst.empty());
    for (const auto& i : inst) {
        INFO(describe(i));
        CHECK(compose_word(i.lhs, i.source) == compose_word(i.rhs, i.source));
    }
}

TEST_CASE("factorize", "[cube_site]") {
    const CubeMap c0 = compose(generator(CubeOperator::face(1, 1, 0)), generator(CubeOperator::degeneracy(1, 1)));
    const Factorization fc = factorize(c0);
    CHECK(fc.face_word.size() == 1);
    CHECK(fc.face_word[0] == CubeOperator::face(1, 1, 0));
    CHECK(fc.surjective_part == generator(CubeOperator::degeneracy(1, 1)));

    const Factorization fi = factorize(identity_map(2));
    CHECK(fi.face_word.empty());
    CHECK(fi.surjective_part.is_identity());

    const CubeMap g = generator(CubeOperator::connection(2, 1, 0));
    const Factorization fg = factorize(g);
    CHECK(fg.face_word.empty());
    CHECK(fg.surjective_part == g);
}

TEST_CASE("factorization recomposes on random words", "[cube_site][property]") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const int src = int(rng() % 4);
        const auto word = random_word(rng, src, 1 + int(rng() % 6), 4);
        const CubeMap u = compose_word(word, src);
        const Factorization f = factorize(u);
        const CubeMap back = compose(compose_word(f.face_word, f.surjective_part.target), f.surjective_part);
        INFO(u.word_str());
        CHECK(back == u);
        CHECK(constant_coordinates(f.surjective_part).empty());
        CHECK(compose_word(canonical_word(u), u.source) == u);
        CHECK(u.is_monotone());
    }
}

TEST_CASE("enumerate maps", "[cube_site]") {
    CHECK(enumerate_maps(1, 1).size() == 3);
    CHECK(enumerate_maps(1, 2).size() == 8);
    for (int n = 0; n <= 4; ++n) {
        CHECK(enumerate_maps(0, n).size() == (std::size_t{1} << n));
        CHECK(enumerate_maps(1, n).size() == edge_oracle(n));
    }
}

TEST_CASE("enumerated maps are distinct and closed under generators", "[cube_site][property]") {
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) {
            const auto maps = enumerate_maps(m, n);
            std::set<std::vector<Vertex>> tables;
            for (const auto& u : maps) {
                CHECK(u.source == m);
                CHECK(u.target == n);
                CHECK(u.is_monotone());
                tables.insert(u.table);
            }
            CHECK(tables.size() == maps.size());
            if (n + 1 > 3) continue;
            std::set<std::vector<Vertex>> next;
            for (const auto& u : enumerate_maps(m, n + 1)) next.insert(u.table);
            for (const auto& u : maps)
                for (int i = 1; i <= n + 1; ++i)
                    for (int e = 0; e < 2; ++e)
                        CHECK(next.count(compose(generator(CubeOperator::face(n + 1, i, e)), u).table) == 1);
        }
}

TEST_CASE("surjections", "[cube_site]") {
    // Surjections out of [1]^k: 1, 2, 6 for k = 0, 1, 2.
    CHECK(enumerate_surjections(0).size() == 1);
    CHECK(enumerate_surjections(1).size() == 2);
    CHECK(enumerate_surjections(2).size() == 6);
    for (const auto& s : enumerate_surjections(3)) CHECK(constant_coordinates(s).empty());
}
