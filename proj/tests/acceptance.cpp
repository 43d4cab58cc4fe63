// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "support.hpp"

using namespace cubical;
using namespace samples;

namespace {

constexpr int D = 3;

struct Verdict {
    bool pass = true;
    std::ostringstream note;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            note << "failed: " << what;
        }
    }
};

bool iso(const CubicalSet& a, const CubicalSet& b) { return find_isomorphism(a, b).has_value(); }

std::vector<std::pair<std::string, FiniteCategory>> five_categories() {
    return {{"[1]", chain_category(1)},
            {"[2]", chain_category(2)},
            {"cospan", free_cospan()},
            {"iso", walking_isomorphism()},
            {"groupoid2", contractible_groupoid(2)}};
}

void identity_suite(Verdict& v) {
    for (int n = 0; n <= 4; ++n) v.require(validate(standard_cube(n, 4)).empty(), "validate(cube " + std::to_string(n) + ")");
    const auto inst = cubical_identity_instances(4);
    for (const auto& i : inst)
        v.require(compose_word(i.lhs, i.source) == compose_word(i.rhs, i.source), describe(i));
    v.note << inst.size() << " identity instances";
}

void product_suite(Verdict& v) {
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; m + n <= 3; ++n)
            v.require(iso(*geometric_product(standard_cube(m, D), standard_cube(n, D)).object, standard_cube(m + n, D)),
                      "cube " + std::to_string(m) + " (x) cube " + std::to_string(n));
    const std::vector<CubicalSet> xs{point(D), standard_cube(1, D), boundary(2, D)};
    for (const auto& x : xs) {
        v.require(iso(*geometric_product(point(D), x).object, x), "left unit");
        v.require(iso(*geometric_product(x, point(D)).object, x), "right unit");
    }
    int triples = 0;
    for (const auto& a : xs)
        for (const auto& b : xs)
            for (const auto& c : xs) {
                const auto ab = geometric_product(a, b);
                const auto bc = geometric_product(b, c);
                v.require(iso(*geometric_product(*ab.object, c).object, *geometric_product(a, *bc.object).object),
                          "associativity");
                ++triples;
            }
    v.note << "units on 3 objects, associativity on " << triples << " triples";
}

void triangulation_suite(Verdict& v) {
    // Cubical inputs carry one extra dimension so the product keeps its top cube.
    const int in = D + 1;
    const std::vector<CubicalSet> xs{standard_cube(1, in), standard_cube(2, in), boundary(2, in)};
    int pairs = 0;
    for (const auto& a : xs)
        for (const auto& b : xs) {
            const auto tp = triangulate(*geometric_product(a, b).object, D);
            const auto prod = simplicial_product(*triangulate(a, D).object, *triangulate(b, D).object, D);
            v.require(find_isomorphism(*tp.object, prod).has_value(), "T(X (x) Y) vs T(X) x T(Y)");
            ++pairs;
        }
    v.note << pairs << " pairs";
}

void nerve_suite(Verdict& v) {
    for (const auto& [name, c] : five_categories()) {
        const Nerve nv = nerve(c, D);
        const HomotopyCategory h = homotopy_category(*nv.object);
        v.require(h.exact, name + " saturation exact");
        v.require(is_isomorphism(h.category, c, homotopy_counit(nv, h)), name + " counit");
    }
    v.note << "5 categories";
}

void equivalence_suite(Verdict& v) {
    int edges = 0;
    for (const auto& [name, c] : five_categories()) {
        const Nerve nv = nerve(c, D);
        for (int e = 0; e < nv.object->count(1); ++e) {
            const bool a = is_equivalence_edge(*nv.object, e, EquivalenceMethod::homotopy_category).equivalence;
            const bool b = is_equivalence_edge(*nv.object, e, EquivalenceMethod::k_factorization).equivalence;
            const bool c2 = is_equivalence_edge(*nv.object, e, EquivalenceMethod::e1_factorization).equivalence;
            v.require(a == b && b == c2, name + " edge " + std::to_string(e));
            ++edges;
        }
    }
    v.note << edges << " edges";
}

void q_suite(Verdict& v) {
    v.require(iso(*q_object(1, D).object, standard_cube(1, D)), "Q[1] iso cube 1");
    const auto nd = nondegenerate_counts(*q_object(2, D).object);
    v.require(nd[0] == 3 && nd[1] == 3 && nd[2] == 1 && nd[3] == 0, "Q[2] nondegenerate counts");
    const auto sq = int_simplicial(standard_cube(2, D));
    v.require(find_isomorphism(*sq.object, *triangulate(boundary(2, D)).object).has_value(), "∫ cube 2 is a square boundary");
    int instances = 0;
    for (const auto& x : {standard_cube(1, D), boundary(2, D), standard_cube(2, D)})
        for (const auto& s : {standard_simplex(1, D), simplex_boundary(2, D), standard_simplex(2, D)}) {
            v.require(count_maps(*triangulate(x).object, s) == count_maps(x, *cubify(s).object), "T -| U counts");
            v.require(count_maps(*q_extend(s, D), x) == count_maps(s, *int_simplicial(x).object), "Q -| ∫ counts");
            instances += 2;
        }
    v.note << instances << " hom-count comparisons";
}

void adjunction_suite(Verdict& v) {
    int runs = 0;
    for (int cn : {1, 2}) {
        const FiniteCategory c = chain_category(cn);
        const Nerve base = nerve(c, D);
        const std::vector<CSetDiagram> fs{constant_diagram(c, pt(D)), two_or_one(c, D, [](int o) { return o == 0; })};
        for (int n = 0; n <= 2; ++n) {
            const CSetMorphism p = yoneda_map(base.object, n, some_cube(*base.object, n));
            for (const auto& f : fs) {
                const AdjunctionReport r = check_adjunction(p, base, f);
                v.require(r.pass(), "C=[" + std::to_string(cn) + "] X=cube " + std::to_string(n));
                ++runs;
            }
        }
    }
    v.note << runs << " instances";
}

void grothendieck_suite(Verdict& v) {
    for (const auto& g : {collapse_sample(), pick_sample()}) {
        const Nerve total = nerve(grothendieck_cat(g).category, D);
        v.require(iso(*total.object, *int_construction(nerve_diagram(g, D)).object), "N(∫G) vs ∫NG");
    }
    v.note << "2 diagrams";
}

void fibration_suite(Verdict& v) {
    const E1Set e1 = special_e1(D);
    const CSetMorphism pe = to_point(e1.nerve.object);
    v.require(check_rlp(pe, generator_family(FamilyKind::open_box, D, D)).pass, "E[1] -> point open boxes");
    const CSetPtr interval = share(standard_cube(1, D));
    const CSetMorphism pi = to_point(interval);
    const RlpReport left = check_rlp(pi, generator_family(FamilyKind::left_open_box, D, D));
    v.require(!left.pass && left.witness.has_value() && is_morphism(left.witness->b), "interval fails a left box");
    const IntConstruction ic = int_construction(nerve_diagram(groupoid_sample(), D));
    v.require(check_left_fibration(ic.projection).pass, "∫ of a groupoid diagram is a left fibration");

    // Marked recognition: both methods on every suite instance.
    const auto gf = grothendieck_fibration(discrete_sample(), D);
    struct Instance {
        CSetMorphism p;
        MarkedCubicalSet x, y;
    };
    const std::vector<Instance> suite{
        {pe, mark(MarkingKind::natural, e1.nerve.object), mark(MarkingKind::sharp, pe.target)},
        {pe, mark(MarkingKind::flat, e1.nerve.object), mark(MarkingKind::sharp, pe.target)},
        {pi, mark(MarkingKind::flat, interval), mark(MarkingKind::sharp, pi.target)},
        {pi, mark(MarkingKind::sharp, interval), mark(MarkingKind::sharp, pi.target)},
        {gf.p, mark(MarkingKind::sharp, gf.total.object), mark(MarkingKind::sharp, gf.base.object)},
        {gf.p, mark(MarkingKind::flat, gf.total.object), mark(MarkingKind::flat, gf.base.object)},
    };
    int agree = 0;
    for (const auto& s : suite) {
        const bool a = is_marked_left_fibration(s.p, s.x, s.y, RecognitionMethod::lifting).result;
        const bool b = is_marked_left_fibration(s.p, s.x, s.y, RecognitionMethod::characterization).result;
        v.require(a == b, "marked recognition methods disagree");
        agree += a == b;
    }
    v.note << "left box witness " << left.failing_member << ", marked methods agree on " << agree << "/" << suite.size();
}

void cocartesian_suite(Verdict& v) {
    const E1Set e1 = special_e1(D);
    const auto gf = grothendieck_fibration(discrete_sample(), D);
    const IntConstruction ic = int_construction(nerve_diagram(groupoid_sample(), D));
    const std::vector<CSetMorphism> fibs{to_point(e1.nerve.object), gf.p, ic.projection};
    int edges = 0;
    for (const auto& p : fibs) {
        const EdgeMarking coc = cocartesian_edges(p, D);
        v.require(coc == shadow_equivalence_edges(p, coc), "cocartesian vs shadow equivalences");
        v.require(!four_of_three_violation(*p.source, coc).has_value(), "four out of three");
        edges += int(coc.size());
    }
    const PushoutProduct pp = pushout_product(boundary_inclusion(1, D), open_box_inclusion(2, 1, 1, D));
    v.require(is_injective(pp.map) && is_morphism(pp.map), "pushout product is a mono");
    v.require(iso(*pp.object, open_box(3, 2, 1, D)), "pushout product is a left open box");
    v.note << edges << " edges over 3 fibrations";
}

void bousfield_kan_suite(Verdict& v) {
    const CSetDiagram f = cospan_sample(D);
    const CSetPtr w = hocolim_weighted(f, D);
    const CSetPtr b = hocolim_bar(f, D);
    for (const auto& x : {w, b}) {
        const Homology h = cubical_set_homology(*x);
        v.require(h.valid_through >= 2 && h.groups[0].is_z() && h.groups[1].is_z() && h.groups[2].is_zero(),
                  "homology (Z, Z, 0)");
    }
    v.require(iso(*w, *b), "weighted vs bar");
    v.note << "H = (Z, Z, 0) both ways, outputs isomorphic";
}

void james_suite(Verdict& v) {
    const JamesSet j = james(5);
    const auto& x = *j.object;
    v.require(x.count(0) == 1 && x.count(1) == 2 && x.count(2) == 6, "counts 1, 2, 6");
    for (int k = 0; k <= 5; ++k) v.require(count_nondegenerate(x, k) == 1, "one nondegenerate cube in dimension " + std::to_string(k));
    const Homology h = cubical_set_homology(x);
    for (int k = 0; k <= 3; ++k) v.require(h.valid_through >= k && h.groups[k].is_z(), "H_" + std::to_string(k) + " = Z");
    v.require(iso(*fat_realization(terminal_object(D, D), D), *james(D).object), "fat realization of the terminal object");
    v.require(iso(*realization(terminal_object(D, D), D), point(D)), "ordinary realization is a point");
    v.note << "H_0..H_3 = Z";
}

void homology_suite(Verdict& v) {
    std::vector<std::pair<std::string, CubicalSet>> inputs{{"square", standard_cube(2, D)},
                                                           {"square boundary", boundary(2, D)},
                                                           {"open box", open_box(2, 1, 0, D)},
                                                           {"cospan hocolim", *hocolim_bar(cospan_sample(D), D)},
                                                           {"james(4)", *james(4).object}};
    for (const auto& [name, x] : inputs) {
        const ChainComplex cc = chains_cubical(x);
        const ChainComplex cs = chains_simplicial(*triangulate(x).object);
        v.require(!boundary_squared_failure(cc) && !boundary_squared_failure(cs), name + " boundary squared");
        v.require(cubical_set_homology(x, HomologyPipeline::cubical) == cubical_set_homology(x), name + " pipelines agree");
    }
    v.note << inputs.size() << " inputs";
}

void determinism_suite(Verdict& v) {
    const std::string fx = FIXTURE_DIR;
    const std::string cli = CLI_PATH;
    const std::vector<std::string> runs{
        "homology " + fx + "/square.cset.json",
        "iso " + fx + "/p1xp1.cset.json " + fx + "/square.cset.json",
        "check --family left-open-box --max-dim 2 " + fx + "/interval-over-point.morphism.json",
        "hocolim --method weighted " + fx + "/cospan.diagram.json",
        "grothendieck " + fx + "/two-to-one.diagram.json",
    };
    int i = 0;
    for (const auto& r : runs) {
        std::string out[2];
        for (int t = 0; t < 2; ++t) {
            const std::string file =
                (std::filesystem::temp_directory_path() /
                 ("cubical_acceptance_" + std::to_string(i) + "_" + std::to_string(t) + ".json"))
                    .string();
            std::filesystem::remove(file);
            const int code = std::system((cli + " " + r + " -o " + file).c_str());
            v.require(code != -1 && WEXITSTATUS(code) <= 1, "cli exit for: " + r);
            out[t] = read_file(file);
        }
        v.require(!out[0].empty() && out[0] == out[1], "byte-identical: " + r);
        ++i;
    }
    v.note << i << " commands run twice";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
        {"identity suite", identity_suite},
        {"product suite", product_suite},
        {"triangulation monoidality", triangulation_suite},
        {"nerve and homotopy category", nerve_suite},
        {"equivalence coherence", equivalence_suite},
        {"Q and ∫", q_suite},
        {"Rect/∫ adjunction", adjunction_suite},
        {"Grothendieck comparison", grothendieck_suite},
        {"fibrations", fibration_suite},
        {"cocartesian coherence", cocartesian_suite},
        {"Bousfield-Kan numerics", bousfield_kan_suite},
        {"James numerics", james_suite},
        {"homology cross-check", homology_suite},
        {"CLI determinism", determinism_suite},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.note << " exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !v.pass;
        std::cout << (v.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " (" << v.note.str()
                  << "; " << std::fixed << std::setprecision(2) << secs << " s)" << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
}
