// Command-line front end. Every command prints one report document.
// Exit codes: 0 pass, 1 certified failure, 2 usage or input error, 3 resource limit.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cubical.hpp"

using namespace cubical;

namespace {

struct Settings {
    int max_dim = 3;
    std::size_t cell_cap = kDefaultNodeCap;
    std::string output;
};

struct Outcome {
    bool pass = true;
    Json report;
};

Json counts_json(const CubicalSet& x) {
    return Json{{"counts", x.counts}, {"nondegenerate", nondegenerate_counts(x)}};
}

Json homology_json(const Homology& h) {
    Json groups = Json::array();
    for (const auto& g : h.groups) groups.push_back(g.str());
    return Json{{"groups", groups}, {"valid_through", h.valid_through}};
}

CubicalSet load_cset(const std::string& path) { return decode_cset(load(path)); }

// A cset or the underlying set of a marked-cset.
MarkedCubicalSet load_maybe_marked(const std::string& path) {
    const Document doc = load(path);
    if (doc.schema == "marked-cset") return decode_marked(doc);
    const auto x = share(decode_cset(doc));
    return mark(MarkingKind::flat, x);
}

// The nerve of C at the truncation of `target`, which must match it exactly.
Nerve matching_nerve(const FiniteCategory& c, const CubicalSet& target, std::size_t cap) {
    Nerve nv = nerve(c, target.dim, cap);
    if (!(*nv.object == target)) throw PreconditionError("morphism target is not the nerve of the given category");
    return nv;
}

Outcome run_validate(const std::string& path) {
    const Document doc = load(path);
    std::vector<std::string> problems;
    if (doc.schema == "cset" || doc.schema == "marked-cset") {
        const MarkedCubicalSet m = doc.schema == "cset" ? mark(MarkingKind::flat, share(decode_cset(doc))) : decode_marked(doc);
        for (const auto& v : validate(*m.set))
            problems.push_back(v.identity + " on cube " + std::to_string(v.cube) + " of dimension " + std::to_string(v.dim));
    } else if (doc.schema == "sset") {
        problems = validate(decode_sset(doc));
    } else if (doc.schema == "category") {
        decode_category(doc);
    } else if (doc.schema == "diagram") {
        try {
            require_cset_diagram(decode_diagram(doc));
        } catch (const ConstructionError& e) {
            problems.push_back(e.what());
        }
    } else if (doc.schema == "morphism") {
        if (!is_morphism(decode_morphism(doc))) problems.push_back("map does not commute with the operators");
    } else {
        for (const char* key : {"command", "status"})
            if (!doc.payload.contains(key)) problems.push_back(std::string("report lacks \"") + key + "\"");
    }
    return {problems.empty(), Json{{"schema_checked", doc.schema}, {"problems", problems}}};
}

Outcome run_check(const std::string& path, const std::string& family, const Settings& s, const std::string& ms,
                  const std::string& mt) {
    const CSetMorphism p = decode_morphism(load(path));
    const FamilyKind kind = parse_family(family);
    const int d = std::min(p.source->dim, p.target->dim);
    EdgeMarking mx, my;
    if (kind == FamilyKind::marked_left) {
        mx = ms.empty() ? mark(MarkingKind::flat, p.source).marked : load_maybe_marked(ms).marked;
        my = mt.empty() ? mark(MarkingKind::sharp, p.target).marked : load_maybe_marked(mt).marked;
        if (int(mx.size()) != p.source->count(1) || int(my.size()) != p.target->count(1))
            throw PreconditionError("markings do not match the morphism");
    }
    const RlpReport rep = check_rlp(p, generator_family(kind, s.max_dim, d), mx, my, s.cell_cap);
    Json j{{"family", family_name(kind)},
           {"max_dim", s.max_dim},
           {"members", rep.members},
           {"squares", rep.squares},
           {"lifts", rep.pass}};
    if (!rep.pass) {
        j["failing_member"] = rep.failing_member;
        j["witness"] = Json{{"top", rep.witness->b.map}, {"box", rep.witness->f.map}};
    }
    return {rep.pass, j};
}

Outcome run_homology(const std::string& path, const std::string& pipeline) {
    const CubicalSet x = load_cset(path);
    Json j{{"pipeline", pipeline}};
    if (pipeline == "both") {
        const Homology hs = cubical_set_homology(x, HomologyPipeline::simplicial);
        const Homology hc = cubical_set_homology(x, HomologyPipeline::cubical);
        j["simplicial"] = homology_json(hs);
        j["cubical"] = homology_json(hc);
        j["agree"] = hs == hc;
        return {hs == hc, j};
    }
    if (pipeline != "simplicial" && pipeline != "cubical") throw CLI::ValidationError("--pipeline", "unknown pipeline");
    j["homology"] = homology_json(
        cubical_set_homology(x, pipeline == "cubical" ? HomologyPipeline::cubical : HomologyPipeline::simplicial));
    return {true, j};
}

Outcome run_iso(const std::string& a, const std::string& b, const Settings& s) {
    const MarkedCubicalSet x = load_maybe_marked(a);
    const MarkedCubicalSet y = load_maybe_marked(b);
    if (x.set->dim != y.set->dim) return {false, Json{{"isomorphic", false}, {"reason", "different truncations"}}};
    const auto iso = find_marked_isomorphism(x, y, s.cell_cap);
    Json j{{"isomorphic", iso.has_value()}};
    if (iso) j["witness"] = *iso;
    return {iso.has_value(), j};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite cubical sets: constructions, lifting checks, homotopy colimits, homology"};
    app.require_subcommand(1);
    Settings s;
    app.add_option("--max-dim", s.max_dim, "Truncation dimension (or family dimension for check)")->check(CLI::Range(0, 9));
    app.add_option("--cell-cap", s.cell_cap, "Search node cap");
    app.add_option("-o,--output", s.output, "Write the report here instead of stdout");

    std::string command;
    std::string a, b, family, kind = "natural", method = "bar", pipeline = "simplicial", category, ms, mt;
    int james_dim = 3;

    auto sub = [&](const std::string& name, const std::string& help) {
        CLI::App* c = app.add_subcommand(name, help);
        c->fallthrough();
        c->callback([&command, name] { command = name; });
        return c;
    };

    auto* c_validate = sub("validate", "Check a document against its schema and identities");
    c_validate->add_option("file", a)->required();
    auto* c_product = sub("product", "Geometric product of two cubical sets");
    c_product->add_option("left", a)->required();
    c_product->add_option("right", b)->required();
    auto* c_tri = sub("triangulate", "Triangulation of a cubical set");
    c_tri->add_option("file", a)->required();
    auto* c_cub = sub("cubify", "Cubification of a simplicial set");
    c_cub->add_option("file", a)->required();
    auto* c_nerve = sub("nerve", "Cubical nerve of a finite category");
    c_nerve->add_option("file", a)->required();
    auto* c_ho = sub("ho", "Homotopy category of a cubical set");
    c_ho->add_option("file", a)->required();
    auto* c_mark = sub("mark", "Flat, sharp or natural marking");
    c_mark->add_option("file", a)->required();
    c_mark->add_option("--kind", kind)->check(CLI::IsMember({"flat", "sharp", "natural"}));
    auto* c_check = sub("check", "Right lifting property against a generator family");
    c_check->add_option("file", a)->required();
    c_check->add_option("--family", family)
        ->required()
        ->check(CLI::IsMember({"boundary", "open-box", "left-open-box", "inner-box", "left-anodyne", "ml"}));
    c_check->add_option("--marked-source", ms, "marked-cset for the source (ml only; default flat)");
    c_check->add_option("--marked-target", mt, "marked-cset for the target (ml only; default sharp)");
    auto* c_coc = sub("cocartesian-edges", "Cocartesian edges of a map");
    c_coc->add_option("file", a)->required();
    auto* c_int = sub("grothendieck", "Grothendieck construction of a diagram");
    c_int->add_option("file", a)->required();
    auto* c_rect = sub("rectify", "Rectification of a map into a nerve");
    c_rect->add_option("file", a)->required();
    c_rect->add_option("--category", category)->required();
    auto* c_adj = sub("adjunction-check", "Exhaustive check of Rect -| Grothendieck on one instance");
    c_adj->add_option("morphism", a)->required();
    c_adj->add_option("diagram", b)->required();
    auto* c_hocolim = sub("hocolim", "Homotopy colimit of a diagram");
    c_hocolim->add_option("file", a)->required();
    c_hocolim->add_option("--method", method)->check(CLI::IsMember({"bar", "weighted", "fat"}));
    auto* c_james = sub("james", "The James cubical set");
    c_james->add_option("--dim", james_dim)->check(CLI::Range(0, 6));
    auto* c_hom = sub("homology", "Integer homology");
    c_hom->add_option("file", a)->required();
    c_hom->add_option("--pipeline", pipeline)->check(CLI::IsMember({"simplicial", "cubical", "both"}));
    auto* c_iso = sub("iso", "Isomorphism search");
    c_iso->add_option("left", a)->required();
    c_iso->add_option("right", b)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    auto product = [&] {
        const Product p = geometric_product(load_cset(a), load_cset(b));
        return Outcome{true, Json{{"result", to_json(encode_cset(*p.object))}, {"summary", counts_json(*p.object)}}};
    };
    auto triangulate_cmd = [&] {
        const CubicalSet x = load_cset(a);
        const Triangulation t = triangulate(x);
        return Outcome{true, Json{{"result", to_json(encode_sset(*t.object))},
                                  {"nondegenerate", nondegenerate_counts(*t.object)}}};
    };
    auto cubify_cmd = [&] {
        const SimplicialSet sx = decode_sset(load(a));
        const Cubification u = cubify(sx, std::min(s.max_dim, sx.dim), s.cell_cap);
        return Outcome{true, Json{{"result", to_json(encode_cset(*u.object))}, {"summary", counts_json(*u.object)}}};
    };
    auto nerve_cmd = [&] {
        const Nerve nv = nerve(decode_category(load(a)), s.max_dim, s.cell_cap);
        return Outcome{true, Json{{"result", to_json(encode_cset(*nv.object))}, {"summary", counts_json(*nv.object)}}};
    };
    auto ho_cmd = [&] {
        const HomotopyCategory h = homotopy_category(load_cset(a));
        return Outcome{true, Json{{"result", to_json(encode_category(h.category))},
                                     {"exact", h.exact},
                                     {"bound", h.bound},
                                     {"edge_class", h.edge_class}}};
    };
    auto mark_cmd = [&] {
        const auto x = share(load_cset(a));
        const MarkingKind k = kind == "flat" ? MarkingKind::flat : kind == "sharp" ? MarkingKind::sharp : MarkingKind::natural;
        const MarkedCubicalSet m = mark(k, x);
        return Outcome{true, Json{{"result", to_json(encode_marked(m))}, {"exact", m.exact}, {"marked", m.num_marked()}}};
    };
    auto coc_cmd = [&] {
        const CSetMorphism p = decode_morphism(load(a));
        const EdgeMarking coc = cocartesian_edges(p, std::min(s.max_dim, p.source->dim), s.cell_cap);
        std::vector<int> edges;
        for (int e = 0; e < int(coc.size()); ++e)
            if (coc[e]) edges.push_back(e);
        return Outcome{true, Json{{"cocartesian", edges}, {"edges", coc.size()}}};
    };
    auto int_cmd = [&] {
        const CSetDiagram f = decode_diagram(load(a));
        const IntConstruction ic = int_construction(f, std::min(s.max_dim, diagram_dim(f)), s.cell_cap);
        return Outcome{true, Json{{"result", to_json(encode_cset(*ic.object))},
                                  {"projection", to_json(encode_morphism(ic.projection))},
                                  {"summary", counts_json(*ic.object)}}};
    };
    auto rect_cmd = [&] {
        const CSetMorphism p = decode_morphism(load(a));
        const Nerve base = matching_nerve(decode_category(load(category)), *p.target, s.cell_cap);
        const Rectification r = rectify(p, base);
        return Outcome{true, Json{{"result", to_json(encode_diagram(r.diagram))}}};
    };
    auto adj_cmd = [&] {
        const CSetMorphism p = decode_morphism(load(a));
        const CSetDiagram f = decode_diagram(load(b));
        const Nerve base = matching_nerve(f.base, *p.target, s.cell_cap);
        const AdjunctionReport r = check_adjunction(p, base, f, s.cell_cap);
        return Outcome{r.pass(), Json{{"left_count", r.left_count},
                                      {"right_count", r.right_count},
                                      {"transpose_bijective", r.transpose_bijective},
                                      {"triangle_left", r.triangle_left},
                                      {"triangle_right", r.triangle_right},
                                      {"unit_over_base", r.unit_over_base}}};
    };
    auto hocolim_cmd = [&] {
        const CSetDiagram f = decode_diagram(load(a));
        const int d = std::min(s.max_dim, diagram_dim(f));
        CSetPtr out;
        if (method == "bar") out = hocolim_bar(f, d);
        else if (method == "weighted") out = hocolim_weighted(f, d);
        else out = fat_realization(bar_construction(f, d).object, d);
        return Outcome{true, Json{{"method", method},
                                  {"result", to_json(encode_cset(*out))},
                                  {"summary", counts_json(*out)},
                                  {"homology", homology_json(cubical_set_homology(*out))}}};
    };
    auto james_cmd = [&] {
        const JamesSet j = james(james_dim);
        return Outcome{true, Json{{"result", to_json(encode_cset(*j.object))}, {"summary", counts_json(*j.object)}}};
    };

    const std::map<std::string, std::function<Outcome()>> table{
        {"validate", [&] { return run_validate(a); }},
        {"product", product},
        {"triangulate", triangulate_cmd},
        {"cubify", cubify_cmd},
        {"nerve", nerve_cmd},
        {"ho", ho_cmd},
        {"mark", mark_cmd},
        {"check", [&] { return run_check(a, family, s, ms, mt); }},
        {"cocartesian-edges", coc_cmd},
        {"grothendieck", int_cmd},
        {"rectify", rect_cmd},
        {"adjunction-check", adj_cmd},
        {"hocolim", hocolim_cmd},
        {"james", james_cmd},
        {"homology", [&] { return run_homology(a, pipeline); }},
        {"iso", [&] { return run_iso(a, b, s); }},
    };

    try {
        Outcome out = table.at(command)();
        Json payload = std::move(out.report);
        payload["command"] = command;
        payload["status"] = out.pass ? "pass" : "fail";
        const Document doc = make_document("report", std::move(payload));
        if (s.output.empty()) std::cout << serialize(doc);
        else save(doc, s.output);
        return out.pass ? 0 : 1;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const UndecidedError& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return 3;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
