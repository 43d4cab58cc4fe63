#pragma once

// JSON documents: {"schema", "version", "payload"}. Nested objects are either
// full documents or {"$ref": "path"} resolved relative to the referring file.
// Keys come out sorted (nlohmann's default map), so dumps are deterministic.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cubical/grothendieck.hpp"
#include "cubical/marked.hpp"
#include "cubical/sset.hpp"

namespace cubical {

using Json = nlohmann::json;

inline constexpr int kDocumentVersion = 1;

inline const std::vector<std::string>& known_schemas() {
    static const std::vector<std::string> s{"cset", "marked-cset", "sset", "category", "diagram", "morphism", "report"};
    return s;
}

struct Document {
    std::string schema;
    int version = kDocumentVersion;
    Json payload;
    std::filesystem::path base_dir;  // for resolving "$ref"; not serialized
};

inline Json to_json(const Document& doc) {
    return Json{{"schema", doc.schema}, {"version", doc.version}, {"payload", doc.payload}};
}

inline std::string serialize(const Document& doc) { return to_json(doc).dump(2) + "\n"; }

inline Document parse_document(const Json& j, const std::string& where, std::filesystem::path base_dir = {}) {
    if (!j.is_object()) throw ParseError(where + ": document is not a JSON object");
    for (const char* key : {"schema", "version", "payload"})
        if (!j.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
    if (!j["schema"].is_string()) throw ParseError(where + ": schema is not a string");
    Document doc;
    doc.schema = j["schema"].get<std::string>();
    if (std::find(known_schemas().begin(), known_schemas().end(), doc.schema) == known_schemas().end())
        throw ParseError(where + ": unknown schema tag \"" + doc.schema + "\"");
    if (!j["version"].is_number_integer() || j["version"].get<int>() != kDocumentVersion)
        throw ParseError(where + ": unsupported version");
    doc.payload = j["payload"];
    doc.base_dir = std::move(base_dir);
    return doc;
}

inline Document load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return parse_document(j, path.string(), path.parent_path());
}

inline void save(const Document& doc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string() + ": cannot write");
    out << serialize(doc);
}

inline Document make_document(std::string schema, Json payload) {
    return Document{std::move(schema), kDocumentVersion, std::move(payload), {}};
}

namespace detail {

// A nested field: full document or {"$ref": path}.
inline Document resolve(const Json& node, const std::string& schema, const std::filesystem::path& base,
                        const std::string& where) {
    if (node.is_object() && node.contains("$ref")) {
        if (!node["$ref"].is_string()) throw ParseError(where + ": $ref is not a string");
        const auto path = base / node["$ref"].get<std::string>();
        if (!std::filesystem::exists(path)) throw ParseError(where + ": dangling reference " + path.string());
        Document d = load(path);
        if (d.schema != schema) throw ParseError(where + ": expected " + schema + ", reference has " + d.schema);
        return d;
    }
    Document d = parse_document(node, where, base);
    if (d.schema != schema) throw ParseError(where + ": expected " + schema + ", found " + d.schema);
    return d;
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
    return j[key];
}

inline int int_field(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
    return j.get<int>();
}

inline std::string op_name(const CubicalShape&, int k, bool up, int o) {
    return (up ? CubicalShape::up_operator(k, o) : CubicalShape::down_operator(k, o)).str();
}
inline std::string op_name(const SimplicialShape&, int, bool up, int o) {
    return (up ? "s_" : "d_") + std::to_string(o);
}

template <class Shape>
Json encode_graded(const GradedSet<Shape>& x) {
    Json levels = Json::array();
    for (int k = 0; k <= x.dim; ++k) {
        Json lvl{{"count", x.count(k)}};
        if (k >= 1) {
            Json down = Json::array(), up = Json::array();
            for (int c = 0; c < x.count(k); ++c) {
                Json row = Json::array();
                for (const auto& t : x.down[k]) row.push_back(t[c]);
                down.push_back(std::move(row));
            }
            for (int c = 0; c < x.count(k - 1); ++c) {
                Json row = Json::array();
                for (const auto& t : x.up[k]) row.push_back(t[c]);
                up.push_back(std::move(row));
            }
            lvl["down"] = std::move(down);
            lvl["up"] = std::move(up);
        }
        levels.push_back(std::move(lvl));
    }
    return Json{{"dim", x.dim}, {"levels", std::move(levels)}};
}

template <class Shape>
GradedSet<Shape> decode_graded(const Json& p, const std::string& where) {
    const int d = int_field(field(p, "dim", where), where + ".dim");
    if (d < 0) throw ParseError(where + ": negative dimension");
    const Json& levels = field(p, "levels", where);
    if (!levels.is_array() || int(levels.size()) != d + 1)
        throw ParseError(where + ": expected " + std::to_string(d + 1) + " levels");
    GradedSet<Shape> x(d);
    for (int k = 0; k <= d; ++k) {
        const int n = int_field(field(levels[k], "count", where + ".levels[" + std::to_string(k) + "]"), where);
        if (n < 0) throw ParseError(where + ": negative count at level " + std::to_string(k));
        x.counts[k] = n;
    }
    for (int k = 0; k <= d; ++k) {
        for (auto& t : x.down[k]) t.assign(x.counts[k], kNone);
        for (auto& t : x.up[k]) t.assign(k >= 1 ? x.counts[k - 1] : 0, kNone);
    }
    for (int k = 1; k <= d; ++k) {
        const std::string lw = where + ".levels[" + std::to_string(k) + "]";
        auto read = [&](const char* key, bool up, int rows, int target_level) {
            const Json& tab = field(levels[k], key, lw);
            if (!tab.is_array() || int(tab.size()) != rows)
                throw ParseError(lw + "." + key + ": expected " + std::to_string(rows) + " rows");
            auto& tables = up ? x.up[k] : x.down[k];
            for (int c = 0; c < rows; ++c) {
                const Json& row = tab[c];
                for (int o = 0; o < int(tables.size()); ++o) {
                    const std::string cw = lw + ": cube " + std::to_string(c) + " of dimension " +
                                           std::to_string(up ? k - 1 : k) + ", operator " + op_name(Shape{}, k, up, o);
                    if (!row.is_array() || o >= int(row.size())) throw ParseError(cw + ": missing entry");
                    const int v = int_field(row[o], cw);
                    if (v < 0 || v >= x.counts[target_level]) throw ParseError(cw + ": index out of range");
                    tables[o][c] = v;
                }
                if (int(row.size()) != int(tables.size())) throw ParseError(lw + "." + key + ": row has extra entries");
            }
        };
        read("down", false, x.counts[k], k - 1);
        read("up", true, x.counts[k - 1], k);
    }
    return x;
}

inline Json encode_levels(const Levels& m) { return Json(m); }

inline Levels decode_levels(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of levels");
    Levels m;
    for (std::size_t k = 0; k < j.size(); ++k) {
        if (!j[k].is_array()) throw ParseError(where + "[" + std::to_string(k) + "]: expected an array");
        std::vector<int> row;
        for (const auto& v : j[k]) row.push_back(int_field(v, where + "[" + std::to_string(k) + "]"));
        m.push_back(std::move(row));
    }
    return m;
}

template <class Shape>
void check_map_shape(const GradedMap<Shape>& m, const std::string& where) {
    const int d = std::min(m.source->dim, m.target->dim);
    if (int(m.map.size()) != d + 1) throw ParseError(where + ": expected " + std::to_string(d + 1) + " levels");
    for (int k = 0; k <= d; ++k) {
        if (int(m.map[k].size()) != m.source->count(k))
            throw ParseError(where + ": wrong length at level " + std::to_string(k));
        for (int v : m.map[k])
            if (v < 0 || v >= m.target->count(k))
                throw ParseError(where + ": image out of range at level " + std::to_string(k));
    }
    if (!is_morphism(m)) throw ParseError(where + ": does not commute with the structure maps");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Encoders

inline Document encode_cset(const CubicalSet& x) { return make_document("cset", detail::encode_graded(x)); }
inline Document encode_sset(const SimplicialSet& x) { return make_document("sset", detail::encode_graded(x)); }

inline Document encode_marked(const MarkedCubicalSet& m) {
    Json marked = Json::array();
    for (int e = 0; e < int(m.marked.size()); ++e)
        if (m.marked[e]) marked.push_back(e);
    return make_document("marked-cset", Json{{"set", to_json(encode_cset(*m.set))}, {"marked", marked}});
}

inline Document encode_category(const FiniteCategory& c) {
    Json objects = Json::array(), arrows = Json::array(), comp = Json::array();
    for (int x = 0; x < c.num_objects; ++x)
        objects.push_back(x < int(c.object_names.size()) ? c.object_names[x] : std::to_string(x));
    for (int f = 0; f < c.num_arrows(); ++f)
        arrows.push_back(Json{{"name", f < int(c.arrow_names.size()) ? c.arrow_names[f] : std::to_string(f)},
                              {"source", c.src[f]},
                              {"target", c.tgt[f]}});
    for (int g = 0; g < c.num_arrows(); ++g) {
        Json row = Json::array();
        for (int f = 0; f < c.num_arrows(); ++f) row.push_back(c.comp[g][f] == kNone ? Json(nullptr) : Json(c.comp[g][f]));
        comp.push_back(std::move(row));
    }
    return make_document("category", Json{{"objects", objects},
                                          {"arrows", arrows},
                                          {"identities", c.identity},
                                          {"composition", comp}});
}

inline Document encode_morphism(const CSetMorphism& m) {
    return make_document("morphism", Json{{"source", to_json(encode_cset(*m.source))},
                                          {"target", to_json(encode_cset(*m.target))},
                                          {"map", detail::encode_levels(m.map)}});
}

inline Document encode_diagram(const CSetDiagram& f) {
    Json values = Json::array(), maps = Json::array();
    for (const auto& v : f.values) values.push_back(to_json(encode_cset(*v)));
    for (const auto& m : f.arrow_maps) maps.push_back(detail::encode_levels(m.map));
    return make_document("diagram",
                         Json{{"category", to_json(encode_category(f.base))}, {"values", values}, {"arrow_maps", maps}});
}

// ---------------------------------------------------------------------------
// Decoders

inline void require_schema(const Document& doc, const std::string& schema) {
    if (doc.schema != schema) throw ParseError("expected a " + schema + " document, found " + doc.schema);
}

inline CubicalSet decode_cset(const Document& doc) {
    require_schema(doc, "cset");
    return detail::decode_graded<CubicalShape>(doc.payload, "cset");
}

inline SimplicialSet decode_sset(const Document& doc) {
    require_schema(doc, "sset");
    return detail::decode_graded<SimplicialShape>(doc.payload, "sset");
}

inline MarkedCubicalSet decode_marked(const Document& doc) {
    require_schema(doc, "marked-cset");
    const auto set = share(decode_cset(detail::resolve(detail::field(doc.payload, "set", "marked-cset"), "cset",
                                                       doc.base_dir, "marked-cset.set")));
    MarkedCubicalSet m{set, EdgeMarking(set->count(1), 0), true, 0};
    for (const auto& e : detail::field(doc.payload, "marked", "marked-cset")) {
        const int v = detail::int_field(e, "marked-cset.marked");
        if (v < 0 || v >= set->count(1)) throw ParseError("marked-cset.marked: edge " + std::to_string(v) + " out of range");
        m.marked[v] = 1;
    }
    if (!is_valid_marking(*set, m.marked)) throw ParseError("marked-cset: a degenerate edge is not marked");
    return m;
}

inline FiniteCategory decode_category(const Document& doc) {
    require_schema(doc, "category");
    const Json& p = doc.payload;
    const std::string w = "category";
    FiniteCategory c;
    for (const auto& o : detail::field(p, "objects", w)) {
        if (!o.is_string()) throw ParseError(w + ".objects: expected names");
        c.object_names.push_back(o.get<std::string>());
    }
    c.num_objects = int(c.object_names.size());
    const Json& arrows = detail::field(p, "arrows", w);
    for (std::size_t f = 0; f < arrows.size(); ++f) {
        const std::string aw = w + ".arrows[" + std::to_string(f) + "]";
        const Json& name = detail::field(arrows[f], "name", aw);
        c.arrow_names.push_back(name.is_string() ? name.get<std::string>() : std::to_string(f));
        c.src.push_back(detail::int_field(detail::field(arrows[f], "source", aw), aw + ".source"));
        c.tgt.push_back(detail::int_field(detail::field(arrows[f], "target", aw), aw + ".target"));
        if (c.src.back() < 0 || c.src.back() >= c.num_objects || c.tgt.back() < 0 || c.tgt.back() >= c.num_objects)
            throw ParseError(aw + ": dangling object identifier");
    }
    for (const auto& i : detail::field(p, "identities", w)) c.identity.push_back(detail::int_field(i, w + ".identities"));
    const Json& comp = detail::field(p, "composition", w);
    const int n = c.num_arrows();
    if (!comp.is_array() || int(comp.size()) != n) throw ParseError(w + ".composition: expected one row per arrow");
    c.comp.assign(n, std::vector<int>(n, kNone));
    for (int g = 0; g < n; ++g) {
        if (!comp[g].is_array() || int(comp[g].size()) != n)
            throw ParseError(w + ".composition[" + std::to_string(g) + "]: expected one entry per arrow");
        for (int f = 0; f < n; ++f)
            if (!comp[g][f].is_null()) c.comp[g][f] = detail::int_field(comp[g][f], w + ".composition");
    }
    if (const std::string err = check_category(c); !err.empty()) throw ParseError(w + ": " + err);
    return c;
}

inline CSetMorphism decode_morphism(const Document& doc) {
    require_schema(doc, "morphism");
    const std::string w = "morphism";
    auto src = share(decode_cset(detail::resolve(detail::field(doc.payload, "source", w), "cset", doc.base_dir, w + ".source")));
    auto tgt = share(decode_cset(detail::resolve(detail::field(doc.payload, "target", w), "cset", doc.base_dir, w + ".target")));
    CSetMorphism m{src, tgt, detail::decode_levels(detail::field(doc.payload, "map", w), w + ".map")};
    detail::check_map_shape(m, w + ".map");
    return m;
}

inline CSetDiagram decode_diagram(const Document& doc) {
    require_schema(doc, "diagram");
    const std::string w = "diagram";
    CSetDiagram f;
    f.base = decode_category(detail::resolve(detail::field(doc.payload, "category", w), "category", doc.base_dir, w + ".category"));
    const Json& values = detail::field(doc.payload, "values", w);
    for (std::size_t i = 0; i < values.size(); ++i)
        f.values.push_back(share(decode_cset(
            detail::resolve(values[i], "cset", doc.base_dir, w + ".values[" + std::to_string(i) + "]"))));
    if (int(f.values.size()) != f.base.num_objects) throw ParseError(w + ".values: expected one value per object");
    const Json& maps = detail::field(doc.payload, "arrow_maps", w);
    if (int(maps.size()) != f.base.num_arrows()) throw ParseError(w + ".arrow_maps: expected one map per arrow");
    for (int a = 0; a < f.base.num_arrows(); ++a)
        f.arrow_maps.push_back(CSetMorphism{f.values[f.base.src[a]], f.values[f.base.tgt[a]],
                                            detail::decode_levels(maps[a], w + ".arrow_maps[" + std::to_string(a) + "]")});
    for (int a = 0; a < f.base.num_arrows(); ++a)
        detail::check_map_shape(f.arrow_maps[a], w + ".arrow_maps[" + std::to_string(a) + "]");
    try {
        require_cset_diagram(f);
    } catch (const Error& e) {
        throw ParseError(w + ": " + e.what());
    }
    return f;
}

}  // namespace cubical
