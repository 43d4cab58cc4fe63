#pragma once

// The cube category with connections, presented by its generators.
//
// Vertices of [1]^n are bit masks: bit (i-1) holds the coordinate x_i.
// A CubeMap [1]^m -> [1]^n is stored as its truth table (2^m masks) together
// with a generator word. Words are written in composition order, so the word
// [g1, g2, ..., gk] denotes g1 o g2 o ... o gk; acting on a cube from the
// right, x.(g1 o ... o gk) = (...(x.g1)...).gk, i.e. left to right.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cubical/errors.hpp"

namespace cubical {

inline constexpr int kDefaultDimensionCap = 6;

using Vertex = std::uint32_t;

namespace bits {

inline Vertex insert(Vertex v, int pos, int value) {
    const Vertex low = v & ((Vertex{1} << pos) - 1);
    const Vertex high = v >> pos;
    return low | (Vertex(value) << pos) | (high << (pos + 1));
}

inline Vertex erase(Vertex v, int pos) {
    const Vertex low = v & ((Vertex{1} << pos) - 1);
    return low | ((v >> (pos + 1)) << pos);
}

inline int get(Vertex v, int pos) { return int((v >> pos) & 1U); }

inline bool leq(Vertex a, Vertex b) { return (a & ~b) == 0; }

}  // namespace bits

enum class OpKind : std::uint8_t { face, degeneracy, neg_connection, pos_connection };

/// A generator of the cube category. `n` is the superscript: faces map
/// [1]^{n-1} -> [1]^n, degeneracies and connections map [1]^n -> [1]^{n-1}.
struct CubeOperator {
    OpKind kind = OpKind::face;
    int n = 1;
    int i = 1;
    int eps = 0;  // faces only; connections carry their sign in `kind`

    int source_dim() const { return kind == OpKind::face ? n - 1 : n; }
    int target_dim() const { return kind == OpKind::face ? n : n - 1; }

    bool is_connection() const {
        return kind == OpKind::neg_connection || kind == OpKind::pos_connection;
    }
    int connection_sign() const { return kind == OpKind::pos_connection ? 1 : 0; }

    friend bool operator==(const CubeOperator&, const CubeOperator&) = default;

    std::string str() const {
        std::ostringstream os;
        switch (kind) {
            case OpKind::face: os << "d^" << n << "_{" << i << "," << eps << "}"; break;
            case OpKind::degeneracy: os << "s^" << n << "_" << i; break;
            case OpKind::neg_connection: os << "g^" << n << "_{" << i << ",0}"; break;
            case OpKind::pos_connection: os << "g^" << n << "_{" << i << ",1}"; break;
        }
        return os.str();
    }

    static CubeOperator face(int n, int i, int eps) { return {OpKind::face, n, i, eps}; }
    static CubeOperator degeneracy(int n, int i) { return {OpKind::degeneracy, n, i, 0}; }
    static CubeOperator connection(int n, int i, int eps) {
        return {eps == 0 ? OpKind::neg_connection : OpKind::pos_connection, n, i, eps};
    }
};

inline void check_operator(const CubeOperator& op) {
    const bool ok = [&] {
        switch (op.kind) {
            case OpKind::face: return op.n >= 1 && op.i >= 1 && op.i <= op.n && (op.eps == 0 || op.eps == 1);
            case OpKind::degeneracy: return op.n >= 1 && op.i >= 1 && op.i <= op.n;
            default: return op.n >= 2 && op.i >= 1 && op.i <= op.n - 1;
        }
    }();
    if (!ok) throw InvalidOperator("invalid cube operator " + op.str());
}

inline Vertex apply_operator_to_vertex(const CubeOperator& op, Vertex v) {
    const int p = op.i - 1;
    switch (op.kind) {
        case OpKind::face: return bits::insert(v, p, op.eps);
        case OpKind::degeneracy: return bits::erase(v, p);
        case OpKind::neg_connection:
        case OpKind::pos_connection: {
            const int a = bits::get(v, p);
            const int b = bits::get(v, p + 1);
            const int merged = op.kind == OpKind::neg_connection ? std::max(a, b) : std::min(a, b);
            Vertex w = bits::erase(v, p + 1);
            w = (w & ~(Vertex{1} << p)) | (Vertex(merged) << p);
            return w;
        }
    }
    return v;
}

struct CubeMap {
    int source = 0;
    int target = 0;
    std::vector<Vertex> table;            // size 2^source
    std::vector<CubeOperator> word;       // composition order

    // Equality is table equality; the word is a witness only.
    friend bool operator==(const CubeMap& a, const CubeMap& b) {
        return a.source == b.source && a.target == b.target && a.table == b.table;
    }

    Vertex operator()(Vertex v) const { return table[v]; }

    bool is_identity() const {
        if (source != target) return false;
        for (Vertex v = 0; v < table.size(); ++v)
            if (table[v] != v) return false;
        return true;
    }

    bool is_monotone() const {
        for (Vertex a = 0; a < table.size(); ++a)
            for (int j = 0; j < source; ++j)
                if (!bits::get(a, j) && !bits::leq(table[a], table[a | (Vertex{1} << j)])) return false;
        return true;
    }

    std::string word_str() const {
        if (word.empty()) return "id_" + std::to_string(source);
        std::string s;
        for (std::size_t k = 0; k < word.size(); ++k) {
            if (k) s += " o ";
            s += word[k].str();
        }
        return s;
    }
};

struct CubeMapHash {
    std::size_t operator()(const CubeMap& u) const {
        std::size_t h = std::size_t(u.source) * 1315423911U ^ std::size_t(u.target);
        for (Vertex v : u.table) h = h * 1099511628211ULL ^ v;
        return h;
    }
};

inline CubeMap identity_map(int n) {
    CubeMap u;
    u.source = u.target = n;
    u.table.resize(std::size_t{1} << n);
    for (Vertex v = 0; v < u.table.size(); ++v) u.table[v] = v;
    return u;
}

inline CubeMap generator(const CubeOperator& op) {
    check_operator(op);
    CubeMap u;
    u.source = op.source_dim();
    u.target = op.target_dim();
    u.table.resize(std::size_t{1} << u.source);
    for (Vertex v = 0; v < u.table.size(); ++v) u.table[v] = apply_operator_to_vertex(op, v);
    u.word = {op};
    return u;
}

/// g o f.
inline CubeMap compose(const CubeMap& g, const CubeMap& f) {
    if (g.source != f.target)
        throw CompositionError("cannot compose [1]^" + std::to_string(g.source) + "->[1]^" +
                               std::to_string(g.target) + " after a map into [1]^" +
                               std::to_string(f.target));
    CubeMap u;
    u.source = f.source;
    u.target = g.target;
    u.table.resize(f.table.size());
    for (Vertex v = 0; v < f.table.size(); ++v) u.table[v] = g.table[f.table[v]];
    u.word = g.word;
    u.word.insert(u.word.end(), f.word.begin(), f.word.end());
    return u;
}

inline CubeMap compose_word(const std::vector<CubeOperator>& word, int source_if_empty) {
    if (word.empty()) return identity_map(source_if_empty);
    CubeMap u = generator(word.back());
    for (auto it = word.rbegin() + 1; it != word.rend(); ++it) u = compose(generator(*it), u);
    return u;
}

/// Coordinates of the target that are constant over the whole table, with their values.
inline std::vector<std::pair<int, int>> constant_coordinates(const CubeMap& u) {
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < u.target; ++j) {
        const int first = bits::get(u.table[0], j);
        bool constant = true;
        for (Vertex v : u.table)
            if (bits::get(v, j) != first) {
                constant = false;
                break;
            }
        if (constant) out.emplace_back(j + 1, first);
    }
    return out;
}

namespace detail {

// Finds a word of degeneracies and connections for a surjective table.
inline bool surjective_word(int m, int k, const std::vector<Vertex>& table, std::vector<CubeOperator>& word) {
    if (m == k) {
        for (Vertex v = 0; v < table.size(); ++v)
            if (table[v] != v) return false;
        return true;
    }
    if (m < k) return false;
    std::vector<CubeOperator> candidates;
    for (int i = 1; i <= m; ++i) candidates.push_back(CubeOperator::degeneracy(m, i));
    for (int i = 1; i + 1 <= m; ++i) {
        candidates.push_back(CubeOperator::connection(m, i, 0));
        candidates.push_back(CubeOperator::connection(m, i, 1));
    }
    const std::size_t reduced_size = std::size_t{1} << (m - 1);
    for (const CubeOperator& g : candidates) {
        std::vector<Vertex> reduced(reduced_size, ~Vertex{0});
        bool factors = true;
        for (Vertex v = 0; v < table.size() && factors; ++v) {
            const Vertex w = apply_operator_to_vertex(g, v);
            if (reduced[w] == ~Vertex{0})
                reduced[w] = table[v];
            else if (reduced[w] != table[v])
                factors = false;
        }
        if (!factors) continue;
        const std::size_t mark = word.size();
        if (surjective_word(m - 1, k, reduced, word)) {
            word.push_back(g);
            return true;
        }
        word.resize(mark);
    }
    return false;
}

}  // namespace detail

struct Factorization {
    std::vector<CubeOperator> face_word;  // composition order
    CubeMap surjective_part;
};

/// Splits u into faces o surjection, where the faces reinsert the constant
/// coordinates of u at their constant values.
inline Factorization factorize(const CubeMap& u) {
    const auto constants = constant_coordinates(u);
    std::vector<int> free_coords;
    {
        std::size_t c = 0;
        for (int j = 1; j <= u.target; ++j) {
            if (c < constants.size() && constants[c].first == j)
                ++c;
            else
                free_coords.push_back(j);
        }
    }
    const int k = int(free_coords.size());
    Factorization out;
    out.surjective_part.source = u.source;
    out.surjective_part.target = k;
    out.surjective_part.table.resize(u.table.size());
    for (Vertex v = 0; v < u.table.size(); ++v) {
        Vertex w = 0;
        for (int t = 0; t < k; ++t) w |= Vertex(bits::get(u.table[v], free_coords[t] - 1)) << t;
        out.surjective_part.table[v] = w;
    }
    std::vector<CubeOperator> sw;
    if (!detail::surjective_word(u.source, k, out.surjective_part.table, sw))
        throw InvalidOperator("map has no word in the cube category: " + u.word_str());
    out.surjective_part.word = std::move(sw);
    // Insert constants in increasing position; the last insertion is leftmost.
    int dim = k;
    for (const auto& [pos, value] : constants) {
        ++dim;
        out.face_word.insert(out.face_word.begin(), CubeOperator::face(dim, pos, value));
    }
    return out;
}

/// A word for u that never passes through dimensions above max(source, target).
inline std::vector<CubeOperator> canonical_word(const CubeMap& u) {
    Factorization f = factorize(u);
    std::vector<CubeOperator> w = std::move(f.face_word);
    w.insert(w.end(), f.surjective_part.word.begin(), f.surjective_part.word.end());
    return w;
}

inline CubeMap with_canonical_word(CubeMap u) {
    u.word = canonical_word(u);
    return u;
}

/// All generators with source dimension `m` whose target stays within [0, bound].
inline std::vector<CubeOperator> generators_from(int m, int bound) {
    std::vector<CubeOperator> out;
    if (m + 1 <= bound)
        for (int i = 1; i <= m + 1; ++i)
            for (int e = 0; e < 2; ++e) out.push_back(CubeOperator::face(m + 1, i, e));
    if (m >= 1)
        for (int i = 1; i <= m; ++i) out.push_back(CubeOperator::degeneracy(m, i));
    for (int i = 1; i + 1 <= m; ++i) {
        out.push_back(CubeOperator::connection(m, i, 0));
        out.push_back(CubeOperator::connection(m, i, 1));
    }
    return out;
}

namespace detail {

struct HomCache {
    std::mutex mutex;
    std::map<std::pair<int, int>, std::map<int, std::vector<CubeMap>>> closures;
};

inline HomCache& hom_cache() {
    static HomCache cache;
    return cache;
}

// Every map out of [1]^m with target dimension <= bound, by closing the
// identity under post-composition with generators.
inline std::map<int, std::vector<CubeMap>> closure_from(int m, int bound) {
    std::map<int, std::vector<CubeMap>> by_target;
    std::unordered_set<CubeMap, CubeMapHash> seen;
    std::vector<CubeMap> frontier{identity_map(m)};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<CubeMap> next;
        for (const CubeMap& h : frontier) {
            by_target[h.target].push_back(h);
            for (const CubeOperator& g : generators_from(h.target, bound)) {
                CubeMap c = compose(generator(g), h);
                if (seen.insert(c).second) next.push_back(std::move(c));
            }
        }
        frontier = std::move(next);
    }
    for (auto& [t, maps] : by_target)
        std::sort(maps.begin(), maps.end(), [](const CubeMap& a, const CubeMap& b) { return a.table < b.table; });
    return by_target;
}

}  // namespace detail

/// All maps [1]^m -> [1]^n of the cube category, sorted by truth table.
inline std::vector<CubeMap> enumerate_maps(int m, int n, int cap = kDefaultDimensionCap) {
    if (m < 0 || n < 0) throw InvalidOperator("negative dimension");
    if (m > cap || n > cap)
        throw ResourceError("hom-set enumeration beyond dimension cap " + std::to_string(cap));
    const int bound = std::max(m, n);
    auto& cache = detail::hom_cache();
    {
        std::lock_guard lock(cache.mutex);
        auto it = cache.closures.find({m, bound});
        if (it != cache.closures.end()) {
            auto jt = it->second.find(n);
            return jt == it->second.end() ? std::vector<CubeMap>{} : jt->second;
        }
    }
    auto closure = detail::closure_from(m, bound);
    std::lock_guard lock(cache.mutex);
    auto& stored = cache.closures.emplace(std::make_pair(m, bound), std::move(closure)).first->second;
    auto jt = stored.find(n);
    return jt == stored.end() ? std::vector<CubeMap>{} : jt->second;
}

/// Maps with no constant output coordinate, out of [1]^m, to any target.
inline std::vector<CubeMap> enumerate_surjections(int m, int cap = kDefaultDimensionCap) {
    std::vector<CubeMap> out;
    for (int k = m; k >= 0; --k)
        for (CubeMap& u : enumerate_maps(m, k, cap))
            if (constant_coordinates(u).empty()) out.push_back(std::move(u));
    return out;
}

/// One instance of a defining relation of the cube category.
struct IdentityInstance {
    std::string name;
    std::vector<CubeOperator> lhs;
    std::vector<CubeOperator> rhs;
    int source = 0;    // dimension the composite maps out of
    int target = 0;    // dimension the composite maps into
    int max_dim = 0;   // largest dimension any word passes through
};

namespace detail {

inline int word_max_dim(const std::vector<CubeOperator>& w, int fallback) {
    int d = fallback;
    for (const auto& g : w) d = std::max({d, g.source_dim(), g.target_dim()});
    return d;
}

}  // namespace detail

/// Every instance of the cubical identities whose words stay within dimension max_dim.
inline std::vector<IdentityInstance> cubical_identity_instances(int max_dim) {
    using Op = CubeOperator;
    std::vector<IdentityInstance> out;
    auto add = [&](std::string name, std::vector<Op> lhs, std::vector<Op> rhs, int src, int tgt) {
        IdentityInstance inst{std::move(name), std::move(lhs), std::move(rhs), src, tgt, 0};
        inst.max_dim = std::max(detail::word_max_dim(inst.lhs, std::max(src, tgt)),
                                detail::word_max_dim(inst.rhs, std::max(src, tgt)));
        if (inst.max_dim <= max_dim) out.push_back(std::move(inst));
    };
    for (int n = 1; n <= max_dim; ++n) {
        // dd: d_{j,e'} d_{i,e} = d_{i+1,e} d_{j,e'}, j <= i
        if (n >= 2)
            for (int i = 1; i <= n - 1; ++i)
                for (int j = 1; j <= i; ++j)
                    for (int e = 0; e < 2; ++e)
                        for (int f = 0; f < 2; ++f)
                            add("dd", {Op::face(n, j, f), Op::face(n - 1, i, e)},
                                {Op::face(n, i + 1, e), Op::face(n - 1, j, f)}, n - 2, n);
        // sd
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int e = 0; e < 2; ++e) {
                    std::vector<Op> lhs{Op::degeneracy(n, j), Op::face(n, i, e)};
                    if (j < i)
                        add("sd", lhs, {Op::face(n - 1, i - 1, e), Op::degeneracy(n - 1, j)}, n - 1, n - 1);
                    else if (j == i)
                        add("sd", lhs, {}, n - 1, n - 1);
                    else
                        add("sd", lhs, {Op::face(n - 1, i, e), Op::degeneracy(n - 1, j - 1)}, n - 1, n - 1);
                }
        // ss: s_i s_j = s_j s_{i+1}, j <= i
        if (n >= 2)
            for (int i = 1; i <= n - 1; ++i)
                for (int j = 1; j <= i; ++j)
                    add("ss", {Op::degeneracy(n - 1, i), Op::degeneracy(n, j)},
                        {Op::degeneracy(n - 1, j), Op::degeneracy(n, i + 1)}, n, n - 2);
        // gg
        if (n >= 3)
            for (int i = 1; i <= n - 1; ++i)
                for (int j = i; j <= n - 2; ++j)
                    for (int e = 0; e < 2; ++e)
                        for (int f = 0; f < 2; ++f) {
                            if (j > i)
                                add("gg", {Op::connection(n - 1, j, f), Op::connection(n, i, e)},
                                    {Op::connection(n - 1, i, e), Op::connection(n, j + 1, f)}, n, n - 2);
                            else if (e == f)
                                add("gg", {Op::connection(n - 1, i, e), Op::connection(n, i, e)},
                                    {Op::connection(n - 1, i, e), Op::connection(n, i + 1, e)}, n, n - 2);
                        }
        // gd: g_{j,e'} d_{i,e}
        if (n >= 2)
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n - 1; ++j)
                    for (int e = 0; e < 2; ++e)
                        for (int f = 0; f < 2; ++f) {
                            std::vector<Op> lhs{Op::connection(n, j, f), Op::face(n, i, e)};
                            if (j < i - 1)
                                add("gd", lhs, {Op::face(n - 1, i - 1, e), Op::connection(n - 1, j, f)}, n - 1, n - 1);
                            else if ((j == i - 1 || j == i) && e == f)
                                add("gd", lhs, {}, n - 1, n - 1);
                            else if (j == i - 1 || j == i)
                                add("gd", lhs, {Op::face(n - 1, j, e), Op::degeneracy(n - 1, j)}, n - 1, n - 1);
                            else
                                add("gd", lhs, {Op::face(n - 1, i, e), Op::connection(n - 1, j - 1, f)}, n - 1, n - 1);
                        }
        // sg: s_j g_{i,e}
        if (n >= 2)
            for (int i = 1; i <= n - 1; ++i)
                for (int j = 1; j <= n - 1; ++j)
                    for (int e = 0; e < 2; ++e) {
                        std::vector<Op> lhs{Op::degeneracy(n - 1, j), Op::connection(n, i, e)};
                        if (j < i)
                            add("sg", lhs, {Op::connection(n - 1, i - 1, e), Op::degeneracy(n, j)}, n, n - 2);
                        else if (j == i)
                            add("sg", lhs, {Op::degeneracy(n - 1, i), Op::degeneracy(n, i)}, n, n - 2);
                        else
                            add("sg", lhs, {Op::connection(n - 1, i, e), Op::degeneracy(n, j + 1)}, n, n - 2);
                    }
    }
    return out;
}

inline std::string describe(const IdentityInstance& inst) {
    auto w = [](const std::vector<CubeOperator>& word, int src) {
        if (word.empty()) return "id_" + std::to_string(src);
        std::string s;
        for (std::size_t k = 0; k < word.size(); ++k) {
            if (k) s += " o ";
            s += word[k].str();
        }
        return s;
    };
    return inst.name + ": " + w(inst.lhs, inst.source) + " = " + w(inst.rhs, inst.source);
}

}  // namespace cubical
