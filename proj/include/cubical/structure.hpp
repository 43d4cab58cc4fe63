#pragma once

// Homomorphism search between finite multi-sorted unary algebras.
//
// Every presheaf-like object in the library (cubical sets, simplicial sets,
// diagrams of them) flattens to a Structure: elements grouped contiguously by
// sort, plus unary operations between sorts. A homomorphism preserves sorts
// and commutes with every operation. Lifting problems, isomorphism tests and
// hom-set counts all reduce to this one backtracking search.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubical/errors.hpp"

namespace cubical {

inline constexpr int kNone = -1;
inline constexpr std::size_t kDefaultNodeCap = 1'000'000;

struct Structure {
    struct Op {
        int dom = 0;
        int cod = 0;
        std::vector<int> table;  // local index in dom -> global id in cod, or kNone
    };

    std::vector<int> sort_begin{0};  // size num_sorts + 1
    std::vector<Op> ops;

    std::vector<int> sort_of;
    std::vector<std::vector<int>> ops_from;

    int size() const { return sort_begin.back(); }
    int num_sorts() const { return int(sort_begin.size()) - 1; }
    int sort_size(int s) const { return sort_begin[s + 1] - sort_begin[s]; }

    int add_sort(int count) {
        sort_begin.push_back(sort_begin.back() + count);
        return num_sorts() - 1;
    }

    int apply(int op, int e) const { return ops[op].table[e - sort_begin[ops[op].dom]]; }

    void finalize() {
        sort_of.assign(size(), 0);
        for (int s = 0; s < num_sorts(); ++s)
            for (int e = sort_begin[s]; e < sort_begin[s + 1]; ++e) sort_of[e] = s;
        ops_from.assign(num_sorts(), {});
        for (int o = 0; o < int(ops.size()); ++o) ops_from[ops[o].dom].push_back(o);
    }
};

inline bool same_signature(const Structure& a, const Structure& b) {
    if (a.num_sorts() != b.num_sorts() || a.ops.size() != b.ops.size()) return false;
    for (std::size_t o = 0; o < a.ops.size(); ++o)
        if (a.ops[o].dom != b.ops[o].dom || a.ops[o].cod != b.ops[o].cod) return false;
    return true;
}

/// Colour refinement on the disjoint union of two structures. Equal colours
/// are necessary for an isomorphism to match two elements.
inline std::pair<std::vector<int>, std::vector<int>> refine_colors(const Structure& a, const Structure& b,
                                                                   std::vector<int> init_a = {},
                                                                   std::vector<int> init_b = {}) {
    const Structure* parts[2] = {&a, &b};
    std::vector<int> colors[2];
    for (int p = 0; p < 2; ++p) {
        colors[p].resize(parts[p]->size());
        for (int e = 0; e < parts[p]->size(); ++e) colors[p][e] = parts[p]->sort_of[e];
    }
    if (!init_a.empty() && !init_b.empty()) {
        for (int e = 0; e < a.size(); ++e) colors[0][e] = colors[0][e] * 1024 + init_a[e];
        for (int e = 0; e < b.size(); ++e) colors[1][e] = colors[1][e] * 1024 + init_b[e];
    }
    int distinct = -1;
    for (int round = 0; round < 64; ++round) {
        std::map<std::vector<int>, int> palette;
        std::vector<int> next[2];
        for (int p = 0; p < 2; ++p) {
            const Structure& s = *parts[p];
            // Multiset of preimage colours per op, and the colour of each image.
            std::vector<std::vector<int>> sig(s.size());
            for (int e = 0; e < s.size(); ++e) sig[e].push_back(colors[p][e]);
            for (int o = 0; o < int(s.ops.size()); ++o) {
                const auto& op = s.ops[o];
                std::vector<std::vector<int>> pre(s.size());
                for (int i = 0; i < int(op.table.size()); ++i) {
                    const int src = s.sort_begin[op.dom] + i;
                    const int dst = op.table[i];
                    sig[src].push_back(dst == kNone ? -1 : colors[p][dst]);
                    if (dst != kNone) pre[dst].push_back(colors[p][src]);
                }
                for (int e = s.sort_begin[op.cod]; e < s.sort_begin[op.cod + 1]; ++e) {
                    std::sort(pre[e].begin(), pre[e].end());
                    sig[e].push_back(-2);
                    sig[e].insert(sig[e].end(), pre[e].begin(), pre[e].end());
                }
            }
            next[p].resize(s.size());
            for (int e = 0; e < s.size(); ++e) {
                auto [it, inserted] = palette.emplace(std::move(sig[e]), int(palette.size()));
                next[p][e] = it->second;
            }
        }
        colors[0] = std::move(next[0]);
        colors[1] = std::move(next[1]);
        if (int(palette.size()) == distinct) break;
        distinct = int(palette.size());
    }
    return {colors[0], colors[1]};
}

struct SearchOptions {
    bool injective = false;
    std::size_t node_cap = kDefaultNodeCap;
    std::vector<int> order;  // decision order over source elements; default ascending id
    std::function<bool(int, int)> filter;  // may source element a map to target element b
    std::vector<std::pair<int, int>> preassign;
    std::vector<int> colors_a, colors_b;
};

class HomSearch {
public:
    HomSearch(const Structure& a, const Structure& b, SearchOptions options)
        : a_(a), b_(b), opt_(std::move(options)) {
        if (!same_signature(a, b)) throw PreconditionError("hom search between structures of different signature");
        if (opt_.order.empty()) {
            opt_.order.resize(a.size());
            std::iota(opt_.order.begin(), opt_.order.end(), 0);
        }
        inverse_.resize(b.ops.size());
        for (int o = 0; o < int(b.ops.size()); ++o) {
            auto& inv = inverse_[o];
            inv.assign(b.size(), {});
            const auto& op = b.ops[o];
            for (int i = 0; i < int(op.table.size()); ++i)
                if (op.table[i] != kNone) inv[op.table[i]].push_back(b.sort_begin[op.dom] + i);
        }
    }

    std::optional<std::vector<int>> find_first() {
        std::optional<std::vector<int>> found;
        run([&](const std::vector<int>& h) {
            found = h;
            return false;
        });
        return found;
    }

    std::uint64_t count() {
        std::uint64_t n = 0;
        run([&](const std::vector<int>&) {
            ++n;
            return true;
        });
        return n;
    }

    /// Visits every homomorphism; the visitor returns false to stop early.
    void for_each(const std::function<bool(const std::vector<int>&)>& visit) { run(visit); }

    std::size_t nodes() const { return nodes_; }

private:
    void run(const std::function<bool(const std::vector<int>&)>& visit) {
        h_.assign(a_.size(), kNone);
        used_.assign(b_.size(), 0);
        trail_.clear();
        nodes_ = 0;
        for (auto [x, y] : opt_.preassign)
            if (!assign(x, y)) return;
        stop_ = false;
        search(0, visit);
    }

    bool admissible(int x, int y) const {
        if (a_.sort_of[x] != b_.sort_of[y]) return false;
        if (opt_.injective && used_[y]) return false;
        if (!opt_.colors_a.empty() && opt_.colors_a[x] != opt_.colors_b[y]) return false;
        if (opt_.filter && !opt_.filter(x, y)) return false;
        return true;
    }

    bool assign(int x, int y) {
        std::vector<int> queue;
        auto set = [&](int p, int q) {
            if (h_[p] != kNone) return h_[p] == q;
            if (!admissible(p, q)) return false;
            h_[p] = q;
            used_[q] = 1;
            trail_.push_back(p);
            queue.push_back(p);
            return true;
        };
        if (!set(x, y)) return false;
        while (!queue.empty()) {
            const int p = queue.back();
            queue.pop_back();
            for (int o : a_.ops_from[a_.sort_of[p]]) {
                const int p2 = a_.apply(o, p);
                if (p2 == kNone) continue;
                const int q2 = b_.apply(o, h_[p]);
                if (q2 == kNone || !set(p2, q2)) return false;
            }
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            const int p = trail_.back();
            trail_.pop_back();
            used_[h_[p]] = 0;
            h_[p] = kNone;
        }
    }

    void search(std::size_t pos, const std::function<bool(const std::vector<int>&)>& visit) {
        while (pos < opt_.order.size() && h_[opt_.order[pos]] != kNone) ++pos;
        if (pos == opt_.order.size()) {
            if (!visit(h_)) stop_ = true;
            return;
        }
        const int x = opt_.order[pos];
        const int s = a_.sort_of[x];
        // Narrow candidates through the smallest preimage set of an assigned image.
        const std::vector<int>* best = nullptr;
        for (int o : a_.ops_from[s]) {
            const int x2 = a_.apply(o, x);
            if (x2 == kNone || h_[x2] == kNone) continue;
            const auto& inv = inverse_[o][h_[x2]];
            if (!best || inv.size() < best->size()) best = &inv;
            if (best->empty()) return;
        }
        std::vector<int> all;
        if (!best) {
            all.resize(b_.sort_size(s));
            std::iota(all.begin(), all.end(), b_.sort_begin[s]);
            best = &all;
        }
        const std::vector<int> candidates = *best;
        for (int y : candidates) {
            if (++nodes_ > opt_.node_cap)
                throw ResourceError("search exceeded node cap of " + std::to_string(opt_.node_cap));
            const std::size_t mark = trail_.size();
            if (assign(x, y)) search(pos + 1, visit);
            undo(mark);
            if (stop_) return;
        }
    }

    const Structure& a_;
    const Structure& b_;
    SearchOptions opt_;
    std::vector<std::vector<std::vector<int>>> inverse_;
    std::vector<int> h_;
    std::vector<char> used_;
    std::vector<int> trail_;
    std::size_t nodes_ = 0;
    bool stop_ = false;
};

/// Union-find with path halving; merges keep the smaller id as root.
class UnionFind {
public:
    explicit UnionFind(int n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }
    int size() const { return int(parent_.size()); }

private:
    std::vector<int> parent_;
};

/// Smallest congruence on `s` containing the given pairs.
inline UnionFind congruence_closure(const Structure& s, const std::vector<std::pair<int, int>>& pairs) {
    UnionFind uf(s.size());
    std::vector<std::pair<int, int>> work(pairs.rbegin(), pairs.rend());
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        if (!uf.unite(x, y)) continue;
        for (int o : s.ops_from[s.sort_of[x]]) {
            const int x2 = s.apply(o, x);
            const int y2 = s.apply(o, y);
            if (x2 == kNone || y2 == kNone) {
                if (x2 != y2) throw ConstructionError("congruence identifies a defined and an undefined operation value");
                continue;
            }
            work.emplace_back(x2, y2);
        }
    }
    return uf;
}

}  // namespace cubical
