#pragma once

// Integer homology of truncated cubical and simplicial sets. Normalized chains,
// Smith normal form in int64 with an exact cpp_int fallback on overflow.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubical/cset.hpp"
#include "cubical/sset.hpp"

namespace cubical {

using BigInt = boost::multiprecision::cpp_int;

struct InvalidComplexError : Error {
    using Error::Error;
};

/// Dense integer matrix, row-major.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::int64_t> data;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c, 0) {}
    std::int64_t& at(int r, int c) { return data[std::size_t(r) * cols + c]; }
    std::int64_t at(int r, int c) const { return data[std::size_t(r) * cols + c]; }
    bool is_zero() const {
        return std::all_of(data.begin(), data.end(), [](std::int64_t v) { return v == 0; });
    }
};

/// boundary[k]: C_k -> C_{k-1} (rows ranks[k-1], cols ranks[k]); boundary[0] is empty.
struct ChainComplex {
    std::vector<int> ranks;
    std::vector<IntMatrix> boundary;
    int valid_through = 0;  // homology is exact in degrees <= valid_through
};

namespace detail {

struct Overflow {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt checked_add(const BigInt& a, const BigInt& b) { return a + b; }

template <class I>
I abs_value(const I& v) {
    return v < 0 ? I(-v) : v;
}

// Invariant factors of m, each dividing the next.
template <class I>
std::vector<I> smith_diagonal(std::vector<std::vector<I>> m, int rows, int cols) {
    std::vector<I> diag;
    auto row_op = [&](int dst, int src, const I& q) {  // row dst -= q * row src
        for (int c = 0; c < cols; ++c)
            if (m[src][c] != 0) m[dst][c] = checked_sub(m[dst][c], checked_mul(q, m[src][c]));
    };
    auto col_op = [&](int dst, int src, const I& q) {  // col dst -= q * col src
        for (int r = 0; r < rows; ++r)
            if (m[r][src] != 0) m[r][dst] = checked_sub(m[r][dst], checked_mul(q, m[r][src]));
    };
    for (int t = 0; t < std::min(rows, cols); ++t) {
        // Pivot of smallest absolute value in the remaining block.
        auto find_pivot = [&](int& pr, int& pc) {
            pr = pc = -1;
            I best = 0;
            for (int r = t; r < rows; ++r)
                for (int c = t; c < cols; ++c)
                    if (m[r][c] != 0 && (pr < 0 || abs_value(m[r][c]) < best)) {
                        best = abs_value(m[r][c]);
                        pr = r;
                        pc = c;
                        if (best == 1) return;
                    }
        };
        int pr, pc;
        find_pivot(pr, pc);
        if (pr < 0) break;
        std::swap(m[t], m[pr]);
        for (int r = 0; r < rows; ++r) std::swap(m[r][t], m[r][pc]);
        for (;;) {
            bool dirty = false;
            for (int r = t + 1; r < rows; ++r) {
                if (m[r][t] == 0) continue;
                const I q = m[r][t] / m[t][t];
                row_op(r, t, q);
                if (m[r][t] != 0) {
                    std::swap(m[t], m[r]);
                    dirty = true;
                }
            }
            for (int c = t + 1; c < cols; ++c) {
                if (m[t][c] == 0) continue;
                const I q = m[t][c] / m[t][t];
                col_op(c, t, q);
                if (m[t][c] != 0) {
                    for (int r = 0; r < rows; ++r) std::swap(m[r][t], m[r][c]);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Pivot must divide the rest of the block.
            int bad = -1;
            for (int r = t + 1; r < rows && bad < 0; ++r)
                for (int c = t + 1; c < cols; ++c)
                    if (m[r][c] % m[t][t] != 0) {
                        bad = r;
                        break;
                    }
            if (bad < 0) break;
            for (int c = t; c < cols; ++c) m[t][c] = checked_add(m[t][c], m[bad][c]);
        }
        diag.push_back(abs_value(m[t][t]));
    }
    return diag;
}

template <class I>
std::vector<std::vector<I>> convert(const IntMatrix& a) {
    std::vector<std::vector<I>> m(a.rows, std::vector<I>(a.cols));
    for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < a.cols; ++c) m[r][c] = I(a.at(r, c));
    return m;
}

}  // namespace detail

/// Nonzero invariant factors of an integer matrix, exact.
inline std::vector<BigInt> smith_normal_form(const IntMatrix& a) {
    std::vector<BigInt> out;
    try {
        for (std::int64_t v : detail::smith_diagonal(detail::convert<std::int64_t>(a), a.rows, a.cols)) out.emplace_back(v);
    } catch (const detail::Overflow&) {
        out = detail::smith_diagonal(detail::convert<BigInt>(a), a.rows, a.cols);
    }
    return out;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols != b.rows) throw PreconditionError("matrix sizes do not match");
    IntMatrix c(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
        for (int k = 0; k < a.cols; ++k) {
            const std::int64_t v = a.at(r, k);
            if (v == 0) continue;
            for (int j = 0; j < b.cols; ++j) c.at(r, j) += v * b.at(k, j);
        }
    return c;
}

/// First degree k with boundary[k-1] o boundary[k] != 0, if any.
inline std::optional<int> boundary_squared_failure(const ChainComplex& c) {
    for (int k = 2; k < int(c.boundary.size()); ++k)
        if (!multiply(c.boundary[k - 1], c.boundary[k]).is_zero()) return k;
    return std::nullopt;
}

/// Normalized chains: nondegenerate simplices, degenerate faces sent to zero.
inline ChainComplex chains_simplicial(const SimplicialSet& s) {
    const auto deg = degenerate_flags(s);
    std::vector<std::vector<int>> pos(s.dim + 1);
    ChainComplex c;
    c.valid_through = s.dim - 1;
    for (int k = 0; k <= s.dim; ++k) {
        pos[k].assign(s.count(k), -1);
        int n = 0;
        for (int x = 0; x < s.count(k); ++x)
            if (!deg[k][x]) pos[k][x] = n++;
        c.ranks.push_back(n);
    }
    c.boundary.emplace_back(0, c.ranks[0]);
    for (int k = 1; k <= s.dim; ++k) {
        IntMatrix m(c.ranks[k - 1], c.ranks[k]);
        for (int x = 0; x < s.count(k); ++x) {
            if (pos[k][x] < 0) continue;
            for (int i = 0; i <= k; ++i) {
                const int y = pos[k - 1][s.down[k][i][x]];
                if (y >= 0) m.at(y, pos[k][x]) += (i % 2 == 0) ? 1 : -1;
            }
        }
        c.boundary.push_back(std::move(m));
    }
    return c;
}

/// Cubical chains: cubes outside every degeneracy and connection image;
/// the boundary is the sum over i of (-1)^i (x d_{i,1} - x d_{i,0}).
inline ChainComplex chains_cubical(const CubicalSet& x) {
    const auto deg = degenerate_flags(x);
    std::vector<std::vector<int>> pos(x.dim + 1);
    ChainComplex c;
    c.valid_through = x.dim - 1;
    for (int k = 0; k <= x.dim; ++k) {
        pos[k].assign(x.count(k), -1);
        int n = 0;
        for (int v = 0; v < x.count(k); ++v)
            if (!deg[k][v]) pos[k][v] = n++;
        c.ranks.push_back(n);
    }
    c.boundary.emplace_back(0, c.ranks[0]);
    for (int k = 1; k <= x.dim; ++k) {
        IntMatrix m(c.ranks[k - 1], c.ranks[k]);
        for (int v = 0; v < x.count(k); ++v) {
            if (pos[k][v] < 0) continue;
            for (int i = 1; i <= k; ++i) {
                const int sign = i % 2 == 0 ? 1 : -1;
                for (int e = 0; e < 2; ++e) {
                    const int y = pos[k - 1][x.down[k][CubicalShape::face_index(i, e)][v]];
                    if (y >= 0) m.at(y, pos[k][v]) += e == 1 ? sign : -sign;
                }
            }
        }
        c.boundary.push_back(std::move(m));
    }
    return c;
}

struct HomologyGroup {
    int rank = 0;
    std::vector<BigInt> torsion;  // invariant factors > 1

    bool is_zero() const { return rank == 0 && torsion.empty(); }
    bool is_z() const { return rank == 1 && torsion.empty(); }
    std::string str() const {
        std::string s;
        auto add = [&](const std::string& t) { s += (s.empty() ? "" : " + ") + t; };
        if (rank == 1) add("Z");
        else if (rank > 1) add("Z^" + std::to_string(rank));
        for (const auto& t : torsion) add("Z/" + t.str());
        return s.empty() ? "0" : s;
    }
    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct Homology {
    std::vector<HomologyGroup> groups;  // degrees 0..valid_through
    int valid_through = 0;
    friend bool operator==(const Homology&, const Homology&) = default;
};

/// Homology in the degrees the truncation determines.
inline Homology homology(const ChainComplex& c) {
    if (auto k = boundary_squared_failure(c))
        throw InvalidComplexError("boundary squared is nonzero in degree " + std::to_string(*k));
    const int top = int(c.ranks.size()) - 1;
    std::vector<std::vector<BigInt>> inv(top + 2);
    for (int k = 1; k <= top; ++k) inv[k] = smith_normal_form(c.boundary[k]);
    Homology h;
    h.valid_through = std::min(c.valid_through, top);
    for (int k = 0; k <= h.valid_through; ++k) {
        HomologyGroup g;
        const int rank_out = k >= 1 ? int(inv[k].size()) : 0;
        const int rank_in = k + 1 <= top ? int(inv[k + 1].size()) : 0;
        g.rank = c.ranks[k] - rank_out - rank_in;
        if (k + 1 <= top)
            for (const auto& v : inv[k + 1])
                if (v > 1) g.torsion.push_back(v);
        h.groups.push_back(std::move(g));
    }
    return h;
}

enum class HomologyPipeline { simplicial, cubical };

inline Homology cubical_set_homology(const CubicalSet& x, HomologyPipeline p = HomologyPipeline::simplicial) {
    if (p == HomologyPipeline::cubical) return homology(chains_cubical(x));
    Homology h = homology(chains_simplicial(*triangulate(x).object));
    h.valid_through = std::min(h.valid_through, x.dim - 1);
    h.groups.resize(std::max(0, h.valid_through + 1));
    return h;
}

}  // namespace cubical
