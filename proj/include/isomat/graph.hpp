#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "isomat/gf2.hpp"

namespace isomat {

/// A looped simple graph: symmetric adjacency between distinct vertices
/// plus a set of looped vertices. At most 64 vertices (rows are masks).
class LoopedSimpleGraph {
public:
    LoopedSimpleGraph() = default;

    explicit LoopedSimpleGraph(std::size_t n) : n_(n), adj_(n, 0) {
        if (n > 64) throw std::invalid_argument("graph order above 64 is not supported");
    }

    static LoopedSimpleGraph from_edges(std::size_t n,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                        const std::vector<std::size_t>& loops = {}) {
        LoopedSimpleGraph g(n);
        for (auto [u, v] : edges) g.set_edge(u, v, true);
        for (std::size_t v : loops) g.set_loop(v, true);
        return g;
    }

    std::size_t order() const { return n_; }

    bool adjacent(std::size_t u, std::size_t v) const {
        check_vertex(u);
        check_vertex(v);
        return u != v && ((adj_[u] >> v) & 1u);
    }

    bool looped(std::size_t v) const {
        check_vertex(v);
        return (loops_ >> v) & 1u;
    }

    std::uint64_t neighbor_mask(std::size_t v) const {
        check_vertex(v);
        return adj_[v];
    }

    std::uint64_t loop_mask() const { return loops_; }

    std::size_t degree(std::size_t v) const { return std::popcount(neighbor_mask(v)); }

    std::vector<std::size_t> neighbors(std::size_t v) const {
        std::vector<std::size_t> out;
        for (std::uint64_t m = neighbor_mask(v); m; m &= m - 1)
            out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        return out;
    }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (auto row : adj_) twice += std::popcount(row);
        return twice / 2;
    }

    void set_edge(std::size_t u, std::size_t v, bool present) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("loop status is set via set_loop, not set_edge");
        std::uint64_t bu = std::uint64_t{1} << u, bv = std::uint64_t{1} << v;
        if (present) {
            adj_[u] |= bv;
            adj_[v] |= bu;
        } else {
            adj_[u] &= ~bv;
            adj_[v] &= ~bu;
        }
    }

    void toggle_edge(std::size_t u, std::size_t v) { set_edge(u, v, !adjacent(u, v)); }

    void set_loop(std::size_t v, bool present) {
        check_vertex(v);
        std::uint64_t b = std::uint64_t{1} << v;
        loops_ = present ? (loops_ | b) : (loops_ & ~b);
    }

    void toggle_loop(std::size_t v) { set_loop(v, !looped(v)); }

    friend bool operator==(const LoopedSimpleGraph&, const LoopedSimpleGraph&) = default;

    void check_vertex(std::size_t v) const {
        if (v >= n_) throw std::out_of_range("vertex out of range");
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> adj_;  // zero diagonal by construction
    std::uint64_t loops_ = 0;
};

/// A(G): symmetric GF(2) matrix, diagonal 1 exactly at looped vertices.
inline Gf2Matrix adjacency_matrix(const LoopedSimpleGraph& g) {
    std::size_t n = g.order();
    Gf2Matrix a(n, n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::uint64_t m = g.neighbor_mask(v); m; m &= m - 1)
            a.set(v, static_cast<std::size_t>(std::countr_zero(m)), true);
        if (g.looped(v)) a.set(v, v, true);
    }
    return a;
}

/// Column of A(G) for vertex v, as a row-bit pattern.
inline std::uint64_t adjacency_column(const LoopedSimpleGraph& g, std::size_t v) {
    return g.neighbor_mask(v) | (std::uint64_t{g.looped(v)} << v);
}

/// G_s^v: toggle all adjacencies between distinct neighbors of v.
inline LoopedSimpleGraph simple_local_complement(const LoopedSimpleGraph& g, std::size_t v) {
    g.check_vertex(v);
    LoopedSimpleGraph out = g;
    std::uint64_t nb = g.neighbor_mask(v);
    for (std::uint64_t mu = nb; mu; mu &= mu - 1) {
        std::size_t u = static_cast<std::size_t>(std::countr_zero(mu));
        for (std::uint64_t mw = mu & (mu - 1); mw; mw &= mw - 1)
            out.toggle_edge(u, static_cast<std::size_t>(std::countr_zero(mw)));
    }
    return out;
}

/// Toggle the loop status of v, nothing else.
inline LoopedSimpleGraph loop_complement(const LoopedSimpleGraph& g, std::size_t v) {
    g.check_vertex(v);
    LoopedSimpleGraph out = g;
    out.toggle_loop(v);
    return out;
}

/// G_ns^v: simple local complement at v followed by loop complementation
/// on every neighbor of v.
inline LoopedSimpleGraph nonsimple_local_complement(const LoopedSimpleGraph& g, std::size_t v) {
    LoopedSimpleGraph out = simple_local_complement(g, v);
    for (std::uint64_t m = g.neighbor_mask(v); m; m &= m - 1)
        out.toggle_loop(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
}

/// Edge pivot G^{vw} = ((G_s^v)_s^w)_s^v. Requires v,w adjacent.
inline LoopedSimpleGraph edge_pivot(const LoopedSimpleGraph& g, std::size_t v, std::size_t w) {
    if (v == w) throw std::invalid_argument("edge_pivot needs two distinct vertices");
    if (!g.adjacent(v, w)) throw std::invalid_argument("edge_pivot needs adjacent vertices");
    return simple_local_complement(simple_local_complement(simple_local_complement(g, v), w), v);
}

/// Induced graph on V - {v}; remaining vertices are reindexed preserving order.
inline LoopedSimpleGraph delete_vertex(const LoopedSimpleGraph& g, std::size_t v) {
    g.check_vertex(v);
    std::size_t n = g.order();
    LoopedSimpleGraph out(n - 1);
    auto newindex = [v](std::size_t x) { return x < v ? x : x - 1; };
    for (std::size_t a = 0; a < n; ++a) {
        if (a == v) continue;
        if (g.looped(a)) out.set_loop(newindex(a), true);
        for (std::size_t b = a + 1; b < n; ++b)
            if (b != v && g.adjacent(a, b)) out.set_edge(newindex(a), newindex(b), true);
    }
    return out;
}

/// Ordered quadruples (u,v,w,x) of distinct unlooped vertices with
/// N(v) = {u,w}, N(w) = {v,x} and N(u)-{v} = N(x)-{w}.
inline std::vector<std::array<std::size_t, 4>> find_matched_4paths(const LoopedSimpleGraph& g) {
    std::vector<std::array<std::size_t, 4>> out;
    std::size_t n = g.order();
    auto bit = [](std::size_t i) { return std::uint64_t{1} << i; };
    for (std::size_t v = 0; v < n; ++v) {
        if (g.looped(v) || g.degree(v) != 2) continue;
        for (std::size_t w = 0; w < n; ++w) {
            if (w == v || g.looped(w) || g.degree(w) != 2 || !g.adjacent(v, w)) continue;
            for (std::size_t u = 0; u < n; ++u) {
                if (u == v || u == w || g.looped(u)) continue;
                if (g.neighbor_mask(v) != (bit(u) | bit(w))) continue;
                for (std::size_t x = 0; x < n; ++x) {
                    if (x == u || x == v || x == w || g.looped(x)) continue;
                    if (g.neighbor_mask(w) != (bit(v) | bit(x))) continue;
                    if ((g.neighbor_mask(u) & ~bit(v)) == (g.neighbor_mask(x) & ~bit(w)))
                        out.push_back({u, v, w, x});
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {
/// Encode a labelled graph into one word: upper-triangle adjacency bits in
/// row-major pair order, then loop bits, most significant first.
inline std::uint64_t encode_with_permutation(const LoopedSimpleGraph& g,
                                             const std::vector<std::size_t>& p) {
    std::uint64_t code = 0;
    std::size_t n = g.order();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            code = (code << 1) | std::uint64_t{g.adjacent(p[i], p[j])};
    for (std::size_t i = 0; i < n; ++i)
        code = (code << 1) | std::uint64_t{g.looped(p[i])};
    return code;
}
}  // namespace detail

/// Minimum over all vertex permutations of the (adjacency bits, loop bits)
/// encoding. Equal codes iff the graphs are isomorphic. Brute force, so the
/// order is capped (default 8).
inline std::string canonical_code(const LoopedSimpleGraph& g, std::size_t limit = 8) {
    std::size_t n = g.order();
    if (n > limit) throw std::invalid_argument("canonical_code: order exceeds configured limit");
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
        best = std::min(best, detail::encode_with_permutation(g, p));
    } while (std::next_permutation(p.begin(), p.end()));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%zu:%016llx", n, static_cast<unsigned long long>(best));
    return buf;
}

}  // namespace isomat
