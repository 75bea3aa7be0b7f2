#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "isomat/isotropic.hpp"

namespace isomat {

/// D(G): the vertex subsets whose principal submatrix of A(G) is
/// nonsingular. Feasible sets are stored as sorted vertex masks.
struct DeltaMatroid {
    std::size_t n = 0;
    std::vector<std::uint32_t> feasible;

    bool is_feasible(std::uint32_t mask) const {
        return std::binary_search(feasible.begin(), feasible.end(), mask);
    }

    friend bool operator==(const DeltaMatroid&, const DeltaMatroid&) = default;
};

namespace detail {
/// Rank of the principal submatrix A(g)[S], computed on row masks.
inline std::size_t principal_rank(const LoopedSimpleGraph& g, std::uint32_t s) {
    Gf2Basis b;
    for (std::uint32_t m = s; m; m &= m - 1) {
        std::size_t v = static_cast<std::size_t>(std::countr_zero(m));
        b.insert(adjacency_column(g, v) & s);
    }
    return b.size();
}

inline void check_delta_order(const LoopedSimpleGraph& g, std::size_t limit) {
    if (g.order() > limit) throw std::invalid_argument("delta-matroid order exceeds configured limit");
}
}  // namespace detail

/// Feasible sets by the definition: A(G)[S] nonsingular (the empty matrix
/// counts as nonsingular).
inline DeltaMatroid delta_matroid(const LoopedSimpleGraph& g, std::size_t limit = 12) {
    detail::check_delta_order(g, limit);
    std::size_t n = g.order();
    DeltaMatroid d{n, {}};
    std::uint32_t all = n == 32 ? ~0u : ((std::uint32_t{1} << n) - 1);
    for (std::uint32_t s = 0;; ++s) {
        if (detail::principal_rank(g, s) == static_cast<std::size_t>(std::popcount(s)))
            d.feasible.push_back(s);
        if (s == all) break;
    }
    return d;
}

/// Feasible sets via bases of M(IAS(G)): S is feasible iff
/// {s_chi : s in S} ∪ {v_phi : v not in S} is a basis.
inline DeltaMatroid delta_via_bases(const LoopedSimpleGraph& g, std::size_t limit = 12) {
    detail::check_delta_order(g, limit);
    std::size_t n = g.order();
    DeltaMatroid d{n, {}};
    std::uint32_t all = n == 32 ? ~0u : ((std::uint32_t{1} << n) - 1);
    for (std::uint32_t s = 0;; ++s) {
        Gf2Basis b;
        std::size_t r = 0;
        for (std::size_t v = 0; v < n; ++v) {
            bool in_s = (s >> v) & 1u;
            r += b.insert(ias_column(g, v, in_s ? Flavor::chi : Flavor::phi));
        }
        if (r == n) d.feasible.push_back(s);
        if (s == all) break;
    }
    return d;
}

/// Twisting: symmetric difference of every feasible set with x.
inline DeltaMatroid twist(const DeltaMatroid& d, std::uint32_t x) {
    std::uint32_t all = d.n >= 32 ? ~0u : ((std::uint32_t{1} << d.n) - 1);
    if (x & ~all) throw std::invalid_argument("twist set contains unknown vertices");
    DeltaMatroid out{d.n, {}};
    out.feasible.reserve(d.feasible.size());
    for (std::uint32_t s : d.feasible) out.feasible.push_back(s ^ x);
    std::sort(out.feasible.begin(), out.feasible.end());
    return out;
}

/// Reconstruct G from D(G): v is looped iff {v} is feasible; looped pairs
/// are adjacent iff {v,w} is infeasible, all other pairs are adjacent iff
/// {v,w} is feasible. No validation that d really came from a graph.
inline LoopedSimpleGraph graph_from_delta(const DeltaMatroid& d) {
    LoopedSimpleGraph g(d.n);
    for (std::size_t v = 0; v < d.n; ++v)
        if (d.is_feasible(std::uint32_t{1} << v)) g.set_loop(v, true);
    for (std::size_t v = 0; v < d.n; ++v)
        for (std::size_t w = v + 1; w < d.n; ++w) {
            bool pair_feasible = d.is_feasible((std::uint32_t{1} << v) | (std::uint32_t{1} << w));
            bool adjacent = (g.looped(v) && g.looped(w)) ? !pair_feasible : pair_feasible;
            if (adjacent) g.set_edge(v, w, true);
        }
    return g;
}

/// A subtransversal whose selected IAS columns sum to zero.
struct TransverseCycle {
    SubTransversal sel;
    friend bool operator==(const TransverseCycle&, const TransverseCycle&) = default;
    friend bool operator<(const TransverseCycle& a, const TransverseCycle& b) { return a.sel < b.sel; }
};

/// Addition on S(W(G)), by the four per-vertex cases: copy through an empty
/// side, cancel equal picks, and combine two distinct picks into the third
/// flavor.
inline SubTransversal boxplus(const SubTransversal& s, const SubTransversal& t) {
    if (s.order() != t.order()) throw std::invalid_argument("boxplus: vertex sets differ");
    SubTransversal out(s.order());
    for (std::size_t v = 0; v < s.order(); ++v) {
        auto fs = s.flavor_at(v), ft = t.flavor_at(v);
        if (!fs && !ft) continue;
        if (!fs) {
            out = out.with(v, *ft);
        } else if (!ft) {
            out = out.with(v, *fs);
        } else if (*fs == *ft) {
            // cancels
        } else {
            int third = 3 - static_cast<int>(*fs) - static_cast<int>(*ft);
            out = out.with(v, static_cast<Flavor>(third));
        }
    }
    return out;
}

/// All transverse cycles, by filtering every subtransversal against the
/// definition (selected columns sum to zero). Gray-code walk over the
/// 4^n encodings keeps the filter cheap.
inline std::vector<TransverseCycle> transverse_cycles(const LoopedSimpleGraph& g,
                                                      std::size_t limit = 12) {
    detail::check_delta_order(g, limit);
    std::size_t n = g.order();
    std::vector<TransverseCycle> out;
    // Column deltas for one two-bit counter step at each vertex:
    // codes cycle 00 -> 01 -> 10 -> 11 (none, phi, chi, psi).
    std::vector<std::array<std::uint64_t, 4>> col(n);
    for (std::size_t v = 0; v < n; ++v)
        col[v] = {0, ias_column(g, v, Flavor::phi), ias_column(g, v, Flavor::chi),
                  ias_column(g, v, Flavor::psi)};
    std::uint64_t total = std::uint64_t{1} << (2 * n);
    std::uint64_t acc = 0;
    for (std::uint64_t enc = 0;; ++enc) {
        if (acc == 0) out.push_back({SubTransversal::from_raw(n, enc)});
        if (enc + 1 == total || n == 0) break;
        // increment the base-4 counter, updating the column sum
        std::uint64_t next = enc + 1;
        for (std::size_t v = 0; v < n; ++v) {
            unsigned before = (enc >> (2 * v)) & 3u;
            unsigned after = (next >> (2 * v)) & 3u;
            if (before == after) break;  // carries stop here
            acc ^= col[v][before] ^ col[v][after];
        }
    }
    return out;
}

/// The parametrized description of L(G): for X ⊆ V, combine the
/// chi/psi-flavored picks over X (psi at looped vertices) with phi picks at
/// the vertices seeing X an odd number of times.
inline std::vector<TransverseCycle> cycles_by_formula(const LoopedSimpleGraph& g,
                                                      std::size_t limit = 12) {
    detail::check_delta_order(g, limit);
    std::size_t n = g.order();
    std::vector<TransverseCycle> out;
    std::uint64_t all = n == 0 ? 0 : (std::uint64_t{1} << n) - 1;
    for (std::uint64_t x = 0;; ++x) {
        SubTransversal psi_part(n), phi_part(n);
        std::uint64_t odd = 0;
        for (std::uint64_t m = x; m; m &= m - 1) {
            std::size_t v = static_cast<std::size_t>(std::countr_zero(m));
            psi_part = psi_part.with(v, g.looped(v) ? Flavor::psi : Flavor::chi);
            odd ^= g.neighbor_mask(v);
        }
        for (std::uint64_t m = odd; m; m &= m - 1)
            phi_part = phi_part.with(static_cast<std::size_t>(std::countr_zero(m)), Flavor::phi);
        out.push_back({boxplus(psi_part, phi_part)});
        if (x == all) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The unique transverse cycle inside {v_chi, v_psi} ∪ {w_phi : w != v};
/// it records N(v) and the loop status of v.
inline TransverseCycle zeta(const LoopedSimpleGraph& g, std::size_t v) {
    g.check_vertex(v);
    SubTransversal s(g.order());
    s = s.with(v, g.looped(v) ? Flavor::psi : Flavor::chi);
    for (std::uint64_t m = g.neighbor_mask(v); m; m &= m - 1)
        s = s.with(static_cast<std::size_t>(std::countr_zero(m)), Flavor::phi);
    return {s};
}

/// True iff s matches the zeta_v pattern: the pick at v is chi or psi and
/// every other pick is phi.
inline bool fits_zeta_pattern(const SubTransversal& s, std::size_t v) {
    auto fv = s.flavor_at(v);
    if (!fv || *fv == Flavor::phi) return false;
    for (std::size_t w = 0; w < s.order(); ++w) {
        if (w == v) continue;
        auto fw = s.flavor_at(w);
        if (fw && *fw != Flavor::phi) return false;
    }
    return true;
}

/// Rebuild the graph from L(G): neighborhoods and loop statuses are read
/// off the zeta_v cycles.
inline LoopedSimpleGraph graph_from_cycles(const std::vector<TransverseCycle>& cycles,
                                           std::size_t n) {
    std::vector<std::uint64_t> nbr(n, 0);
    std::uint64_t loops = 0;
    for (std::size_t v = 0; v < n; ++v) {
        const SubTransversal* z = nullptr;
        for (const auto& c : cycles) {
            if (c.sel.order() != n) throw std::invalid_argument("cycle over a different vertex set");
            if (fits_zeta_pattern(c.sel, v)) {
                if (z) throw std::invalid_argument("multiple zeta cycles for vertex " + std::to_string(v));
                z = &c.sel;
            }
        }
        if (!z) throw std::invalid_argument("no zeta cycle for vertex " + std::to_string(v));
        if (*z->flavor_at(v) == Flavor::psi) loops |= std::uint64_t{1} << v;
        for (std::size_t w = 0; w < n; ++w)
            if (w != v && z->flavor_at(w)) nbr[v] |= std::uint64_t{1} << w;
    }
    LoopedSimpleGraph g(n);
    for (std::size_t v = 0; v < n; ++v) {
        if ((loops >> v) & 1u) g.set_loop(v, true);
        for (std::size_t w = v + 1; w < n; ++w) {
            bool vw = (nbr[v] >> w) & 1u, wv = (nbr[w] >> v) & 1u;
            if (vw != wv) throw std::invalid_argument("cycles describe asymmetric neighborhoods");
            if (vw) g.set_edge(v, w, true);
        }
    }
    return g;
}

}  // namespace isomat
