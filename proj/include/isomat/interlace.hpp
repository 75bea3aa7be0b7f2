#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "isomat/delta.hpp"
#include "isomat/isotropic.hpp"
#include "isomat/poly.hpp"

namespace isomat {

/// Per-element weights for the parametrized rank polynomial: a(w) rides
/// along when w is in the subset, b(w) when it is not. Indexed by the
/// ground order of W(G).
struct ParamAssignment {
    std::vector<MultiPoly> a, b;

    static ParamAssignment ones(std::size_t ground_size) {
        ParamAssignment p;
        p.a.assign(ground_size, MultiPoly::constant(1));
        p.b.assign(ground_size, MultiPoly::constant(1));
        return p;
    }

    /// The assignment that extracts the interlace polynomial q(G):
    /// a(v_phi) = 1, a(v_chi) = x-1, a(v_psi) = 0, b = 1.
    static ParamAssignment interlace_preset(std::size_t n) {
        ParamAssignment p = ones(3 * n);
        MultiPoly xm1 = MultiPoly::variable(Var::x) - MultiPoly::constant(1);
        for (std::size_t v = 0; v < n; ++v) {
            p.a[ground_index(n, v, Flavor::chi)] = xm1;
            p.a[ground_index(n, v, Flavor::psi)] = MultiPoly();
        }
        return p;
    }

    /// Kills the psi block only, leaving everything else at 1; the section
    /// then ranges over T_0(W(G)).
    static ParamAssignment zero_psi_preset(std::size_t n) {
        ParamAssignment p = ones(3 * n);
        for (std::size_t v = 0; v < n; ++v) p.a[ground_index(n, v, Flavor::psi)] = MultiPoly();
        return p;
    }
};

namespace detail {
inline void check_ground_limit(std::size_t size, std::size_t limit, const char* what) {
    if (size > limit) throw std::invalid_argument(std::string(what) + ": size exceeds configured limit");
}
}  // namespace detail

/// t(M) = sum over subsets T of s^{r(W)-r(T)} z^{|T|-r(T)}.
inline MultiPoly tutte_subset_expansion(const BinaryMatroid& m, std::size_t limit = 12) {
    detail::check_ground_limit(m.size(), limit, "tutte_subset_expansion");
    std::size_t R = m.rank_full();
    std::map<std::pair<std::size_t, std::size_t>, long long> counts;  // (corank, nullity)
    std::uint64_t full = m.full_mask();
    for (std::uint64_t t = 0;; ++t) {
        std::size_t r = m.rank_of_mask(t);
        ++counts[{R - r, static_cast<std::size_t>(std::popcount(t)) - r}];
        if (t == full) break;
    }
    MultiPoly out;
    for (auto [key, c] : counts)
        out += MultiPoly::variable(Var::s, static_cast<unsigned>(key.first), c) *
               MultiPoly::variable(Var::z, static_cast<unsigned>(key.second));
    return out;
}

/// Zaslavsky's parametrized rank polynomial: the subset expansion with
/// per-element weights.
inline MultiPoly parametrized_rank_poly(const BinaryMatroid& m, const ParamAssignment& p,
                                        std::size_t limit = 12) {
    detail::check_ground_limit(m.size(), limit, "parametrized_rank_poly");
    if (p.a.size() != m.size() || p.b.size() != m.size())
        throw std::invalid_argument("parameter assignment does not cover the ground set");
    std::size_t R = m.rank_full();
    MultiPoly out;
    std::uint64_t full = m.full_mask();
    for (std::uint64_t t = 0;; ++t) {
        MultiPoly prod = MultiPoly::constant(1);
        for (std::size_t e = 0; e < m.size() && !prod.is_zero(); ++e)
            prod *= (t >> e & 1u) ? p.a[e] : p.b[e];
        if (!prod.is_zero()) {
            std::size_t r = m.rank_of_mask(t);
            out += prod * MultiPoly::variable(Var::s, static_cast<unsigned>(R - r)) *
                   MultiPoly::variable(Var::z, static_cast<unsigned>(std::popcount(t) - r));
        }
        if (t == full) break;
    }
    return out;
}

/// The section of the parametrized rank polynomial over the transversals
/// of the canonical partition. Every transversal T has |T| = n = r(W), so
/// s and z carry the same exponent; u stands for their product.
inline MultiPoly transversal_section(const LoopedSimpleGraph& g, const ParamAssignment& p,
                                     std::size_t limit = 12) {
    std::size_t n = g.order();
    detail::check_ground_limit(n, limit, "transversal_section");
    if (p.a.size() != 3 * n || p.b.size() != 3 * n)
        throw std::invalid_argument("parameter assignment does not cover W(G)");

    MultiPoly out;
    std::vector<std::uint64_t> basis_slots;  // filled Gf2Basis slots, for rollback
    Gf2Basis basis;
    MultiPoly prefix = MultiPoly::constant(1);

    auto rec = [&](auto&& self, std::size_t v, std::size_t rank_so_far, const MultiPoly& prod) -> void {
        if (prod.is_zero()) return;
        if (v == n) {
            out += prod * MultiPoly::variable(Var::u, static_cast<unsigned>(n - rank_so_far));
            return;
        }
        for (Flavor f : kFlavors) {
            MultiPoly next = prod * p.a[ground_index(n, v, f)];
            if (next.is_zero()) continue;
            for (Flavor other : kFlavors)
                if (other != f) next *= p.b[ground_index(n, v, other)];
            if (next.is_zero()) continue;
            bool grew = basis.insert(ias_column(g, v, f));
            unsigned slot = basis.last_slot();
            self(self, v + 1, rank_so_far + grew, next);
            if (grew) basis.erase_slot(slot);
        }
    };
    rec(rec, 0, 0, prefix);
    return out;
}

/// q(G) by its defining subset expansion over principal submatrix ranks.
inline MultiPoly interlace_q(const LoopedSimpleGraph& g, std::size_t limit = 14) {
    std::size_t n = g.order();
    detail::check_ground_limit(n, limit, "interlace_q");
    std::map<std::pair<std::size_t, std::size_t>, long long> counts;  // (r, |S|-r)
    std::uint32_t all = n == 0 ? 0 : ((std::uint32_t{1} << n) - 1);
    for (std::uint32_t s = 0;; ++s) {
        std::size_t r = detail::principal_rank(g, s);
        ++counts[{r, static_cast<std::size_t>(std::popcount(s)) - r}];
        if (s == all) break;
    }
    MultiPoly xm1 = MultiPoly::variable(Var::x) - MultiPoly::constant(1);
    MultiPoly ym1 = MultiPoly::variable(Var::y) - MultiPoly::constant(1);
    std::vector<MultiPoly> xp{MultiPoly::constant(1)}, yp{MultiPoly::constant(1)};
    for (std::size_t i = 1; i <= n; ++i) {
        xp.push_back(xp.back() * xm1);
        yp.push_back(yp.back() * ym1);
    }
    MultiPoly out;
    for (auto [key, c] : counts) out += MultiPoly::constant(c) * xp[key.first] * yp[key.second];
    return out;
}

/// q(G) recovered from the transversal section restricted to T_0: the rank
/// of a transversal in M(IAS(G)) determines the principal-submatrix rank
/// through r(T) = n - |S(T)| + r(A[S(T)]).
inline MultiPoly interlace_via_section(const LoopedSimpleGraph& g, std::size_t limit = 12) {
    std::size_t n = g.order();
    detail::check_ground_limit(n, limit, "interlace_via_section");
    std::map<std::pair<std::size_t, std::size_t>, long long> counts;  // (rA, |S|-rA)
    std::uint32_t all = n == 0 ? 0 : ((std::uint32_t{1} << n) - 1);
    for (std::uint32_t s = 0;; ++s) {
        Gf2Basis b;
        for (std::size_t v = 0; v < n; ++v)
            b.insert(ias_column(g, v, (s >> v & 1u) ? Flavor::chi : Flavor::phi));
        std::size_t rT = b.size();
        std::size_t size = static_cast<std::size_t>(std::popcount(s));
        std::size_t rA = rT - (n - size);
        ++counts[{rA, size - rA}];
        if (s == all) break;
    }
    MultiPoly xm1 = MultiPoly::variable(Var::x) - MultiPoly::constant(1);
    MultiPoly ym1 = MultiPoly::variable(Var::y) - MultiPoly::constant(1);
    std::vector<MultiPoly> xp{MultiPoly::constant(1)}, yp{MultiPoly::constant(1)};
    for (std::size_t i = 1; i <= n; ++i) {
        xp.push_back(xp.back() * xm1);
        yp.push_back(yp.back() * ym1);
    }
    MultiPoly out;
    for (auto [key, c] : counts) out += MultiPoly::constant(c) * xp[key.first] * yp[key.second];
    return out;
}

/// The one-variable vertex-nullity interlace polynomial, via x = 2.
inline MultiPoly vertex_nullity_specialization(const LoopedSimpleGraph& g, std::size_t limit = 14) {
    return interlace_q(g, limit).substitute(Var::x, 2);
}

}  // namespace isomat
