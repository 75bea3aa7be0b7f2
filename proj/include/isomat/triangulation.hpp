#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "isomat/isotropic.hpp"

namespace isomat {

/// A partition of W(G) into 3-element cells, stored over ground indices.
/// normalize() gives a canonical form for comparisons.
struct Triangulation {
    std::vector<std::array<std::size_t, 3>> cells;

    void normalize() {
        for (auto& c : cells) std::sort(c.begin(), c.end());
        std::sort(cells.begin(), cells.end());
    }

    friend bool operator==(const Triangulation&, const Triangulation&) = default;
};

inline Triangulation canonical_partition(const LoopedSimpleGraph& g) {
    std::size_t n = g.order();
    Triangulation t;
    for (std::size_t v = 0; v < n; ++v)
        t.cells.push_back({ground_index(n, v, Flavor::phi), ground_index(n, v, Flavor::chi),
                           ground_index(n, v, Flavor::psi)});
    t.normalize();
    return t;
}

inline bool is_canonical_cell(std::size_t n, const std::array<std::size_t, 3>& cell) {
    std::size_t v = cell[0] % n;
    return cell[1] % n == v && cell[2] % n == v;
}

/// The index ||P||: the number of non-canonical cells.
inline std::size_t triangulation_index(std::size_t n, const Triangulation& p) {
    std::size_t k = 0;
    for (const auto& c : p.cells) k += !is_canonical_cell(n, c);
    return k;
}

namespace detail {
inline void check_partition(std::size_t n, const Triangulation& p) {
    std::uint64_t seen = 0;
    if (p.cells.size() != n) throw std::invalid_argument("triangulation is not a partition of W(G)");
    for (const auto& c : p.cells)
        for (std::size_t e : c) {
            if (e >= 3 * n) throw std::invalid_argument("triangulation cell index out of range");
            std::uint64_t b = std::uint64_t{1} << e;
            if (seen & b) throw std::invalid_argument("triangulation cells overlap");
            seen |= b;
        }
}

/// A 3-cell is admissible iff its columns sum to zero and at most one of
/// them is zero: either a 3-circuit, or a matroid loop plus a parallel pair.
inline bool valid_cell_columns(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    if ((a ^ b ^ c) != 0) return false;
    int zeros = (a == 0) + (b == 0) + (c == 0);
    return zeros <= 1;
}
}  // namespace detail

/// True iff every cell is a 3-element circuit of M(IAS(g)) or a matroid
/// loop together with two parallel non-loops.
inline bool is_triangulation(const LoopedSimpleGraph& g, const Triangulation& p) {
    std::size_t n = g.order();
    detail::check_partition(n, p);
    auto cols = ias_columns(g);
    for (const auto& c : p.cells)
        if (!detail::valid_cell_columns(cols[c[0]], cols[c[1]], cols[c[2]])) return false;
    return true;
}

/// All triangulations of W(g), by exact cover over the admissible 3-cells.
inline std::vector<Triangulation> enumerate_triangulations(const LoopedSimpleGraph& g,
                                                           std::size_t limit = 5) {
    std::size_t n = g.order();
    if (n > limit) throw std::invalid_argument("enumerate_triangulations: order exceeds limit");
    auto cols = ias_columns(g);
    std::size_t w = 3 * n;
    std::vector<std::array<std::size_t, 3>> valid;
    for (std::size_t a = 0; a < w; ++a)
        for (std::size_t b = a + 1; b < w; ++b)
            for (std::size_t c = b + 1; c < w; ++c)
                if (detail::valid_cell_columns(cols[a], cols[b], cols[c])) valid.push_back({a, b, c});

    std::vector<Triangulation> out;
    std::vector<std::array<std::size_t, 3>> chosen;
    std::uint64_t all = w == 0 ? 0 : (std::uint64_t{1} << w) - 1;

    auto rec = [&](auto&& self, std::uint64_t covered) -> void {
        if (covered == all) {
            Triangulation t;
            t.cells = chosen;
            t.normalize();
            out.push_back(std::move(t));
            return;
        }
        std::size_t e = static_cast<std::size_t>(std::countr_zero(~covered));
        for (const auto& cell : valid) {
            std::uint64_t cm = (std::uint64_t{1} << cell[0]) | (std::uint64_t{1} << cell[1]) |
                               (std::uint64_t{1} << cell[2]);
            if (!(cm >> e & 1u) || (cm & covered)) continue;
            chosen.push_back(cell);
            self(self, covered | cm);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(),
              [](const Triangulation& a, const Triangulation& b) { return a.cells < b.cells; });
    return out;
}

inline bool is_matched_4path(const LoopedSimpleGraph& g, const std::array<std::size_t, 4>& q) {
    auto paths = find_matched_4paths(g);
    return std::find(paths.begin(), paths.end(), q) != paths.end();
}

/// The four replacement cells produced by bending a matched 4-path
/// (u,v,w,x): {u_phi,v_chi,w_phi}, {v_phi,w_chi,x_phi}, {u_psi,v_psi,x_chi},
/// {u_chi,w_psi,x_psi}.
inline std::vector<std::array<std::size_t, 3>> bent_cells(std::size_t n,
                                                          const std::array<std::size_t, 4>& q) {
    auto [u, v, w, x] = q;
    auto gi = [n](std::size_t vert, Flavor f) { return ground_index(n, vert, f); };
    std::vector<std::array<std::size_t, 3>> cells = {
        {gi(u, Flavor::phi), gi(v, Flavor::chi), gi(w, Flavor::phi)},
        {gi(v, Flavor::phi), gi(w, Flavor::chi), gi(x, Flavor::phi)},
        {gi(u, Flavor::psi), gi(v, Flavor::psi), gi(x, Flavor::chi)},
        {gi(u, Flavor::chi), gi(w, Flavor::psi), gi(x, Flavor::psi)}};
    for (auto& c : cells) std::sort(c.begin(), c.end());
    return cells;
}

/// Replace the four canonical cells of a matched 4-path with the bent cells.
inline Triangulation bend_4path(const LoopedSimpleGraph& g, const Triangulation& p,
                                const std::array<std::size_t, 4>& q) {
    std::size_t n = g.order();
    detail::check_partition(n, p);
    if (!is_matched_4path(g, q)) throw std::invalid_argument("bend_4path: not a matched 4-path");
    Triangulation out;
    std::size_t removed = 0;
    for (const auto& c : p.cells) {
        bool is_quad_canonical = false;
        for (std::size_t vert : q) {
            std::array<std::size_t, 3> canon = {ground_index(n, vert, Flavor::phi),
                                                ground_index(n, vert, Flavor::chi),
                                                ground_index(n, vert, Flavor::psi)};
            std::sort(canon.begin(), canon.end());
            auto cc = c;
            std::sort(cc.begin(), cc.end());
            if (cc == canon) {
                is_quad_canonical = true;
                break;
            }
        }
        if (is_quad_canonical)
            ++removed;
        else
            out.cells.push_back(c);
    }
    if (removed != 4)
        throw std::invalid_argument("bend_4path: p must contain the four canonical cells of the path");
    for (const auto& c : bent_cells(n, q)) out.cells.push_back(c);
    out.normalize();
    return out;
}

/// The automorphism alpha = (u_phi x_phi)(u_chi v_phi)(u_psi w_chi)
/// (v_chi x_psi)(v_psi w_psi)(w_phi x_chi); it carries the bent
/// triangulation back to the canonical partition.
inline std::vector<std::size_t> bent_4path_automorphism(const LoopedSimpleGraph& g,
                                                        const std::array<std::size_t, 4>& q) {
    if (!is_matched_4path(g, q))
        throw std::invalid_argument("bent_4path_automorphism: not a matched 4-path");
    std::size_t n = g.order();
    auto [u, v, w, x] = q;
    std::vector<std::size_t> perm(3 * n);
    std::iota(perm.begin(), perm.end(), 0);
    auto gi = [n](std::size_t vert, Flavor f) { return ground_index(n, vert, f); };
    auto swap2 = [&](std::size_t a, std::size_t b) { std::swap(perm[a], perm[b]); };
    swap2(gi(u, Flavor::phi), gi(x, Flavor::phi));
    swap2(gi(u, Flavor::chi), gi(v, Flavor::phi));
    swap2(gi(u, Flavor::psi), gi(w, Flavor::chi));
    swap2(gi(v, Flavor::chi), gi(x, Flavor::psi));
    swap2(gi(v, Flavor::psi), gi(w, Flavor::psi));
    swap2(gi(w, Flavor::phi), gi(x, Flavor::chi));
    return perm;
}

/// Check whether a ground permutation is an automorphism of M(IAS(g)).
inline bool is_ias_automorphism(const LoopedSimpleGraph& g, const std::vector<std::size_t>& perm) {
    std::size_t n = g.order();
    if (perm.size() != 3 * n) throw std::invalid_argument("ground permutation has wrong size");
    auto cols = ias_columns(g);
    std::vector<std::uint64_t> permuted(3 * n);
    for (std::size_t e = 0; e < 3 * n; ++e) permuted[perm[e]] = cols[e];
    return equal_row_spaces_of_columns(n, permuted, cols);
}

inline Triangulation apply_ground_perm(const std::vector<std::size_t>& perm, const Triangulation& p) {
    Triangulation out;
    for (const auto& c : p.cells) out.cells.push_back({perm[c[0]], perm[c[1]], perm[c[2]]});
    out.normalize();
    return out;
}

inline std::vector<std::size_t> compose_perm(const std::vector<std::size_t>& after,
                                             const std::vector<std::size_t>& first) {
    std::vector<std::size_t> out(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) out[i] = after[first[i]];
    return out;
}

inline std::vector<std::size_t> invert_perm(const std::vector<std::size_t>& p) {
    std::vector<std::size_t> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = i;
    return out;
}

/// Finds a matroid automorphism carrying a given triangulation to the
/// canonical partition. The reduction mirrors the constructive proof:
/// same-vertex cells are repaired by parallel swaps, bent 4-sets are
/// located by scanning the local-complementation orbit and unbent via
/// alpha, and a bounded brute-force search remains as a backstop.
class TriangulationCanonicalizer {
public:
    explicit TriangulationCanonicalizer(const LoopedSimpleGraph& g, std::size_t limit = 4) : g_(g) {
        if (g.order() > limit)
            throw std::invalid_argument("canonicalize_triangulation: order exceeds limit");
        build_orbit();
    }

    std::vector<std::size_t> run(Triangulation p) const {
        std::size_t n = g_.order();
        p.normalize();
        if (!is_triangulation(g_, p))
            throw std::invalid_argument("canonicalize_triangulation: input is not a triangulation");
        Triangulation canon = canonical_partition(g_);
        std::vector<std::size_t> alpha(3 * n);
        std::iota(alpha.begin(), alpha.end(), 0);
        auto cols = ias_columns(g_);

        for (std::size_t guard = 0; guard < 12 * n + 12; ++guard) {
            if (p == canon) return alpha;

            // Step 1: a non-canonical cell with two elements of one vertex.
            // The remaining element is interchangeable with the vertex's
            // third element (their columns agree), and the swap makes the
            // cell canonical.
            bool swapped = false;
            for (const auto& c : p.cells) {
                if (is_canonical_cell(n, c)) continue;
                for (int i = 0; i < 3 && !swapped; ++i)
                    for (int j = i + 1; j < 3 && !swapped; ++j) {
                        if (c[i] % n != c[j] % n) continue;
                        std::size_t v = c[i] % n;
                        int k = 3 - i - j;
                        std::size_t other = c[k];
                        std::size_t third = 3 * n;
                        for (Flavor f : kFlavors) {
                            std::size_t e = ground_index(n, v, f);
                            if (e != c[i] && e != c[j]) third = e;
                        }
                        if (cols[other] != cols[third])
                            throw std::logic_error("canonicalize: cell columns disagree");
                        std::vector<std::size_t> t(3 * n);
                        std::iota(t.begin(), t.end(), 0);
                        std::swap(t[other], t[third]);
                        p = apply_ground_perm(t, p);
                        alpha = compose_perm(t, alpha);
                        swapped = true;
                    }
                if (swapped) break;
            }
            if (swapped) continue;

            // Step 2: search the local/loop-complementation orbit for a
            // graph in which the image triangulation contains a bent
            // 4-path, possibly after one parallel swap.
            if (unbend_step(p, alpha)) continue;

            // Step 3: brute-force backstop over cell-to-vertex matchings.
            return brute_force(p, alpha);
        }
        return brute_force(p, alpha);
    }

private:
    struct OrbitEntry {
        LoopedSimpleGraph graph;
        std::vector<std::size_t> gm;      // ground map W(g_) -> W(graph)
        std::vector<std::size_t> gm_inv;
    };

    void build_orbit() {
        std::size_t n = g_.order();
        std::map<std::string, bool> seen;
        std::vector<std::size_t> id(3 * n);
        std::iota(id.begin(), id.end(), 0);
        orbit_.push_back({g_, id, id});
        seen[labelled_key(g_)] = true;
        for (std::size_t i = 0; i < orbit_.size(); ++i) {
            auto current = orbit_[i];  // copy: orbit_ may reallocate
            for (std::size_t v = 0; v < n; ++v) {
                for (ElementaryMove mv : {ElementaryMove::LocalComplement, ElementaryMove::LoopComplement}) {
                    auto [h, iso] = elementary_iso(current.graph, mv, v);
                    auto key = labelled_key(h);
                    if (seen.count(key)) continue;
                    seen[key] = true;
                    auto gm = compose_perm(ground_map_of(iso), current.gm);
                    orbit_.push_back({std::move(h), gm, invert_perm(gm)});
                }
            }
        }
    }

    static std::string labelled_key(const LoopedSimpleGraph& g) {
        std::string key;
        for (std::size_t v = 0; v < g.order(); ++v) {
            key += std::to_string(g.neighbor_mask(v));
            key += ',';
        }
        key += '|';
        key += std::to_string(g.loop_mask());
        return key;
    }

    bool unbend_step(Triangulation& p, std::vector<std::size_t>& alpha) const {
        std::size_t n = g_.order();
        for (const auto& entry : orbit_) {
            Triangulation q = apply_ground_perm(entry.gm, p);
            auto paths = find_matched_4paths(entry.graph);
            auto cols = ias_columns(entry.graph);

            auto contains_cells = [&](const Triangulation& tri,
                                      const std::vector<std::array<std::size_t, 3>>& cells) {
                for (const auto& c : cells)
                    if (std::find(tri.cells.begin(), tri.cells.end(), c) == tri.cells.end())
                        return false;
                return true;
            };

            for (const auto& quad : paths) {
                if (!contains_cells(q, bent_cells(n, quad))) continue;
                auto a = bent_4path_automorphism(entry.graph, quad);
                auto delta = compose_perm(entry.gm_inv, compose_perm(a, entry.gm));
                p = apply_ground_perm(delta, p);
                alpha = compose_perm(delta, alpha);
                return true;
            }

            // One parallel swap, then a bent 4-path (the stalled case of
            // the reduction).
            for (std::size_t e1 = 0; e1 < 3 * n; ++e1)
                for (std::size_t e2 = e1 + 1; e2 < 3 * n; ++e2) {
                    if (!cols[e1] || cols[e1] != cols[e2]) continue;
                    std::vector<std::size_t> t(3 * n);
                    std::iota(t.begin(), t.end(), 0);
                    std::swap(t[e1], t[e2]);
                    Triangulation q2 = apply_ground_perm(t, q);
                    for (const auto& quad : paths) {
                        if (!contains_cells(q2, bent_cells(n, quad))) continue;
                        auto a = bent_4path_automorphism(entry.graph, quad);
                        auto delta = compose_perm(
                            entry.gm_inv, compose_perm(a, compose_perm(t, entry.gm)));
                        p = apply_ground_perm(delta, p);
                        alpha = compose_perm(delta, alpha);
                        return true;
                    }
                }
        }
        return false;
    }

    std::vector<std::size_t> brute_force(const Triangulation& p,
                                         const std::vector<std::size_t>& alpha_so_far) const {
        std::size_t n = g_.order();
        std::vector<std::size_t> vperm(n);
        std::iota(vperm.begin(), vperm.end(), 0);
        auto flavors = all_s3();
        do {
            std::vector<std::size_t> choice(n, 0);
            while (true) {
                std::vector<std::size_t> perm(3 * n);
                for (std::size_t ci = 0; ci < p.cells.size(); ++ci) {
                    const auto& cell = p.cells[ci];
                    std::size_t target = vperm[ci];
                    const S3& s = flavors[choice[ci]];
                    for (int k = 0; k < 3; ++k)
                        perm[cell[k]] =
                            ground_index(n, target, s.apply(static_cast<Flavor>(k)));
                }
                if (is_ias_automorphism(g_, perm) &&
                    apply_ground_perm(perm, p) == canonical_partition(g_))
                    return compose_perm(perm, alpha_so_far);
                std::size_t i = 0;
                while (i < n && choice[i] == flavors.size() - 1) choice[i++] = 0;
                if (i == n) break;
                ++choice[i];
            }
        } while (std::next_permutation(vperm.begin(), vperm.end()));
        throw std::logic_error(
            "canonicalize_triangulation: no automorphism found (contradicts the theorem)");
    }

    LoopedSimpleGraph g_;
    std::vector<OrbitEntry> orbit_;
};

/// One-shot form; reuses nothing between calls. For batches over one graph
/// construct a TriangulationCanonicalizer once.
inline std::vector<std::size_t> canonicalize_triangulation(const LoopedSimpleGraph& g,
                                                           const Triangulation& p,
                                                           std::size_t limit = 4) {
    return TriangulationCanonicalizer(g, limit).run(p);
}

/// Upgrade an arbitrary matroid isomorphism gamma (a ground bijection
/// W(g1) -> W(g2)) to a compatible one by canonicalizing the image of the
/// canonical partition.
inline CompatibleIso compatible_from_arbitrary(const LoopedSimpleGraph& g1,
                                               const LoopedSimpleGraph& g2,
                                               const std::vector<std::size_t>& gamma,
                                               std::size_t limit = 4) {
    std::size_t n = g1.order();
    if (g2.order() != n || gamma.size() != 3 * n)
        throw std::invalid_argument("compatible_from_arbitrary: size mismatch");
    {
        auto cols1 = ias_columns(g1);
        std::vector<std::uint64_t> permuted(3 * n);
        for (std::size_t e = 0; e < 3 * n; ++e) permuted[gamma[e]] = cols1[e];
        if (!equal_row_spaces_of_columns(n, permuted, ias_columns(g2)))
            throw std::invalid_argument("compatible_from_arbitrary: gamma is not a matroid isomorphism");
    }
    Triangulation image = apply_ground_perm(gamma, canonical_partition(g1));
    auto alpha = canonicalize_triangulation(g2, image, limit);
    auto full = compose_perm(alpha, gamma);

    CompatibleIso iso;
    iso.vertex_map.resize(n);
    iso.f.assign(n, S3::identity());
    for (std::size_t v = 0; v < n; ++v) {
        GroundElement img = ground_element(n, full[ground_index(n, v, Flavor::phi)]);
        iso.vertex_map[v] = img.vertex;
        std::array<Flavor, 3> images{};
        for (Flavor fl : kFlavors) {
            GroundElement e = ground_element(n, full[ground_index(n, v, fl)]);
            if (e.vertex != img.vertex)
                throw std::logic_error("compatible_from_arbitrary: image does not respect cells");
            images[static_cast<std::size_t>(fl)] = e.flavor;
        }
        iso.f[v] = S3(images[0], images[1], images[2]);
    }
    return iso;
}

}  // namespace isomat
