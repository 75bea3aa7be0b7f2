#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isomat/graph.hpp"
#include "isomat/matroid.hpp"

namespace isomat {

/// The three column blocks of IAS(G) = (I | A(G) | I+A(G)).
enum class Flavor : std::uint8_t { phi = 0, chi = 1, psi = 2 };

inline const char* flavor_name(Flavor f) {
    switch (f) {
        case Flavor::phi: return "phi";
        case Flavor::chi: return "chi";
        case Flavor::psi: return "psi";
    }
    return "?";
}

constexpr std::array<Flavor, 3> kFlavors{Flavor::phi, Flavor::chi, Flavor::psi};

struct GroundElement {
    std::size_t vertex;
    Flavor flavor;
    friend auto operator<=>(const GroundElement&, const GroundElement&) = default;
};

/// Ground ordering of W(G): all phi, then all chi, then all psi, each block
/// in vertex order. This makes IAS(G) literally (I | A | I+A).
inline std::size_t ground_index(std::size_t n, std::size_t v, Flavor f) {
    return static_cast<std::size_t>(f) * n + v;
}

inline GroundElement ground_element(std::size_t n, std::size_t idx) {
    return {idx % n, static_cast<Flavor>(idx / n)};
}

inline std::string ground_label(std::size_t v, Flavor f) {
    return std::to_string(v) + "_" + flavor_name(f);
}

/// Column of IAS(G) for v with the given flavor, as a row-bit pattern.
inline std::uint64_t ias_column(const LoopedSimpleGraph& g, std::size_t v, Flavor f) {
    std::uint64_t e = std::uint64_t{1} << v;
    std::uint64_t a = adjacency_column(g, v);
    switch (f) {
        case Flavor::phi: return e;
        case Flavor::chi: return a;
        case Flavor::psi: return e ^ a;
    }
    return 0;
}

inline std::vector<std::uint64_t> ias_columns(const LoopedSimpleGraph& g) {
    std::size_t n = g.order();
    std::vector<std::uint64_t> cols(3 * n);
    for (Flavor f : kFlavors)
        for (std::size_t v = 0; v < n; ++v) cols[ground_index(n, v, f)] = ias_column(g, v, f);
    return cols;
}

inline std::vector<std::string> ias_ground_labels(std::size_t n) {
    std::vector<std::string> labels(3 * n);
    for (Flavor f : kFlavors)
        for (std::size_t v = 0; v < n; ++v) labels[ground_index(n, v, f)] = ground_label(v, f);
    return labels;
}

/// The isotropic matroid M(IAS(G)).
inline BinaryMatroid ias(const LoopedSimpleGraph& g) {
    return BinaryMatroid(ias_ground_labels(g.order()),
                         Gf2Matrix::from_columns(g.order(), ias_columns(g)));
}

/// The restricted isotropic matroid M(IA(G)) on the phi and chi elements.
inline BinaryMatroid restricted_ia(const LoopedSimpleGraph& g) {
    std::size_t n = g.order();
    std::vector<std::string> labels(2 * n);
    std::vector<std::uint64_t> cols(2 * n);
    for (std::size_t v = 0; v < n; ++v) {
        labels[v] = ground_label(v, Flavor::phi);
        labels[n + v] = ground_label(v, Flavor::chi);
        cols[v] = ias_column(g, v, Flavor::phi);
        cols[n + v] = ias_column(g, v, Flavor::chi);
    }
    return BinaryMatroid(std::move(labels), Gf2Matrix::from_columns(n, cols));
}

/// A permutation of the three flavor symbols.
class S3 {
public:
    constexpr S3() : img_{0, 1, 2} {}
    constexpr S3(Flavor pi, Flavor chi_img, Flavor psi_img)
        : img_{static_cast<std::uint8_t>(pi), static_cast<std::uint8_t>(chi_img),
               static_cast<std::uint8_t>(psi_img)} {}

    static constexpr S3 identity() { return S3(); }
    static constexpr S3 transposition(Flavor a, Flavor b) {
        S3 s;
        std::uint8_t ia = static_cast<std::uint8_t>(a), ib = static_cast<std::uint8_t>(b);
        s.img_[ia] = ib;
        s.img_[ib] = ia;
        return s;
    }

    Flavor apply(Flavor f) const { return static_cast<Flavor>(img_[static_cast<std::uint8_t>(f)]); }

    /// (a * b).apply(f) == a.apply(b.apply(f)): the right factor acts first,
    /// matching the composition rule for compatible isomorphisms.
    friend S3 operator*(const S3& a, const S3& b) {
        S3 s;
        for (std::uint8_t i = 0; i < 3; ++i) s.img_[i] = a.img_[b.img_[i]];
        return s;
    }

    S3 inverse() const {
        S3 s;
        for (std::uint8_t i = 0; i < 3; ++i) s.img_[img_[i]] = i;
        return s;
    }

    bool is_identity() const { return img_[0] == 0 && img_[1] == 1 && img_[2] == 2; }

    std::string name() const {
        if (is_identity()) return "1";
        // Fixed point => transposition of the other two symbols.
        static const char* sym[3] = {"phi", "chi", "psi"};
        for (std::uint8_t i = 0; i < 3; ++i)
            if (img_[i] == i) {
                std::uint8_t a = (i + 1) % 3, b = (i + 2) % 3;
                if (a > b) std::swap(a, b);
                return std::string("(") + sym[a] + " " + sym[b] + ")";
            }
        if (img_[0] == 1) return "(phi chi psi)";
        return "(phi psi chi)";
    }

    friend bool operator==(const S3&, const S3&) = default;

private:
    std::uint8_t img_[3];
};

inline const S3 kS3Identity = S3::identity();
inline const S3 kSwapPhiChi = S3::transposition(Flavor::phi, Flavor::chi);
inline const S3 kSwapPhiPsi = S3::transposition(Flavor::phi, Flavor::psi);
inline const S3 kSwapChiPsi = S3::transposition(Flavor::chi, Flavor::psi);

inline std::vector<S3> all_s3() {
    std::vector<S3> out;
    for (std::uint8_t a = 0; a < 3; ++a)
        for (std::uint8_t b = 0; b < 3; ++b) {
            if (b == a) continue;
            std::uint8_t c = 3 - a - b;
            out.push_back(S3(static_cast<Flavor>(a), static_cast<Flavor>(b), static_cast<Flavor>(c)));
        }
    return out;
}

/// A candidate compatible isomorphism M(IAS(G1)) -> M(IAS(G2)): a vertex
/// bijection plus one flavor permutation per source vertex. The induced
/// ground map sends v_i to vertex_map[v]_{f[v](i)}.
struct CompatibleIso {
    std::vector<std::size_t> vertex_map;
    std::vector<S3> f;

    static CompatibleIso identity(std::size_t n) {
        CompatibleIso iso;
        iso.vertex_map.resize(n);
        std::iota(iso.vertex_map.begin(), iso.vertex_map.end(), 0);
        iso.f.assign(n, S3::identity());
        return iso;
    }

    std::size_t domain_order() const { return vertex_map.size(); }
};

inline void check_iso_shape(const CompatibleIso& iso) {
    std::size_t n = iso.vertex_map.size();
    if (iso.f.size() != n) throw std::invalid_argument("iso has mismatched vertex_map and f sizes");
    std::uint64_t seen = 0;
    for (std::size_t v : iso.vertex_map) {
        if (v >= n) throw std::invalid_argument("iso vertex_map image out of range");
        seen |= std::uint64_t{1} << v;
    }
    if (n < 64 && seen != (std::uint64_t{1} << n) - 1 && n > 0)
        throw std::invalid_argument("iso vertex_map is not a bijection");
}

/// The induced map on ground indices (size 3n).
inline std::vector<std::size_t> ground_map_of(const CompatibleIso& iso) {
    std::size_t n = iso.domain_order();
    std::vector<std::size_t> gm(3 * n);
    for (std::size_t v = 0; v < n; ++v)
        for (Flavor fl : kFlavors)
            gm[ground_index(n, v, fl)] = ground_index(n, iso.vertex_map[v], iso.f[v].apply(fl));
    return gm;
}

/// f(v) = f_{i2}(i1(v)) * f_{i1}(v), vertex maps composed.
inline CompatibleIso compose_iso(const CompatibleIso& i1, const CompatibleIso& i2) {
    if (i1.domain_order() != i2.domain_order())
        throw std::invalid_argument("compose_iso: domain mismatch");
    std::size_t n = i1.domain_order();
    CompatibleIso out;
    out.vertex_map.resize(n);
    out.f.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        out.vertex_map[v] = i2.vertex_map[i1.vertex_map[v]];
        out.f[v] = i2.f[i1.vertex_map[v]] * i1.f[v];
    }
    return out;
}

/// f_{inv}(w) = f(inv(w))^{-1}.
inline CompatibleIso invert_iso(const CompatibleIso& iso) {
    std::size_t n = iso.domain_order();
    CompatibleIso out;
    out.vertex_map.resize(n);
    out.f.resize(n);
    for (std::size_t v = 0; v < n; ++v) out.vertex_map[iso.vertex_map[v]] = v;
    for (std::size_t w = 0; w < n; ++w) out.f[w] = iso.f[out.vertex_map[w]].inverse();
    return out;
}

/// True iff the induced ground map is a matroid isomorphism
/// M(IAS(g1)) -> M(IAS(g2)): permute the columns of IAS(g1) accordingly and
/// compare row spaces with IAS(g2).
inline bool verify_compatible_iso(const LoopedSimpleGraph& g1, const LoopedSimpleGraph& g2,
                                  const CompatibleIso& iso) {
    if (g1.order() != g2.order() || iso.domain_order() != g1.order())
        throw std::invalid_argument("verify_compatible_iso: size mismatch");
    check_iso_shape(iso);
    std::size_t n = g1.order();
    auto gm = ground_map_of(iso);
    auto cols1 = ias_columns(g1);
    std::vector<std::uint64_t> permuted(3 * n);
    for (std::size_t e = 0; e < 3 * n; ++e) permuted[gm[e]] = cols1[e];
    return equal_row_spaces_of_columns(n, permuted, ias_columns(g2));
}

enum class ElementaryMove { LoopComplement, LocalComplement, Pivot };

/// The graph operation together with the compatible isomorphism it induces
/// (identity vertex map; f per the classification of elementary moves).
inline std::pair<LoopedSimpleGraph, CompatibleIso> elementary_iso(const LoopedSimpleGraph& g,
                                                                  ElementaryMove kind, std::size_t v,
                                                                  std::optional<std::size_t> w = {}) {
    std::size_t n = g.order();
    g.check_vertex(v);
    CompatibleIso iso = CompatibleIso::identity(n);
    switch (kind) {
        case ElementaryMove::LoopComplement:
            iso.f[v] = kSwapChiPsi;
            return {loop_complement(g, v), iso};
        case ElementaryMove::LocalComplement:
            iso.f[v] = g.looped(v) ? kSwapPhiChi : kSwapPhiPsi;
            return {nonsimple_local_complement(g, v), iso};
        case ElementaryMove::Pivot: {
            if (!w) throw std::invalid_argument("pivot needs a second vertex");
            iso.f[v] = g.looped(v) ? kSwapPhiPsi : kSwapPhiChi;
            iso.f[*w] = g.looped(*w) ? kSwapPhiPsi : kSwapPhiChi;
            return {edge_pivot(g, v, *w), iso};
        }
    }
    throw std::invalid_argument("unknown elementary move");
}

/// Partial choice of at most one flavor per vertex (an element of S(W(G))).
/// Encoded two bits per vertex: 0 = none, otherwise flavor + 1.
class SubTransversal {
public:
    SubTransversal() = default;
    explicit SubTransversal(std::size_t n) : n_(n) {
        if (n > 31) throw std::invalid_argument("subtransversal order above 31 is not supported");
    }

    std::size_t order() const { return n_; }

    std::optional<Flavor> flavor_at(std::size_t v) const {
        check(v);
        unsigned code = (enc_ >> (2 * v)) & 3u;
        if (!code) return std::nullopt;
        return static_cast<Flavor>(code - 1);
    }

    bool has(std::size_t v) const { return ((enc_ >> (2 * v)) & 3u) != 0; }

    SubTransversal with(std::size_t v, Flavor f) const {
        check(v);
        SubTransversal s = *this;
        s.enc_ = (s.enc_ & ~(std::uint64_t{3} << (2 * v))) |
                 (std::uint64_t{static_cast<unsigned>(f) + 1} << (2 * v));
        return s;
    }

    SubTransversal without(std::size_t v) const {
        check(v);
        SubTransversal s = *this;
        s.enc_ &= ~(std::uint64_t{3} << (2 * v));
        return s;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::size_t v = 0; v < n_; ++v) c += has(v);
        return c;
    }

    bool is_transversal() const { return count() == n_; }

    std::vector<GroundElement> elements() const {
        std::vector<GroundElement> out;
        for (std::size_t v = 0; v < n_; ++v)
            if (auto f = flavor_at(v)) out.push_back({v, *f});
        return out;
    }

    /// Mask over the 3n ground indices of W(G).
    std::uint64_t ground_mask() const {
        std::uint64_t m = 0;
        for (std::size_t v = 0; v < n_; ++v)
            if (auto f = flavor_at(v)) m |= std::uint64_t{1} << ground_index(n_, v, *f);
        return m;
    }

    std::uint64_t raw() const { return enc_; }
    static SubTransversal from_raw(std::size_t n, std::uint64_t enc) {
        SubTransversal s(n);
        s.enc_ = enc;
        return s;
    }

    friend bool operator==(const SubTransversal&, const SubTransversal&) = default;
    friend bool operator<(const SubTransversal& a, const SubTransversal& b) {
        return a.n_ != b.n_ ? a.n_ < b.n_ : a.enc_ < b.enc_;
    }

private:
    void check(std::size_t v) const {
        if (v >= n_) throw std::out_of_range("subtransversal vertex out of range");
    }

    std::size_t n_ = 0;
    std::uint64_t enc_ = 0;
};

/// Sum of the IAS columns selected by a subtransversal.
inline std::uint64_t subtransversal_column_sum(const LoopedSimpleGraph& g, const SubTransversal& s) {
    std::uint64_t acc = 0;
    for (std::size_t v = 0; v < g.order(); ++v)
        if (auto f = s.flavor_at(v)) acc ^= ias_column(g, v, *f);
    return acc;
}

struct TriangleCheckResult {
    Flavor stable;                    // the flavor whose extension keeps the rank
    std::array<std::size_t, 3> ranks; // ranks of the phi/chi/psi extensions
};

/// The triangle property: for a subtransversal covering all vertices but v,
/// exactly one flavor extension at v preserves the rank and the other two
/// raise it by one. A violation would contradict the theorem, so it is
/// reported as a logic error rather than a recoverable condition.
inline TriangleCheckResult triangle_check(const LoopedSimpleGraph& g, const SubTransversal& s,
                                          std::size_t v) {
    std::size_t n = g.order();
    g.check_vertex(v);
    if (s.order() != n || s.has(v) || s.count() != n - 1)
        throw std::invalid_argument("triangle_check needs a subtransversal omitting exactly v");
    std::uint64_t base_cols[32];
    std::size_t k = 0;
    for (std::size_t u = 0; u < n; ++u)
        if (auto f = s.flavor_at(u)) base_cols[k++] = ias_column(g, u, *f);
    Gf2Basis base;
    for (std::size_t i = 0; i < k; ++i) base.insert(base_cols[i]);
    std::size_t base_rank = base.size();

    TriangleCheckResult res{};
    std::size_t stable_count = 0;
    for (Flavor f : kFlavors) {
        Gf2Basis b = base;
        b.insert(ias_column(g, v, f));
        std::size_t r = b.size();
        res.ranks[static_cast<std::size_t>(f)] = r;
        if (r == base_rank) {
            res.stable = f;
            ++stable_count;
        } else if (r != base_rank + 1) {
            throw std::logic_error("triangle_check: extension rank outside {r, r+1}");
        }
    }
    if (stable_count != 1)
        throw std::logic_error("triangle_check: rank-preserving extension is not unique");
    return res;
}

/// Strong-map check for disjoint transversals S and T: whenever v_S lies in
/// the closure of A_S within M|S, v_T must lie in the closure of A_T within
/// the dual of M|T. Dual ranks are evaluated through
/// r*(X) = |X| + r(T - X) - r(T).
inline bool strong_map_check(const LoopedSimpleGraph& g, const SubTransversal& s,
                             const SubTransversal& t) {
    std::size_t n = g.order();
    if (s.order() != n || t.order() != n || !s.is_transversal() || !t.is_transversal())
        throw std::invalid_argument("strong_map_check needs two transversals");
    for (std::size_t v = 0; v < n; ++v)
        if (s.flavor_at(v) == t.flavor_at(v))
            throw std::invalid_argument("strong_map_check needs disjoint transversals");

    if (n > 20) throw std::invalid_argument("strong_map_check: order exceeds supported size");
    std::vector<std::uint64_t> scol(n), tcol(n);
    for (std::size_t v = 0; v < n; ++v) {
        scol[v] = ias_column(g, v, *s.flavor_at(v));
        tcol[v] = ias_column(g, v, *t.flavor_at(v));
    }
    // Subset rank tables over the two column families.
    auto table_of = [n](const std::vector<std::uint64_t>& cols) {
        std::vector<std::uint8_t> table(std::size_t{1} << n, 0);
        for (std::uint64_t m = 1; m < table.size(); ++m) {
            std::size_t low = static_cast<std::size_t>(std::countr_zero(m));
            std::uint64_t rest = m & (m - 1);
            Gf2Basis b;
            for (std::uint64_t mm = rest; mm; mm &= mm - 1)
                b.insert(cols[static_cast<std::size_t>(std::countr_zero(mm))]);
            table[m] = static_cast<std::uint8_t>(table[rest] + b.insert(cols[low]));
        }
        return table;
    };
    auto rs = table_of(scol);
    auto rt = table_of(tcol);

    std::uint64_t all = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t a = 0; a <= all; ++a) {
        for (std::size_t v = 0; v < n; ++v) {
            if (a >> v & 1u) continue;
            std::uint64_t vb = std::uint64_t{1} << v;
            if (rs[a | vb] != rs[a]) continue;  // v_S outside the closure of A_S
            // v_T in dual closure of A_T  <=>  r(T-A-v) == r(T-A) - 1
            std::uint64_t rest = all & ~a;
            if (rt[rest & ~vb] != rt[rest] - 1) return false;
        }
    }
    return true;
}

}  // namespace isomat
