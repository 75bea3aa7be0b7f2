#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "isomat/isotropic.hpp"

namespace isomat {

/// The four move families classified in the paper: loop complementations
/// only; edge pivots only; PPT moves (local complementation at looped
/// vertices, pivots on unlooped edges); and the full local-complementation
/// family.
enum class MoveKind { LoopsOnly, PivotsOnly, Ppt, FullLocal };

struct MoveSet {
    MoveKind kind;
};

inline const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::LoopsOnly: return "loops";
        case MoveKind::PivotsOnly: return "pivots";
        case MoveKind::Ppt: return "ppt";
        case MoveKind::FullLocal: return "full-local";
    }
    return "?";
}

inline std::optional<MoveKind> parse_move_kind(const std::string& s) {
    if (s == "loops") return MoveKind::LoopsOnly;
    if (s == "pivots") return MoveKind::PivotsOnly;
    if (s == "ppt") return MoveKind::Ppt;
    if (s == "full-local" || s == "local") return MoveKind::FullLocal;
    return std::nullopt;
}

/// Images of g under the generators of a move set.
inline std::vector<LoopedSimpleGraph> move_images(const LoopedSimpleGraph& g, MoveKind kind) {
    std::vector<LoopedSimpleGraph> out;
    std::size_t n = g.order();
    switch (kind) {
        case MoveKind::LoopsOnly:
            for (std::size_t v = 0; v < n; ++v) out.push_back(loop_complement(g, v));
            break;
        case MoveKind::PivotsOnly:
            for (std::size_t v = 0; v < n; ++v)
                for (std::size_t w = v + 1; w < n; ++w)
                    if (g.adjacent(v, w)) out.push_back(edge_pivot(g, v, w));
            break;
        case MoveKind::Ppt:
            for (std::size_t v = 0; v < n; ++v)
                if (g.looped(v)) out.push_back(nonsimple_local_complement(g, v));
            for (std::size_t v = 0; v < n; ++v)
                for (std::size_t w = v + 1; w < n; ++w)
                    if (g.adjacent(v, w) && !g.looped(v) && !g.looped(w))
                        out.push_back(edge_pivot(g, v, w));
            break;
        case MoveKind::FullLocal:
            for (std::size_t v = 0; v < n; ++v) {
                out.push_back(nonsimple_local_complement(g, v));
                out.push_back(loop_complement(g, v));
            }
            break;
    }
    return out;
}

/// Breadth-first closure of the canonical code of g under the generators.
/// Frontier expansion follows code order, so the result is deterministic.
inline std::set<std::string> orbit(const LoopedSimpleGraph& g, MoveKind kind, std::size_t limit = 8) {
    if (g.order() > limit) throw std::invalid_argument("orbit: order exceeds configured limit");
    std::set<std::string> seen;
    std::map<std::string, LoopedSimpleGraph> frontier;
    frontier.emplace(canonical_code(g, limit), g);
    seen.insert(frontier.begin()->first);
    while (!frontier.empty()) {
        std::map<std::string, LoopedSimpleGraph> next;
        for (const auto& [code, cur] : frontier)
            for (const auto& h : move_images(cur, kind)) {
                std::string hc = canonical_code(h, limit);
                if (seen.insert(hc).second) next.emplace(std::move(hc), h);
            }
        frontier = std::move(next);
    }
    return seen;
}

/// True iff some graph isomorphic to g2 is reachable from g1 by the moves.
inline bool equivalent(const LoopedSimpleGraph& g1, const LoopedSimpleGraph& g2, MoveKind kind,
                       std::size_t limit = 8) {
    if (g1.order() != g2.order()) return false;
    return orbit(g1, kind, limit).count(canonical_code(g2, limit)) > 0;
}

/// Allowed f-values per vertex for the classification theorems: the pivot
/// relation constrains looped and unlooped vertices differently, PPT pins
/// everything to {1,(phi chi)}, loop complementation to {1,(chi psi)}.
inline std::vector<S3> allowed_f_values(MoveKind kind, const LoopedSimpleGraph& g1, std::size_t v) {
    switch (kind) {
        case MoveKind::LoopsOnly: return {S3::identity(), kSwapChiPsi};
        case MoveKind::PivotsOnly:
            return g1.looped(v) ? std::vector<S3>{S3::identity(), kSwapPhiPsi}
                                : std::vector<S3>{S3::identity(), kSwapPhiChi};
        case MoveKind::Ppt: return {S3::identity(), kSwapPhiChi};
        case MoveKind::FullLocal: return all_s3();
    }
    return {};
}

/// Searches for a compatible isomorphism M(IAS(g1)) -> M(IAS(g2)) whose f
/// values stay inside the per-vertex allowed sets. Enumerates vertex
/// bijections and f assignments; first hit in lexicographic order wins.
inline std::optional<CompatibleIso> find_constrained_compatible_iso(
    const LoopedSimpleGraph& g1, const LoopedSimpleGraph& g2,
    const std::vector<std::vector<S3>>& allowed) {
    std::size_t n = g1.order();
    if (g2.order() != n || allowed.size() != n) return std::nullopt;
    if (n == 0) return CompatibleIso::identity(0);
    std::vector<std::size_t> vperm(n);
    std::iota(vperm.begin(), vperm.end(), 0);
    do {
        std::vector<std::size_t> choice(n, 0);
        while (true) {
            CompatibleIso iso;
            iso.vertex_map = vperm;
            iso.f.resize(n);
            for (std::size_t v = 0; v < n; ++v) iso.f[v] = allowed[v][choice[v]];
            if (verify_compatible_iso(g1, g2, iso)) return iso;
            std::size_t i = 0;
            while (i < n && choice[i] + 1 == allowed[i].size()) choice[i++] = 0;
            if (i == n) break;
            ++choice[i];
        }
    } while (std::next_permutation(vperm.begin(), vperm.end()));
    return std::nullopt;
}

inline std::optional<CompatibleIso> find_constrained_compatible_iso(const LoopedSimpleGraph& g1,
                                                                    const LoopedSimpleGraph& g2,
                                                                    MoveKind kind) {
    std::vector<std::vector<S3>> allowed;
    for (std::size_t v = 0; v < g1.order(); ++v) allowed.push_back(allowed_f_values(kind, g1, v));
    return find_constrained_compatible_iso(g1, g2, allowed);
}

}  // namespace isomat
