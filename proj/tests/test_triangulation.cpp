#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "isomat/enumerate.hpp"
#include "isomat/triangulation.hpp"

using isomat::Flavor;
using isomat::LoopedSimpleGraph;
using isomat::Triangulation;

namespace {
LoopedSimpleGraph path(std::size_t n) {
    LoopedSimpleGraph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1, true);
    return g;
}

std::array<std::size_t, 3> cell(std::size_t n, std::initializer_list<std::pair<std::size_t, Flavor>> els) {
    std::array<std::size_t, 3> out{};
    std::size_t i = 0;
    for (auto [v, f] : els) out[i++] = isomat::ground_index(n, v, f);
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace

TEST_CASE("canonical partition is a triangulation", "[triangulation]") {
    LoopedSimpleGraph k1(1);
    auto p = isomat::canonical_partition(k1);
    REQUIRE(p.cells.size() == 1);
    CHECK(isomat::is_triangulation(k1, p));

    for (std::size_t n = 0; n <= 5; ++n)
        for (std::uint64_t i = 0; i < isomat::graph_space_size(n); ++i) {
            auto g = isomat::graph_from_index(n, i);
            REQUIRE(isomat::is_triangulation(g, isomat::canonical_partition(g)));
        }
}

TEST_CASE("is_triangulation accepts parallel swaps and rejects junk", "[triangulation]") {
    auto g = path(3);  // 0 pendant on 1
    auto p = isomat::canonical_partition(g);
    // swap 0_chi with 1_phi (parallel columns for the unlooped pendant)
    Triangulation q;
    q.cells = {cell(3, {{0, Flavor::phi}, {1, Flavor::phi}, {0, Flavor::psi}}),
               cell(3, {{0, Flavor::chi}, {1, Flavor::chi}, {1, Flavor::psi}}),
               cell(3, {{2, Flavor::phi}, {2, Flavor::chi}, {2, Flavor::psi}})};
    q.normalize();
    CHECK(isomat::is_triangulation(g, q));
    CHECK(isomat::triangulation_index(3, q) == 2);

    // three independent columns in one cell
    Triangulation bad;
    bad.cells = {cell(3, {{0, Flavor::phi}, {1, Flavor::phi}, {2, Flavor::phi}}),
                 cell(3, {{0, Flavor::chi}, {1, Flavor::chi}, {2, Flavor::chi}}),
                 cell(3, {{0, Flavor::psi}, {1, Flavor::psi}, {2, Flavor::psi}})};
    bad.normalize();
    CHECK_FALSE(isomat::is_triangulation(g, bad));

    Triangulation notpart;
    notpart.cells = {cell(3, {{0, Flavor::phi}, {0, Flavor::chi}, {0, Flavor::psi}})};
    CHECK_THROWS_AS(isomat::is_triangulation(g, notpart), std::invalid_argument);
}

TEST_CASE("triangulation enumeration", "[triangulation]") {
    LoopedSimpleGraph k1(1);
    auto one = isomat::enumerate_triangulations(k1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == isomat::canonical_partition(k1));

    // brute-force oracle for K2: partitions of the 6 ground elements into
    // two 3-cells, filtered by is_triangulation
    auto k2 = LoopedSimpleGraph::from_edges(2, {{0, 1}});
    std::size_t oracle = 0;
    for (std::size_t b = 1; b < 6; ++b)
        for (std::size_t c = b + 1; c < 6; ++c) {
            Triangulation t;
            std::array<std::size_t, 3> c1{0, b, c}, c2{};
            std::size_t k = 0;
            for (std::size_t e = 1; e < 6; ++e)
                if (e != b && e != c) c2[k++] = e;
            t.cells = {c1, c2};
            t.normalize();
            oracle += isomat::is_triangulation(k2, t);
        }
    auto all = isomat::enumerate_triangulations(k2);
    CHECK(all.size() == oracle);
    CHECK(std::find(all.begin(), all.end(), isomat::canonical_partition(k2)) != all.end());

    CHECK_THROWS_AS(isomat::enumerate_triangulations(LoopedSimpleGraph(6)), std::invalid_argument);
}

TEST_CASE("bending a matched 4-path", "[triangulation]") {
    auto g = path(4);
    std::array<std::size_t, 4> quad{0, 1, 2, 3};
    auto p = isomat::canonical_partition(g);
    auto bent = isomat::bend_4path(g, p, quad);

    Triangulation expect;
    expect.cells = {cell(4, {{0, Flavor::phi}, {1, Flavor::chi}, {2, Flavor::phi}}),
                    cell(4, {{1, Flavor::phi}, {2, Flavor::chi}, {3, Flavor::phi}}),
                    cell(4, {{0, Flavor::psi}, {1, Flavor::psi}, {3, Flavor::chi}}),
                    cell(4, {{0, Flavor::chi}, {2, Flavor::psi}, {3, Flavor::psi}})};
    expect.normalize();
    CHECK(bent == expect);
    CHECK(isomat::is_triangulation(g, bent));
    CHECK(isomat::triangulation_index(4, bent) == isomat::triangulation_index(4, p) + 4);

    // the bent triangulation shows up in the full enumeration
    auto all = isomat::enumerate_triangulations(g);
    CHECK(std::find(all.begin(), all.end(), bent) != all.end());

    CHECK_THROWS_AS(isomat::bend_4path(g, bent, quad), std::invalid_argument);
    LoopedSimpleGraph tri = LoopedSimpleGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK_THROWS_AS(isomat::bend_4path(tri, isomat::canonical_partition(tri), {0, 1, 2, 0}),
                    std::invalid_argument);
}

namespace {
// The eight displayed fundamental-circuit rows for the bent-4-path
// automorphism, as functions of the quad and the neighborhoods.
std::vector<std::set<std::string>> table_expectations(const LoopedSimpleGraph& g,
                                                      const std::array<std::size_t, 4>& q) {
    auto [u, v, w, x] = q;
    auto lbl = [](std::size_t vert, Flavor f) { return isomat::ground_label(vert, f); };
    auto phis_except = [&](std::size_t center, std::size_t skip) {
        std::set<std::string> out;
        for (std::size_t t : g.neighbors(center))
            if (t != skip) out.insert(lbl(t, Flavor::phi));
        return out;
    };
    std::vector<std::set<std::string>> rows;
    auto add = [&](std::set<std::string> base, std::initializer_list<std::string> extra) {
        for (const auto& e : extra) base.insert(e);
        rows.push_back(std::move(base));
    };
    add(phis_except(u, v), {lbl(u, Flavor::chi), lbl(v, Flavor::phi)});                       // u_chi
    add(phis_except(u, v), {lbl(w, Flavor::chi), lbl(x, Flavor::phi), lbl(u, Flavor::chi)});  // u_psi
    add({}, {lbl(x, Flavor::phi), lbl(x, Flavor::chi), lbl(x, Flavor::psi)});                 // v_chi
    add({}, {lbl(u, Flavor::chi), lbl(w, Flavor::psi), lbl(x, Flavor::phi), lbl(x, Flavor::chi)});  // v_psi
    add({}, {lbl(u, Flavor::phi), lbl(u, Flavor::chi), lbl(u, Flavor::psi)});                 // w_chi
    add({}, {lbl(u, Flavor::phi), lbl(u, Flavor::chi), lbl(v, Flavor::psi), lbl(x, Flavor::chi)});  // w_psi
    add(phis_except(x, w), {lbl(x, Flavor::chi), lbl(w, Flavor::phi)});                       // x_chi
    add(phis_except(x, w), {lbl(u, Flavor::phi), lbl(v, Flavor::chi), lbl(x, Flavor::chi)});  // x_psi
    return rows;
}
}  // namespace

TEST_CASE("fundamental circuits of a matched 4-path", "[triangulation]") {
    // C(v_chi, Phi) = {u_phi, v_chi, w_phi} and C(w_chi, Phi) =
    // {v_phi, w_chi, x_phi} for any matched 4-path (u,v,w,x).
    auto g = path(4);
    auto m = isomat::ias(g);
    std::vector<std::string> phi{"0_phi", "1_phi", "2_phi", "3_phi"};
    auto cv = isomat::fundamental_circuit(m, "1_chi", phi);
    std::sort(cv.begin(), cv.end());
    CHECK(cv == std::vector<std::string>{"0_phi", "1_chi", "2_phi"});
    auto cw = isomat::fundamental_circuit(m, "2_chi", phi);
    std::sort(cw.begin(), cw.end());
    CHECK(cw == std::vector<std::string>{"1_phi", "2_chi", "3_phi"});
}

TEST_CASE("bent 4-path automorphism matches the fundamental-circuit table", "[triangulation]") {
    // P4 plus a fifth vertex adjacent to both ends keeps the matched-4-path
    // structure while making the neighborhood terms nontrivial.
    for (auto g : {path(4), [] {
             auto h = path(4);
             LoopedSimpleGraph g5(5);
             for (std::size_t i = 0; i + 1 < 4; ++i) g5.set_edge(i, i + 1, true);
             g5.set_edge(0, 4, true);
             g5.set_edge(3, 4, true);
             return g5;
         }()}) {
        std::size_t n = g.order();
        std::array<std::size_t, 4> quad{0, 1, 2, 3};
        REQUIRE(isomat::is_matched_4path(g, quad));
        auto alpha = isomat::bent_4path_automorphism(g, quad);
        REQUIRE(isomat::is_ias_automorphism(g, alpha));

        // alpha is an involution
        for (std::size_t e = 0; e < 3 * n; ++e) REQUIRE(alpha[alpha[e]] == e);

        // alpha carries the bent triangulation back to the canonical one
        auto bent = isomat::bend_4path(g, isomat::canonical_partition(g), quad);
        CHECK(isomat::apply_ground_perm(alpha, bent) == isomat::canonical_partition(g));

        // row-for-row circuit check
        auto m = isomat::ias(g);
        std::vector<std::string> phi_basis, alpha_basis;
        for (std::size_t v = 0; v < n; ++v) phi_basis.push_back(isomat::ground_label(v, Flavor::phi));
        for (std::size_t v = 0; v < n; ++v)
            alpha_basis.push_back(m.ground()[alpha[isomat::ground_index(n, v, Flavor::phi)]]);

        auto rows = table_expectations(g, quad);
        std::size_t row = 0;
        for (std::size_t vert : {quad[0], quad[1], quad[2], quad[3]})
            for (Flavor f : {Flavor::chi, Flavor::psi}) {
                std::size_t z = isomat::ground_index(n, vert, f);
                auto c = isomat::fundamental_circuit(m, m.ground()[z], phi_basis);
                std::set<std::string> alpha_c;
                for (const auto& l : c) alpha_c.insert(m.ground()[alpha[m.index_of(l)]]);
                auto c2 = isomat::fundamental_circuit(m, m.ground()[alpha[z]], alpha_basis);
                std::set<std::string> c2s(c2.begin(), c2.end());
                REQUIRE(alpha_c == c2s);
                REQUIRE(alpha_c == rows[row]);
                ++row;
            }
    }
}

TEST_CASE("canonicalize triangulations", "[triangulation]") {
    // canonical input: identity
    auto g = path(3);
    auto canon = isomat::canonical_partition(g);
    auto id = isomat::canonicalize_triangulation(g, canon);
    for (std::size_t e = 0; e < 9; ++e) REQUIRE(id[e] == e);

    // parallel swap: recovered by a single transposition
    Triangulation q;
    q.cells = {cell(3, {{0, Flavor::phi}, {1, Flavor::phi}, {0, Flavor::psi}}),
               cell(3, {{0, Flavor::chi}, {1, Flavor::chi}, {1, Flavor::psi}}),
               cell(3, {{2, Flavor::phi}, {2, Flavor::chi}, {2, Flavor::psi}})};
    q.normalize();
    auto a = isomat::canonicalize_triangulation(g, q);
    CHECK(isomat::is_ias_automorphism(g, a));
    CHECK(isomat::apply_ground_perm(a, q) == canon);

    // bent P4
    auto p4 = path(4);
    auto bent = isomat::bend_4path(p4, isomat::canonical_partition(p4), {0, 1, 2, 3});
    auto ab = isomat::canonicalize_triangulation(p4, bent);
    CHECK(isomat::is_ias_automorphism(p4, ab));
    CHECK(isomat::apply_ground_perm(ab, bent) == isomat::canonical_partition(p4));

    CHECK_THROWS_AS(isomat::canonicalize_triangulation(LoopedSimpleGraph(5),
                                                       isomat::canonical_partition(LoopedSimpleGraph(5))),
                    std::invalid_argument);
}

TEST_CASE("every triangulation of small graphs canonicalizes (n <= 3)", "[triangulation]") {
    for (std::size_t n = 0; n <= 3; ++n)
        for (std::uint64_t i = 0; i < isomat::graph_space_size(n); ++i) {
            auto g = isomat::graph_from_index(n, i);
            isomat::TriangulationCanonicalizer canon(g);
            for (const auto& p : isomat::enumerate_triangulations(g)) {
                auto a = canon.run(p);
                REQUIRE(isomat::is_ias_automorphism(g, a));
                REQUIRE(isomat::apply_ground_perm(a, p) == isomat::canonical_partition(g));
            }
        }
}

TEST_CASE("compatible_from_arbitrary upgrades matroid isomorphisms", "[triangulation]") {
    auto g = path(3);

    // already-compatible input comes back verified
    auto [g2, iso] = isomat::elementary_iso(g, isomat::ElementaryMove::LocalComplement, 1);
    auto gamma = isomat::ground_map_of(iso);
    auto up = isomat::compatible_from_arbitrary(g, g2, gamma);
    CHECK(isomat::verify_compatible_iso(g, g2, up));

    // compose with a parallel swap (0_chi ~ 1_phi in P3): still upgradable
    std::vector<std::size_t> t(9);
    std::iota(t.begin(), t.end(), 0);
    std::swap(t[isomat::ground_index(3, 0, Flavor::chi)], t[isomat::ground_index(3, 1, Flavor::phi)]);
    auto twisted = isomat::compose_perm(gamma, t);  // swap first, then gamma
    auto up2 = isomat::compatible_from_arbitrary(g, g2, twisted);
    CHECK(isomat::verify_compatible_iso(g, g2, up2));

    // non-isomorphism rejected
    std::vector<std::size_t> idperm(9);
    std::iota(idperm.begin(), idperm.end(), 0);
    LoopedSimpleGraph tri = LoopedSimpleGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK_THROWS_AS(isomat::compatible_from_arbitrary(g, tri, idperm), std::invalid_argument);
}

TEST_CASE("matroid isomorphisms found by search upgrade to compatible ones (n <= 2)",
          "[triangulation]") {
    for (std::size_t n = 1; n <= 2; ++n) {
        std::uint64_t total = isomat::graph_space_size(n);
        for (std::uint64_t i = 0; i < total; ++i)
            for (std::uint64_t j = 0; j < total; ++j) {
                auto g1 = isomat::graph_from_index(n, i);
                auto g2 = isomat::graph_from_index(n, j);
                auto found = isomat::matroids_isomorphic(isomat::ias(g1), isomat::ias(g2));
                if (!found) continue;
                auto up = isomat::compatible_from_arbitrary(g1, g2, *found);
                REQUIRE(isomat::verify_compatible_iso(g1, g2, up));
            }
    }
}
