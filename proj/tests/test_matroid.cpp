#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "isomat/enumerate.hpp"
#include "isomat/isotropic.hpp"
#include "isomat/matroid.hpp"

using isomat::BinaryMatroid;
using isomat::Gf2Matrix;
using isomat::LoopedSimpleGraph;

namespace {
LoopedSimpleGraph path3() { return LoopedSimpleGraph::from_edges(3, {{0, 1}, {1, 2}}); }

std::vector<std::string> phi_basis(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t v = 0; v < n; ++v) out.push_back(isomat::ground_label(v, isomat::Flavor::phi));
    return out;
}
}  // namespace

TEST_CASE("rank oracle on IAS(P3)", "[matroid]") {
    auto m = isomat::ias(path3());
    CHECK(isomat::rank_of(m, {}) == 0);
    CHECK(isomat::rank_of(m, phi_basis(3)) == 3);
    // one canonical cell: three columns summing to zero, any two independent
    CHECK(isomat::rank_of(m, {"0_phi", "0_chi", "0_psi"}) == 2);
    CHECK_THROWS_AS(isomat::rank_of(m, {"9_phi"}), std::invalid_argument);
}

TEST_CASE("rank is submodular and unit-increasing on IAS(P3) (exhaustive pairs)", "[matroid]") {
    auto m = isomat::ias(path3());
    std::vector<std::size_t> rk(1 << 9);
    for (std::uint64_t s = 0; s < (1u << 9); ++s) rk[s] = m.rank_of_mask(s);
    for (std::uint64_t a = 0; a < (1u << 9); ++a) {
        for (std::size_t e = 0; e < 9; ++e) {
            std::uint64_t b = a | (std::uint64_t{1} << e);
            REQUIRE(rk[b] <= rk[a] + 1);
            REQUIRE(rk[a] <= rk[b]);
        }
        for (std::uint64_t b = 0; b < (1u << 9); ++b)
            REQUIRE(rk[a | b] + rk[a & b] <= rk[a] + rk[b]);
    }
}

TEST_CASE("fundamental circuits", "[matroid]") {
    auto m = isomat::ias(path3());
    auto c = isomat::fundamental_circuit(m, "1_chi", phi_basis(3));
    std::sort(c.begin(), c.end());
    CHECK(c == std::vector<std::string>{"0_phi", "1_chi", "2_phi"});

    CHECK_THROWS_AS(isomat::fundamental_circuit(m, "0_phi", phi_basis(3)), std::invalid_argument);
    CHECK_THROWS_AS(isomat::fundamental_circuit(m, "1_chi", {"0_phi", "0_chi", "0_psi"}),
                    std::invalid_argument);

    // C(x,B) is the unique circuit inside B ∪ {x}: cross-check against the
    // circuit list.
    auto circ = isomat::circuit_masks(m);
    std::uint64_t bmask = m.mask_of(phi_basis(3));
    for (std::size_t x = 0; x < m.size(); ++x) {
        if (bmask >> x & 1u) continue;
        auto fc = isomat::fundamental_circuit(m, m.ground()[x], phi_basis(3));
        std::uint64_t fcm = m.mask_of(fc);
        std::size_t inside = 0;
        for (std::uint64_t cm : circ)
            if ((cm & ~(bmask | (std::uint64_t{1} << x))) == 0) {
                ++inside;
                REQUIRE(cm == fcm);
            }
        REQUIRE(inside == 1);
    }
}

TEST_CASE("circuit enumeration", "[matroid]") {
    // one zero column: a matroid loop
    BinaryMatroid z({"a", "b"}, Gf2Matrix::from_columns(2, {0b01, 0b00}));
    auto cz = isomat::circuits(z);
    REQUIRE(cz.size() == 1);
    CHECK(cz[0] == std::vector<std::string>{"b"});

    // two equal nonzero columns: a parallel pair
    BinaryMatroid par({"p", "q"}, Gf2Matrix::from_columns(2, {0b01, 0b01}));
    auto cp = isomat::circuits(par);
    REQUIRE(cp.size() == 1);
    CHECK(cp[0] == std::vector<std::string>{"p", "q"});

    // M(IAS(K1 looped)): columns [1],[1],[0]
    LoopedSimpleGraph k1l(1);
    k1l.set_loop(0, true);
    auto ck = isomat::circuits(isomat::ias(k1l));
    REQUIRE(ck.size() == 2);
    CHECK(ck[0] == std::vector<std::string>{"0_psi"});
    CHECK(ck[1] == std::vector<std::string>{"0_phi", "0_chi"});

    std::vector<std::string> labels19;
    for (int i = 0; i < 19; ++i) labels19.push_back("x" + std::to_string(i));
    BinaryMatroid big(labels19, Gf2Matrix(1, 19));
    CHECK_THROWS_AS(isomat::circuits(big), std::invalid_argument);
}

TEST_CASE("basis exchange", "[matroid]") {
    // single 1 in A: nothing else qualifies for toggling
    Gf2Matrix one = Gf2Matrix::from_rows({{1, 0, 0}, {0, 1, 1}});
    CHECK(isomat::basis_exchange(one, 1, 0) == one);

    // IAS(K2), exchange at (row 0, column of 0_psi): the chi block becomes
    // the adjacency matrix of K2 with a loop at vertex 1.
    auto k2 = LoopedSimpleGraph::from_edges(2, {{0, 1}});
    auto rep = isomat::ias(k2).rep();
    auto ex = isomat::basis_exchange(rep, 0, 2 + 0);  // A-part column index of 0_psi
    auto k2loop = isomat::loop_complement(k2, 1);
    auto expect = isomat::ias(isomat::nonsimple_local_complement(k2, 0)).rep();
    CHECK(ex == expect);
    CHECK(isomat::adjacency_matrix(k2loop) ==
          isomat::Gf2Matrix::from_rows({{0, 1}, {1, 1}}));

    // the toggle set is an involution
    CHECK(isomat::basis_exchange(ex, 0, 2 + 0) == rep);

    CHECK_THROWS_AS(isomat::basis_exchange(rep, 0, 0), std::invalid_argument);  // a_jk = 0
}

TEST_CASE("basis exchange matches a column swap up to row moves (exhaustive 3x3)", "[matroid]") {
    for (std::size_t r = 1; r <= 3; ++r)
        for (std::size_t c = 1; c <= 3; ++c)
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (r * c)); ++bits) {
                Gf2Matrix a(r, c);
                for (std::size_t i = 0; i < r * c; ++i)
                    if (bits >> i & 1u) a.set(i / c, i % c, true);
                Gf2Matrix std_rep(r, r + c);
                for (std::size_t i = 0; i < r; ++i) std_rep.set(i, i, true);
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < c; ++j)
                        if (a.get(i, j)) std_rep.set(i, r + j, true);
                std::vector<std::string> labels;
                for (std::size_t i = 0; i < r + c; ++i) labels.push_back("e" + std::to_string(i));
                for (std::size_t j = 0; j < r; ++j)
                    for (std::size_t k = 0; k < c; ++k) {
                        if (!std_rep.get(j, r + k)) continue;
                        auto exchanged = isomat::basis_exchange(std_rep, j, k);
                        // physically swap columns j and r+k of the original
                        Gf2Matrix swapped = std_rep;
                        for (std::size_t i = 0; i < r; ++i) {
                            bool t = swapped.get(i, j);
                            swapped.set(i, j, swapped.get(i, r + k));
                            swapped.set(i, r + k, t);
                        }
                        REQUIRE(isomat::equal_matroids(BinaryMatroid(labels, swapped),
                                                       BinaryMatroid(labels, exchanged)));
                    }
            }
}

TEST_CASE("matroid equality", "[matroid]") {
    auto m = isomat::ias(path3());
    CHECK(isomat::equal_matroids(m, m));

    Gf2Matrix r2 = m.rep();
    r2.swap_rows(0, 2);
    CHECK(isomat::equal_matroids(m, BinaryMatroid(m.ground(), r2)));

    LoopedSimpleGraph tri = LoopedSimpleGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK_FALSE(isomat::equal_matroids(m, isomat::ias(tri)));

    BinaryMatroid other({"a"}, Gf2Matrix(1, 1));
    CHECK_THROWS_AS(isomat::equal_matroids(m, other), std::invalid_argument);
}

TEST_CASE("minors", "[matroid]") {
    auto m = isomat::ias(path3());

    auto same = isomat::minor(m, {}, {});
    CHECK(isomat::equal_matroids(m, same));

    // contract 1_phi, delete 1_chi and 1_psi: rank functions must agree with
    // IAS(P3 - centre) after the order-preserving relabelling.
    auto mm = isomat::minor(m, {"1_phi"}, {"1_chi", "1_psi"});
    auto gd = isomat::delete_vertex(path3(), 1);
    auto md = isomat::ias(gd);
    REQUIRE(mm.size() == md.size());
    std::uint64_t cmask = m.mask_of({"1_phi"});
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << mm.size()); ++s) {
        // map the minor's subset into the deleted graph's ground: labels
        // differ (vertex 2 became 1) but positions line up
        REQUIRE(mm.rank_of_mask(s) == md.rank_of_mask(s));
        // the defining rank identity r'(S) = r(S ∪ C) - r(C)
        std::uint64_t orig = 0;
        for (std::size_t j = 0; j < mm.size(); ++j)
            if (s >> j & 1u) orig |= std::uint64_t{1} << m.index_of(mm.ground()[j]);
        REQUIRE(mm.rank_of_mask(s) == m.rank_of_mask(orig | cmask) - m.rank_of_mask(cmask));
    }

    // contracting a matroid loop equals deleting it
    LoopedSimpleGraph k1(1);
    auto mk = isomat::ias(k1);  // 0_chi is a zero column
    auto by_contract = isomat::minor(mk, {"0_chi"}, {});
    auto by_delete = isomat::minor(mk, {}, {"0_chi"});
    REQUIRE(by_contract.ground() == by_delete.ground());
    for (std::uint64_t s = 0; s < 4; ++s)
        REQUIRE(by_contract.rank_of_mask(s) == by_delete.rank_of_mask(s));

    CHECK_THROWS_AS(isomat::minor(m, {"0_phi"}, {"0_phi"}), std::invalid_argument);
}

TEST_CASE("minor rank identity over all contract/delete splits of IAS(P3)", "[matroid]") {
    auto m = isomat::ias(path3());
    // every disjoint (contract, delete) pair on the 9-element ground
    for (std::uint64_t cmask = 0; cmask < (1u << 9); ++cmask) {
        std::size_t rc = m.rank_of_mask(cmask);
        std::uint64_t rest = ((1u << 9) - 1) & ~cmask;
        std::uint64_t dmask = rest;
        while (true) {
            auto mm = isomat::minor(m, m.labels_of(cmask), m.labels_of(dmask));
            for (std::uint64_t s = 0; s < (std::uint64_t{1} << mm.size()); ++s) {
                std::uint64_t orig = 0;
                for (std::size_t j = 0; j < mm.size(); ++j)
                    if (s >> j & 1u) orig |= std::uint64_t{1} << m.index_of(mm.ground()[j]);
                REQUIRE(mm.rank_of_mask(s) == m.rank_of_mask(orig | cmask) - rc);
            }
            if (dmask == 0) break;
            dmask = (dmask - 1) & rest;
        }
    }
}

TEST_CASE("components", "[matroid]") {
    LoopedSimpleGraph k1(1);
    auto ck = isomat::components(isomat::ias(k1));
    REQUIRE(ck.size() == 2);
    CHECK(ck[0] == std::vector<std::string>{"0_phi", "0_psi"});
    CHECK(ck[1] == std::vector<std::string>{"0_chi"});

    auto cp = isomat::components(isomat::ias(path3()));
    REQUIRE(cp.size() == 1);
    CHECK(cp[0].size() == 9);

    // disjoint union: blocks are the union of the parts' blocks
    LoopedSimpleGraph two(2);  // K1 ⊔ K1
    auto c2 = isomat::components(isomat::ias(two));
    CHECK(c2.size() == 4);
}

TEST_CASE("closure", "[matroid]") {
    auto m = isomat::ias(path3());
    CHECK(isomat::closure(m, {}).empty());  // P3 has no isolated vertex, no matroid loop

    LoopedSimpleGraph k1(1);
    CHECK(isomat::closure(isomat::ias(k1), {}) == std::vector<std::string>{"0_chi"});

    auto cl = isomat::closure(m, {"0_phi", "1_phi"});
    CHECK(std::find(cl.begin(), cl.end(), "2_chi") != cl.end());
    CHECK(std::find(cl.begin(), cl.end(), "2_phi") == cl.end());
    CHECK(std::find(cl.begin(), cl.end(), "2_psi") == cl.end());

    CHECK(isomat::closure(m, phi_basis(3)).size() == 9);

    // closure is idempotent and contains its argument
    for (std::uint64_t s = 0; s < 512; s += 7) {
        std::uint64_t c = isomat::closure_mask(m, s);
        REQUIRE((c & s) == s);
        REQUIRE(isomat::closure_mask(m, c) == c);
    }
}

TEST_CASE("fano restriction", "[matroid]") {
    auto found = isomat::find_fano_restriction(isomat::ias(path3()));
    REQUIRE(found.has_value());
    REQUIRE(found->size() == 7);
    // the seven columns are exactly the nonzero vectors of GF(2)^3, i.e.
    // the columns of the displayed 3x7 matrix up to order
    auto m = isomat::ias(path3());
    std::set<std::uint64_t> vals;
    for (const auto& l : *found) vals.insert(m.column(m.index_of(l)));
    CHECK(vals == std::set<std::uint64_t>{1, 2, 3, 4, 5, 6, 7});

    auto k2 = LoopedSimpleGraph::from_edges(2, {{0, 1}});
    CHECK_FALSE(isomat::find_fano_restriction(isomat::ias(k2)).has_value());
    CHECK_FALSE(isomat::find_fano_restriction(isomat::ias(LoopedSimpleGraph(2))).has_value());
}

TEST_CASE("row-space equality routes agree on random pairs", "[matroid]") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 400; ++trial) {
        std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 6;
        auto randmat = [&] {
            Gf2Matrix m(rows, cols);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j)
                    if (rng() & 1u) m.set(i, j, true);
            return m;
        };
        Gf2Matrix a = randmat();
        // b: either an independent random matrix or a row-op image of a
        Gf2Matrix b = (rng() & 1u) ? randmat() : a;
        if (b == a) {
            for (int ops = 0; ops < 6; ++ops) {
                std::size_t r1 = rng() % rows, r2 = rng() % rows;
                if (r1 != r2 && (rng() & 1u))
                    b.row_xor(r1, r2);
                else
                    b.swap_rows(r1, r2);
            }
        }
        auto cols_of = [cols](const Gf2Matrix& m) {
            std::vector<std::uint64_t> out;
            for (std::size_t j = 0; j < cols; ++j) out.push_back(m.column_bits(j));
            return out;
        };
        REQUIRE(isomat::equal_row_spaces(a, b) ==
                isomat::equal_row_spaces_of_columns(rows, cols_of(a), cols_of(b)));
    }
}

namespace {
/// Brute-force matroid isomorphism on tiny grounds: try every bijection
/// and compare the full rank functions.
bool brute_isomorphic(const BinaryMatroid& m1, const BinaryMatroid& m2) {
    if (m1.size() != m2.size()) return false;
    std::vector<std::size_t> perm(m1.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool good = true;
        for (std::uint64_t s = 0; good && s < (std::uint64_t{1} << m1.size()); ++s) {
            std::uint64_t t = 0;
            for (std::size_t j = 0; j < m1.size(); ++j)
                if (s >> j & 1u) t |= std::uint64_t{1} << perm[j];
            good = m1.rank_of_mask(s) == m2.rank_of_mask(t);
        }
        if (good) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}
}  // namespace

TEST_CASE("isomorphism search agrees with the brute-force oracle on tiny matroids", "[matroid]") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 250; ++trial) {
        std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 5;
        auto make = [&] {
            std::vector<std::uint64_t> c(cols);
            for (auto& v : c) v = rng() & ((std::uint64_t{1} << rows) - 1);
            std::vector<std::string> labels;
            for (std::size_t j = 0; j < cols; ++j) labels.push_back("e" + std::to_string(j));
            return BinaryMatroid(labels, Gf2Matrix::from_columns(rows, c));
        };
        auto m1 = make(), m2 = make();
        auto found = isomat::matroids_isomorphic(m1, m2);
        REQUIRE(found.has_value() == brute_isomorphic(m1, m2));
        if (found) {
            for (std::uint64_t s = 0; s < (std::uint64_t{1} << cols); ++s) {
                std::uint64_t t = 0;
                for (std::size_t j = 0; j < cols; ++j)
                    if (s >> j & 1u) t |= std::uint64_t{1} << (*found)[j];
                REQUIRE(m1.rank_of_mask(s) == m2.rank_of_mask(t));
            }
        }
    }
}

TEST_CASE("matroid isomorphism search", "[matroid]") {
    auto m = isomat::ias(path3());
    auto self = isomat::matroids_isomorphic(m, m);
    REQUIRE(self.has_value());
    for (std::size_t i = 0; i < m.size(); ++i) CHECK((*self)[i] == i);

    LoopedSimpleGraph k1(1), k1l(1);
    k1l.set_loop(0, true);
    auto iso = isomat::matroids_isomorphic(isomat::ias(k1l), isomat::ias(k1));
    REQUIRE(iso.has_value());

    // found maps must preserve subset ranks
    auto m1 = isomat::ias(k1l);
    auto m2 = isomat::ias(k1);
    for (std::uint64_t s = 0; s < 8; ++s) {
        std::uint64_t t = 0;
        for (std::size_t j = 0; j < 3; ++j)
            if (s >> j & 1u) t |= std::uint64_t{1} << (*iso)[j];
        REQUIRE(m1.rank_of_mask(s) == m2.rank_of_mask(t));
    }

    LoopedSimpleGraph three(3);
    CHECK_FALSE(isomat::matroids_isomorphic(m, isomat::ias(three)).has_value());
}
