#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "isomat/gf2.hpp"
#include "oracles.hpp"

using isomat::Gf2Matrix;

TEST_CASE("rank of basic matrices", "[gf2]") {
    CHECK(isomat::rank(Gf2Matrix::identity(3)) == 3);
    CHECK(isomat::rank(Gf2Matrix(2, 4)) == 0);

    // A(P3) has rank 2: rows 0 and 2 coincide, rows 0 and 1 are independent.
    auto p3 = Gf2Matrix::from_rows({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
    CHECK(oracles::brute_rank({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}) == 2);
    CHECK(isomat::rank(p3) == 2);
}

TEST_CASE("rref shapes and pivots", "[gf2]") {
    auto [ri, pi] = isomat::rref(Gf2Matrix::identity(4));
    CHECK(ri == Gf2Matrix::identity(4));
    CHECK(pi == std::vector<std::size_t>{0, 1, 2, 3});

    auto [r1, p1] = isomat::rref(Gf2Matrix::from_rows({{1, 1}, {1, 1}}));
    CHECK(r1 == Gf2Matrix::from_rows({{1, 1}, {0, 0}}));
    CHECK(p1 == std::vector<std::size_t>{0});

    auto [rz, pz] = isomat::rref(Gf2Matrix(3, 2));
    CHECK(rz == Gf2Matrix(3, 2));
    CHECK(pz.empty());
}

TEST_CASE("rref is idempotent and rank equals pivot count (exhaustive to 4x4)", "[gf2]") {
    for (std::size_t r = 0; r <= 4; ++r)
        for (std::size_t c = 0; c <= 4; ++c)
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (r * c)); ++bits) {
                Gf2Matrix m(r, c);
                std::vector<std::vector<int>> raw(r, std::vector<int>(c, 0));
                for (std::size_t i = 0; i < r * c; ++i)
                    if (bits >> i & 1u) {
                        m.set(i / c, i % c, true);
                        raw[i / c][i % c] = 1;
                    }
                auto [red, pivots] = isomat::rref(m);
                REQUIRE(isomat::rank(m) == pivots.size());
                REQUIRE(isomat::rank(m) == oracles::brute_rank(raw));
                auto [red2, pivots2] = isomat::rref(red);
                REQUIRE(red2 == red);
                REQUIRE(pivots2 == pivots);
                REQUIRE(std::is_sorted(pivots.begin(), pivots.end()));
            }
}

TEST_CASE("rank is invariant under row permutation and row addition", "[gf2]") {
    // 4x4 sample set is enough to exercise every elimination path.
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Gf2Matrix m(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (rng() & 1u) m.set(i, j, true);
        std::size_t base = isomat::rank(m);

        Gf2Matrix swapped = m;
        swapped.swap_rows(rng() % 4, rng() % 4);
        CHECK(isomat::rank(swapped) == base);

        Gf2Matrix added = m;
        std::size_t a = rng() % 4, b = rng() % 4;
        if (a != b) {
            added.row_xor(a, b);
            CHECK(isomat::rank(added) == base);
        }
    }
}

TEST_CASE("principal submatrix", "[gf2]") {
    auto a = Gf2Matrix::from_rows({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});

    auto empty = isomat::principal_submatrix(a, {});
    CHECK(empty.rows() == 0);
    CHECK(isomat::rank(empty) == 0);  // empty matrix counts as nonsingular

    CHECK(isomat::principal_submatrix(a, {0, 1, 2}) == a);

    // endpoints of P3 are nonadjacent and unlooped
    CHECK(isomat::principal_submatrix(a, {0, 2}) == Gf2Matrix(2, 2));

    CHECK_THROWS_AS(isomat::principal_submatrix(a, {3}), std::out_of_range);
    CHECK_THROWS_AS(isomat::principal_submatrix(Gf2Matrix(2, 3), {0}), std::invalid_argument);

    for (std::uint64_t bits = 0; bits < 512; ++bits) {
        Gf2Matrix m(3, 3);
        for (std::size_t i = 0; i < 9; ++i)
            if (bits >> i & 1u) m.set(i / 3, i % 3, true);
        for (std::uint64_t s = 0; s < 8; ++s) {
            std::vector<std::size_t> sel;
            for (std::size_t v = 0; v < 3; ++v)
                if (s >> v & 1u) sel.push_back(v);
            REQUIRE(isomat::rank(isomat::principal_submatrix(m, sel)) <= sel.size());
        }
    }
}

TEST_CASE("column bits round-trip", "[gf2]") {
    auto m = Gf2Matrix::from_columns(3, {0b101, 0b010, 0b111});
    CHECK(m.column_bits(0) == 0b101);
    CHECK(m.column_bits(1) == 0b010);
    CHECK(m.column_bits(2) == 0b111);
    CHECK(isomat::rank_of_columns(std::vector<std::uint64_t>{0b101, 0b010, 0b111}) == 2);
}
