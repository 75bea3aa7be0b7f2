#pragma once

// Small independent oracles used to freeze expected values in the tests.
// These stay deliberately naive and share no code with the library paths
// they check.

#include <cstdint>
#include <set>
#include <vector>

namespace oracles {

/// Rank over GF(2) by enumerating the row span: the span of r independent
/// rows has exactly 2^r distinct vectors.
inline std::size_t brute_rank(const std::vector<std::vector<int>>& rows) {
    std::size_t r = rows.size();
    std::set<std::vector<int>> span;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << r); ++pick) {
        std::vector<int> acc(rows.empty() ? 0 : rows[0].size(), 0);
        for (std::size_t i = 0; i < r; ++i)
            if (pick >> i & 1u)
                for (std::size_t j = 0; j < acc.size(); ++j) acc[j] ^= rows[i][j];
        span.insert(acc);
    }
    std::size_t dim = 0;
    while ((std::size_t{1} << dim) < span.size()) ++dim;
    return dim;
}

/// q(G) coefficients as a dense (x-exponent, y-exponent) table computed by
/// the defining sum, with its own binomial expansion of (x-1)^a (y-1)^b.
/// Graph given by adjacency lists plus loop flags.
struct BrutePoly {
    // coeff[i][j] multiplies x^i y^j
    std::vector<std::vector<long long>> coeff;

    void add(std::size_t i, std::size_t j, long long c) {
        if (coeff.size() <= i) coeff.resize(i + 1);
        for (auto& row : coeff)
            if (row.size() <= j) row.resize(j + 1, 0);
        if (coeff[i].size() <= j) coeff[i].resize(j + 1, 0);
        coeff[i][j] += c;
    }

    long long at(std::size_t i, std::size_t j) const {
        if (i >= coeff.size() || j >= coeff[i].size()) return 0;
        return coeff[i][j];
    }

    friend bool operator==(const BrutePoly& a, const BrutePoly& b) {
        std::size_t mi = std::max(a.coeff.size(), b.coeff.size());
        for (std::size_t i = 0; i < mi; ++i) {
            std::size_t mj = 0;
            if (i < a.coeff.size()) mj = std::max(mj, a.coeff[i].size());
            if (i < b.coeff.size()) mj = std::max(mj, b.coeff[i].size());
            for (std::size_t j = 0; j < mj; ++j)
                if (a.at(i, j) != b.at(i, j)) return false;
        }
        return true;
    }
};

inline long long binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    long long r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * static_cast<long long>(n - i) / static_cast<long long>(i + 1);
    return r;
}

/// Expand (x-1)^a (y-1)^b into the table.
inline void add_expanded(BrutePoly& p, std::size_t a, std::size_t b, long long c) {
    for (std::size_t i = 0; i <= a; ++i)
        for (std::size_t j = 0; j <= b; ++j) {
            long long sign = ((a - i) + (b - j)) % 2 ? -1 : 1;
            p.add(i, j, c * sign * binomial(a, i) * binomial(b, j));
        }
}

/// The two-variable interlace polynomial by brute force: for every vertex
/// subset S, rank A(G)[S] with the naive eliminator above.
inline BrutePoly brute_interlace(std::size_t n, const std::vector<std::vector<int>>& adj,
                                 const std::vector<int>& loops) {
    BrutePoly out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        std::vector<std::size_t> verts;
        for (std::size_t v = 0; v < n; ++v)
            if (s >> v & 1u) verts.push_back(v);
        std::vector<std::vector<int>> sub(verts.size(), std::vector<int>(verts.size(), 0));
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = 0; j < verts.size(); ++j) {
                if (i == j)
                    sub[i][j] = loops[verts[i]];
                else
                    sub[i][j] = adj[verts[i]][verts[j]];
            }
        std::size_t r = brute_rank(sub);
        add_expanded(out, r, verts.size() - r, 1);
    }
    return out;
}

}  // namespace oracles
