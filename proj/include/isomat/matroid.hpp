#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "isomat/gf2.hpp"

namespace isomat {

/// Binary matroid given by a GF(2) representing matrix, one column per
/// ground element. A label subset is dependent iff its columns are linearly
/// dependent. Ground size is capped at 64 so subsets fit in one word.
class BinaryMatroid {
public:
    BinaryMatroid() = default;

    BinaryMatroid(std::vector<std::string> ground, Gf2Matrix rep)
        : ground_(std::move(ground)), rep_(std::move(rep)) {
        if (ground_.size() != rep_.cols())
            throw std::invalid_argument("ground size must match representation columns");
        if (ground_.size() > 64) throw std::invalid_argument("ground sets above 64 are not supported");
        if (rep_.rows() > 64) throw std::invalid_argument("representations above 64 rows are not supported");
        cols_.reserve(ground_.size());
        for (std::size_t j = 0; j < ground_.size(); ++j) cols_.push_back(rep_.column_bits(j));
        for (std::size_t j = 0; j < ground_.size(); ++j)
            if (!index_.emplace(ground_[j], j).second)
                throw std::invalid_argument("duplicate ground label: " + ground_[j]);
    }

    const std::vector<std::string>& ground() const { return ground_; }
    const Gf2Matrix& rep() const { return rep_; }
    std::size_t size() const { return ground_.size(); }

    std::size_t index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw std::invalid_argument("unknown ground label: " + label);
        return it->second;
    }

    std::uint64_t column(std::size_t i) const { return cols_[i]; }
    const std::vector<std::uint64_t>& columns() const { return cols_; }

    std::uint64_t mask_of(const std::vector<std::string>& labels) const {
        std::uint64_t m = 0;
        for (const auto& l : labels) m |= std::uint64_t{1} << index_of(l);
        return m;
    }

    std::vector<std::string> labels_of(std::uint64_t mask) const {
        std::vector<std::string> out;
        for (std::uint64_t m = mask; m; m &= m - 1)
            out.push_back(ground_[static_cast<std::size_t>(std::countr_zero(m))]);
        return out;
    }

    std::size_t rank_of_mask(std::uint64_t mask) const {
        Gf2Basis b;
        for (std::uint64_t m = mask; m; m &= m - 1)
            b.insert(cols_[static_cast<std::size_t>(std::countr_zero(m))]);
        return b.size();
    }

    std::size_t rank_full() const { return rank_of_mask(size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1); }

    std::uint64_t full_mask() const { return size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1; }

private:
    std::vector<std::string> ground_;
    Gf2Matrix rep_;
    std::vector<std::uint64_t> cols_;
    std::unordered_map<std::string, std::size_t> index_;
};

inline std::size_t rank_of(const BinaryMatroid& m, const std::vector<std::string>& subset) {
    return m.rank_of_mask(m.mask_of(subset));
}

namespace detail {
/// Express column target over the columns selected by basis_mask; returns
/// the mask of basis elements used. Assumes the basis spans target.
inline std::uint64_t expand_over_basis(const BinaryMatroid& m, std::uint64_t basis_mask,
                                       std::uint64_t target) {
    // Echelonize the basis columns, tracking element combinations per slot.
    std::uint64_t value[64] = {};
    std::uint64_t combo[64] = {};
    for (std::uint64_t bm = basis_mask; bm; bm &= bm - 1) {
        std::size_t e = static_cast<std::size_t>(std::countr_zero(bm));
        std::uint64_t v = m.column(e);
        std::uint64_t c = std::uint64_t{1} << e;
        while (v) {
            unsigned h = 63u - static_cast<unsigned>(std::countl_zero(v));
            if (!value[h]) {
                value[h] = v;
                combo[h] = c;
                break;
            }
            v ^= value[h];
            c ^= combo[h];
        }
    }
    std::uint64_t v = target, c = 0;
    while (v) {
        unsigned h = 63u - static_cast<unsigned>(std::countl_zero(v));
        if (!value[h]) throw std::invalid_argument("element not spanned by the given basis");
        v ^= value[h];
        c ^= combo[h];
    }
    return c;
}
}  // namespace detail

/// C(x,B): the unique circuit inside B ∪ {x}, i.e. {x} plus the basis
/// elements appearing in the expansion of x over B.
inline std::vector<std::string> fundamental_circuit(const BinaryMatroid& m, const std::string& x,
                                                    const std::vector<std::string>& basis) {
    std::uint64_t bmask = m.mask_of(basis);
    std::size_t xi = m.index_of(x);
    if (bmask & (std::uint64_t{1} << xi)) throw std::invalid_argument("x must lie outside the basis");
    if (m.rank_of_mask(bmask) != static_cast<std::size_t>(std::popcount(bmask)) ||
        std::popcount(bmask) != static_cast<int>(m.rank_full()))
        throw std::invalid_argument("given set is not a basis");
    std::uint64_t used = detail::expand_over_basis(m, bmask, m.column(xi));
    return m.labels_of(used | (std::uint64_t{1} << xi));
}

/// All circuits (minimal dependent sets), as ground masks sorted by
/// (size, mask). Enumerates the cycle space, so the ground is capped.
inline std::vector<std::uint64_t> circuit_masks(const BinaryMatroid& m, std::size_t limit = 18) {
    if (m.size() > limit) throw std::invalid_argument("circuits: ground exceeds configured limit");
    auto [R, pivots] = rref(m.rep());
    std::vector<std::size_t> free_cols;
    {
        std::vector<bool> is_pivot(m.size(), false);
        for (std::size_t p : pivots) is_pivot[p] = true;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (!is_pivot[j]) free_cols.push_back(j);
    }
    // Nullspace basis: one vector per free column.
    std::vector<std::uint64_t> nb;
    for (std::size_t f : free_cols) {
        std::uint64_t v = std::uint64_t{1} << f;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (R.get(i, f)) v |= std::uint64_t{1} << pivots[i];
        nb.push_back(v);
    }
    // Gray-code walk over all nonzero combinations; supports of cycle-space
    // vectors are exactly the disjoint unions of circuits.
    std::vector<std::uint64_t> supports;
    std::uint64_t acc = 0;
    std::uint64_t total = std::uint64_t{1} << nb.size();
    for (std::uint64_t i = 1; i < total; ++i) {
        acc ^= nb[static_cast<std::size_t>(std::countr_zero(i))];
        supports.push_back(acc);
    }
    std::sort(supports.begin(), supports.end(), [](std::uint64_t a, std::uint64_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
    std::vector<std::uint64_t> minimal;
    for (std::uint64_t s : supports) {
        bool min = true;
        for (std::uint64_t c : minimal)
            if ((c & ~s) == 0) {
                min = false;
                break;
            }
        if (min) minimal.push_back(s);
    }
    return minimal;
}

inline std::vector<std::vector<std::string>> circuits(const BinaryMatroid& m, std::size_t limit = 18) {
    std::vector<std::vector<std::string>> out;
    for (std::uint64_t c : circuit_masks(m, limit)) out.push_back(m.labels_of(c));
    return out;
}

/// Theorem-of-Section-2 type (c) move on a standard representation (I|A):
/// with a_jk = 1, toggle a_bc whenever b != j, c != k, a_jc = 1, a_bk = 1.
/// Equivalent to re-deriving the standard representation for the basis
/// B Δ {s_j, s_{r+k}}.
inline Gf2Matrix basis_exchange(const Gf2Matrix& std_rep, std::size_t j, std::size_t k) {
    std::size_t r = std_rep.rows();
    if (std_rep.cols() < r) throw std::invalid_argument("not a standard representation");
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j2 = 0; j2 < r; ++j2)
            if (std_rep.get(i, j2) != (i == j2))
                throw std::invalid_argument("left block is not the identity");
    if (j >= r || r + k >= std_rep.cols()) throw std::out_of_range("basis_exchange index out of range");
    if (!std_rep.get(j, r + k)) throw std::invalid_argument("basis_exchange requires a_jk = 1");
    Gf2Matrix out = std_rep;
    for (std::size_t b = 0; b < r; ++b) {
        if (b == j || !std_rep.get(b, r + k)) continue;
        for (std::size_t c = r; c < std_rep.cols(); ++c) {
            if (c == r + k) continue;
            if (std_rep.get(j, c)) out.toggle(b, c);
        }
    }
    return out;
}

/// Row-space equality of two representations with the same column count,
/// decided by comparing canonical RREFs with zero rows dropped.
inline bool equal_row_spaces(const Gf2Matrix& a, const Gf2Matrix& b) {
    if (a.cols() != b.cols()) return false;
    auto trim = [](const Gf2Matrix& m) {
        auto [R, pivots] = rref(m);
        Gf2Matrix out(pivots.size(), m.cols());
        for (std::size_t i = 0; i < pivots.size(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (R.get(i, j)) out.set(i, j, true);
        return out;
    };
    return trim(a) == trim(b);
}

/// Row-space equality for column families over at most 64 rows, without
/// building matrices: reduce each family to a canonical reduced echelon
/// basis of row patterns. Columns here are the ROWS of the transposed
/// question, so we transpose first.
inline bool equal_row_spaces_of_columns(std::size_t n_rows, const std::vector<std::uint64_t>& cols1,
                                        const std::vector<std::uint64_t>& cols2) {
    if (cols1.size() != cols2.size()) return false;
    // Row i of the representation, as a bit pattern over columns.
    auto rows_of = [n_rows](const std::vector<std::uint64_t>& cols) {
        std::vector<std::uint64_t> rows(n_rows, 0);
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::uint64_t m = cols[j]; m; m &= m - 1)
                rows[static_cast<std::size_t>(std::countr_zero(m))] |= std::uint64_t{1} << j;
        return rows;
    };
    // Reduced echelon form over 64-bit row words, canonical per row space.
    auto reduce = [](std::vector<std::uint64_t> rows) {
        std::vector<std::uint64_t> basis;  // decreasing leading bits
        for (std::uint64_t r : rows) {
            for (std::uint64_t b : basis) r = std::min(r, r ^ b);
            if (!r) continue;
            for (std::uint64_t& b : basis) b = std::min(b, b ^ r);
            basis.push_back(r);
        }
        std::sort(basis.begin(), basis.end());
        return basis;
    };
    if (cols1.size() > 64)
        throw std::invalid_argument("equal_row_spaces_of_columns supports at most 64 columns");
    return reduce(rows_of(cols1)) == reduce(rows_of(cols2));
}

/// Two representations over the same ordered ground define the same binary
/// matroid iff their row spaces agree.
inline bool equal_matroids(const BinaryMatroid& m1, const BinaryMatroid& m2) {
    if (m1.ground() != m2.ground()) throw std::invalid_argument("equal_matroids requires identical grounds");
    return equal_row_spaces(m1.rep(), m2.rep());
}

/// Minor m / contract - delete. The new rank function is
/// r'(S) = r(S ∪ contract) - r(contract); representation obtained by
/// pivoting an independent spanning subset of the contracted columns to
/// unit vectors and dropping their rows (dependent contracted elements
/// behave like deletions).
inline BinaryMatroid minor(const BinaryMatroid& m, const std::vector<std::string>& contract,
                           const std::vector<std::string>& del) {
    std::uint64_t cmask = m.mask_of(contract);
    std::uint64_t dmask = m.mask_of(del);
    if (cmask & dmask) throw std::invalid_argument("contract and delete sets overlap");

    Gf2Matrix work = m.rep();
    std::vector<bool> row_used(work.rows(), false);
    for (std::uint64_t cm = cmask; cm; cm &= cm - 1) {
        std::size_t c = static_cast<std::size_t>(std::countr_zero(cm));
        std::size_t pivot = work.rows();
        for (std::size_t i = 0; i < work.rows(); ++i)
            if (!row_used[i] && work.get(i, c)) {
                pivot = i;
                break;
            }
        if (pivot == work.rows()) continue;  // dependent on earlier contractions
        row_used[pivot] = true;
        for (std::size_t i = 0; i < work.rows(); ++i)
            if (i != pivot && work.get(i, c)) work.row_xor(i, pivot);
    }

    std::vector<std::string> ground;
    std::vector<std::size_t> keep_cols;
    for (std::size_t j = 0; j < m.size(); ++j)
        if (!((cmask | dmask) >> j & 1u)) {
            ground.push_back(m.ground()[j]);
            keep_cols.push_back(j);
        }
    std::size_t kept_rows = 0;
    for (bool u : row_used) kept_rows += !u;
    Gf2Matrix rep(kept_rows, keep_cols.size());
    std::size_t ri = 0;
    for (std::size_t i = 0; i < work.rows(); ++i) {
        if (row_used[i]) continue;
        for (std::size_t j = 0; j < keep_cols.size(); ++j)
            if (work.get(i, keep_cols[j])) rep.set(ri, j, true);
        ++ri;
    }
    return BinaryMatroid(std::move(ground), std::move(rep));
}

/// Finest partition of the ground such that every circuit stays inside one
/// block. Blocks are sorted by smallest member; matroid loops and coloops
/// end up as singletons.
inline std::vector<std::vector<std::string>> components(const BinaryMatroid& m, std::size_t limit = 18) {
    std::vector<std::size_t> parent(m.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::uint64_t c : circuit_masks(m, limit)) {
        std::size_t first = static_cast<std::size_t>(std::countr_zero(c));
        for (std::uint64_t cm = c & (c - 1); cm; cm &= cm - 1)
            parent[find(static_cast<std::size_t>(std::countr_zero(cm)))] = find(first);
    }
    std::vector<std::vector<std::string>> blocks;
    std::unordered_map<std::size_t, std::size_t> block_of;
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::size_t r = find(i);
        auto it = block_of.find(r);
        if (it == block_of.end()) {
            block_of.emplace(r, blocks.size());
            blocks.push_back({m.ground()[i]});
        } else {
            blocks[it->second].push_back(m.ground()[i]);
        }
    }
    return blocks;
}

inline std::uint64_t closure_mask(const BinaryMatroid& m, std::uint64_t subset) {
    std::size_t base = m.rank_of_mask(subset);
    std::uint64_t out = subset;
    for (std::size_t e = 0; e < m.size(); ++e) {
        std::uint64_t b = std::uint64_t{1} << e;
        if ((subset & b) == 0 && m.rank_of_mask(subset | b) == base) out |= b;
    }
    return out;
}

inline std::vector<std::string> closure(const BinaryMatroid& m, const std::vector<std::string>& subset) {
    return m.labels_of(closure_mask(m, m.mask_of(subset)));
}

/// Search for seven elements whose columns are exactly the nonzero vectors
/// of a 3-dimensional subspace (a Fano restriction).
inline std::optional<std::vector<std::string>> find_fano_restriction(const BinaryMatroid& m,
                                                                     std::size_t limit = 18) {
    if (m.size() > limit) throw std::invalid_argument("find_fano_restriction: ground exceeds limit");
    // Map distinct nonzero column values to a representative element.
    std::vector<std::pair<std::uint64_t, std::size_t>> vals;
    for (std::size_t j = 0; j < m.size(); ++j) {
        std::uint64_t v = m.column(j);
        if (!v) continue;
        bool seen = false;
        for (auto& [val, rep] : vals)
            if (val == v) {
                seen = true;
                break;
            }
        if (!seen) vals.emplace_back(v, j);
    }
    auto rep_of = [&](std::uint64_t v) -> std::optional<std::size_t> {
        for (auto& [val, rep] : vals)
            if (val == v) return rep;
        return std::nullopt;
    };
    for (std::size_t a = 0; a < vals.size(); ++a)
        for (std::size_t b = a + 1; b < vals.size(); ++b)
            for (std::size_t c = b + 1; c < vals.size(); ++c) {
                std::uint64_t va = vals[a].first, vb = vals[b].first, vc = vals[c].first;
                if (vc == (va ^ vb)) continue;  // dependent triple
                std::uint64_t span[7] = {va, vb, vc, va ^ vb, va ^ vc, vb ^ vc, va ^ vb ^ vc};
                std::vector<std::string> found;
                bool all = true;
                for (std::uint64_t v : span) {
                    auto rep = rep_of(v);
                    if (!rep) {
                        all = false;
                        break;
                    }
                    found.push_back(m.ground()[*rep]);
                }
                if (all) {
                    std::sort(found.begin(), found.end(), [&](const std::string& l, const std::string& r) {
                        return m.index_of(l) < m.index_of(r);
                    });
                    return found;
                }
            }
    return std::nullopt;
}

/// Ground bijection m1 -> m2 preserving the rank of every subset, or
/// nullopt. Binary matroids are uniquely representable over GF(2), so any
/// isomorphism is induced by an invertible linear map between the column
/// spaces; the search runs over images of a fixed column basis and the
/// returned bijection is double-checked through fundamental circuits.
inline std::optional<std::vector<std::size_t>> matroids_isomorphic(const BinaryMatroid& m1,
                                                                   const BinaryMatroid& m2,
                                                                   std::size_t limit = 15) {
    if (m1.size() > limit || m2.size() > limit)
        throw std::invalid_argument("matroids_isomorphic: ground exceeds configured limit");
    if (m1.size() != m2.size()) return std::nullopt;

    auto classes = [](const BinaryMatroid& m) {
        std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_value;
        for (std::size_t j = 0; j < m.size(); ++j) by_value[m.column(j)].push_back(j);
        return by_value;
    };
    auto cls1 = classes(m1), cls2 = classes(m2);
    std::size_t zero1 = cls1.count(0) ? cls1.at(0).size() : 0;
    std::size_t zero2 = cls2.count(0) ? cls2.at(0).size() : 0;
    if (zero1 != zero2) return std::nullopt;
    {
        std::vector<std::size_t> sizes1, sizes2;
        for (auto& [v, els] : cls1)
            if (v) sizes1.push_back(els.size());
        for (auto& [v, els] : cls2)
            if (v) sizes2.push_back(els.size());
        std::sort(sizes1.begin(), sizes1.end());
        std::sort(sizes2.begin(), sizes2.end());
        if (sizes1 != sizes2) return std::nullopt;
    }

    std::size_t r = m1.rank_full();
    if (r != m2.rank_full()) return std::nullopt;

    // Greedy column basis of m1 (first independent columns).
    std::vector<std::size_t> basis1;
    {
        Gf2Basis b;
        for (std::size_t j = 0; j < m1.size() && basis1.size() < r; ++j)
            if (b.insert(m1.column(j))) basis1.push_back(j);
    }
    // Coordinates of every distinct m1 value over that basis.
    std::vector<std::uint64_t> distinct1;
    for (auto& [v, els] : cls1)
        if (v) distinct1.push_back(v);
    std::sort(distinct1.begin(), distinct1.end());
    std::unordered_map<std::uint64_t, std::uint64_t> coords1;  // value -> basis subset
    {
        std::uint64_t bmask = 0;
        for (std::size_t e : basis1) bmask |= std::uint64_t{1} << e;
        for (std::uint64_t v : distinct1) {
            std::uint64_t combo = detail::expand_over_basis(m1, bmask, v);
            std::uint64_t coord = 0;
            for (std::size_t i = 0; i < basis1.size(); ++i)
                if (combo >> basis1[i] & 1u) coord |= std::uint64_t{1} << i;
            coords1[v] = coord;
        }
    }
    std::vector<std::uint64_t> distinct2;
    for (auto& [v, els] : cls2)
        if (v) distinct2.push_back(v);
    std::sort(distinct2.begin(), distinct2.end());

    std::vector<std::uint64_t> image(r, 0);  // image values of basis1 columns
    std::vector<std::size_t> result;

    auto try_complete = [&]() -> bool {
        // L is defined by basis images; check it matches classes one-to-one.
        std::unordered_map<std::uint64_t, std::uint64_t> mapped;  // m1 value -> m2 value
        std::unordered_map<std::uint64_t, bool> taken;
        for (std::uint64_t v : distinct1) {
            std::uint64_t lv = 0;
            std::uint64_t coord = coords1[v];
            for (std::size_t i = 0; i < r; ++i)
                if (coord >> i & 1u) lv ^= image[i];
            auto it = cls2.find(lv);
            if (it == cls2.end() || it->second.size() != cls1.at(v).size()) return false;
            if (taken[lv]) return false;
            taken[lv] = true;
            mapped[v] = lv;
        }
        // Assemble the element bijection: classes map in index order.
        result.assign(m1.size(), 0);
        if (zero1) {
            const auto& z1 = cls1.at(0);
            const auto& z2 = cls2.at(0);
            for (std::size_t i = 0; i < z1.size(); ++i) result[z1[i]] = z2[i];
        }
        for (std::uint64_t v : distinct1) {
            const auto& e1 = cls1.at(v);
            const auto& e2 = cls2.at(mapped[v]);
            for (std::size_t i = 0; i < e1.size(); ++i) result[e1[i]] = e2[i];
        }
        return true;
    };

    // Backtracking over ordered independent image values for the basis.
    std::vector<std::size_t> pos(r, 0);
    auto independent_prefix = [&](std::size_t k) {
        Gf2Basis b;
        for (std::size_t i = 0; i <= k; ++i)
            if (!b.insert(image[i])) return false;
        return true;
    };
    std::size_t depth = 0;
    if (r == 0) {
        if (try_complete()) return result;
        return std::nullopt;
    }
    while (true) {
        if (pos[depth] == distinct2.size()) {
            if (depth == 0) return std::nullopt;
            pos[depth] = 0;
            --depth;
            ++pos[depth];
            continue;
        }
        std::uint64_t cand = distinct2[pos[depth]];
        std::uint64_t bval = m1.column(basis1[depth]);
        image[depth] = cand;
        if (cls2.at(cand).size() != cls1.at(bval).size() || !independent_prefix(depth)) {
            ++pos[depth];
            continue;
        }
        if (depth + 1 < r) {
            ++depth;
            pos[depth] = 0;
            continue;
        }
        if (try_complete()) {
            // Sanity check: fundamental circuits must be preserved.
            std::vector<std::string> b1_labels;
            for (std::size_t e : basis1) b1_labels.push_back(m1.ground()[e]);
            std::vector<std::string> b2_labels;
            for (std::size_t e : basis1) b2_labels.push_back(m2.ground()[result[e]]);
            bool good = m2.rank_of_mask(m2.mask_of(b2_labels)) == r;
            for (std::size_t x = 0; good && x < m1.size(); ++x) {
                bool in_b = std::find(basis1.begin(), basis1.end(), x) != basis1.end();
                if (in_b) continue;
                auto c1 = fundamental_circuit(m1, m1.ground()[x], b1_labels);
                std::vector<std::string> c1_mapped;
                for (const auto& l : c1) c1_mapped.push_back(m2.ground()[result[m1.index_of(l)]]);
                std::sort(c1_mapped.begin(), c1_mapped.end());
                auto c2 = fundamental_circuit(m2, m2.ground()[result[x]], b2_labels);
                std::sort(c2.begin(), c2.end());
                good = c1_mapped == c2;
            }
            if (good) return result;
        }
        ++pos[depth];
    }
}

}  // namespace isomat
