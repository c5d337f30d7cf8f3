#include "bmd/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "bmd/factor.hpp"

namespace bmd {
namespace oracle {

namespace {

// Footprint of a tile over m's one-cells, as a packed mask.
using CellMask = std::vector<std::uint64_t>;

bool mask_covers(const CellMask& a, const CellMask& b) {  // b subset of a
    for (std::size_t w = 0; w < a.size(); ++w)
        if (b[w] & ~a[w]) return false;
    return true;
}

void mask_or(CellMask& a, const CellMask& b) {
    for (std::size_t w = 0; w < a.size(); ++w) a[w] |= b[w];
}

struct SubsetSearch {
    SubsetSearch(const std::vector<CellMask>& m, const CellMask& f) : masks(m), full(f) {}

    const std::vector<CellMask>& masks;
    const CellMask& full;
    std::uint64_t explored = 0;
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> found;

    // Increasing-cardinality search; a branch dies when the chosen tiles plus
    // everything still available cannot cover the remaining cells.
    bool extend(std::size_t next, std::size_t remaining, const CellMask& covered) {
        ++explored;
        if (remaining == 0) {
            if (mask_covers(covered, full)) {
                found = chosen;
                return true;
            }
            return false;
        }
        CellMask reachable = covered;
        for (std::size_t i = next; i < masks.size(); ++i) mask_or(reachable, masks[i]);
        if (!mask_covers(reachable, full)) return false;
        for (std::size_t i = next; i + remaining <= masks.size(); ++i) {
            CellMask with = covered;
            mask_or(with, masks[i]);
            chosen.push_back(i);
            if (extend(i + 1, remaining - 1, with)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

}  // namespace

BitMatrix naive_bool_product(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("naive_bool_product: " + std::to_string(a.cols()) +
                                    " inner columns vs " + std::to_string(b.rows()) +
                                    " inner rows");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            bool bit = false;
            for (std::size_t t = 0; t < a.cols() && !bit; ++t)
                bit = a.get(i, t) && b.get(t, j);
            if (bit) out.set(i, j);
        }
    return out;
}

OracleResult oracle_min_k(const BitMatrix& m, std::size_t max_candidates) {
    OracleResult res;
    const std::size_t ones = m.count();
    if (ones == 0) return res;

    // Index m's one-cells, then express every candidate tile as a mask over
    // those cells.
    std::vector<std::size_t> cell_index(m.rows() * m.cols(), 0);
    std::size_t next_cell = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.get(i, j)) cell_index[i * m.cols() + j] = next_cell++;

    const JMatrix j = compute_j(m);
    const std::vector<Tile> tiles = candidate_tiles(m, j);
    const std::size_t words = (ones + 63) / 64;

    // Deduplicate identical footprints; duplicates can never improve a cover.
    std::map<CellMask, std::size_t> seen;  // footprint -> source column
    for (const Tile& t : tiles) {
        if (t.area == 0) continue;
        CellMask mask(words, 0);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (!t.row_mask.get(r)) continue;
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (t.col_mask.get(c)) {
                    const std::size_t cell = cell_index[r * m.cols() + c];
                    mask[cell >> 6] |= std::uint64_t{1} << (cell & 63);
                }
        }
        seen.emplace(std::move(mask), t.source_col);
    }
    if (seen.size() > max_candidates)
        throw std::runtime_error("oracle_min_k: " + std::to_string(seen.size()) +
                                 " distinct candidate tiles exceed the limit of " +
                                 std::to_string(max_candidates));

    std::vector<CellMask> masks;
    std::vector<std::size_t> sources;
    for (auto& [mask, src] : seen) {
        masks.push_back(mask);
        sources.push_back(src);
    }

    CellMask full(words, 0);
    for (std::size_t c = 0; c < ones; ++c) full[c >> 6] |= std::uint64_t{1} << (c & 63);

    SubsetSearch search(masks, full);
    CellMask none(words, 0);
    for (std::size_t k = 1; k <= masks.size(); ++k) {
        if (search.extend(0, k, none)) {
            res.min_k = k;
            for (std::size_t i : search.found) res.witness.push_back(sources[i]);
            std::sort(res.witness.begin(), res.witness.end());
            res.explored = search.explored;
            return res;
        }
    }
    throw std::logic_error("oracle_min_k: candidate tiles do not cover the matrix");
}

std::vector<BitMatrix> enumerate_factors(const BitMatrix& m, std::size_t max_cols) {
    const std::size_t n = m.cols();
    if (n > max_cols)
        throw std::invalid_argument("enumerate_factors: " + std::to_string(n) +
                                    " columns exceed the limit of " + std::to_string(max_cols));

    // m = m o V^T constrains each V row independently: row j is feasible iff
    // the union of the columns it selects equals column j.
    std::vector<BitVector> columns;
    for (std::size_t t = 0; t < n; ++t) columns.push_back(m.column(t));

    std::vector<std::vector<std::uint32_t>> feasible(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
            BitVector acc(m.rows());
            for (std::size_t t = 0; t < n; ++t)
                if (subset & (1u << t)) acc |= columns[t];
            if (acc == columns[j]) feasible[j].push_back(subset);
        }
    }

    std::vector<BitMatrix> out;
    std::vector<std::size_t> pick(n, 0);
    while (true) {
        BitMatrix v(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t t = 0; t < n; ++t)
                if (feasible[j][pick[j]] & (1u << t)) v.set(j, t);
        out.push_back(std::move(v));
        std::size_t j = 0;
        while (j < n && ++pick[j] == feasible[j].size()) pick[j++] = 0;
        if (j == n) break;
    }
    return out;
}

}  // namespace oracle
}  // namespace bmd
