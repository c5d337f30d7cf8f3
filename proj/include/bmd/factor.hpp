#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bmd/bitmat.hpp"

namespace bmd {

// Maximal factor of a source matrix M: j is n-by-n with j[i,t] = 1 exactly
// when column i of M dominates column t. M equals bool_product(M, transpose(j)),
// and no 0 of j can be flipped to 1 without breaking that equality.
struct JMatrix {
    BitMatrix j;
    std::size_t source_cols() const { return j.rows(); }
};

// Candidate rank-1 cover term for one source column. row_mask is the
// column itself; col_mask marks every column that dominates it, so the
// tile lies under M.
struct Tile {
    std::size_t source_col = 0;
    BitVector row_mask;  // length m, equals M[:,source_col]
    BitVector col_mask;  // length n, col_mask[i] = 1 iff M[:,i] dominates M[:,source_col]
    std::uint64_t area = 0;
};

enum class TileStatus : std::uint8_t { active, picked, removed };

// Greedy-selection bookkeeping: per-tile area, uncovered remainder, and
// lifecycle state. 0 <= delta[i] <= sigma[i] throughout a run.
struct SelectionScores {
    std::vector<std::uint64_t> sigma;
    std::vector<std::uint64_t> delta;
    std::vector<TileStatus> status;
};

JMatrix compute_j(const BitMatrix& m);

// n-by-k maximal factor for a given U: result[j,i] = 1 iff M[:,j] dominates
// U[:,i]. Whenever some V with M = U o V^T exists, M = U o result^T holds and
// result is elementwise-maximal among all such V.
BitMatrix general_j(const BitMatrix& m, const BitMatrix& u);

std::vector<Tile> candidate_tiles(const BitMatrix& m, const JMatrix& j);

// Number of (i,j) with c[i,j] = 1 inside the tile's footprint, evaluated
// row-wise without materializing the outer product.
std::uint64_t covered_count(const BitMatrix& c, const Tile& t);

// Entry (i,j) = number of tiles covering cell (i,j).
CountMatrix count_matrix(std::span<const Tile> tiles, std::size_t rows, std::size_t cols);

// Test helper: true iff flipping any single 0 of j to 1 breaks
// M = M o J^T. Quadratic in n times a full product; never used inside
// decomposition. Requires M to have no all-zero column.
bool maximality_audit(const BitMatrix& m, const JMatrix& j);

}  // namespace bmd
