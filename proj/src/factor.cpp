#include "bmd/factor.hpp"

#include <bit>
#include <stdexcept>

namespace bmd {

JMatrix compute_j(const BitMatrix& m) {
    return {complement(bool_product(complement(transpose(m)), m))};
}

BitMatrix general_j(const BitMatrix& m, const BitMatrix& u) {
    if (u.rows() != m.rows())
        throw std::invalid_argument("general_j: U has " + std::to_string(u.rows()) +
                                    " rows, M has " + std::to_string(m.rows()));
    return complement(bool_product(complement(transpose(m)), u));
}

std::vector<Tile> candidate_tiles(const BitMatrix& m, const JMatrix& j) {
    const BitMatrix jt = transpose(j.j);  // row t of jt = column t of J
    std::vector<Tile> tiles;
    tiles.reserve(m.cols());
    for (std::size_t t = 0; t < m.cols(); ++t) {
        Tile tile;
        tile.source_col = t;
        tile.row_mask = m.column(t);
        tile.col_mask = jt.row(t);
        tile.area = static_cast<std::uint64_t>(tile.row_mask.count()) * tile.col_mask.count();
        tiles.push_back(std::move(tile));
    }
    return tiles;
}

std::uint64_t covered_count(const BitMatrix& c, const Tile& t) {
    if (c.rows() != t.row_mask.size() || c.cols() != t.col_mask.size())
        throw std::invalid_argument("covered_count: C is " + std::to_string(c.rows()) + "x" +
                                    std::to_string(c.cols()) + ", tile masks are " +
                                    std::to_string(t.row_mask.size()) + "/" +
                                    std::to_string(t.col_mask.size()));
    std::uint64_t total = 0;
    auto rw = t.row_mask.words();
    auto cw = t.col_mask.words();
    for (std::size_t w = 0; w < rw.size(); ++w) {
        std::uint64_t bits = rw[w];
        while (bits) {
            const std::size_t i = w * 64 + std::countr_zero(bits);
            bits &= bits - 1;
            auto crow = c.row_words(i);
            for (std::size_t k = 0; k < crow.size(); ++k)
                total += std::popcount(crow[k] & cw[k]);
        }
    }
    return total;
}

CountMatrix count_matrix(std::span<const Tile> tiles, std::size_t rows, std::size_t cols) {
    CountMatrix counts(rows, cols);
    for (const Tile& t : tiles) {
        auto rw = t.row_mask.words();
        for (std::size_t w = 0; w < rw.size(); ++w) {
            std::uint64_t bits = rw[w];
            while (bits) {
                const std::size_t i = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                auto cw = t.col_mask.words();
                for (std::size_t k = 0; k < cw.size(); ++k) {
                    std::uint64_t cbits = cw[k];
                    while (cbits) {
                        const std::size_t j = k * 64 + std::countr_zero(cbits);
                        cbits &= cbits - 1;
                        ++counts.at(i, j);
                    }
                }
            }
        }
    }
    return counts;
}

bool maximality_audit(const BitMatrix& m, const JMatrix& j) {
    const std::size_t n = j.source_cols();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < n; ++t) {
            if (j.j.get(i, t)) continue;
            BitMatrix flipped = j.j;
            flipped.set(i, t);
            if (bool_product(m, transpose(flipped)) == m) return false;
        }
    }
    return true;
}

}  // namespace bmd
