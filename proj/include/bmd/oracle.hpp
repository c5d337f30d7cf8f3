#pragma once

#include <cstdint>
#include <vector>

#include "bmd/bitmat.hpp"

namespace bmd {
// Independent brute-force references used by tests and the oracle CLI
// subcommand. Exponential-time paths are guarded by explicit limits.
namespace oracle {

// Definitional triple-loop Boolean product. No bit tricks on purpose.
BitMatrix naive_bool_product(const BitMatrix& a, const BitMatrix& b);

struct OracleResult {
    std::size_t min_k = 0;
    std::vector<std::size_t> witness;  // source columns of an optimal cover
    std::uint64_t explored = 0;        // subsets examined
};

// Smallest subset of candidate tiles whose union is m, by exhaustive
// increasing-size search over deduplicated tiles. Throws when the number of
// distinct candidate tiles exceeds max_candidates. The result is the
// column-use optimum, an upper bound on the unconstrained Boolean rank.
OracleResult oracle_min_k(const BitMatrix& m, std::size_t max_candidates = 20);

// Every n-by-n V with m = m o V^T, for checking that no valid factor
// exceeds J. Throws when m has more than max_cols columns (the space is
// 2^(n*n)).
std::vector<BitMatrix> enumerate_factors(const BitMatrix& m, std::size_t max_cols = 4);

}  // namespace oracle
}  // namespace bmd
