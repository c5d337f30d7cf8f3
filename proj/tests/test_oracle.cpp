#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bmd/decompose.hpp"
#include "bmd/oracle.hpp"
#include "testdata.hpp"

using namespace bmd;
using oracle::enumerate_factors;
using oracle::naive_bool_product;
using oracle::oracle_min_k;

TEST_CASE("naive product agrees with the packed kernel") {
    std::mt19937_64 rng(107);
    for (int iter = 0; iter < 400; ++iter) {
        const std::size_t m = 1 + rng() % 6, k = 1 + rng() % 6, n = 1 + rng() % 6;
        const BitMatrix a = testdata::random_matrix(rng, m, k, 0.4);
        const BitMatrix b = testdata::random_matrix(rng, k, n, 0.4);
        CHECK(naive_bool_product(a, b) == bool_product(a, b));
    }
}

TEST_CASE("naive product base cases") {
    const BitMatrix m = testdata::worked_m();
    CHECK(naive_bool_product(m, BitMatrix::identity(7)) == m);
    CHECK(naive_bool_product(m, BitMatrix(7, 4)) == BitMatrix(8, 4));
    CHECK(naive_bool_product(testdata::worked_u(), testdata::worked_v()) == m);
    CHECK_THROWS_AS(naive_bool_product(BitMatrix(2, 3), BitMatrix(4, 2)),
                    std::invalid_argument);
}

TEST_CASE("oracle_min_k on the known instances") {
    const oracle::OracleResult worked = oracle_min_k(testdata::worked_m());
    CHECK(worked.min_k == 3);
    CHECK(worked.witness.size() == 3);
    CHECK(worked.explored > 0);

    const oracle::OracleResult responses = oracle_min_k(complement(testdata::response_r()));
    CHECK(responses.min_k == 4);

    BitMatrix ones(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) ones.set(i, j);
    CHECK(oracle_min_k(ones).min_k == 1);

    CHECK(oracle_min_k(BitMatrix(4, 4)).min_k == 0);
}

TEST_CASE("oracle witnesses actually cover the matrix") {
    std::mt19937_64 rng(109);
    for (int iter = 0; iter < 60; ++iter) {
        const BitMatrix m = testdata::random_matrix(rng, 7, 7, 0.15 + 0.1 * (iter % 7));
        const oracle::OracleResult res = oracle_min_k(m);
        const std::vector<Tile> tiles = candidate_tiles(m, compute_j(m));
        BitMatrix acc(m.rows(), m.cols());
        for (std::size_t col : res.witness)
            acc = combine(acc, outer_tile(tiles[col].row_mask, tiles[col].col_mask), Combine::Or);
        CHECK(acc == m);
    }
}

TEST_CASE("oracle_min_k is invariant under column permutation and duplication") {
    std::mt19937_64 rng(113);
    for (int iter = 0; iter < 20; ++iter) {
        const BitMatrix m = testdata::random_matrix(rng, 6, 5, 0.4);
        const std::size_t base = oracle_min_k(m).min_k;

        std::vector<std::size_t> perm = {4, 2, 0, 3, 1};
        BitMatrix permuted(6, 5);
        for (std::size_t j = 0; j < 5; ++j)
            for (std::size_t i = 0; i < 6; ++i)
                if (m.get(i, perm[j])) permuted.set(i, j);
        CHECK(oracle_min_k(permuted).min_k == base);

        BitMatrix duplicated(6, 6);
        for (std::size_t j = 0; j < 5; ++j)
            for (std::size_t i = 0; i < 6; ++i)
                if (m.get(i, j)) duplicated.set(i, j);
        for (std::size_t i = 0; i < 6; ++i)
            if (m.get(i, 0)) duplicated.set(i, 5);
        CHECK(oracle_min_k(duplicated).min_k == base);
    }
}

TEST_CASE("oracle_min_k refuses oversized candidate sets") {
    std::mt19937_64 rng(127);
    const BitMatrix m = testdata::random_matrix(rng, 12, 9, 0.5);
    CHECK_THROWS_AS(oracle_min_k(m, 3), std::runtime_error);
}

TEST_CASE("duplicate tiles collapse before the subset search") {
    // the worked matrix has three duplicate column pairs: 4 distinct tiles
    const oracle::OracleResult res = oracle_min_k(testdata::worked_m());
    CHECK(res.min_k == 3);
    CHECK(res.explored < 20);  // tiny search over 4 deduplicated candidates
}

TEST_CASE("enumerate_factors lists exactly the valid factors") {
    std::mt19937_64 rng(131);
    for (int iter = 0; iter < 25; ++iter) {
        const std::size_t n = 3 + iter % 2;
        const BitMatrix m = testdata::random_matrix(rng, 4, n, 0.45);
        const std::vector<BitMatrix> factors = enumerate_factors(m);
        const BitMatrix j = compute_j(m).j;

        bool saw_identity = false, saw_j = false;
        for (const BitMatrix& v : factors) {
            CHECK(bool_product(m, transpose(v)) == m);
            CHECK(matrix_leq(v, j));  // maximality of J over every factor
            saw_identity |= (v == BitMatrix::identity(n));
            saw_j |= (v == j);
        }
        CHECK(saw_identity);
        CHECK(saw_j);

        // exhaustive cross-check on the smaller size: every valid V is listed
        if (n == 3) {
            std::size_t valid = 0;
            for (std::uint32_t bits = 0; bits < (1u << 9); ++bits) {
                BitMatrix v(3, 3);
                for (std::size_t r = 0; r < 3; ++r)
                    for (std::size_t c = 0; c < 3; ++c)
                        if (bits & (1u << (r * 3 + c))) v.set(r, c);
                if (bool_product(m, transpose(v)) == m) ++valid;
            }
            CHECK(valid == factors.size());
        }
    }
    CHECK_THROWS_AS(enumerate_factors(BitMatrix(3, 6)), std::invalid_argument);
}

TEST_CASE("heuristics never beat the oracle") {
    std::mt19937_64 rng(137);
    for (int iter = 0; iter < 60; ++iter) {
        const BitMatrix m = testdata::random_matrix(rng, 8, 8, 0.35);
        const std::size_t best = oracle_min_k(m).min_k;
        CHECK(remove_smallest(m).k() >= best);
        CHECK(pick_largest(m).k() >= best);
    }
}
