#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bmd/bitmat.hpp"
#include "bmd/oracle.hpp"
#include "testdata.hpp"

using namespace bmd;

TEST_CASE("bool_product reproduces the known factorization") {
    CHECK(bool_product(testdata::worked_u(), testdata::worked_v()) == testdata::worked_m());
}

TEST_CASE("bool_product with identity is a no-op") {
    const BitMatrix m = testdata::worked_m();
    CHECK(bool_product(m, BitMatrix::identity(m.cols())) == m);
    CHECK(bool_product(BitMatrix::identity(m.rows()), m) == m);
}

TEST_CASE("bool_product matches the definitional triple loop") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        const BitMatrix a = testdata::random_matrix(rng, 6, 5, 0.4);
        const BitMatrix b = testdata::random_matrix(rng, 5, 4, 0.4);
        CHECK(bool_product(a, b) == oracle::naive_bool_product(a, b));
    }
}

TEST_CASE("bool_product rejects non-conformable shapes") {
    const BitMatrix a(3, 4);
    const BitMatrix b(5, 2);
    CHECK_THROWS_WITH_AS(bool_product(a, b),
                         "bool_product: shapes 3x4 and 5x2 are not conformable",
                         std::invalid_argument);
}

TEST_CASE("arith_product counts covering tiles") {
    const BitMatrix m = testdata::worked_m();
    const CountMatrix t = arith_product(m, transpose(testdata::worked_j()));
    const std::uint32_t row2[] = {2, 0, 4, 3, 0, 2, 4};
    const std::uint32_t row8[] = {2, 2, 6, 3, 2, 2, 6};
    for (std::size_t j = 0; j < 7; ++j) {
        CHECK(t.at(1, j) == row2[j]);
        CHECK(t.at(7, j) == row8[j]);
    }
    // columns 3 and 7 of m are identical, so their count columns must agree
    for (std::size_t i = 0; i < 8; ++i) CHECK(t.at(i, 2) == t.at(i, 6));
}

TEST_CASE("arith_product with a zero factor is zero") {
    std::mt19937_64 rng(11);
    const BitMatrix a = testdata::random_matrix(rng, 4, 6, 0.5);
    const CountMatrix t = arith_product(a, BitMatrix(6, 3));
    CHECK(t.sum() == 0);
}

TEST_CASE("arith_product and bool_product share a zero pattern") {
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 30; ++iter) {
        const BitMatrix a = testdata::random_matrix(rng, 5, 7, 0.3);
        const BitMatrix b = testdata::random_matrix(rng, 7, 6, 0.3);
        const CountMatrix g = arith_product(a, b);
        const BitMatrix h = bool_product(a, b);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                CHECK((g.at(i, j) == 0) == !h.get(i, j));
    }
}

TEST_CASE("complement is an involution and clears the tail") {
    std::mt19937_64 rng(17);
    const BitMatrix a = testdata::random_matrix(rng, 9, 70, 0.5);
    CHECK(complement(complement(a)) == a);
    CHECK(a.count() + complement(a).count() == 9 * 70);

    BitMatrix ones(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) ones.set(i, j);
    CHECK(complement(ones) == BitMatrix(3, 3));
}

TEST_CASE("complement of the response matrix flips the pass column") {
    const BitMatrix failures = complement(testdata::response_r());
    const BitVector col = failures.column(0);
    CHECK(col.count() == 4);
    for (std::size_t i = 0; i < 12; ++i) CHECK(col.get(i) == (i >= 8));
}

TEST_CASE("transpose basics") {
    const BitMatrix m = testdata::small_m();
    const BitMatrix t = transpose(m);
    CHECK(t.rows() == 5);
    CHECK(t.cols() == 4);
    CHECK(t.row(0) == BitVector::parse("1011"));
    CHECK(transpose(t) == m);
}

TEST_CASE("transpose of a boolean product swaps factors") {
    std::mt19937_64 rng(19);
    for (int iter = 0; iter < 30; ++iter) {
        const BitMatrix u = testdata::random_matrix(rng, 6, 4, 0.4);
        const BitMatrix v = testdata::random_matrix(rng, 4, 7, 0.4);
        CHECK(transpose(bool_product(u, v)) == bool_product(transpose(v), transpose(u)));
    }
}

TEST_CASE("outer_tile puts ones exactly on the mask product") {
    const BitVector p = BitVector::parse("010101");
    const BitVector q = BitVector::parse("01011");
    const BitMatrix tile = outer_tile(p, q);
    CHECK(tile == BitMatrix::parse({
                      "0 0 0 0 0",
                      "0 1 0 1 1",
                      "0 0 0 0 0",
                      "0 1 0 1 1",
                      "0 0 0 0 0",
                      "0 1 0 1 1",
                  }));
    CHECK(outer_tile(BitVector(6), q) == BitMatrix(6, 5));

    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 20; ++iter) {
        const BitVector a = testdata::random_vector(rng, 12, 0.4);
        const BitVector b = testdata::random_vector(rng, 9, 0.4);
        CHECK(outer_tile(a, b).count() == a.count() * b.count());
    }
}

TEST_CASE("dominates agrees with the elementwise definition") {
    const BitMatrix m = testdata::small_m();
    CHECK(dominates(m.column(0), m.column(1)));
    CHECK_FALSE(dominates(m.column(1), m.column(0)));

    std::mt19937_64 rng(29);
    for (int iter = 0; iter < 200; ++iter) {
        const BitVector p = testdata::random_vector(rng, 11, 0.5);
        const BitVector q = testdata::random_vector(rng, 11, 0.5);
        bool expected = true;
        for (std::size_t i = 0; i < 11; ++i)
            if (!p.get(i) && q.get(i)) expected = false;
        CHECK(dominates(p, q) == expected);
        CHECK(dominates(p, p));
    }
    CHECK_THROWS_AS(dominates(BitVector(3), BitVector(4)), std::invalid_argument);
}

TEST_CASE("dominance is antisymmetric up to equality") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 100; ++iter) {
        BitVector p = testdata::random_vector(rng, 8, 0.5);
        BitVector q = iter % 3 == 0 ? p : testdata::random_vector(rng, 8, 0.5);
        CHECK((dominates(p, q) && dominates(q, p)) == (p == q));
    }
}

TEST_CASE("population counts") {
    const BitMatrix m = testdata::worked_m();
    CHECK(m.column(2).count() == 6);
    CHECK(m.column(3).count() == 4);
    CHECK(BitMatrix(4, 9).count() == 0);
    CHECK(m.count() == 30);
}

TEST_CASE("combine covers or/and/and-not") {
    const BitMatrix m = testdata::worked_m();
    CHECK(combine(m, m, Combine::Or) == m);
    CHECK(combine(m, m, Combine::And) == m);
    CHECK(combine(m, m, Combine::AndNot) == BitMatrix(m.rows(), m.cols()));
    CHECK_THROWS_AS(combine(m, BitMatrix(2, 2), Combine::Or), std::invalid_argument);
}

TEST_CASE("oring a tile into an empty cover marks exactly its footprint") {
    const BitMatrix m = testdata::worked_m();
    const BitMatrix jt = transpose(testdata::worked_j());
    const BitMatrix tile5 = outer_tile(m.column(4), jt.row(4));
    const BitMatrix c = combine(BitMatrix(8, 7), tile5, Combine::Or);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 7; ++j) {
            const bool expect = (i == 2 || i == 4 || i == 5 || i == 7) &&
                                (j == 1 || j == 2 || j == 4 || j == 6);
            CHECK(c.get(i, j) == expect);
        }
}

TEST_CASE("product expansion: boolean product is the or of its tiles") {
    std::mt19937_64 rng(37);
    for (int iter = 0; iter < 25; ++iter) {
        const BitMatrix u = testdata::random_matrix(rng, 6, 4, 0.4);
        const BitMatrix v = testdata::random_matrix(rng, 4, 8, 0.4);
        BitMatrix acc(6, 8);
        for (std::size_t t = 0; t < 4; ++t)
            acc = combine(acc, outer_tile(u.column(t), v.row(t)), Combine::Or);
        CHECK(acc == bool_product(u, v));
    }
}

TEST_CASE("covered-count identity for a tile intersection") {
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 40; ++iter) {
        const BitMatrix c = testdata::random_matrix(rng, 7, 9, 0.4);
        const BitVector p = testdata::random_vector(rng, 7, 0.5);
        const BitVector q = testdata::random_vector(rng, 9, 0.5);
        std::size_t triple = 0;
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 9; ++j)
                triple += p.get(i) && c.get(i, j) && q.get(j);
        CHECK(combine(c, outer_tile(p, q), Combine::And).count() == triple);
    }
}

TEST_CASE("empty matrices are legal everywhere") {
    const BitMatrix empty_rows(0, 5);
    const BitMatrix empty_cols(4, 0);
    CHECK(complement(empty_rows).rows() == 0);
    CHECK(transpose(empty_rows).cols() == 0);
    CHECK(bool_product(empty_cols, BitMatrix(0, 3)) == BitMatrix(4, 3));
    CHECK(bool_product(empty_rows, BitMatrix(5, 2)).rows() == 0);
    CHECK(arith_product(empty_cols, BitMatrix(0, 3)).sum() == 0);
    CHECK(BitMatrix(0, 0).count() == 0);
}
