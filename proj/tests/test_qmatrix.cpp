#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bmd/oracle.hpp"
#include "bmd/qmatrix.hpp"
#include "testdata.hpp"

using namespace bmd;
using qmatrix::dominance_audit;
using qmatrix::ideal_response;
using qmatrix::mine_qmatrix;
using qmatrix::QMiningResult;

namespace {

// Attribute labels are arbitrary: look for a column permutation carrying
// (a, q) onto the reference pair.
bool permutation_equal(const QMiningResult& res, const BitMatrix& a_ref, const BitMatrix& q_ref) {
    if (res.a.cols() != a_ref.cols() || res.q.cols() != q_ref.cols()) return false;
    const std::size_t k = res.k();
    std::vector<bool> used(k, false);
    for (std::size_t i = 0; i < k; ++i) {
        bool matched = false;
        for (std::size_t r = 0; r < k && !matched; ++r) {
            if (used[r]) continue;
            if (res.a.column(i) == a_ref.column(r) && res.q.column(i) == q_ref.column(r)) {
                used[r] = true;
                matched = true;
            }
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("ideal_response reproduces the response matrix from its factors") {
    CHECK(ideal_response(testdata::response_a(), testdata::response_q()) ==
          testdata::response_r());
}

TEST_CASE("ideal_response with no requirements is all ones") {
    const BitMatrix a = testdata::response_a();
    const BitMatrix q(5, 4);  // five items requiring nothing
    const BitMatrix r = ideal_response(a, q);
    CHECK(r.count() == a.rows() * 5);
}

TEST_CASE("ideal_response matches the per-pair dominance rule") {
    std::mt19937_64 rng(139);
    for (int iter = 0; iter < 40; ++iter) {
        const BitMatrix a = testdata::random_matrix(rng, 6, 4, 0.5);
        const BitMatrix q = testdata::random_matrix(rng, 5, 4, 0.5);
        const BitMatrix r = ideal_response(a, q);
        for (std::size_t s = 0; s < 6; ++s)
            for (std::size_t item = 0; item < 5; ++item)
                CHECK(r.get(s, item) == dominates(a.row(s), q.row(item)));
    }
    CHECK_THROWS_AS(ideal_response(BitMatrix(3, 2), BitMatrix(4, 3)), std::invalid_argument);
}

TEST_CASE("mining the response matrix recovers the original factors") {
    const BitMatrix r = testdata::response_r();
    const QMiningResult res = mine_qmatrix(r, Algorithm::pick_largest);
    CHECK(res.k() == 4);
    CHECK(ideal_response(res.a, res.q) == r);
    CHECK(permutation_equal(res, testdata::response_a(), testdata::response_q()));

    // greedy trace: the area-42 tile of item 4 first, then 22, 17, 9
    REQUIRE(res.rounds.size() == 4);
    CHECK(res.rounds[0].source_col == 3);
    CHECK(res.rounds[0].gain == 42);
    CHECK(res.rounds[1].source_col == 1);
    CHECK(res.rounds[1].gain == 22);
    CHECK(res.rounds[2].source_col == 2);
    CHECK(res.rounds[2].gain == 17);
    CHECK(res.rounds[3].source_col == 0);
    CHECK(res.rounds[3].gain == 9);

    const QMiningResult rs = mine_qmatrix(r, Algorithm::remove_smallest);
    CHECK(rs.k() == 4);
    CHECK(ideal_response(rs.a, rs.q) == r);
    CHECK(permutation_equal(rs, testdata::response_a(), testdata::response_q()));
}

TEST_CASE("mined attributes cost no more than the exhaustive optimum needs") {
    const BitMatrix r = testdata::response_r();
    CHECK(oracle::oracle_min_k(complement(r)).min_k == 4);
}

TEST_CASE("all-correct responses need no attributes") {
    BitMatrix r(6, 5);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 5; ++j) r.set(i, j);
    const QMiningResult res = mine_qmatrix(r, Algorithm::pick_largest);
    CHECK(res.k() == 0);
    CHECK(ideal_response(res.a, res.q) == r);
}

TEST_CASE("round-trip mining over random ground truths") {
    std::mt19937_64 rng(149);
    for (int iter = 0; iter < 60; ++iter) {
        const BitMatrix a0 = testdata::random_matrix(rng, 8, 4, 0.55);
        const BitMatrix q0 = testdata::random_matrix(rng, 6, 4, 0.45);
        const BitMatrix r = ideal_response(a0, q0);
        for (Algorithm alg : {Algorithm::remove_smallest, Algorithm::pick_largest}) {
            const QMiningResult res = mine_qmatrix(r, alg);
            CHECK(ideal_response(res.a, res.q) == r);
            CHECK(res.k() <= r.cols());
            // column-use inheritance: every mined A column is a column of R
            for (std::size_t i = 0; i < res.k(); ++i) {
                CHECK(res.a.column(i) == r.column(res.item_provenance[i]));
            }
        }
    }
}

TEST_CASE("dominance audit is clean on the reference factors") {
    QMiningResult ref;
    ref.a = testdata::response_a();
    ref.q = testdata::response_q();
    const auto rep = dominance_audit(ref);
    CHECK(rep.dominating_pairs > 0);
    CHECK(rep.clean());
}

TEST_CASE("dominance audit is vacuous for one attribute") {
    QMiningResult res;
    res.a = BitMatrix(4, 1);
    res.q = BitMatrix(3, 1);
    const auto rep = dominance_audit(res);
    CHECK(rep.dominating_pairs == 0);
    CHECK(rep.clean());
}

TEST_CASE("dominance audit of mined results over random round trips") {
    std::mt19937_64 rng(151);
    for (int iter = 0; iter < 40; ++iter) {
        const BitMatrix a0 = testdata::random_matrix(rng, 7, 3, 0.5);
        const BitMatrix q0 = testdata::random_matrix(rng, 5, 3, 0.5);
        const BitMatrix r = ideal_response(a0, q0);
        const QMiningResult res = mine_qmatrix(r, Algorithm::pick_largest);
        CHECK(dominance_audit(res).clean());
    }
}
