#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bmd/bitmat.hpp"
#include "bmd/decompose.hpp"

namespace bmd {
namespace qmatrix {

// Mined knowledge-state matrix A (students x attributes), Q-matrix
// (items x attributes), and the item whose complemented response column
// seeded each attribute. By construction complement(R) equals
// complement(A) o transpose(Q), so ideal_response(A, Q) reproduces R.
struct QMiningResult {
    BitMatrix a;
    BitMatrix q;
    std::vector<std::size_t> item_provenance;
    std::vector<PickRound> rounds;  // pick-largest only

    std::size_t k() const { return a.cols(); }
};

// R[i,j] = 1 iff student row a_i dominates item row q_j; computed as
// complement(bool_product(complement(A), transpose(Q))).
BitMatrix ideal_response(const BitMatrix& a, const BitMatrix& q);

// Decomposes complement(R) exactly with the chosen heuristic and converts
// the factors back: A = complement(U), Q = transpose(V).
QMiningResult mine_qmatrix(const BitMatrix& r, Algorithm algorithm, TieBreaker tie = {});

struct DominanceViolation {
    std::size_t dominant_attr = 0;   // Q column i dominating column j
    std::size_t dominated_attr = 0;
    std::size_t student = 0;         // has A[s,i] = 0 but A[s,j] = 1
};

struct DominanceAuditReport {
    std::size_t dominating_pairs = 0;
    std::vector<DominanceViolation> violations;

    bool clean() const { return violations.empty(); }
    std::string to_string() const;
};

// For every attribute pair with Q[:,i] dominating Q[:,j], reports students
// that master j without mastering i. Observational; violations are not
// hard failures.
DominanceAuditReport dominance_audit(const QMiningResult& res);

}  // namespace qmatrix
}  // namespace bmd
