#include "bmd/qmatrix.hpp"

#include <sstream>
#include <stdexcept>

namespace bmd {
namespace qmatrix {

BitMatrix ideal_response(const BitMatrix& a, const BitMatrix& q) {
    if (a.cols() != q.cols())
        throw std::invalid_argument("ideal_response: A has " + std::to_string(a.cols()) +
                                    " attributes, Q has " + std::to_string(q.cols()));
    return complement(bool_product(complement(a), transpose(q)));
}

QMiningResult mine_qmatrix(const BitMatrix& r, Algorithm algorithm, TieBreaker tie) {
    const BitMatrix m = complement(r);
    Decomposition d = algorithm == Algorithm::pick_largest ? pick_largest(m, tie)
                                                           : remove_smallest(m, tie);
    QMiningResult res;
    res.a = complement(d.u);
    res.q = transpose(d.v);
    res.item_provenance = std::move(d.provenance);
    res.rounds = std::move(d.rounds);
    return res;
}

std::string DominanceAuditReport::to_string() const {
    std::ostringstream out;
    out << "dominating_pairs=" << dominating_pairs << " violations=" << violations.size();
    for (const auto& v : violations)
        out << "\n  attribute " << v.dominant_attr << " dominates " << v.dominated_attr
            << " but student " << v.student << " masters only the dominated one";
    return out.str();
}

DominanceAuditReport dominance_audit(const QMiningResult& res) {
    DominanceAuditReport rep;
    const std::size_t k = res.k();
    for (std::size_t i = 0; i < k; ++i) {
        const BitVector qi = res.q.column(i);
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            if (!dominates(qi, res.q.column(j))) continue;
            ++rep.dominating_pairs;
            for (std::size_t s = 0; s < res.a.rows(); ++s)
                if (!res.a.get(s, i) && res.a.get(s, j))
                    rep.violations.push_back({i, j, s});
        }
    }
    return rep;
}

}  // namespace qmatrix
}  // namespace bmd
