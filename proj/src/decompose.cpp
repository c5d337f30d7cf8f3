#include "bmd/decompose.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bmd {

namespace {

class TieChooser {
public:
    explicit TieChooser(TieBreaker cfg) : cfg_(cfg), engine_(cfg.seed) {}

    // Picks one index out of a non-empty ascending candidate list.
    std::size_t choose(const std::vector<std::size_t>& tied) {
        switch (cfg_.kind) {
            case TieBreak::first_index: return tied.front();
            case TieBreak::last_index: return tied.back();
            case TieBreak::seeded_random: {
                std::uniform_int_distribution<std::size_t> dist(0, tied.size() - 1);
                return tied[dist(engine_)];
            }
        }
        return tied.front();
    }

    // Orders indices by ascending key; equal keys follow the tie policy.
    std::vector<std::size_t> order_ascending(const std::vector<std::uint64_t>& key) {
        std::vector<std::size_t> idx(key.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
        if (cfg_.kind == TieBreak::last_index) {
            for (std::size_t lo = 0; lo < idx.size();) {
                std::size_t hi = lo;
                while (hi + 1 < idx.size() && key[idx[hi + 1]] == key[idx[lo]]) ++hi;
                std::reverse(idx.begin() + lo, idx.begin() + hi + 1);
                lo = hi + 1;
            }
        } else if (cfg_.kind == TieBreak::seeded_random) {
            for (std::size_t lo = 0; lo < idx.size();) {
                std::size_t hi = lo;
                while (hi + 1 < idx.size() && key[idx[hi + 1]] == key[idx[lo]]) ++hi;
                std::shuffle(idx.begin() + lo, idx.begin() + hi + 1, engine_);
                lo = hi + 1;
            }
        }
        return idx;
    }

private:
    TieBreaker cfg_;
    std::mt19937_64 engine_;
};

Decomposition empty_decomposition(const BitMatrix& m) {
    Decomposition d;
    d.u = BitMatrix(m.rows(), 0);
    d.v = BitMatrix(0, m.cols());
    d.total_ones = m.count();
    d.covered_ones = 0;
    d.exact = (d.total_ones == 0);
    return d;
}

Decomposition assemble(const BitMatrix& m, const std::vector<Tile>& tiles,
                       const std::vector<std::size_t>& chosen, std::uint64_t covered,
                       std::uint64_t total) {
    Decomposition d;
    d.provenance.reserve(chosen.size());
    d.u = BitMatrix(m.rows(), chosen.size());
    d.v = BitMatrix(chosen.size(), m.cols());
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        const Tile& t = tiles[chosen[i]];
        d.provenance.push_back(t.source_col);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (t.row_mask.get(r)) d.u.set(r, i);
        d.v.set_row(i, t.col_mask);
    }
    d.covered_ones = covered;
    d.total_ones = total;
    d.exact = (covered == total);
    return d;
}

// Entire footprint still multiply covered, i.e. no cell of the tile has
// count 1. Scans only the tile's own rows.
bool tile_removable(const CountMatrix& counts, const Tile& t) {
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
                    if (counts.at(i, j) <= 1) return false;
                }
            }
        }
    }
    return true;
}

void subtract_tile(CountMatrix& counts, const Tile& t) {
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
                    --counts.at(i, j);
                }
            }
        }
    }
}

// Greedy max-uncovered-gain selection over a fixed tile list until the
// coverage target is met. Shared by pick_largest and the remove-smallest
// truncation mode. delta[i] stays within [0, sigma[i]] and never grows.
std::vector<std::size_t> greedy_pick(const BitMatrix& m, const std::vector<Tile>& tiles,
                                     double coverage_target, TieChooser& chooser,
                                     std::uint64_t total, std::uint64_t& covered,
                                     std::vector<PickRound>* rounds) {
    BitMatrix covered_mask(m.rows(), m.cols());
    SelectionScores scores;
    scores.status.assign(tiles.size(), TileStatus::active);
    scores.sigma.resize(tiles.size());
    for (std::size_t i = 0; i < tiles.size(); ++i) scores.sigma[i] = tiles[i].area;
    scores.delta = scores.sigma;

    std::vector<std::size_t> picks;
    covered = 0;
    const double goal = coverage_target * static_cast<double>(total);

    while (static_cast<double>(covered) < goal) {
        std::uint64_t best = 0;
        std::vector<std::size_t> tied;
        for (std::size_t i = 0; i < tiles.size(); ++i) {
            if (scores.status[i] != TileStatus::active) continue;
            scores.delta[i] = scores.sigma[i] - covered_count(covered_mask, tiles[i]);
            if (scores.delta[i] == 0) {
                scores.status[i] = TileStatus::removed;
                continue;
            }
            if (scores.delta[i] > best) {
                best = scores.delta[i];
                tied.assign(1, i);
            } else if (scores.delta[i] == best) {
                tied.push_back(i);
            }
        }
        if (tied.empty()) break;  // every remaining tile is fully covered
        const std::size_t j = chooser.choose(tied);
        scores.status[j] = TileStatus::picked;
        picks.push_back(j);
        covered += best;
        if (rounds) rounds->push_back({tiles[j].source_col, best});
        auto rw = tiles[j].row_mask.words();
        for (std::size_t w = 0; w < rw.size(); ++w) {
            std::uint64_t bits = rw[w];
            while (bits) {
                const std::size_t r = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                covered_mask.or_into_row(r, tiles[j].col_mask);
            }
        }
    }
    return picks;
}

}  // namespace

Decomposition remove_smallest(const BitMatrix& m, TieBreaker tie) {
    const std::uint64_t total = m.count();
    if (total == 0) return empty_decomposition(m);

    TieChooser chooser(tie);
    const JMatrix j = compute_j(m);
    const std::vector<Tile> tiles = candidate_tiles(m, j);
    CountMatrix counts = count_matrix(tiles, m.rows(), m.cols());

    SelectionScores scores;
    scores.status.assign(tiles.size(), TileStatus::active);
    scores.sigma.resize(tiles.size());
    for (std::size_t i = 0; i < tiles.size(); ++i) scores.sigma[i] = tiles[i].area;
    const std::vector<std::size_t> order = chooser.order_ascending(scores.sigma);

    for (std::size_t t : order) {
        // Zero-area tiles (all-zero source columns) have an empty footprint
        // and are always removable.
        if (tile_removable(counts, tiles[t])) {
            subtract_tile(counts, tiles[t]);
            scores.status[t] = TileStatus::removed;
        }
    }

    std::vector<std::size_t> survivors;
    for (std::size_t t : order)
        if (scores.status[t] == TileStatus::active) survivors.push_back(t);
    return assemble(m, tiles, survivors, total, total);
}

Decomposition pick_largest(const BitMatrix& m, TieBreaker tie, double coverage_target) {
    if (!(coverage_target > 0.0 && coverage_target <= 1.0))
        throw std::invalid_argument("pick_largest: coverage_target must be in (0, 1], got " +
                                    std::to_string(coverage_target));
    const std::uint64_t total = m.count();
    if (total == 0) return empty_decomposition(m);

    TieChooser chooser(tie);
    const JMatrix j = compute_j(m);
    const std::vector<Tile> tiles = candidate_tiles(m, j);

    std::vector<PickRound> rounds;
    std::uint64_t covered = 0;
    const std::vector<std::size_t> picks =
        greedy_pick(m, tiles, coverage_target, chooser, total, covered, &rounds);

    Decomposition d = assemble(m, tiles, picks, covered, total);
    d.rounds = std::move(rounds);
    return d;
}

Decomposition approx_decompose(const BitMatrix& m, Algorithm algorithm, double coverage_target,
                               TieBreaker tie) {
    if (!(coverage_target > 0.0 && coverage_target <= 1.0))
        throw std::invalid_argument("approx_decompose: coverage_target must be in (0, 1], got " +
                                    std::to_string(coverage_target));
    if (algorithm == Algorithm::pick_largest) return pick_largest(m, tie, coverage_target);

    Decomposition exact = remove_smallest(m, tie);
    if (coverage_target >= 1.0 || exact.k() == 0) return exact;

    // Re-rank the surviving tiles by marginal coverage and keep the shortest
    // prefix reaching the target.
    std::vector<Tile> tiles;
    tiles.reserve(exact.k());
    for (std::size_t i = 0; i < exact.k(); ++i) {
        Tile t;
        t.source_col = exact.provenance[i];
        t.row_mask = exact.u.column(i);
        t.col_mask = exact.v.row(i);
        t.area = static_cast<std::uint64_t>(t.row_mask.count()) * t.col_mask.count();
        tiles.push_back(std::move(t));
    }
    TieChooser chooser(tie);
    std::uint64_t covered = 0;
    const std::vector<std::size_t> picks =
        greedy_pick(m, tiles, coverage_target, chooser, exact.total_ones, covered, nullptr);
    Decomposition d = assemble(m, tiles, picks, covered, exact.total_ones);
    d.truncated_post_hoc = true;
    return d;
}

std::vector<CoverageCurvePoint> coverage_curve(const BitMatrix& m, Algorithm algorithm,
                                               TieBreaker tie) {
    const Decomposition d = algorithm == Algorithm::pick_largest ? pick_largest(m, tie)
                                                                 : remove_smallest(m, tie);
    std::vector<CoverageCurvePoint> curve;
    if (d.k() == 0) {
        curve.push_back({0, 1.0});
        return curve;
    }
    BitMatrix covered_mask(m.rows(), m.cols());
    for (std::size_t i = 0; i < d.k(); ++i) {
        const BitVector col = d.u.column(i);
        const BitVector row = d.v.row(i);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (col.get(r)) covered_mask.or_into_row(r, row);
        curve.push_back({i + 1, static_cast<double>(covered_mask.count()) /
                                    static_cast<double>(d.total_ones)});
    }
    return curve;
}

std::string VerifyReport::to_string() const {
    std::ostringstream out;
    out << "from_below=" << (from_below ? "ok" : "VIOLATED")
        << " exact_product=" << (exact_product ? "yes" : "no")
        << " exact_flag=" << (exact_flag_consistent ? "consistent" : "INCONSISTENT")
        << " provenance=" << (provenance_ok ? "ok" : "VIOLATED")
        << " counts=" << (counts_ok ? "ok" : "WRONG");
    for (const auto& p : problems) out << "\n  problem: " << p;
    return out.str();
}

VerifyReport verify(const BitMatrix& m, const Decomposition& d) {
    VerifyReport rep;
    if (d.u.rows() != m.rows() || d.v.cols() != m.cols() || d.u.cols() != d.v.rows()) {
        rep.problems.push_back("factor shapes " + std::to_string(d.u.rows()) + "x" +
                               std::to_string(d.u.cols()) + " / " + std::to_string(d.v.rows()) +
                               "x" + std::to_string(d.v.cols()) + " do not fit matrix " +
                               std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
        return rep;
    }

    const BitMatrix product = bool_product(d.u, d.v);
    rep.from_below = matrix_leq(product, m);
    if (!rep.from_below) rep.problems.push_back("product covers a 0 of the input matrix");

    rep.exact_product = (product == m);
    rep.exact_flag_consistent = (rep.exact_product == d.exact);
    if (!rep.exact_flag_consistent)
        rep.problems.push_back(std::string("exact flag is ") + (d.exact ? "true" : "false") +
                               " but recomputed product says otherwise");

    rep.provenance_ok = (d.provenance.size() == d.k());
    if (d.orientation == Orientation::column_use) {
        for (std::size_t i = 0; i < d.k() && rep.provenance_ok; ++i) {
            if (d.provenance[i] >= m.cols() || d.u.column(i) != m.column(d.provenance[i]))
                rep.provenance_ok = false;
        }
        if (!rep.provenance_ok)
            rep.problems.push_back("some U column is not the source column named by provenance");
    } else {
        for (std::size_t i = 0; i < d.k() && rep.provenance_ok; ++i) {
            if (d.provenance[i] >= m.rows() || d.v.row(i) != m.row(d.provenance[i]))
                rep.provenance_ok = false;
        }
        if (!rep.provenance_ok)
            rep.problems.push_back("some V row is not the source row named by provenance");
    }

    rep.counts_ok = (d.covered_ones == product.count() && d.total_ones == m.count());
    if (!rep.counts_ok) rep.problems.push_back("covered/total one counts disagree with recount");
    return rep;
}

Decomposition best_orientation(const BitMatrix& m, Algorithm algorithm, TieBreaker tie) {
    auto run = [&](const BitMatrix& input) {
        return algorithm == Algorithm::pick_largest ? pick_largest(input, tie)
                                                    : remove_smallest(input, tie);
    };
    Decomposition original = run(m);
    Decomposition transposed = run(transpose(m));
    if (transposed.k() >= original.k()) return original;

    Decomposition d;
    d.u = transpose(transposed.v);
    d.v = transpose(transposed.u);
    d.provenance = std::move(transposed.provenance);
    d.covered_ones = transposed.covered_ones;
    d.total_ones = transposed.total_ones;
    d.exact = transposed.exact;
    d.orientation = Orientation::row_use;
    d.rounds = std::move(transposed.rounds);
    return d;
}

std::string to_string(Algorithm a) {
    return a == Algorithm::pick_largest ? "pick-largest" : "remove-smallest";
}

std::string to_string(TieBreak t) {
    switch (t) {
        case TieBreak::first_index: return "first";
        case TieBreak::last_index: return "last";
        case TieBreak::seeded_random: return "random";
    }
    return "first";
}

std::string to_string(Orientation o) {
    return o == Orientation::column_use ? "column-use" : "row-use";
}

}  // namespace bmd
