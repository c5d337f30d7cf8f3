#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bmd/bitmat.hpp"
#include "bmd/factor.hpp"

namespace bmd {

enum class Algorithm { remove_smallest, pick_largest };

// Tie policy for equal selection scores. first_index and last_index are
// deterministic; seeded_random draws from an engine seeded per run, so a
// fixed seed reproduces a run bit for bit.
enum class TieBreak { first_index, last_index, seeded_random };

struct TieBreaker {
    TieBreak kind = TieBreak::first_index;
    std::uint64_t seed = 0;
};

// Column provenance of U (row provenance after a transposed run).
enum class Orientation { column_use, row_use };

// One greedy round of Pick-Largest: which source column was picked and how
// many previously uncovered ones its tile contributed.
struct PickRound {
    std::size_t source_col = 0;
    std::uint64_t gain = 0;
};

struct Decomposition {
    BitMatrix u;  // m x k
    BitMatrix v;  // k x n
    std::vector<std::size_t> provenance;
    std::uint64_t covered_ones = 0;
    std::uint64_t total_ones = 0;
    bool exact = false;
    Orientation orientation = Orientation::column_use;
    bool truncated_post_hoc = false;       // remove-smallest partial-coverage mode
    std::vector<PickRound> rounds;         // filled by pick_largest

    std::size_t k() const { return provenance.size(); }
    double coverage() const {
        return total_ones == 0 ? 1.0
                               : static_cast<double>(covered_ones) / static_cast<double>(total_ones);
    }
};

struct CoverageCurvePoint {
    std::size_t tiles_used = 0;
    double coverage = 0.0;
};

// Exact decomposition; deletes candidate tiles in ascending area order
// whenever deletion leaves every covered cell covered.
Decomposition remove_smallest(const BitMatrix& m, TieBreaker tie = {});

// Greedy from-below selection by maximum uncovered area; exact when
// coverage_target is 1. Tiles with delta 0 are discarded, never picked.
Decomposition pick_largest(const BitMatrix& m, TieBreaker tie = {}, double coverage_target = 1.0);

// Partial-coverage front end. Pick-Largest truncates natively;
// Remove-Smallest runs to exactness and then keeps the shortest greedy
// re-ranked prefix of its surviving tiles that reaches the target
// (reported as post-hoc truncation).
Decomposition approx_decompose(const BitMatrix& m, Algorithm algorithm, double coverage_target,
                               TieBreaker tie = {});

// Coverage after each prefix of the algorithm's final tile sequence.
std::vector<CoverageCurvePoint> coverage_curve(const BitMatrix& m, Algorithm algorithm,
                                               TieBreaker tie = {});

struct VerifyReport {
    bool from_below = false;
    bool exact_product = false;        // recomputed product equals M
    bool exact_flag_consistent = false;
    bool provenance_ok = false;
    bool counts_ok = false;
    std::vector<std::string> problems;

    bool pass() const { return problems.empty(); }
    std::string to_string() const;
};

// Recomputes the product and checks every Decomposition invariant against m.
// Failures land in the report; nothing throws except on shape mismatch.
VerifyReport verify(const BitMatrix& m, const Decomposition& d);

// Runs the chosen algorithm on m and on its transpose and returns whichever
// result has smaller k (ties favor the original orientation). A transposed
// win is returned with factors swapped and transposed so u o v still equals
// m; its provenance then names rows of m and orientation is row_use.
Decomposition best_orientation(const BitMatrix& m, Algorithm algorithm, TieBreaker tie = {});

std::string to_string(Algorithm a);
std::string to_string(TieBreak t);
std::string to_string(Orientation o);

}  // namespace bmd
