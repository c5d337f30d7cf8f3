#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bmd {

// Packed Boolean vector. Bit i lives in word i/64 at position i%64.
// Tail bits past size() are kept zero so word-level popcounts equal
// logical counts.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    // Parses strings like "0101"; any character other than '0'/'1' is ignored,
    // which allows "0 1 0 1" as well.
    static BitVector parse(std::string_view text);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool value = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    std::size_t count() const;
    bool any() const;
    bool none() const { return !any(); }

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    BitVector& operator|=(const BitVector& other);
    BitVector& operator&=(const BitVector& other);

    bool operator==(const BitVector& other) const = default;

    std::string to_string() const;

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;

    friend BitVector complement(const BitVector&);
};

BitVector complement(const BitVector& v);

// true iff p[i] >= q[i] for all i. Throws std::invalid_argument on a
// length mismatch.
bool dominates(const BitVector& p, const BitVector& q);

// Dense bit-packed Boolean matrix, row major. Dimensions are fixed at
// construction; rows with m == 0 or n == 0 are legal.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), words_(rows * wpr_, 0) {}

    // One string per row, e.g. BitMatrix::parse({"0110", "1011"}).
    // Characters other than '0'/'1' are ignored.
    static BitMatrix parse(std::initializer_list<std::string_view> rows);
    static BitMatrix parse(std::span<const std::string_view> rows);
    static BitMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t i, std::size_t j) const {
        return (row_words(i)[j >> 6] >> (j & 63)) & 1u;
    }
    void set(std::size_t i, std::size_t j, bool value = true) {
        const std::uint64_t mask = std::uint64_t{1} << (j & 63);
        if (value)
            row_words(i)[j >> 6] |= mask;
        else
            row_words(i)[j >> 6] &= ~mask;
    }

    std::span<const std::uint64_t> row_words(std::size_t i) const {
        return {words_.data() + i * wpr_, wpr_};
    }
    std::span<std::uint64_t> row_words(std::size_t i) {
        return {words_.data() + i * wpr_, wpr_};
    }

    BitVector row(std::size_t i) const;
    BitVector column(std::size_t j) const;
    void set_row(std::size_t i, const BitVector& v);

    // ORs `v` into row i; v.size() must equal cols().
    void or_into_row(std::size_t i, const BitVector& v);

    std::size_t count() const;
    std::size_t row_count(std::size_t i) const;

    bool operator==(const BitMatrix& other) const = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> words_;
};

// Matrix of non-negative tile-cover counts; entries are at least 32 bits.
class CountMatrix {
public:
    CountMatrix() = default;
    CountMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), counts_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t at(std::size_t i, std::size_t j) const { return counts_[i * cols_ + j]; }
    std::uint32_t& at(std::size_t i, std::size_t j) { return counts_[i * cols_ + j]; }

    std::uint64_t sum() const;
    std::size_t nonzero_count() const;

    bool operator==(const CountMatrix& other) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint32_t> counts_;
};

enum class Combine { Or, And, AndNot };

// Boolean product: result[i,j] = OR_t (a[i,t] AND b[t,j]). Row i of the
// result is the word-parallel OR of b's rows selected by row i of a.
BitMatrix bool_product(const BitMatrix& a, const BitMatrix& b);

// Arithmetic product over {0,1} entries: result[i,j] = |{t : a[i,t]=b[t,j]=1}|.
CountMatrix arith_product(const BitMatrix& a, const BitMatrix& b);

BitMatrix complement(const BitMatrix& a);
BitMatrix transpose(const BitMatrix& a);

// Rank-1 tile: result[i,j] = p[i] AND q[j].
BitMatrix outer_tile(const BitVector& p, const BitVector& q);

// Elementwise OR / AND / AND-NOT of same-shape matrices.
BitMatrix combine(const BitMatrix& a, const BitMatrix& b, Combine op);

// true iff a[i,j] <= b[i,j] everywhere (same-shape matrices).
bool matrix_leq(const BitMatrix& a, const BitMatrix& b);

}  // namespace bmd
