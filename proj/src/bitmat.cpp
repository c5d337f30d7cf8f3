#include "bmd/bitmat.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace bmd {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

void clear_tail(std::span<std::uint64_t> words, std::size_t len) {
    if (len % 64 != 0 && !words.empty())
        words.back() &= (std::uint64_t{1} << (len % 64)) - 1;
}

}  // namespace

BitVector BitVector::parse(std::string_view text) {
    std::vector<bool> bits;
    for (char c : text) {
        if (c == '0') bits.push_back(false);
        else if (c == '1') bits.push_back(true);
    }
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) v.set(i);
    return v;
}

std::size_t BitVector::count() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
}

bool BitVector::any() const {
    for (std::uint64_t w : words_)
        if (w) return true;
    return false;
}

BitVector& BitVector::operator|=(const BitVector& other) {
    if (len_ != other.len_)
        throw std::invalid_argument("BitVector |=: lengths " + std::to_string(len_) +
                                    " and " + std::to_string(other.len_) + " differ");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
    if (len_ != other.len_)
        throw std::invalid_argument("BitVector &=: lengths " + std::to_string(len_) +
                                    " and " + std::to_string(other.len_) + " differ");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
}

std::string BitVector::to_string() const {
    std::string s;
    s.reserve(len_);
    for (std::size_t i = 0; i < len_; ++i) s.push_back(get(i) ? '1' : '0');
    return s;
}

BitVector complement(const BitVector& v) {
    BitVector out(v.size());
    for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] = ~v.words_[w];
    clear_tail(out.words(), out.size());
    return out;
}

bool dominates(const BitVector& p, const BitVector& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("dominates: lengths " + std::to_string(p.size()) +
                                    " and " + std::to_string(q.size()) + " differ");
    auto pw = p.words();
    auto qw = q.words();
    for (std::size_t w = 0; w < pw.size(); ++w)
        if (~pw[w] & qw[w]) return false;
    return true;
}

BitMatrix BitMatrix::parse(std::initializer_list<std::string_view> rows) {
    std::vector<std::string_view> v(rows);
    return parse(std::span<const std::string_view>(v));
}

BitMatrix BitMatrix::parse(std::span<const std::string_view> rows) {
    std::vector<BitVector> parsed;
    parsed.reserve(rows.size());
    for (auto r : rows) parsed.push_back(BitVector::parse(r));
    const std::size_t n = parsed.empty() ? 0 : parsed.front().size();
    BitMatrix m(parsed.size(), n);
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        if (parsed[i].size() != n)
            throw std::invalid_argument("BitMatrix::parse: row " + std::to_string(i) +
                                        " has " + std::to_string(parsed[i].size()) +
                                        " bits, expected " + std::to_string(n));
        m.set_row(i, parsed[i]);
    }
    return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitVector BitMatrix::row(std::size_t i) const {
    BitVector v(cols_);
    auto src = row_words(i);
    auto dst = v.words();
    for (std::size_t w = 0; w < src.size(); ++w) dst[w] = src[w];
    return v;
}

BitVector BitMatrix::column(std::size_t j) const {
    BitVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        if (get(i, j)) v.set(i);
    return v;
}

void BitMatrix::set_row(std::size_t i, const BitVector& v) {
    if (v.size() != cols_)
        throw std::invalid_argument("BitMatrix::set_row: vector length " +
                                    std::to_string(v.size()) + " != cols " +
                                    std::to_string(cols_));
    auto src = v.words();
    auto dst = row_words(i);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] = src[w];
}

void BitMatrix::or_into_row(std::size_t i, const BitVector& v) {
    if (v.size() != cols_)
        throw std::invalid_argument("BitMatrix::or_into_row: vector length " +
                                    std::to_string(v.size()) + " != cols " +
                                    std::to_string(cols_));
    auto src = v.words();
    auto dst = row_words(i);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
}

std::size_t BitMatrix::count() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
}

std::size_t BitMatrix::row_count(std::size_t i) const {
    std::size_t n = 0;
    for (std::uint64_t w : row_words(i)) n += std::popcount(w);
    return n;
}

std::string BitMatrix::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out << ' ';
            out << (get(i, j) ? '1' : '0');
        }
        out << '\n';
    }
    return out.str();
}

std::uint64_t CountMatrix::sum() const {
    std::uint64_t s = 0;
    for (std::uint32_t c : counts_) s += c;
    return s;
}

std::size_t CountMatrix::nonzero_count() const {
    std::size_t n = 0;
    for (std::uint32_t c : counts_) n += (c != 0);
    return n;
}

BitMatrix bool_product(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("bool_product: shapes " + shape_str(a.rows(), a.cols()) +
                                    " and " + shape_str(b.rows(), b.cols()) +
                                    " are not conformable");
    BitMatrix out(a.rows(), b.cols());
    const std::size_t wpr = out.words_per_row();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto arow = a.row_words(i);
        auto orow = out.row_words(i);
        for (std::size_t w = 0; w < arow.size(); ++w) {
            std::uint64_t bits = arow[w];
            while (bits) {
                const std::size_t t = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                auto brow = b.row_words(t);
                for (std::size_t k = 0; k < wpr; ++k) orow[k] |= brow[k];
            }
        }
    }
    return out;
}

CountMatrix arith_product(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("arith_product: shapes " + shape_str(a.rows(), a.cols()) +
                                    " and " + shape_str(b.rows(), b.cols()) +
                                    " are not conformable");
    CountMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto arow = a.row_words(i);
        for (std::size_t w = 0; w < arow.size(); ++w) {
            std::uint64_t bits = arow[w];
            while (bits) {
                const std::size_t t = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                auto brow = b.row_words(t);
                for (std::size_t k = 0; k < brow.size(); ++k) {
                    std::uint64_t bbits = brow[k];
                    while (bbits) {
                        const std::size_t j = k * 64 + std::countr_zero(bbits);
                        bbits &= bbits - 1;
                        ++out.at(i, j);
                    }
                }
            }
        }
    }
    return out;
}

BitMatrix complement(const BitMatrix& a) {
    BitMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto src = a.row_words(i);
        auto dst = out.row_words(i);
        for (std::size_t w = 0; w < src.size(); ++w) dst[w] = ~src[w];
        clear_tail(dst, a.cols());
    }
    return out;
}

BitMatrix transpose(const BitMatrix& a) {
    BitMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto src = a.row_words(i);
        for (std::size_t w = 0; w < src.size(); ++w) {
            std::uint64_t bits = src[w];
            while (bits) {
                const std::size_t j = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                out.set(j, i);
            }
        }
    }
    return out;
}

BitMatrix outer_tile(const BitVector& p, const BitVector& q) {
    BitMatrix out(p.size(), q.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.get(i)) out.set_row(i, q);
    return out;
}

BitMatrix combine(const BitMatrix& a, const BitMatrix& b, Combine op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("combine: shapes " + shape_str(a.rows(), a.cols()) +
                                    " and " + shape_str(b.rows(), b.cols()) + " differ");
    BitMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto aw = a.row_words(i);
        auto bw = b.row_words(i);
        auto ow = out.row_words(i);
        switch (op) {
            case Combine::Or:
                for (std::size_t w = 0; w < aw.size(); ++w) ow[w] = aw[w] | bw[w];
                break;
            case Combine::And:
                for (std::size_t w = 0; w < aw.size(); ++w) ow[w] = aw[w] & bw[w];
                break;
            case Combine::AndNot:
                for (std::size_t w = 0; w < aw.size(); ++w) ow[w] = aw[w] & ~bw[w];
                break;
        }
    }
    return out;
}

bool matrix_leq(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix_leq: shapes " + shape_str(a.rows(), a.cols()) +
                                    " and " + shape_str(b.rows(), b.cols()) + " differ");
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto aw = a.row_words(i);
        auto bw = b.row_words(i);
        for (std::size_t w = 0; w < aw.size(); ++w)
            if (aw[w] & ~bw[w]) return false;
    }
    return true;
}

}  // namespace bmd
