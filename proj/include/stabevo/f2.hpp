#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stabevo {

// Bit-packed vector over GF(2). Bit i lives in word i/64 at position i%64;
// bits beyond size() are kept zero by every mutator.
class F2Vec {
public:
    F2Vec() = default;
    explicit F2Vec(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    // Parses a row of '0'/'1' characters; '|' and ',' separators are skipped.
    static F2Vec from_string(std::string_view s);

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    void xor_with(const F2Vec& other);
    std::size_t popcount() const;
    bool is_zero() const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    // Bits [begin, end) as a new vector.
    F2Vec slice(std::size_t begin, std::size_t end) const;

    std::string to_string() const;

    bool operator==(const F2Vec& other) const = default;

    // Lexicographic order on the bit string (bit 0 is the most significant
    // position). Returns <0, 0 or >0.
    static int compare(const F2Vec& a, const F2Vec& b);
    bool operator<(const F2Vec& other) const { return compare(*this, other) < 0; }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Bit-packed row-major matrix over GF(2). Rows are word-aligned; bits beyond
// cols() within a storage row are always zero. Instances are cheap to copy
// and safe to share once built.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

    static F2Matrix identity(std::size_t n);
    // Parses one row per line; see F2Vec::from_string for accepted characters.
    static F2Matrix from_rows(std::span<const std::string> lines);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t mask = std::uint64_t(1) << (c & 63);
        if (v)
            data_[r * wpr_ + (c >> 6)] |= mask;
        else
            data_[r * wpr_ + (c >> 6)] &= ~mask;
    }

    std::span<const std::uint64_t> row(std::size_t r) const {
        return {data_.data() + r * wpr_, wpr_};
    }
    std::span<std::uint64_t> row(std::size_t r) { return {data_.data() + r * wpr_, wpr_}; }

    F2Vec row_vec(std::size_t r) const;
    void set_row(std::size_t r, const F2Vec& v);

    // row dst ^= row src
    void xor_rows(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);

    bool row_is_zero(std::size_t r) const;
    std::size_t row_popcount(std::size_t r) const;

    F2Matrix submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
    F2Matrix transposed() const;

    // GF(2) matrix product this * other.
    F2Matrix multiply(const F2Matrix& other) const;

    static F2Matrix vstack(const F2Matrix& top, const F2Matrix& bottom);
    static F2Matrix hstack(const F2Matrix& left, const F2Matrix& right);

    bool is_zero() const;
    bool operator==(const F2Matrix& other) const = default;

    // One line per row; a '|' is inserted before column bar_col when given.
    std::string to_text(std::optional<std::size_t> bar_col = std::nullopt) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

struct RrefResult {
    F2Matrix reduced;
    std::size_t rank = 0;
    // Pivot columns in the order they were chosen.
    std::vector<std::size_t> pivot_cols;
    // Row-operation record: transform * input == reduced over GF(2).
    F2Matrix transform;
};

// Reduced row echelon form. Pivots are chosen scanning columns left to
// right (or in col_order when given), picking the topmost available row;
// every other entry of a pivot column is eliminated. Deterministic.
RrefResult rref(const F2Matrix& m);
RrefResult rref(const F2Matrix& m, std::span<const std::size_t> col_order);

// True iff v is a GF(2) linear combination of the rows of m.
bool in_span(const F2Matrix& m, const F2Vec& v);

// True iff the row spans of a and b coincide.
bool spans_equal(const F2Matrix& a, const F2Matrix& b);

// Binary symplectic form on length-2n vectors (x|z): z_a.x_b + x_a.z_b mod 2.
// Zero iff the corresponding Pauli operators commute.
int symplectic_product(const F2Vec& a, const F2Vec& b);

// Gram matrix of the rows of m under the symplectic form.
F2Matrix symplectic_gram(const F2Matrix& m);

// The 2n x 2n symplectic form matrix (0 I; I 0).
F2Matrix symplectic_form(std::size_t n);

}  // namespace stabevo
