#include "stabevo/f2.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace stabevo {

namespace {

inline void xor_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

}  // namespace

F2Vec F2Vec::from_string(std::string_view s) {
    std::string bits;
    bits.reserve(s.size());
    for (char ch : s) {
        if (ch == '0' || ch == '1') {
            bits.push_back(ch);
        } else if (ch == '|' || ch == ',' || ch == ' ') {
            continue;
        } else {
            throw std::invalid_argument("bit string contains invalid character");
        }
    }
    F2Vec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') v.set(i, true);
    }
    return v;
}

void F2Vec::xor_with(const F2Vec& other) {
    if (other.size_ != size_) throw std::invalid_argument("F2Vec size mismatch");
    xor_words(words(), other.words());
}

std::size_t F2Vec::popcount() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
}

bool F2Vec::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

F2Vec F2Vec::slice(std::size_t begin, std::size_t end) const {
    F2Vec out(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        if (get(i)) out.set(i - begin, true);
    }
    return out;
}

std::string F2Vec::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

int F2Vec::compare(const F2Vec& a, const F2Vec& b) {
    if (a.size_ != b.size_) throw std::invalid_argument("F2Vec size mismatch");
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
        const std::uint64_t diff = a.words_[w] ^ b.words_[w];
        if (diff == 0) continue;
        const int bit = std::countr_zero(diff);
        // The vector with 0 at the first differing position sorts first.
        return ((a.words_[w] >> bit) & 1) ? 1 : -1;
    }
    return 0;
}

F2Matrix F2Matrix::identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

F2Matrix F2Matrix::from_rows(std::span<const std::string> lines) {
    std::vector<F2Vec> rows;
    rows.reserve(lines.size());
    for (const auto& line : lines) rows.push_back(F2Vec::from_string(line));
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    F2Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("rows have unequal lengths");
        m.set_row(r, rows[r]);
    }
    return m;
}

F2Vec F2Matrix::row_vec(std::size_t r) const {
    F2Vec v(cols_);
    std::copy(row(r).begin(), row(r).end(), v.words().begin());
    return v;
}

void F2Matrix::set_row(std::size_t r, const F2Vec& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    std::copy(v.words().begin(), v.words().end(), row(r).begin());
}

void F2Matrix::xor_rows(std::size_t dst, std::size_t src) { xor_words(row(dst), row(src)); }

void F2Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
}

void F2Matrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) {
        const bool va = get(r, a);
        const bool vb = get(r, b);
        set(r, a, vb);
        set(r, b, va);
    }
}

bool F2Matrix::row_is_zero(std::size_t r) const {
    auto w = row(r);
    return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
}

std::size_t F2Matrix::row_popcount(std::size_t r) const {
    std::size_t total = 0;
    for (std::uint64_t w : row(r)) total += std::popcount(w);
    return total;
}

F2Matrix F2Matrix::submatrix(std::size_t r0, std::size_t r1, std::size_t c0,
                             std::size_t c1) const {
    F2Matrix out(r1 - r0, c1 - c0);
    for (std::size_t r = r0; r < r1; ++r) {
        for (std::size_t c = c0; c < c1; ++c) {
            if (get(r, c)) out.set(r - r0, c - c0, true);
        }
    }
    return out;
}

F2Matrix F2Matrix::transposed() const {
    F2Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (get(r, c)) out.set(c, r, true);
        }
    }
    return out;
}

F2Matrix F2Matrix::multiply(const F2Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix dimension mismatch");
    F2Matrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto dst = out.row(r);
        for (std::size_t c = 0; c < cols_; ++c) {
            if (get(r, c)) xor_words(dst, other.row(c));
        }
    }
    return out;
}

F2Matrix F2Matrix::vstack(const F2Matrix& top, const F2Matrix& bottom) {
    if (top.rows_ != 0 && bottom.rows_ != 0 && top.cols_ != bottom.cols_)
        throw std::invalid_argument("vstack column mismatch");
    const std::size_t cols = top.rows_ != 0 ? top.cols_ : bottom.cols_;
    F2Matrix out(top.rows_ + bottom.rows_, cols);
    for (std::size_t r = 0; r < top.rows_; ++r)
        std::copy(top.row(r).begin(), top.row(r).end(), out.row(r).begin());
    for (std::size_t r = 0; r < bottom.rows_; ++r)
        std::copy(bottom.row(r).begin(), bottom.row(r).end(), out.row(top.rows_ + r).begin());
    return out;
}

F2Matrix F2Matrix::hstack(const F2Matrix& left, const F2Matrix& right) {
    if (left.rows_ != right.rows_) throw std::invalid_argument("hstack row mismatch");
    F2Matrix out(left.rows_, left.cols_ + right.cols_);
    for (std::size_t r = 0; r < left.rows_; ++r) {
        for (std::size_t c = 0; c < left.cols_; ++c)
            if (left.get(r, c)) out.set(r, c, true);
        for (std::size_t c = 0; c < right.cols_; ++c)
            if (right.get(r, c)) out.set(r, left.cols_ + c, true);
    }
    return out;
}

bool F2Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

std::string F2Matrix::to_text(std::optional<std::size_t> bar_col) const {
    std::string out;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (bar_col && c == *bar_col) out.push_back('|');
            out.push_back(get(r, c) ? '1' : '0');
        }
        out.push_back('\n');
    }
    return out;
}

namespace {

RrefResult rref_impl(const F2Matrix& m, std::span<const std::size_t> order) {
    RrefResult res;
    res.reduced = m;
    res.transform = F2Matrix::identity(m.rows());
    std::size_t pivot = 0;
    for (std::size_t c : order) {
        if (pivot == m.rows()) break;
        std::size_t found = m.rows();
        for (std::size_t r = pivot; r < m.rows(); ++r) {
            if (res.reduced.get(r, c)) {
                found = r;
                break;
            }
        }
        if (found == m.rows()) continue;
        res.reduced.swap_rows(pivot, found);
        res.transform.swap_rows(pivot, found);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != pivot && res.reduced.get(r, c)) {
                res.reduced.xor_rows(r, pivot);
                res.transform.xor_rows(r, pivot);
            }
        }
        res.pivot_cols.push_back(c);
        ++pivot;
    }
    res.rank = pivot;
    return res;
}

}  // namespace

RrefResult rref(const F2Matrix& m) {
    std::vector<std::size_t> order(m.cols());
    std::iota(order.begin(), order.end(), 0);
    return rref_impl(m, order);
}

RrefResult rref(const F2Matrix& m, std::span<const std::size_t> col_order) {
    if (col_order.size() != m.cols()) throw std::invalid_argument("col_order length mismatch");
    std::vector<bool> seen(m.cols(), false);
    for (std::size_t c : col_order) {
        if (c >= m.cols() || seen[c])
            throw std::invalid_argument("col_order is not a permutation of the columns");
        seen[c] = true;
    }
    return rref_impl(m, col_order);
}

bool in_span(const F2Matrix& m, const F2Vec& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("vector length must equal cols");
    const RrefResult r = rref(m);
    F2Vec w = v;
    for (std::size_t i = 0; i < r.rank; ++i) {
        if (w.get(r.pivot_cols[i])) xor_words(w.words(), r.reduced.row(i));
    }
    return w.is_zero();
}

bool spans_equal(const F2Matrix& a, const F2Matrix& b) {
    if (a.cols() != b.cols()) return false;
    const RrefResult ra = rref(a);
    const RrefResult rb = rref(b);
    if (ra.rank != rb.rank) return false;
    for (std::size_t i = 0; i < ra.rank; ++i) {
        if (!std::equal(ra.reduced.row(i).begin(), ra.reduced.row(i).end(),
                        rb.reduced.row(i).begin()))
            return false;
    }
    return true;
}

int symplectic_product(const F2Vec& a, const F2Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("operator size mismatch");
    if (a.size() % 2 != 0) throw std::invalid_argument("symplectic vectors have even length");
    const std::size_t n = a.size() / 2;
    int acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        acc ^= (a.get(i) & b.get(n + i)) ^ (a.get(n + i) & b.get(i));
    }
    return acc;
}

F2Matrix symplectic_gram(const F2Matrix& m) {
    if (m.cols() % 2 != 0) throw std::invalid_argument("symplectic vectors have even length");
    const std::size_t n = m.cols() / 2;
    F2Matrix gram(m.rows(), m.rows());
    std::vector<F2Vec> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row_vec(r));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.rows(); ++j) {
            if (symplectic_product(rows[i], rows[j])) {
                gram.set(i, j, true);
                gram.set(j, i, true);
            }
        }
    }
    (void)n;
    return gram;
}

F2Matrix symplectic_form(std::size_t n) {
    F2Matrix omega(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        omega.set(i, n + i, true);
        omega.set(n + i, i, true);
    }
    return omega;
}

}  // namespace stabevo
