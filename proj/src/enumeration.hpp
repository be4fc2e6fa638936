#pragma once

// Internal helpers for enumerating elements of <S,L> \ <S>. Rows are split
// into separately word-packed X and Z halves so the inner loops are plain
// XOR + popcount passes.

#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stabevo/f2.hpp"

namespace stabevo::detail {

// Rows of a 2n-column symplectic matrix with the X and Z halves packed into
// independent word arrays.
struct SplitRows {
    std::size_t count = 0;
    std::size_t words = 0;  // words per half-row
    std::vector<std::uint64_t> x;
    std::vector<std::uint64_t> z;

    std::span<const std::uint64_t> x_row(std::size_t i) const { return {x.data() + i * words, words}; }
    std::span<const std::uint64_t> z_row(std::size_t i) const { return {z.data() + i * words, words}; }
};

inline SplitRows split_rows(const F2Matrix& m, std::size_t n) {
    SplitRows out;
    out.count = m.rows();
    out.words = (n + 63) / 64;
    out.x.assign(out.count * out.words, 0);
    out.z.assign(out.count * out.words, 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (m.get(r, c)) out.x[r * out.words + (c >> 6)] |= std::uint64_t(1) << (c & 63);
            if (m.get(r, n + c)) out.z[r * out.words + (c >> 6)] |= std::uint64_t(1) << (c & 63);
        }
    }
    return out;
}

inline void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

// Invokes fn(x_words, z_words) once for every element u.S + v.L with v != 0.
// The S part is visited in Gray-code order so each inner step costs one row
// addition. Returns the number of row additions performed.
template <typename Fn>
std::uint64_t for_each_nontrivial_logical(const SplitRows& s_rows, const SplitRows& l_rows,
                                          Fn&& fn) {
    const std::size_t words = l_rows.words;
    std::vector<std::uint64_t> accx(words), accz(words);
    const std::uint64_t outer_count = std::uint64_t(1) << l_rows.count;
    const std::uint64_t inner_count = std::uint64_t(1) << s_rows.count;
    std::uint64_t additions = 0;
    for (std::uint64_t ov = 1; ov < outer_count; ++ov) {
        const std::uint64_t mask = ov ^ (ov >> 1);  // Gray code; nonzero for ov >= 1
        std::fill(accx.begin(), accx.end(), 0);
        std::fill(accz.begin(), accz.end(), 0);
        for (std::size_t b = 0; b < l_rows.count; ++b) {
            if ((mask >> b) & 1) {
                xor_into(accx, l_rows.x_row(b));
                xor_into(accz, l_rows.z_row(b));
                ++additions;
            }
        }
        fn(std::span<const std::uint64_t>(accx), std::span<const std::uint64_t>(accz));
        for (std::uint64_t iv = 1; iv < inner_count; ++iv) {
            const int bit = std::countr_zero(iv);
            xor_into(accx, s_rows.x_row(bit));
            xor_into(accz, s_rows.z_row(bit));
            ++additions;
            fn(std::span<const std::uint64_t>(accx), std::span<const std::uint64_t>(accz));
        }
    }
    return additions;
}

}  // namespace stabevo::detail
