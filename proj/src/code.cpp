#include "stabevo/code.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

#include "enumeration.hpp"
#include "stabevo/errors.hpp"

namespace stabevo {

namespace {

void place(F2Matrix& dst, const F2Matrix& src, std::size_t r0, std::size_t c0) {
    for (std::size_t r = 0; r < src.rows(); ++r) {
        for (std::size_t c = 0; c < src.cols(); ++c) {
            if (src.get(r, c)) dst.set(r0 + r, c0 + c, true);
        }
    }
}

F2Matrix xor_matrices(const F2Matrix& a, const F2Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch");
    F2Matrix out = a;
    for (std::size_t r = 0; r < out.rows(); ++r) {
        auto dst = out.row(r);
        auto src = b.row(r);
        for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
    }
    return out;
}

}  // namespace

void CodeShape::validate() const {
    if (k < 1 || k >= n) throw std::invalid_argument("code shape requires 1 <= k < n");
    if (r > n - k) throw std::invalid_argument("code shape requires 0 <= r <= n-k");
}

CodeShape CodeShape::general(std::size_t n, std::size_t k, bool include_m_diagonal) {
    return general_r(n, k, n - k, include_m_diagonal);
}

CodeShape CodeShape::general_r(std::size_t n, std::size_t k, std::size_t r,
                               bool include_m_diagonal) {
    CodeShape shape{n, k, r, include_m_diagonal, false};
    shape.validate();
    return shape;
}

CodeShape CodeShape::css_shape(std::size_t n, std::size_t k) {
    return css_shape_r(n, k, (n - k) / 2);
}

CodeShape CodeShape::css_shape_r(std::size_t n, std::size_t k, std::size_t r) {
    CodeShape shape{n, k, r, false, true};
    shape.validate();
    return shape;
}

std::size_t genotype_length(const CodeShape& shape) {
    const std::size_t n = shape.n, k = shape.k, r = shape.r, s = shape.s();
    if (shape.css) return k * (n - k) + r * s;
    std::size_t len = k * (n - k) + r * (s + k) + r * (r - 1) / 2;
    if (shape.include_m_diagonal) len += r;
    return len;
}

CodeGenotype CodeGenotype::zero(const CodeShape& shape) {
    shape.validate();
    return CodeGenotype{shape, F2Vec(genotype_length(shape))};
}

CodeGenotype CodeGenotype::random(const CodeShape& shape, RngStream& rng) {
    CodeGenotype g = zero(shape);
    for (std::size_t i = 0; i < g.bits.size(); ++i) {
        if (rng.next_u64() & 1) g.bits.set(i, true);
    }
    return g;
}

CodeGenotype CodeGenotype::from_bits(const CodeShape& shape, const F2Vec& bits) {
    shape.validate();
    if (bits.size() != genotype_length(shape))
        throw std::invalid_argument("genotype has " + std::to_string(bits.size()) +
                                    " bits but shape needs " +
                                    std::to_string(genotype_length(shape)));
    return CodeGenotype{shape, bits};
}

CanonicalCode decode_genotype(const CodeGenotype& g) {
    const CodeShape& shape = g.shape;
    const std::size_t n = shape.n, k = shape.k, r = shape.r, s = shape.s();
    if (g.bits.size() != genotype_length(shape))
        throw std::invalid_argument("genotype length does not match shape");
    std::size_t pos = 0;
    auto next = [&]() { return g.bits.get(pos++); };

    CanonicalCode c;
    c.shape = shape;
    if (shape.css) {
        // A1 (r x s), A2 (r x k), C2 (s x k); C1 and M are zero.
        F2Matrix a1(r, s), a2(r, k), c2(s, k);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < s; ++j) a1.set(i, j, next());
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < k; ++j) a2.set(i, j, next());
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < k; ++j) c2.set(i, j, next());
        c.C = F2Matrix::vstack(F2Matrix(r, k), c2);
        c.A = F2Matrix::hstack(a1, a2);
        c.M = F2Matrix(r, r);
        return c;
    }

    c.C = F2Matrix(n - k, k);
    for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t j = 0; j < k; ++j) c.C.set(i, j, next());
    c.A = F2Matrix(r, n - r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n - r; ++j) c.A.set(i, j, next());
    c.M = F2Matrix(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        if (shape.include_m_diagonal) c.M.set(i, i, next());
        for (std::size_t j = i + 1; j < r; ++j) {
            const bool bit = next();
            c.M.set(i, j, bit);
            c.M.set(j, i, bit);
        }
    }
    return c;
}

CodeGenotype encode_genotype(const CanonicalCode& c) {
    const CodeShape& shape = c.shape;
    const std::size_t n = shape.n, k = shape.k, r = shape.r, s = shape.s();
    CodeGenotype g = CodeGenotype::zero(shape);
    std::size_t pos = 0;
    auto put = [&](bool b) { g.bits.set(pos++, b); };

    if (shape.css) {
        if (!c.M.is_zero() || !c.C.submatrix(0, r, 0, k).is_zero())
            throw std::invalid_argument("canonical form is not CSS (C1 or M nonzero)");
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < s; ++j) put(c.A.get(i, j));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < k; ++j) put(c.A.get(i, s + j));
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < k; ++j) put(c.C.get(r + i, j));
        return g;
    }

    for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t j = 0; j < k; ++j) put(c.C.get(i, j));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n - r; ++j) put(c.A.get(i, j));
    for (std::size_t i = 0; i < r; ++i) {
        if (shape.include_m_diagonal) put(c.M.get(i, i));
        for (std::size_t j = i + 1; j < r; ++j) put(c.M.get(i, j));
    }
    return g;
}

StabiliserCode build_code(const CanonicalCode& c) {
    const CodeShape& shape = c.shape;
    const std::size_t n = shape.n, k = shape.k, r = shape.r, s = shape.s();

    const F2Matrix C1 = c.C.submatrix(0, r, 0, k);
    const F2Matrix C2 = c.C.submatrix(r, n - k, 0, k);
    const F2Matrix A1 = c.A.submatrix(0, r, 0, s);
    const F2Matrix A2 = c.A.submatrix(0, r, s, s + k);
    const F2Matrix A2t = A2.transposed();

    const F2Matrix B = xor_matrices(c.M, C1.multiply(A2t));
    const F2Matrix D = xor_matrices(A1.transposed(), C2.multiply(A2t));

    StabiliserCode code;
    code.shape = shape;

    code.S = F2Matrix(n - k, 2 * n);
    place(code.S, F2Matrix::identity(r), 0, 0);
    place(code.S, A1, 0, r);
    place(code.S, A2, 0, r + s);
    place(code.S, B, 0, n);
    place(code.S, C1, 0, n + r + s);
    place(code.S, D, r, n);
    place(code.S, F2Matrix::identity(s), r, n + r);
    place(code.S, C2, r, n + r + s);

    code.L = F2Matrix(2 * k, 2 * n);
    place(code.L, A2t, 0, n);
    place(code.L, F2Matrix::identity(k), 0, n + r + s);
    place(code.L, C2.transposed(), k, r);
    place(code.L, F2Matrix::identity(k), k, r + s);
    place(code.L, C1.transposed(), k, n);

    code.R = F2Matrix(n - k, 2 * n);
    place(code.R, F2Matrix::identity(r), 0, n);
    place(code.R, F2Matrix::identity(s), r, r);

    return code;
}

StabiliserCode build_code(const CodeGenotype& g) { return build_code(decode_genotype(g)); }

StabiliserCode css_decode(const CodeGenotype& g) {
    if (!g.shape.css) throw std::invalid_argument("genotype shape is not CSS");
    return build_code(decode_genotype(g));
}

F2Matrix tableau(const CanonicalCode& c) {
    const StabiliserCode code = build_code(c);
    F2Matrix t = F2Matrix::vstack(code.S, code.logical_z());
    t = F2Matrix::vstack(t, code.R);
    return F2Matrix::vstack(t, code.logical_x());
}

F2Matrix permute_qubits(const F2Matrix& m, std::span<const std::size_t> map) {
    const std::size_t n = m.cols() / 2;
    if (map.size() != n) throw std::invalid_argument("permutation size mismatch");
    F2Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m.get(r, map[j])) out.set(r, j, true);
            if (m.get(r, n + map[j])) out.set(r, n + j, true);
        }
    }
    return out;
}

F2Matrix unpermute_qubits(const F2Matrix& m, std::span<const std::size_t> map) {
    const std::size_t n = m.cols() / 2;
    if (map.size() != n) throw std::invalid_argument("permutation size mismatch");
    F2Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m.get(r, j)) out.set(r, map[j], true);
            if (m.get(r, n + j)) out.set(r, n + map[j], true);
        }
    }
    return out;
}

StandardFormResult standard_form(const F2Matrix& s_raw) {
    if (s_raw.cols() % 2 != 0)
        throw std::invalid_argument("check matrix must have 2n columns");
    const std::size_t n = s_raw.cols() / 2;
    const std::size_t m = s_raw.rows();

    {
        std::vector<F2Vec> rows;
        rows.reserve(m);
        for (std::size_t i = 0; i < m; ++i) rows.push_back(s_raw.row_vec(i));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                if (symplectic_product(rows[i], rows[j]))
                    throw data_error("stabiliser rows " + std::to_string(i) + " and " +
                                     std::to_string(j) + " anticommute");
            }
        }
    }

    F2Matrix w = s_raw;
    std::vector<std::size_t> qubit_map(n);
    for (std::size_t i = 0; i < n; ++i) qubit_map[i] = i;

    auto swap_qubits = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        w.swap_cols(a, b);
        w.swap_cols(n + a, n + b);
        std::swap(qubit_map[a], qubit_map[b]);
    };
    auto reduce_at = [&](std::size_t pos, std::size_t col) {
        std::size_t pivot_row = m;
        for (std::size_t i = pos; i < m; ++i) {
            if (w.get(i, col)) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row == m) return false;
        w.swap_rows(pos, pivot_row);
        for (std::size_t i = 0; i < m; ++i) {
            if (i != pos && w.get(i, col)) w.xor_rows(i, pos);
        }
        return true;
    };
    auto column_has_pivot = [&](std::size_t pos, std::size_t col) {
        for (std::size_t i = pos; i < m; ++i) {
            if (w.get(i, col)) return true;
        }
        return false;
    };

    // X block: bring pivots to qubits 0..r-1, swapping a qubit into place
    // only when the in-place column has no available pivot.
    std::size_t pos = 0;
    for (std::size_t p = 0; p < n && pos < m; ++p) {
        std::size_t q = p;
        while (q < n && !column_has_pivot(pos, q)) ++q;
        if (q == n) break;
        swap_qubits(p, q);
        reduce_at(pos, p);
        ++pos;
    }
    const std::size_t r = pos;

    // Z block of the pure-Z rows: pivots at qubits r..r+s-1. Z columns of
    // qubits below r stay untouched (the D block of the standard form).
    for (std::size_t p = r; p < n && pos < m; ++p) {
        std::size_t q = p;
        while (q < n && !column_has_pivot(pos, n + q)) ++q;
        if (q == n) break;
        swap_qubits(p, q);
        reduce_at(pos, n + p);
        ++pos;
    }
    const std::size_t rank = pos;
    const std::size_t s = rank - r;

    for (std::size_t i = rank; i < m; ++i) {
        if (!w.row_is_zero(i))
            throw data_error("check matrix row " + std::to_string(i) +
                             " could not be reduced (inconsistent input)");
    }

    const std::size_t k = n - rank;
    const F2Matrix A1 = w.submatrix(0, r, r, r + s);
    const F2Matrix A2 = w.submatrix(0, r, r + s, n);
    const F2Matrix B = w.submatrix(0, r, n, n + r);
    const F2Matrix C1 = w.submatrix(0, r, n + r + s, 2 * n);
    const F2Matrix C2 = w.submatrix(r, rank, n + r + s, 2 * n);

    StandardFormResult res;
    res.canonical.C = F2Matrix::vstack(C1, C2);
    res.canonical.A = F2Matrix::hstack(A1, A2);
    res.canonical.M = xor_matrices(B, C1.multiply(A2.transposed()));

    bool diag = false;
    for (std::size_t i = 0; i < r; ++i) diag = diag || res.canonical.M.get(i, i);
    res.canonical.shape =
        CodeShape{n, k, r, diag, C1.is_zero() && res.canonical.M.is_zero()};
    res.qubit_map = std::move(qubit_map);
    res.standard_matrix = w.submatrix(0, rank, 0, 2 * n);
    res.rank = rank;
    return res;
}

std::vector<Gate> encoding_circuit(const CanonicalCode& c) {
    const CodeShape& shape = c.shape;
    const std::size_t n = shape.n, k = shape.k, r = shape.r;
    // Q = (M A; A^T 0) over all n qubits.
    auto q_entry = [&](std::size_t i, std::size_t j) -> bool {
        if (i < r && j < r) return c.M.get(i, j);
        if (i < r) return c.A.get(i, j - r);
        if (j < r) return c.A.get(j, i - r);
        return false;
    };

    std::vector<Gate> gates;
    for (std::size_t i = 0; i < n - k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (c.C.get(i, j)) gates.push_back({GateKind::CX, i, n - k + j});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (q_entry(i, i)) gates.push_back({GateKind::S, i, 0});
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (q_entry(i, j)) gates.push_back({GateKind::CZ, i, j});
        }
    }
    for (std::size_t q = r; q < n; ++q) gates.push_back({GateKind::H, q, 0});
    return gates;
}

F2Matrix circuit_symplectic(std::span<const Gate> gates, std::size_t n) {
    F2Matrix tau = F2Matrix::identity(2 * n);
    for (const Gate& g : gates) {
        for (std::size_t row = 0; row < 2 * n; ++row) {
            switch (g.kind) {
                case GateKind::CX:
                    // X_c -> X_c X_t, Z_t -> Z_c Z_t
                    if (tau.get(row, g.q0)) tau.set(row, g.q1, !tau.get(row, g.q1));
                    if (tau.get(row, n + g.q1)) tau.set(row, n + g.q0, !tau.get(row, n + g.q0));
                    break;
                case GateKind::CZ:
                    // X_a -> X_a Z_b, X_b -> X_b Z_a
                    if (tau.get(row, g.q0)) tau.set(row, n + g.q1, !tau.get(row, n + g.q1));
                    if (tau.get(row, g.q1)) tau.set(row, n + g.q0, !tau.get(row, n + g.q0));
                    break;
                case GateKind::S:
                    // X_q -> Y_q
                    if (tau.get(row, g.q0)) tau.set(row, n + g.q0, !tau.get(row, n + g.q0));
                    break;
                case GateKind::H: {
                    const bool xv = tau.get(row, g.q0);
                    const bool zv = tau.get(row, n + g.q0);
                    tau.set(row, g.q0, zv);
                    tau.set(row, n + g.q0, xv);
                    break;
                }
            }
        }
    }
    return tau;
}

DistanceReport distance_exact(const StabiliserCode& code, std::size_t cap_n_plus_k) {
    const std::size_t n = code.n(), k = code.k();
    if (n + k > cap_n_plus_k)
        throw resource_limit_error(
            "exact distance enumerates 2^(n+k) operators; n+k = " + std::to_string(n + k) +
            " exceeds the cap of " + std::to_string(cap_n_plus_k) +
            " (use qdistevol for an upper bound)");

    const detail::SplitRows s_rows = detail::split_rows(code.S, n);
    const detail::SplitRows l_rows = detail::split_rows(code.L, n);

    DistanceReport report;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    detail::for_each_nontrivial_logical(
        s_rows, l_rows,
        [&](std::span<const std::uint64_t> x, std::span<const std::uint64_t> z) {
            std::size_t wt = 0;
            for (std::size_t w = 0; w < x.size(); ++w) wt += std::popcount(x[w] | z[w]);
            if (wt < best) best = wt;
            ++report.nontrivial_logicals;
        });
    report.distance = best;
    return report;
}

}  // namespace stabevo
