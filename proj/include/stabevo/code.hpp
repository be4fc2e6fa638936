#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stabevo/f2.hpp"
#include "stabevo/pauli.hpp"
#include "stabevo/rng.hpp"

namespace stabevo {

// Block dimensions of an [[n,k]] code genotype: r checks contain at least one
// X factor, s = n-k-r checks are pure Z. include_m_diagonal keeps the phase
// bits along the diagonal of the symmetric matrix; css switches to the
// X/Z-separated layout.
struct CodeShape {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t r = 0;
    bool include_m_diagonal = false;
    bool css = false;

    std::size_t s() const { return n - k - r; }

    void validate() const;

    // Non-CSS shape; r defaults to n-k, which maximises the search space.
    static CodeShape general(std::size_t n, std::size_t k, bool include_m_diagonal = false);
    static CodeShape general_r(std::size_t n, std::size_t k, std::size_t r,
                               bool include_m_diagonal = false);
    // CSS shape; r defaults to floor((n-k)/2).
    static CodeShape css_shape(std::size_t n, std::size_t k);
    static CodeShape css_shape_r(std::size_t n, std::size_t k, std::size_t r);

    bool operator==(const CodeShape&) const = default;
};

// Bits needed to describe a code of the given shape. Every bit string of
// this length decodes to a valid code.
std::size_t genotype_length(const CodeShape& shape);

struct CodeGenotype {
    CodeShape shape;
    F2Vec bits;

    static CodeGenotype zero(const CodeShape& shape);
    static CodeGenotype random(const CodeShape& shape, RngStream& rng);
    static CodeGenotype from_bits(const CodeShape& shape, const F2Vec& bits);

    bool operator==(const CodeGenotype&) const = default;
};

// The compact description of a stabiliser code: C is (n-k) x k, A is
// r x (n-r), M is a symmetric r x r matrix. Together with a qubit
// permutation (identity for generated codes) these determine the code.
struct CanonicalCode {
    CodeShape shape;
    F2Matrix C;
    F2Matrix A;
    F2Matrix M;

    bool operator==(const CanonicalCode&) const = default;
};

// A stabiliser code in binary symplectic form. S is the (n-k) x 2n check
// matrix, L stacks the k logical Z rows over the k logical X rows, R holds
// the destabiliser rows (paired with S).
struct StabiliserCode {
    CodeShape shape;
    F2Matrix S;
    F2Matrix L;
    F2Matrix R;

    std::size_t n() const { return shape.n; }
    std::size_t k() const { return shape.k; }
    F2Matrix logical_z() const { return L.submatrix(0, shape.k, 0, 2 * shape.n); }
    F2Matrix logical_x() const { return L.submatrix(shape.k, 2 * shape.k, 0, 2 * shape.n); }
};

CanonicalCode decode_genotype(const CodeGenotype& g);
CodeGenotype encode_genotype(const CanonicalCode& c);

// Assembles check matrix, logical operators and destabilisers from the
// canonical form. Total: every canonical form yields a valid code.
StabiliserCode build_code(const CanonicalCode& c);
StabiliserCode build_code(const CodeGenotype& g);

// CSS decode; requires shape.css. Every check row is X-only or Z-only.
StabiliserCode css_decode(const CodeGenotype& g);

// Stabiliser, logical and destabiliser rows stacked into the 2n x 2n
// tableau (S_X; S_Z; L_Z; R_X; R_Z; L_X); always symplectic.
F2Matrix tableau(const CanonicalCode& c);

struct StandardFormResult {
    CanonicalCode canonical;
    // qubit_map[i] = original index of the qubit at standard-form position i.
    std::vector<std::size_t> qubit_map;
    // The reduced check matrix in standard-form qubit order ((r+s) rows).
    F2Matrix standard_matrix;
    std::size_t rank = 0;
};

// Row-reduces a raw check matrix into standard form, permuting qubits only
// when no pivot exists in place. Rows must mutually commute; dependent rows
// are tolerated and dropped.
StandardFormResult standard_form(const F2Matrix& s_raw);

// Applies a qubit permutation to a matrix of symplectic rows: output column
// for qubit map[j] (X and Z halves) is taken from input column j.
F2Matrix unpermute_qubits(const F2Matrix& m, std::span<const std::size_t> map);
// Inverse direction: output column j is input column for qubit map[j].
F2Matrix permute_qubits(const F2Matrix& m, std::span<const std::size_t> map);

enum class GateKind { CX, CZ, S, H };

struct Gate {
    GateKind kind;
    std::size_t q0 = 0;
    std::size_t q1 = 0;  // second qubit for CX/CZ

    bool operator==(const Gate&) const = default;
};

// Encoding circuit of the canonical form: CX gates from C, then S/CZ gates
// from Q = (M A; A^T 0), then Hadamards on qubits r..n-1.
std::vector<Gate> encoding_circuit(const CanonicalCode& c);

// Symplectic matrix induced by conjugation with the given circuit, with
// gates applied in list order. Row i is the image of X_i, row n+i of Z_i.
F2Matrix circuit_symplectic(std::span<const Gate> gates, std::size_t n);

struct DistanceReport {
    std::size_t distance = 0;
    std::uint64_t nontrivial_logicals = 0;  // number of operators enumerated
};

// Exact code distance by enumerating every non-trivial logical operator.
// Cost is 2^(n+k); throws resource_limit_error beyond the cap.
DistanceReport distance_exact(const StabiliserCode& code, std::size_t cap_n_plus_k = 26);

}  // namespace stabevo
