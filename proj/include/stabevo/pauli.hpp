#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "stabevo/f2.hpp"

namespace stabevo {

// Unsigned n-qubit Pauli operator X(x)Z(z); the overall phase is not tracked.
struct PauliOp {
    std::size_t n = 0;
    F2Vec x;
    F2Vec z;

    PauliOp() = default;
    explicit PauliOp(std::size_t qubits) : n(qubits), x(qubits), z(qubits) {}

    static PauliOp from_string(std::string_view s);  // e.g. "IXZZX"
    // Builds from a length-2n symplectic vector (x|z).
    static PauliOp from_vec(const F2Vec& v);

    F2Vec to_vec() const;  // (x|z), length 2n
    std::string to_string() const;

    // Number of qubits acted on by a non-identity factor.
    std::size_t weight() const;
    bool is_identity() const { return x.is_zero() && z.is_zero(); }

    bool operator==(const PauliOp&) const = default;
};

std::size_t weight(const PauliOp& p);
int symplectic_product(const PauliOp& a, const PauliOp& b);

// Per-qubit tallies of a Pauli operator by factor type.
struct PauliCounts {
    std::size_t n_i = 0, n_x = 0, n_y = 0, n_z = 0;
};

// Counts factor types from separately packed x and z halves (padding bits
// beyond n must be zero, as F2Vec guarantees).
PauliCounts pauli_counts(std::span<const std::uint64_t> x, std::span<const std::uint64_t> z,
                         std::size_t n);

// An i.i.d. single-qubit Pauli error channel: each qubit independently
// suffers X, Y or Z with the given probabilities. The same channel applies
// to every qubit.
class ErrorModel {
public:
    ErrorModel(double p_i, double p_x, double p_y, double p_z);

    // p_x = p_y = p_z = p, p_i = 1 - 3p. Requires 0 <= p <= 1/3.
    static ErrorModel depolarising(double p);
    // p_i inferred as 1 - p_x - p_y - p_z.
    static ErrorModel pauli(double p_x, double p_y, double p_z);
    // Accepts "depolarising:<p>" or "pauli:<p_x>,<p_y>,<p_z>".
    static ErrorModel parse(std::string_view literal);

    double p_i() const { return p_[0]; }
    double p_x() const { return p_[1]; }
    double p_y() const { return p_[2]; }
    double p_z() const { return p_[3]; }

    bool is_depolarising() const { return p_[1] == p_[2] && p_[2] == p_[3]; }

    // Probability that the channel produces exactly this operator on n
    // qubits. Accumulated in the log domain and exponentiated.
    double op_probability(const PauliOp& p) const;
    double probability_from_counts(const PauliCounts& c) const;

    std::string to_string() const;
    bool operator==(const ErrorModel&) const = default;

private:
    std::array<double, 4> p_{};     // I, X, Y, Z
    std::array<double, 4> logp_{};  // log of each component; unused when the
                                    // component is zero
};

}  // namespace stabevo
