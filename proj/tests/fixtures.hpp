#pragma once

#include <string>
#include <vector>

#include "stabevo/code.hpp"
#include "stabevo/f2.hpp"
#include "stabevo/pauli.hpp"

namespace fixtures {

// IXZZX and its cyclic shifts: the five-qubit code's generators.
inline stabevo::F2Matrix five_qubit_raw() {
    const std::string base = "IXZZX";
    stabevo::F2Matrix m(5, 10);
    for (std::size_t j = 0; j < 5; ++j) {
        std::string rotated(5, 'I');
        for (std::size_t i = 0; i < 5; ++i) rotated[(i + j) % 5] = base[i];
        m.set_row(j, stabevo::PauliOp::from_string(rotated).to_vec());
    }
    return m;
}

inline stabevo::CanonicalCode five_qubit_canonical() {
    return stabevo::standard_form(five_qubit_raw()).canonical;
}

inline stabevo::StabiliserCode five_qubit_code() {
    return stabevo::build_code(five_qubit_canonical());
}

// The 18-bit genotype of the five-qubit code (S-gate bits kept).
inline stabevo::CodeGenotype five_qubit_genotype() {
    const stabevo::CodeShape shape = stabevo::CodeShape::general_r(5, 1, 4, true);
    return stabevo::CodeGenotype::from_bits(
        shape, stabevo::F2Vec::from_string("1001" "1111" "0010" "011" "00" "0"));
}

// Steane-style [[7,1,3]] CSS code: Hamming(7,4) checks in systematic form,
// used once as X checks and once as Z checks.
inline stabevo::F2Matrix steane_raw() {
    const std::vector<std::string> h = {"1110100", "1101010", "1011001"};
    stabevo::F2Matrix m(6, 14);
    for (std::size_t i = 0; i < 3; ++i) {
        const stabevo::F2Vec row = stabevo::F2Vec::from_string(h[i]);
        for (std::size_t c = 0; c < 7; ++c) {
            if (row.get(c)) {
                m.set(i, c, true);       // X check
                m.set(3 + i, 7 + c, true);  // Z check
            }
        }
    }
    return m;
}

}  // namespace fixtures
