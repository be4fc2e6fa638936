#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stabevo/code.hpp"
#include "stabevo/f2.hpp"
#include "stabevo/pauli.hpp"

namespace stabevo {

// All GF(2) combinations of up to t rows of a source matrix, with their
// coefficient vectors. Built so that each combination of more than one row
// costs a single row addition.
struct LinCombSet {
    std::size_t t = 0;
    F2Matrix coeffs;  // one coefficient vector (length source.rows) per combo
    F2Matrix rows;    // the combination u * source per combo
    std::uint64_t additions = 0;

    std::size_t size() const { return rows.rows(); }
};

LinCombSet lincombs_up_to(const F2Matrix& m, std::size_t t);

struct QDistEvolParams {
    std::size_t population = 0;   // 0: defaults to 2n
    std::size_t pool = 0;         // 0: defaults to n/2 (at least 1)
    std::size_t generations = 100;
    std::uint64_t seed = 0;
};

struct QDistEvolResult {
    // 2k rows spanning the logical operators modulo <S>.
    F2Matrix generators;
    // Minimum weight over every candidate logical examined: an upper bound
    // on the code distance.
    std::size_t min_weight = 0;
    double best_total_probability = 0.0;
    std::vector<std::size_t> best_permutation;
    std::uint64_t candidates_evaluated = 0;
};

// Evolutionary search over qubit-column permutations for a maximum
// probability generating set of logical Paulis.
QDistEvolResult qdistevol(const StabiliserCode& code, const ErrorModel& model,
                          const QDistEvolParams& params = {});

enum class FitnessMode { Exact, Approximate };

struct FitnessReport {
    double value = 0.0;  // P_S or its lower-bound estimate
    FitnessMode mode = FitnessMode::Exact;
    std::size_t t = 0;  // approximation depth; 0 in exact mode
    F2Matrix logical_generators;
    std::uint64_t terms_summed = 0;
    std::uint64_t row_additions = 0;

    std::string to_json() const;
};

// Exact undetectable error rate: the total probability of every element of
// <S,L> \ <S>. Terms are summed compensated in descending order. Cost is
// 2^(n+k); throws resource_limit_error beyond the cap.
FitnessReport uer_exact(const StabiliserCode& code, const ErrorModel& model,
                        std::size_t cap_n_plus_k = 20);

// Two-stage lower-bound estimate: first swap L for a maximum-probability
// generating set, then sum the non-trivial combinations of at most t and at
// least n+k-t of the rows of (S; L). Never exceeds the exact value, and
// matches it once t reaches ceil((n+k)/2).
FitnessReport uer_approx(const StabiliserCode& code, const ErrorModel& model, std::size_t t,
                         const QDistEvolParams& qdist_params = {});

}  // namespace stabevo
