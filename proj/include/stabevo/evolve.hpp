#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabevo/code.hpp"
#include "stabevo/fitness.hpp"
#include "stabevo/pauli.hpp"
#include "stabevo/rng.hpp"

namespace stabevo {

enum class CrossType { None, OnePoint, TwoPoint, ThreePoint, Uniform, HalfUniform };
enum class MutationMode { SingleBit, PerBitRate };

std::string to_string(CrossType t);
CrossType cross_type_from_string(const std::string& s);

// How the search evaluates undetectable error rate: exactly, with the
// depth-t approximation, or automatically (exact while n+k fits the cap).
struct FitnessChoice {
    enum class Kind { Auto, Exact, Approx };
    Kind kind = Kind::Auto;
    std::size_t t = 3;
    std::size_t exact_cap = 20;
    QDistEvolParams qdist;  // stage-1 parameters for approximate mode

    bool use_exact(std::size_t n, std::size_t k) const {
        if (kind == Kind::Exact) return true;
        if (kind == Kind::Approx) return false;
        return n + k <= exact_cap;
    }
};

struct SearchConfig {
    CodeShape shape;
    ErrorModel model = ErrorModel::depolarising(0.01);

    std::size_t lambda = 0;    // population size; 0 = genotype length
    std::size_t mu = 0;        // reproducing pool; 0 = derive from mu_ratio
    double mu_ratio = 20.0;    // target lambda/mu, rounded to the nearest divisor
    std::size_t max_generations = 1000;

    CrossType cross = CrossType::None;
    MutationMode mutation = MutationMode::SingleBit;
    double mutation_rate = 0.05;  // per-bit rate for PerBitRate mode

    FitnessChoice fitness;
    std::optional<std::size_t> target_distance;
    std::optional<double> target_fitness;

    std::uint64_t seed = 0;
    std::size_t threads = 1;
    std::size_t distance_cap = 26;  // incumbent distance is reported below this
};

// lambda and mu with defaults applied; validates the config.
struct ResolvedPopulation {
    std::size_t lambda = 0;
    std::size_t mu = 0;
};
ResolvedPopulation resolve_population(const SearchConfig& cfg);

struct TraceRow {
    std::size_t generation = 0;
    double best_fitness = 0.0;   // best of this generation
    double best_so_far = 0.0;    // best over all generations so far
    long long distance = -1;     // distance of the incumbent; -1 if not computed
};

struct SearchResult {
    CodeGenotype best;
    double best_fitness = 0.0;
    std::size_t generation_found = 0;
    long long best_distance = -1;
    std::vector<TraceRow> trace;
    SearchConfig config;
    std::uint64_t seed = 0;
    std::uint64_t evaluations = 0;
    std::string terminated_by;  // max_generations | target_distance | target_fitness
};

// Flips exactly one uniformly chosen bit.
CodeGenotype mutate_single_bit(const CodeGenotype& g, RngStream& rng);
// Flips each bit independently with the given rate.
CodeGenotype mutate_per_bit(const CodeGenotype& g, double rate, RngStream& rng);

// Produces two children of equal-length parents. Point crossovers swap the
// segments between sorted distinct cut positions; Uniform draws every bit
// from a random parent; HalfUniform settles only the differing bits by coin
// toss.
std::pair<CodeGenotype, CodeGenotype> cross(const CodeGenotype& a, const CodeGenotype& b,
                                            CrossType type, RngStream& rng);

// The main (mu, lambda) search. Fully reproducible from cfg.seed, and
// independent of cfg.threads.
SearchResult run_search(const SearchConfig& cfg);

struct HammingRecord {
    std::size_t hamming = 0;
    double delta = 0.0;  // |difference in undetectable error rate|
};

// Random-walks `samples` genotypes one bit flip at a time and reports the
// (Hamming distance, |fitness difference|) of every pair.
std::vector<HammingRecord> hamming_fitness_profile(const CodeShape& shape,
                                                   const ErrorModel& model, std::size_t samples,
                                                   std::uint64_t seed,
                                                   std::size_t exact_cap = 20);

}  // namespace stabevo
