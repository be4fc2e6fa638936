#include "stabevo/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "parallel.hpp"
#include "stabevo/errors.hpp"

namespace stabevo {

std::string to_string(CrossType t) {
    switch (t) {
        case CrossType::None: return "none";
        case CrossType::OnePoint: return "1-point";
        case CrossType::TwoPoint: return "2-point";
        case CrossType::ThreePoint: return "3-point";
        case CrossType::Uniform: return "uniform";
        case CrossType::HalfUniform: return "half-uniform";
    }
    return "none";
}

CrossType cross_type_from_string(const std::string& s) {
    if (s == "none") return CrossType::None;
    if (s == "1-point" || s == "1point") return CrossType::OnePoint;
    if (s == "2-point" || s == "2point") return CrossType::TwoPoint;
    if (s == "3-point" || s == "3point") return CrossType::ThreePoint;
    if (s == "uniform") return CrossType::Uniform;
    if (s == "half-uniform" || s == "halfuniform") return CrossType::HalfUniform;
    throw std::invalid_argument("unknown cross type '" + s + "'");
}

ResolvedPopulation resolve_population(const SearchConfig& cfg) {
    cfg.shape.validate();
    ResolvedPopulation pop;
    pop.lambda = cfg.lambda > 0 ? cfg.lambda : genotype_length(cfg.shape);
    if (pop.lambda == 0) throw std::invalid_argument("population size must be positive");

    if (cfg.mu > 0) {
        pop.mu = cfg.mu;
    } else {
        // Round the lambda/mu ratio to the nearest value for which mu
        // divides lambda; prefer the larger ratio on ties. Ratio 1 (mu =
        // lambda) would disable selection entirely, so it is only used when
        // the population has a single individual.
        std::size_t best_ratio = pop.lambda;
        double best_err = std::abs(double(pop.lambda) - cfg.mu_ratio);
        for (std::size_t d = 2; d < pop.lambda; ++d) {
            if (pop.lambda % d != 0) continue;
            const double err = std::abs(double(d) - cfg.mu_ratio);
            if (err < best_err || (err == best_err && d > best_ratio)) {
                best_err = err;
                best_ratio = d;
            }
        }
        pop.mu = pop.lambda / best_ratio;
    }
    if (pop.mu == 0 || pop.mu > pop.lambda)
        throw std::invalid_argument("reproducing pool must satisfy 1 <= mu <= lambda");
    if (cfg.cross == CrossType::None && pop.lambda % pop.mu != 0)
        throw std::invalid_argument("mu must divide lambda when crossover is disabled");
    return pop;
}

CodeGenotype mutate_single_bit(const CodeGenotype& g, RngStream& rng) {
    CodeGenotype out = g;
    out.bits.flip(rng.uniform_index(out.bits.size()));
    return out;
}

CodeGenotype mutate_per_bit(const CodeGenotype& g, double rate, RngStream& rng) {
    CodeGenotype out = g;
    for (std::size_t i = 0; i < out.bits.size(); ++i) {
        if (rng.bernoulli(rate)) out.bits.flip(i);
    }
    return out;
}

std::pair<CodeGenotype, CodeGenotype> cross(const CodeGenotype& a, const CodeGenotype& b,
                                            CrossType type, RngStream& rng) {
    if (a.shape != b.shape) throw std::invalid_argument("parents must share a shape");
    if (type == CrossType::None) throw std::invalid_argument("cross type must not be none");
    const std::size_t len = a.bits.size();
    CodeGenotype c1 = a, c2 = b;

    auto k_point = [&](std::size_t points) {
        if (len < points + 1)
            throw std::invalid_argument("genotype too short for this crossover");
        std::set<std::size_t> cut_set;
        while (cut_set.size() < points) cut_set.insert(1 + rng.uniform_index(len - 1));
        std::vector<std::size_t> cuts(cut_set.begin(), cut_set.end());
        cuts.push_back(len);
        bool swap_segment = false;
        std::size_t begin = 0;
        for (std::size_t cut : cuts) {
            if (swap_segment) {
                for (std::size_t i = begin; i < cut; ++i) {
                    c1.bits.set(i, b.bits.get(i));
                    c2.bits.set(i, a.bits.get(i));
                }
            }
            swap_segment = !swap_segment;
            begin = cut;
        }
    };

    switch (type) {
        case CrossType::OnePoint: k_point(1); break;
        case CrossType::TwoPoint: k_point(2); break;
        case CrossType::ThreePoint: k_point(3); break;
        case CrossType::Uniform:
            for (std::size_t i = 0; i < len; ++i) {
                if (rng.next_u64() & 1) {
                    c1.bits.set(i, b.bits.get(i));
                    c2.bits.set(i, a.bits.get(i));
                }
            }
            break;
        case CrossType::HalfUniform:
            for (std::size_t i = 0; i < len; ++i) {
                if (a.bits.get(i) != b.bits.get(i) && (rng.next_u64() & 1)) {
                    c1.bits.set(i, b.bits.get(i));
                    c2.bits.set(i, a.bits.get(i));
                }
            }
            break;
        case CrossType::None: break;
    }
    return {c1, c2};
}

namespace {

double evaluate_genotype(const CodeGenotype& g, const SearchConfig& cfg, std::size_t generation,
                         std::size_t index) {
    const StabiliserCode code = build_code(g);
    if (cfg.fitness.use_exact(code.n(), code.k()))
        return uer_exact(code, cfg.model, cfg.fitness.exact_cap).value;
    QDistEvolParams qp = cfg.fitness.qdist;
    qp.seed = RngStream::derive(cfg.seed, 0xf17e55, generation, index).next_u64();
    const std::size_t t_max = (code.n() + code.k() + 1) / 2;
    const std::size_t t = std::clamp<std::size_t>(cfg.fitness.t, 1, t_max);
    return uer_approx(code, cfg.model, t, qp).value;
}

}  // namespace

SearchResult run_search(const SearchConfig& cfg) {
    const ResolvedPopulation pop = resolve_population(cfg);
    const std::size_t lambda = pop.lambda;
    const std::size_t mu = pop.mu;

    SearchResult result;
    result.config = cfg;
    result.seed = cfg.seed;

    RngStream init_rng = RngStream::derive(cfg.seed, 0x5eed, 0);
    std::vector<CodeGenotype> population;
    population.reserve(lambda);
    for (std::size_t i = 0; i < lambda; ++i)
        population.push_back(CodeGenotype::random(cfg.shape, init_rng));

    std::vector<double> fitness(lambda, 0.0);
    bool have_best = false;
    CodeGenotype best = population.front();
    double best_fitness = 0.0;

    result.terminated_by = "max_generations";
    for (std::size_t gen = 0;; ++gen) {
        detail::parallel_for(lambda, cfg.threads, [&](std::size_t i) {
            fitness[i] = evaluate_genotype(population[i], cfg, gen, i);
        });
        result.evaluations += lambda;

        std::size_t gen_best = 0;
        for (std::size_t i = 1; i < lambda; ++i) {
            if (fitness[i] < fitness[gen_best] ||
                (fitness[i] == fitness[gen_best] &&
                 population[i].bits < population[gen_best].bits)) {
                gen_best = i;
            }
        }
        if (!have_best || fitness[gen_best] < best_fitness) {
            have_best = true;
            best = population[gen_best];
            best_fitness = fitness[gen_best];
            result.generation_found = gen;
            if (cfg.shape.n + cfg.shape.k <= cfg.distance_cap) {
                result.best_distance =
                    static_cast<long long>(distance_exact(build_code(best), cfg.distance_cap).distance);
            }
        }
        result.trace.push_back(
            TraceRow{gen, fitness[gen_best], best_fitness, result.best_distance});

        if (cfg.target_fitness && best_fitness <= *cfg.target_fitness) {
            result.terminated_by = "target_fitness";
            break;
        }
        if (cfg.target_distance && result.best_distance >= 0 &&
            static_cast<std::size_t>(result.best_distance) >= *cfg.target_distance) {
            result.terminated_by = "target_distance";
            break;
        }
        if (gen == cfg.max_generations) break;

        // Selection: the mu fittest individuals, ties to the
        // lexicographically smaller genotype.
        std::vector<std::size_t> order(lambda);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (fitness[a] != fitness[b]) return fitness[a] < fitness[b];
            return population[a].bits < population[b].bits;
        });

        RngStream repro_rng = RngStream::derive(cfg.seed, 0x0ff5, gen + 1);
        std::vector<CodeGenotype> next;
        next.reserve(lambda);
        if (cfg.cross == CrossType::None) {
            for (std::size_t j = 0; j < lambda; ++j) {
                const CodeGenotype& parent = population[order[j % mu]];
                next.push_back(cfg.mutation == MutationMode::SingleBit
                                   ? mutate_single_bit(parent, repro_rng)
                                   : mutate_per_bit(parent, cfg.mutation_rate, repro_rng));
            }
        } else {
            std::vector<CodeGenotype> crossed;
            crossed.reserve(mu);
            for (std::size_t i = 0; i < mu; ++i) {
                const CodeGenotype& pa = population[order[i]];
                const CodeGenotype& pb = population[order[(i + 1) % mu]];
                crossed.push_back(cross(pa, pb, cfg.cross, repro_rng).first);
            }
            for (std::size_t j = 0; j < lambda; ++j) {
                const CodeGenotype& parent = crossed[j % mu];
                next.push_back(cfg.mutation == MutationMode::SingleBit
                                   ? mutate_single_bit(parent, repro_rng)
                                   : mutate_per_bit(parent, cfg.mutation_rate, repro_rng));
            }
        }
        population = std::move(next);
    }

    result.best = best;
    result.best_fitness = best_fitness;
    return result;
}

std::vector<HammingRecord> hamming_fitness_profile(const CodeShape& shape,
                                                   const ErrorModel& model, std::size_t samples,
                                                   std::uint64_t seed, std::size_t exact_cap) {
    shape.validate();
    if (samples < 2) throw std::invalid_argument("need at least two samples");

    RngStream rng = RngStream::derive(seed, 0x4a77);
    std::vector<CodeGenotype> genotypes;
    genotypes.reserve(samples);
    genotypes.push_back(CodeGenotype::random(shape, rng));
    for (std::size_t i = 1; i < samples; ++i)
        genotypes.push_back(mutate_single_bit(genotypes.back(), rng));

    std::vector<double> fitness(samples);
    for (std::size_t i = 0; i < samples; ++i)
        fitness[i] = uer_exact(build_code(genotypes[i]), model, exact_cap).value;

    std::vector<HammingRecord> records;
    records.reserve(samples * (samples - 1) / 2);
    for (std::size_t i = 0; i < samples; ++i) {
        for (std::size_t j = i + 1; j < samples; ++j) {
            F2Vec diff = genotypes[i].bits;
            diff.xor_with(genotypes[j].bits);
            records.push_back(HammingRecord{diff.popcount(), std::abs(fitness[i] - fitness[j])});
        }
    }
    return records;
}

}  // namespace stabevo
