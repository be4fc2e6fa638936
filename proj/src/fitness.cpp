#include "stabevo/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "enumeration.hpp"
#include "stabevo/errors.hpp"
#include "stabevo/rng.hpp"

namespace stabevo {

namespace {

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

// Compensated sum in descending order; terms spanning many orders of
// magnitude would otherwise lose the small contributions.
double sorted_kahan_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end(), std::greater<double>());
    double sum = 0.0, comp = 0.0;
    for (double v : terms) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace

LinCombSet lincombs_up_to(const F2Matrix& m, std::size_t t) {
    if (t > m.rows())
        throw std::invalid_argument("combination depth t must not exceed the row count");
    const std::size_t r = m.rows();
    const std::size_t cols = m.cols();

    std::uint64_t total = 0;
    for (std::size_t v = 0; v <= t; ++v) total += binomial(r, v);

    LinCombSet out;
    out.t = t;
    out.coeffs = F2Matrix(static_cast<std::size_t>(total), r);
    out.rows = F2Matrix(static_cast<std::size_t>(total), cols);

    // Combos are laid out by ascending weight v; within each weight, the
    // combinations of the first rr rows always form a prefix, which is what
    // lets every row of B_v be one addition away from a row of B_{v-1}.
    std::vector<std::size_t> offset(t + 1, 0);  // start row of B_v in out
    std::size_t acc = 0;
    for (std::size_t v = 0; v <= t; ++v) {
        offset[v] = acc;
        acc += static_cast<std::size_t>(binomial(r, v));
    }

    // B_0 is the zero row; B_1 copies the source rows.
    if (t >= 1) {
        for (std::size_t i = 0; i < r; ++i) {
            out.coeffs.set(offset[1] + i, i, true);
            std::copy(m.row(i).begin(), m.row(i).end(), out.rows.row(offset[1] + i).begin());
        }
    }
    for (std::size_t v = 2; v <= t; ++v) {
        std::size_t write = offset[v];
        for (std::size_t rr = v; rr <= r; ++rr) {
            const std::size_t block = static_cast<std::size_t>(binomial(rr - 1, v - 1));
            for (std::size_t j = 0; j < block; ++j) {
                const std::size_t src = offset[v - 1] + j;
                auto dst_row = out.rows.row(write);
                std::copy(out.rows.row(src).begin(), out.rows.row(src).end(), dst_row.begin());
                detail::xor_into(dst_row, m.row(rr - 1));
                ++out.additions;
                auto dst_coeff = out.coeffs.row(write);
                std::copy(out.coeffs.row(src).begin(), out.coeffs.row(src).end(),
                          dst_coeff.begin());
                out.coeffs.set(write, rr - 1, true);
                ++write;
            }
        }
    }
    return out;
}

namespace {

struct Candidate {
    double prob = 0.0;
    std::size_t weight = 0;
    F2Vec coeff;  // over the rows of (S; L)
    F2Vec row;    // in permuted qubit order
};

struct PermEvaluation {
    double fitness = 0.0;
    std::size_t min_weight = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> picked;  // candidate indices forming the set
    std::vector<Candidate> candidates;
};

PermEvaluation evaluate_permutation(const F2Matrix& stacked, std::size_t k,
                                    const ErrorModel& model,
                                    const std::vector<std::size_t>& perm) {
    const std::size_t m = stacked.rows();
    const std::size_t log_begin = m - 2 * k;
    const F2Matrix permuted = permute_qubits(stacked, perm);
    const RrefResult rr = rref(permuted);

    PermEvaluation ev;
    for (std::size_t i = 0; i < rr.rank; ++i) {
        const F2Vec coeff = rr.transform.row_vec(i);
        bool logical = false;
        for (std::size_t b = log_begin; b < m && !logical; ++b) logical = coeff.get(b);
        if (!logical) continue;
        Candidate cand;
        cand.coeff = coeff;
        cand.row = rr.reduced.row_vec(i);
        const PauliOp op = PauliOp::from_vec(cand.row);
        // Counts (and thus weight and probability) are invariant under the
        // qubit permutation, so they can be evaluated in permuted order.
        cand.weight = op.weight();
        cand.prob = model.op_probability(op);
        ev.min_weight = std::min(ev.min_weight, cand.weight);
        ev.candidates.push_back(std::move(cand));
    }

    std::vector<std::size_t> order(ev.candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (ev.candidates[a].prob != ev.candidates[b].prob)
            return ev.candidates[a].prob > ev.candidates[b].prob;
        return F2Vec::compare(ev.candidates[a].coeff, ev.candidates[b].coeff) < 0;
    });

    // Greedy max-probability basis of the logical coefficient space.
    F2Matrix basis(2 * k, 2 * k);
    std::size_t basis_rank = 0;
    for (std::size_t idx : order) {
        if (basis_rank == 2 * k) break;
        F2Vec lpart(2 * k);
        for (std::size_t b = 0; b < 2 * k; ++b)
            lpart.set(b, ev.candidates[idx].coeff.get(log_begin + b));
        F2Matrix trial = basis.submatrix(0, basis_rank, 0, 2 * k);
        if (in_span(trial, lpart)) continue;
        basis.set_row(basis_rank, lpart);
        ++basis_rank;
        ev.picked.push_back(idx);
        ev.fitness += ev.candidates[idx].prob;
    }
    return ev;
}

}  // namespace

QDistEvolResult qdistevol(const StabiliserCode& code, const ErrorModel& model,
                          const QDistEvolParams& params) {
    const std::size_t n = code.n(), k = code.k();
    const F2Matrix stacked = F2Matrix::vstack(code.S, code.L);

    const std::size_t population = params.population > 0 ? params.population : 2 * n;
    const std::size_t pool =
        std::min(population, params.pool > 0 ? params.pool : std::max<std::size_t>(1, n / 2));

    RngStream rng = RngStream::derive(params.seed, 0x71d15e, 0xe7071);

    std::vector<std::size_t> identity(n);
    std::iota(identity.begin(), identity.end(), 0);

    std::vector<std::vector<std::size_t>> perms;
    perms.reserve(population);
    perms.push_back(identity);
    for (std::size_t i = 1; i < population; ++i) {
        std::vector<std::size_t> p = identity;
        rng.shuffle(p);
        perms.push_back(std::move(p));
    }

    QDistEvolResult result;
    result.min_weight = std::numeric_limits<std::size_t>::max();
    double best_fitness = -1.0;
    std::vector<std::size_t> best_perm;
    F2Matrix best_generators;

    std::vector<double> fitness(population, 0.0);
    auto evaluate_all = [&]() {
        for (std::size_t i = 0; i < perms.size(); ++i) {
            PermEvaluation ev = evaluate_permutation(stacked, k, model, perms[i]);
            fitness[i] = ev.fitness;
            result.candidates_evaluated += ev.candidates.size();
            result.min_weight = std::min(result.min_weight, ev.min_weight);
            const bool better =
                ev.fitness > best_fitness ||
                (ev.fitness == best_fitness && !best_perm.empty() && perms[i] < best_perm);
            if (better || best_perm.empty()) {
                best_fitness = ev.fitness;
                best_perm = perms[i];
                F2Matrix gens(2 * k, 2 * n);
                for (std::size_t g = 0; g < ev.picked.size(); ++g)
                    gens.set_row(g, ev.candidates[ev.picked[g]].row);
                best_generators = unpermute_qubits(gens, perms[i]);
            }
        }
    };

    evaluate_all();
    for (std::size_t gen = 0; gen < params.generations; ++gen) {
        std::vector<std::size_t> order(perms.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (fitness[a] != fitness[b]) return fitness[a] > fitness[b];
            return perms[a] < perms[b];
        });
        std::vector<std::vector<std::size_t>> next;
        next.reserve(population);
        for (std::size_t j = 0; j < population; ++j) {
            std::vector<std::size_t> child = perms[order[j % pool]];
            if (n >= 2) {
                // mutate with one extra transposition
                const std::size_t a = rng.uniform_index(n);
                std::size_t b = rng.uniform_index(n - 1);
                if (b >= a) ++b;
                std::swap(child[a], child[b]);
            }
            next.push_back(std::move(child));
        }
        perms = std::move(next);
        evaluate_all();
    }

    result.generators = best_generators;
    result.best_total_probability = best_fitness;
    result.best_permutation = best_perm;
    return result;
}

std::string FitnessReport::to_json() const {
    nlohmann::json j;
    j["value"] = value;
    j["mode"] = mode == FitnessMode::Exact ? "exact" : "approx";
    j["t"] = t;
    j["terms_summed"] = terms_summed;
    j["row_additions"] = row_additions;
    const std::size_t n = logical_generators.cols() / 2;
    std::vector<std::string> rows;
    for (std::size_t r = 0; r < logical_generators.rows(); ++r) {
        std::string line;
        for (std::size_t c = 0; c < logical_generators.cols(); ++c) {
            if (c == n) line.push_back('|');
            line.push_back(logical_generators.get(r, c) ? '1' : '0');
        }
        rows.push_back(line);
    }
    j["logical_generators"] = rows;
    return j.dump();
}

FitnessReport uer_exact(const StabiliserCode& code, const ErrorModel& model,
                        std::size_t cap_n_plus_k) {
    const std::size_t n = code.n(), k = code.k();
    if (n + k > cap_n_plus_k)
        throw resource_limit_error(
            "exact undetectable error rate sums 2^(n+k) terms; n+k = " + std::to_string(n + k) +
            " exceeds the cap of " + std::to_string(cap_n_plus_k) + " (use uer_approx)");

    const detail::SplitRows s_rows = detail::split_rows(code.S, n);
    const detail::SplitRows l_rows = detail::split_rows(code.L, n);

    std::vector<double> terms;
    terms.reserve((std::size_t(1) << (n - k)) * ((std::size_t(1) << (2 * k)) - 1));
    const std::uint64_t additions = detail::for_each_nontrivial_logical(
        s_rows, l_rows,
        [&](std::span<const std::uint64_t> x, std::span<const std::uint64_t> z) {
            terms.push_back(model.probability_from_counts(pauli_counts(x, z, n)));
        });

    FitnessReport report;
    report.row_additions = additions;
    report.terms_summed = terms.size();
    report.value = sorted_kahan_sum(terms);
    report.mode = FitnessMode::Exact;
    report.logical_generators = code.L;
    return report;
}

FitnessReport uer_approx(const StabiliserCode& code, const ErrorModel& model, std::size_t t,
                         const QDistEvolParams& qdist_params) {
    const std::size_t n = code.n(), k = code.k();
    const std::size_t m = n + k;
    const std::size_t t_max = (m + 1) / 2;
    if (t < 1 || t > t_max)
        throw std::invalid_argument("approximation depth t must lie in [1, ceil((n+k)/2)]");

    QDistEvolResult qres = qdistevol(code, model, qdist_params);
    const F2Matrix stacked = F2Matrix::vstack(code.S, qres.generators);

    LinCombSet lc = lincombs_up_to(stacked, t);
    std::uint64_t additions = lc.additions;

    // Sum of all rows: combinations of at least m-t rows are complements of
    // the generated ones.
    const std::size_t words = (n + 63) / 64;
    const detail::SplitRows combo_rows = detail::split_rows(lc.rows, n);
    const detail::SplitRows all_rows = detail::split_rows(stacked, n);
    std::vector<std::uint64_t> totalx(words, 0), totalz(words, 0);
    for (std::size_t i = 0; i < m; ++i) {
        detail::xor_into(totalx, all_rows.x_row(i));
        detail::xor_into(totalz, all_rows.z_row(i));
        if (i > 0) ++additions;
    }

    const std::size_t log_begin = n - k;
    std::vector<double> terms;
    std::vector<std::uint64_t> bufx(words), bufz(words);
    for (std::size_t i = 0; i < lc.size(); ++i) {
        std::size_t logical_ones = 0;
        for (std::size_t b = log_begin; b < m; ++b) logical_ones += lc.coeffs.get(i, b);
        const std::size_t wt = lc.coeffs.row_popcount(i);

        if (logical_ones > 0) {
            terms.push_back(
                model.probability_from_counts(pauli_counts(combo_rows.x_row(i), combo_rows.z_row(i), n)));
        }
        // Complement coefficient vector has weight m - wt; only emit it when
        // it was not already covered by the low-weight pass.
        if (m - wt > t && logical_ones < 2 * k) {
            std::copy(combo_rows.x_row(i).begin(), combo_rows.x_row(i).end(), bufx.begin());
            std::copy(combo_rows.z_row(i).begin(), combo_rows.z_row(i).end(), bufz.begin());
            detail::xor_into(bufx, totalx);
            detail::xor_into(bufz, totalz);
            ++additions;
            terms.push_back(model.probability_from_counts(pauli_counts(bufx, bufz, n)));
        }
    }

    FitnessReport report;
    report.terms_summed = terms.size();
    report.value = sorted_kahan_sum(terms);
    report.mode = FitnessMode::Approximate;
    report.t = t;
    report.logical_generators = qres.generators;
    report.row_additions = additions;
    return report;
}

}  // namespace stabevo
