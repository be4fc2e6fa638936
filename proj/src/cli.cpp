#include "stabevo/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "stabevo/code.hpp"
#include "stabevo/errors.hpp"
#include "stabevo/evolve.hpp"
#include "stabevo/fitness.hpp"
#include "stabevo/io.hpp"
#include "stabevo/pauli.hpp"

namespace stabevo {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

FitnessChoice parse_fitness(const std::string& text) {
    FitnessChoice choice;
    if (text == "auto") {
        choice.kind = FitnessChoice::Kind::Auto;
    } else if (text == "exact") {
        choice.kind = FitnessChoice::Kind::Exact;
    } else if (text.rfind("approx:", 0) == 0) {
        choice.kind = FitnessChoice::Kind::Approx;
        choice.t = std::stoul(text.substr(7));
        if (choice.t < 1) throw std::invalid_argument("approximation depth must be >= 1");
    } else {
        throw std::invalid_argument("fitness must be auto, exact or approx:<t>");
    }
    return choice;
}

// Shape bits shared by search/eval/hamming.
struct ShapeFlags {
    std::size_t n = 0;
    std::size_t k = 0;
    long long r = -1;  // -1: default (n-k, or (n-k)/2 for CSS)
    bool css = false;
    std::string m_diag = "auto";

    CodeShape resolve(const ErrorModel& model) const {
        std::size_t rr = r >= 0 ? static_cast<std::size_t>(r)
                                : (css ? (n - k) / 2 : n - k);
        if (css) return CodeShape::css_shape_r(n, k, rr);
        bool diag = false;
        if (m_diag == "on")
            diag = true;
        else if (m_diag == "off")
            diag = false;
        else if (m_diag == "auto")
            diag = !model.is_depolarising();
        else
            throw std::invalid_argument("--m-diag must be auto, on or off");
        return CodeShape::general_r(n, k, rr, diag);
    }
};

void add_shape_flags(CLI::App* cmd, ShapeFlags& shape, bool required) {
    auto* n = cmd->add_option("--n", shape.n, "physical qubits");
    auto* k = cmd->add_option("--k", shape.k, "logical qubits");
    if (required) {
        n->required();
        k->required();
    }
    cmd->add_option("--r", shape.r, "checks containing an X factor (default n-k, CSS (n-k)/2)");
    cmd->add_flag("--css", shape.css, "use the CSS genotype (X-only and Z-only checks)");
    cmd->add_option("--m-diag", shape.m_diag,
                    "keep phase bits on the diagonal of M: auto|on|off (auto: on for biased models)");
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (std::uint64_t(rd()) << 32) ^ rd();
}

// ---------------------------------------------------------------- search --

struct SearchFlags {
    ShapeFlags shape;
    std::string model = "depolarising:0.01";
    std::size_t lambda = 0;
    std::size_t mu = 0;
    double mu_ratio = 20.0;
    std::string cross = "none";
    std::string mutation = "auto";
    double mut_rate = 0.05;
    std::size_t max_gen = 1000;
    std::string fitness = "auto";
    std::optional<std::uint64_t> seed;
    std::string out = "result.json";
    std::string trace = "trace.csv";
    std::optional<std::size_t> target_distance;
    std::optional<double> target_fitness;
    std::size_t threads = 1;
};

SearchConfig make_search_config(const SearchFlags& f) {
    SearchConfig cfg;
    cfg.model = ErrorModel::parse(f.model);
    cfg.shape = f.shape.resolve(cfg.model);
    cfg.lambda = f.lambda;
    cfg.mu = f.mu;
    cfg.mu_ratio = f.mu_ratio;
    cfg.max_generations = f.max_gen;
    cfg.cross = cross_type_from_string(f.cross);
    if (f.mutation == "auto") {
        cfg.mutation = cfg.cross == CrossType::None ? MutationMode::SingleBit
                                                    : MutationMode::PerBitRate;
    } else if (f.mutation == "single-bit") {
        cfg.mutation = MutationMode::SingleBit;
    } else if (f.mutation == "per-bit") {
        cfg.mutation = MutationMode::PerBitRate;
    } else {
        throw std::invalid_argument("--mutation must be auto, single-bit or per-bit");
    }
    cfg.mutation_rate = f.mut_rate;
    cfg.fitness = parse_fitness(f.fitness);
    cfg.target_distance = f.target_distance;
    cfg.target_fitness = f.target_fitness;
    cfg.seed = f.seed ? *f.seed : entropy_seed();
    cfg.threads = f.threads;
    return cfg;
}

int cmd_search(const SearchFlags& flags, std::ostream& out) {
    const SearchConfig cfg = make_search_config(flags);
    const SearchResult result = run_search(cfg);

    {
        std::ofstream json_out(flags.out);
        if (!json_out) throw data_error("cannot write '" + flags.out + "'");
        json_out << search_result_to_json(result);
    }
    {
        std::ofstream trace_out(flags.trace);
        if (!trace_out) throw data_error("cannot write '" + flags.trace + "'");
        trace_out << trace_to_csv(result);
    }

    out << "best fitness = " << format_double(result.best_fitness) << "\n";
    out << "best genotype = " << bits_to_hex(result.best.bits) << "\n";
    out << "distance = " << result.best_distance << "\n";
    out << "generation found = " << result.generation_found << "\n";
    out << "terminated by = " << result.terminated_by << "\n";
    out << "seed = " << result.seed << "\n";

    if (flags.target_distance &&
        (result.best_distance < 0 ||
         static_cast<std::size_t>(result.best_distance) < *flags.target_distance))
        return exit_target_missed;
    return exit_ok;
}

// ------------------------------------------------------------------ eval --

struct EvalFlags {
    std::string code_file;
    std::string genotype;
    ShapeFlags shape;
    std::string model;
    std::string fitness = "auto";
    bool distance = false;
    std::uint64_t seed = 0;
};

int cmd_eval(const EvalFlags& flags, std::ostream& out) {
    const ErrorModel model = ErrorModel::parse(flags.model);

    StabiliserCode code;
    if (!flags.code_file.empty()) {
        code = read_code_file(flags.code_file);
    } else if (!flags.genotype.empty()) {
        if (flags.shape.n == 0 || flags.shape.k == 0)
            throw std::invalid_argument("--genotype needs --n and --k to fix the shape");
        const CodeShape shape = flags.shape.resolve(model);
        code = build_code(CodeGenotype::from_bits(shape, bits_from_hex(flags.genotype)));
    } else {
        throw std::invalid_argument("eval needs --code or --genotype");
    }

    const FitnessChoice choice = parse_fitness(flags.fitness);
    FitnessReport report;
    if (choice.use_exact(code.n(), code.k())) {
        report = uer_exact(code, model, choice.exact_cap);
    } else {
        QDistEvolParams qp;
        qp.seed = flags.seed;
        const std::size_t t_max = (code.n() + code.k() + 1) / 2;
        report = uer_approx(code, model, std::clamp<std::size_t>(choice.t, 1, t_max), qp);
    }

    out << "P_S = " << format_double(report.value) << "\n";
    if (report.mode == FitnessMode::Exact)
        out << "mode = exact\n";
    else
        out << "mode = approx:" << report.t << "\n";
    if (flags.distance) {
        out << "distance = " << distance_exact(code).distance << "\n";
    }
    return exit_ok;
}

// ----------------------------------------------------------------- bench --

struct BenchFlags {
    std::string table;
    std::size_t n_max = 0;
    std::size_t k_max = 0;  // 0: up to n-1
    std::size_t runs = 1;
    std::size_t max_gen = 1000;
    std::string model = "depolarising:0.01";
    bool css = false;
    std::optional<std::uint64_t> seed;
    std::string out = "bench.csv";
    std::size_t threads = 1;
};

int cmd_bench(const BenchFlags& flags, std::ostream& out, std::ostream& err) {
    const std::vector<BenchRow> table = read_bench_table_file(flags.table);
    const ErrorModel model = ErrorModel::parse(flags.model);
    const std::uint64_t master_seed = flags.seed ? *flags.seed : entropy_seed();

    auto lookup = [&](std::size_t n, std::size_t k) -> const BenchRow* {
        for (const BenchRow& row : table) {
            if (row.n == n && row.k == k) return &row;
        }
        return nullptr;
    };

    std::ofstream csv(flags.out);
    if (!csv) throw data_error("cannot write '" + flags.out + "'");
    csv << "n,k,run,found_distance,best_known,delta,generations_used,seed\n";

    std::size_t cells = 0, cell_hits = 0, total_runs = 0, run_hits = 0;
    for (std::size_t n = 2; n <= flags.n_max; ++n) {
        const std::size_t k_hi = std::min(flags.k_max == 0 ? n - 1 : flags.k_max, n - 1);
        for (std::size_t k = 1; k <= k_hi; ++k) {
            const BenchRow* row = lookup(n, k);
            if (row == nullptr) {
                err << "bench: no table entry for n=" << n << " k=" << k << ", skipping\n";
                continue;
            }
            ++cells;
            bool cell_hit = false;
            for (std::size_t run = 0; run < flags.runs; ++run) {
                SearchConfig cfg;
                cfg.model = model;
                cfg.shape = flags.css
                                ? CodeShape::css_shape(n, k)
                                : CodeShape::general(n, k, !model.is_depolarising());
                cfg.max_generations = flags.max_gen;
                cfg.target_distance = row->best_known;
                cfg.seed = RngStream::derive(master_seed, n, k, run).next_u64();
                cfg.threads = flags.threads;
                const SearchResult result = run_search(cfg);
                const long long found = result.best_distance;
                const long long delta = static_cast<long long>(row->best_known) - found;
                ++total_runs;
                if (found >= 0 && delta <= 0) {
                    ++run_hits;
                    cell_hit = true;
                }
                csv << n << ',' << k << ',' << run << ',' << found << ',' << row->best_known
                    << ',' << delta << ',' << result.trace.back().generation << ','
                    << result.seed << '\n';
            }
            if (cell_hit) ++cell_hits;
        }
    }

    out << "cells = " << cells << "\n";
    out << "cells reaching best known = " << cell_hits << "\n";
    out << "runs = " << total_runs << "\n";
    out << "runs reaching best known = " << run_hits << "\n";
    out << "seed = " << master_seed << "\n";
    return exit_ok;
}

// --------------------------------------------------------------- example --

std::string pauli_row_text_local(const F2Matrix& m, std::size_t row) {
    const std::size_t n = m.cols() / 2;
    std::string line;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (c == n) line.push_back('|');
        line.push_back(m.get(row, c) ? '1' : '0');
    }
    return line;
}

void print_matrix_indented(std::ostream& out, const F2Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << "    ";
        for (std::size_t c = 0; c < m.cols(); ++c) out << (m.get(r, c) ? '1' : '0');
        out << "\n";
    }
}

std::string genotype_pretty(const CanonicalCode& canonical, bool with_diagonal) {
    const std::size_t r = canonical.shape.r;
    std::string text;
    for (std::size_t i = 0; i < canonical.C.rows(); ++i)
        for (std::size_t j = 0; j < canonical.C.cols(); ++j)
            text.push_back(canonical.C.get(i, j) ? '1' : '0');
    text.push_back('|');
    for (std::size_t i = 0; i < canonical.A.rows(); ++i)
        for (std::size_t j = 0; j < canonical.A.cols(); ++j)
            text.push_back(canonical.A.get(i, j) ? '1' : '0');
    text.push_back('|');
    bool first_row = true;
    for (std::size_t i = 0; i < r; ++i) {
        std::string row;
        for (std::size_t j = with_diagonal ? i : i + 1; j < r; ++j)
            row.push_back(canonical.M.get(i, j) ? '1' : '0');
        if (row.empty()) continue;
        if (!first_row) text.push_back(',');
        text += row;
        first_row = false;
    }
    return text;
}

int cmd_example(const std::string& name, std::ostream& out) {
    if (name != "five-qubit")
        throw std::invalid_argument("unknown example '" + name + "' (available: five-qubit)");

    // Stabilisers are IXZZX and its cyclic shifts.
    const std::string base = "IXZZX";
    std::vector<PauliOp> stabs;
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < 5; ++j) {
        std::string rotated(5, 'I');
        for (std::size_t i = 0; i < 5; ++i) rotated[(i + j) % 5] = base[i];
        stabs.push_back(PauliOp::from_string(rotated));
        labels.push_back(rotated);
    }
    F2Matrix s_raw(5, 10);
    for (std::size_t i = 0; i < 5; ++i) s_raw.set_row(i, stabs[i].to_vec());

    out << "[[5,1,3]] five-qubit code\n\n";
    out << "stabiliser generators:\n";
    for (std::size_t i = 0; i < 5; ++i) {
        out << "  S" << i << " = " << labels[i] << "  " << stabs[i].x.to_string() << "|"
            << stabs[i].z.to_string() << "\n";
    }

    const StandardFormResult sf = standard_form(s_raw);
    const CodeShape& shape = sf.canonical.shape;
    out << "rank " << sf.rank << ", so k = " << shape.k;
    if (in_span(s_raw.submatrix(0, 4, 0, 10), s_raw.row_vec(4)))
        out << " (S4 = S0+S1+S2+S3)";
    out << "; r = " << shape.r << ", s = " << shape.s() << "\n\n";

    bool identity_perm = true;
    for (std::size_t i = 0; i < sf.qubit_map.size(); ++i)
        identity_perm = identity_perm && sf.qubit_map[i] == i;
    out << "standard form (qubit permutation: " << (identity_perm ? "identity" : "permuted")
        << "):\n";
    for (std::size_t i = 0; i < sf.standard_matrix.rows(); ++i) {
        out << "  " << pauli_row_text_local(sf.standard_matrix, i) << "\n";
    }

    const StabiliserCode code = build_code(sf.canonical);
    out << "\nlogical operators:\n";
    const PauliOp lz = PauliOp::from_vec(code.L.row_vec(0));
    const PauliOp lx = PauliOp::from_vec(code.L.row_vec(1));
    out << "  logical Z = " << lz.to_string() << "  " << lz.x.to_string() << "|"
        << lz.z.to_string() << "\n";
    out << "  logical X = " << lx.to_string() << "  " << lx.x.to_string() << "|"
        << lx.z.to_string() << "\n";

    const std::size_t r = shape.r, n = shape.n;
    const F2Matrix B = sf.standard_matrix.submatrix(0, r, n, n + r);
    out << "\ncanonical form:\n";
    out << "  A =\n";
    print_matrix_indented(out, sf.canonical.A);
    out << "  B =\n";
    print_matrix_indented(out, B);
    out << "  C =\n";
    print_matrix_indented(out, sf.canonical.C);
    out << "  M =\n";
    print_matrix_indented(out, sf.canonical.M);

    out << "\ngenotype, S-gate bits kept (18 bits):    "
        << genotype_pretty(sf.canonical, true) << "\n";
    out << "genotype, S-gate bits dropped (14 bits): " << genotype_pretty(sf.canonical, false)
        << "\n";

    const DistanceReport dist = distance_exact(code);
    out << "\ndistance = " << dist.distance << " (" << dist.nontrivial_logicals
        << " non-trivial logical operators enumerated)\n";
    return exit_ok;
}

// --------------------------------------------------------------- hamming --

struct HammingFlags {
    ShapeFlags shape;
    std::string model = "depolarising:0.01";
    std::size_t samples = 1000;
    std::optional<std::uint64_t> seed;
    std::string out = "hamming.csv";
};

int cmd_hamming(const HammingFlags& flags, std::ostream& out) {
    const ErrorModel model = ErrorModel::parse(flags.model);
    const CodeShape shape = flags.shape.resolve(model);
    const std::uint64_t seed = flags.seed ? *flags.seed : entropy_seed();
    const auto records = hamming_fitness_profile(shape, model, flags.samples, seed);

    std::ofstream csv(flags.out);
    if (!csv) throw data_error("cannot write '" + flags.out + "'");
    csv << "hamming_distance,delta_uer\n";
    csv.precision(17);
    for (const HammingRecord& rec : records) csv << rec.hamming << ',' << rec.delta << '\n';

    out << "pairs = " << records.size() << "\n";
    out << "seed = " << seed << "\n";
    return exit_ok;
}

// Expands `--config <file>` into the flat key=value flags it mirrors. The
// resulting words are inserted where the flag appeared, so an option given
// both in the file and on the command line is reported as a duplicate.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> expanded;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a file path");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            expanded.push_back(args[i]);
            continue;
        }
        std::ifstream in(path);
        if (!in) throw data_error("cannot open config file '" + path + "'");
        std::string line;
        while (std::getline(in, line)) {
            const auto start = line.find_first_not_of(" \t");
            if (start == std::string::npos || line[start] == '#') continue;
            const auto end = line.find_last_not_of(" \t\r");
            line = line.substr(start, end - start + 1);
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                expanded.push_back("--" + line);  // bare flag
            } else {
                expanded.push_back("--" + line.substr(0, eq));
                expanded.push_back(line.substr(eq + 1));
            }
        }
    }
    return expanded;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"evolutionary search for stabiliser quantum error-correction codes"};
    app.name("stabevo");
    app.require_subcommand(1);

    // --config is expanded before parsing; registered here only so the
    // help text lists it.
    std::string config_doc;

    SearchFlags search_flags;
    auto* search = app.add_subcommand("search", "evolve a code for an error model");
    search->add_option("--config", config_doc, "flat key=value file mirroring these flags");
    add_shape_flags(search, search_flags.shape, true);
    search->add_option("--model", search_flags.model, "depolarising:<p> or pauli:<px>,<py>,<pz>");
    search->add_option("--lambda", search_flags.lambda, "population size (default: genotype bits)");
    search->add_option("--mu", search_flags.mu, "reproducing pool size");
    search->add_option("--mu-ratio", search_flags.mu_ratio, "target lambda/mu ratio");
    search->add_option("--cross", search_flags.cross,
                       "none|1-point|2-point|3-point|uniform|half-uniform");
    search->add_option("--mutation", search_flags.mutation, "auto|single-bit|per-bit");
    search->add_option("--mut-rate", search_flags.mut_rate, "per-bit mutation rate");
    search->add_option("--max-gen", search_flags.max_gen, "maximum generations");
    search->add_option("--fitness", search_flags.fitness, "auto|exact|approx:<t>");
    search->add_option("--seed", search_flags.seed, "RNG seed (default: from entropy)");
    search->add_option("--out", search_flags.out, "result JSON path");
    search->add_option("--trace", search_flags.trace, "trace CSV path");
    search->add_option("--target-distance", search_flags.target_distance,
                       "stop once this distance is reached; exit 2 if missed");
    search->add_option("--target-fitness", search_flags.target_fitness,
                       "stop once fitness is at or below this value");
    search->add_option("--threads", search_flags.threads, "worker thread cap");

    EvalFlags eval_flags;
    auto* eval = app.add_subcommand("eval", "evaluate a code file or genotype");
    eval->add_option("--config", config_doc, "flat key=value file mirroring these flags");
    eval->add_option("--code", eval_flags.code_file, "code interchange file");
    eval->add_option("--genotype", eval_flags.genotype, "genotype as <bits>:<hex>");
    add_shape_flags(eval, eval_flags.shape, false);
    eval->add_option("--model", eval_flags.model, "error model literal")->required();
    eval->add_option("--fitness", eval_flags.fitness, "auto|exact|approx:<t>");
    eval->add_flag("--distance", eval_flags.distance, "also print the exact distance");
    eval->add_option("--seed", eval_flags.seed, "seed for the approximate mode");

    BenchFlags bench_flags;
    auto* bench = app.add_subcommand("bench", "compare search results to a distance table");
    bench->add_option("--config", config_doc, "flat key=value file mirroring these flags");
    bench->add_option("--table", bench_flags.table, "CSV of n,k,best_known_distance")->required();
    bench->add_option("--n-max", bench_flags.n_max, "largest n to sweep")->required();
    bench->add_option("--k-max", bench_flags.k_max, "largest k to sweep (default n-1)");
    bench->add_option("--runs", bench_flags.runs, "runs per (n,k) cell");
    bench->add_option("--max-gen", bench_flags.max_gen, "maximum generations per run");
    bench->add_option("--model", bench_flags.model, "error model literal");
    bench->add_flag("--css", bench_flags.css, "search CSS codes");
    bench->add_option("--seed", bench_flags.seed, "master seed (default: from entropy)");
    bench->add_option("--out", bench_flags.out, "bench CSV path");
    bench->add_option("--threads", bench_flags.threads, "worker thread cap");

    std::string example_name;
    auto* example = app.add_subcommand("example", "print a worked example");
    example->add_option("--name", example_name, "example name (five-qubit)")->required();

    HammingFlags hamming_flags;
    auto* hamming = app.add_subcommand("hamming", "Hamming distance vs fitness profile");
    hamming->add_option("--config", config_doc, "flat key=value file mirroring these flags");
    add_shape_flags(hamming, hamming_flags.shape, true);
    hamming->add_option("--model", hamming_flags.model, "error model literal");
    hamming->add_option("--samples", hamming_flags.samples, "number of codes in the walk");
    hamming->add_option("--seed", hamming_flags.seed, "RNG seed (default: from entropy)");
    hamming->add_option("--out", hamming_flags.out, "output CSV path");

    std::vector<std::string> args;
    try {
        args = expand_config(raw_args);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const data_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_data;
    }
    std::vector<const char*> argv;
    argv.push_back("stabevo");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (search->parsed()) return cmd_search(search_flags, out);
        if (eval->parsed()) return cmd_eval(eval_flags, out);
        if (bench->parsed()) return cmd_bench(bench_flags, out, err);
        if (example->parsed()) return cmd_example(example_name, out);
        if (hamming->parsed()) return cmd_hamming(hamming_flags, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const data_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_data;
    } catch (const resource_limit_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_usage;
}

}  // namespace stabevo
