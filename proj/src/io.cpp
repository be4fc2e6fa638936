#include "stabevo/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stabevo/errors.hpp"

namespace stabevo {

namespace {

int hex_digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string pauli_row_text(const F2Matrix& m, std::size_t row) {
    const std::size_t n = m.cols() / 2;
    std::string line;
    line.reserve(m.cols() + 1);
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (c == n) line.push_back('|');
        line.push_back(m.get(row, c) ? '1' : '0');
    }
    return line;
}

F2Vec parse_pauli_row(const std::string& line, std::size_t n, std::size_t lineno) {
    F2Vec v;
    try {
        v = F2Vec::from_string(line);
    } catch (const std::exception& e) {
        throw data_error("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (v.size() != 2 * n)
        throw data_error("line " + std::to_string(lineno) + ": expected " +
                         std::to_string(2 * n) + " bits, got " + std::to_string(v.size()));
    return v;
}

}  // namespace

std::string bits_to_hex(const F2Vec& bits) {
    static const char digits[] = "0123456789abcdef";
    std::string hex;
    hex.reserve((bits.size() + 3) / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        int nibble = 0;
        for (std::size_t b = 0; b < 4 && i + b < bits.size(); ++b) {
            if (bits.get(i + b)) nibble |= 8 >> b;
        }
        hex.push_back(digits[nibble]);
    }
    return std::to_string(bits.size()) + ":" + hex;
}

F2Vec bits_from_hex(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw data_error("genotype hex must be '<bit-length>:<hex digits>'");
    std::size_t length = 0;
    const auto* first = text.data();
    const auto res = std::from_chars(first, first + colon, length);
    if (res.ec != std::errc{} || res.ptr != first + colon)
        throw data_error("invalid bit length in genotype hex");
    const std::string_view hex = text.substr(colon + 1);
    if (hex.size() != (length + 3) / 4)
        throw data_error("genotype hex has " + std::to_string(hex.size()) + " digits; " +
                         std::to_string(length) + " bits need " +
                         std::to_string((length + 3) / 4));
    F2Vec bits(length);
    for (std::size_t d = 0; d < hex.size(); ++d) {
        const int value = hex_digit_value(hex[d]);
        if (value < 0) throw data_error("invalid hex digit in genotype");
        for (std::size_t b = 0; b < 4; ++b) {
            const bool bit = (value >> (3 - b)) & 1;
            const std::size_t pos = d * 4 + b;
            if (pos < length) {
                bits.set(pos, bit);
            } else if (bit) {
                throw data_error("genotype hex has nonzero padding bits");
            }
        }
    }
    return bits;
}

void write_code(std::ostream& out, const StabiliserCode& code) {
    const CodeShape& shape = code.shape;
    out << shape.n << ' ' << shape.k << ' ' << shape.r << ' ' << shape.s() << ' '
        << (shape.css ? 1 : 0) << '\n';
    for (std::size_t i = 0; i < code.S.rows(); ++i) out << pauli_row_text(code.S, i) << '\n';
    for (std::size_t i = 0; i < code.L.rows(); ++i) out << pauli_row_text(code.L, i) << '\n';
    for (std::size_t i = 0; i < code.R.rows(); ++i) out << pauli_row_text(code.R, i) << '\n';
}

StabiliserCode read_code(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw data_error("code file is empty");
    std::istringstream hs(header);
    std::size_t n = 0, k = 0, r = 0, s = 0;
    int css = 0;
    if (!(hs >> n >> k >> r >> s >> css))
        throw data_error("code file header must be 'n k r s css'");
    if (k + r + s != n) throw data_error("code file header violates n = k + r + s");

    StabiliserCode code;
    code.shape = CodeShape{n, k, r, false, css != 0};
    auto read_rows = [&](std::size_t count, const char* what) {
        F2Matrix m(count, 2 * n);
        for (std::size_t i = 0; i < count; ++i) {
            std::string line;
            if (!std::getline(in, line))
                throw data_error(std::string("unexpected end of file reading ") + what);
            m.set_row(i, parse_pauli_row(line, n, i + 2));
        }
        return m;
    };
    code.S = read_rows(n - k, "stabiliser rows");
    code.L = read_rows(2 * k, "logical rows");
    code.R = read_rows(n - k, "destabiliser rows");

    // Validate the symplectic structure before accepting the code.
    if (!symplectic_gram(code.S).is_zero()) throw data_error("stabiliser rows do not commute");
    for (std::size_t i = 0; i < code.L.rows(); ++i) {
        const F2Vec lrow = code.L.row_vec(i);
        for (std::size_t j = 0; j < code.S.rows(); ++j) {
            if (symplectic_product(code.S.row_vec(j), lrow))
                throw data_error("logical row " + std::to_string(i) +
                                 " anticommutes with stabiliser row " + std::to_string(j));
        }
    }
    const F2Matrix stacked = F2Matrix::vstack(code.S, code.L);
    if (rref(stacked).rank != n + k)
        throw data_error("stabiliser and logical rows are not independent");
    return code;
}

StabiliserCode read_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open code file '" + path + "'");
    return read_code(in);
}

void write_code_file(const std::string& path, const StabiliserCode& code) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write code file '" + path + "'");
    write_code(out, code);
}

namespace {

nlohmann::json config_to_json(const SearchConfig& cfg) {
    nlohmann::json j;
    j["n"] = cfg.shape.n;
    j["k"] = cfg.shape.k;
    j["r"] = cfg.shape.r;
    j["s"] = cfg.shape.s();
    j["css"] = cfg.shape.css;
    j["m_diagonal"] = cfg.shape.include_m_diagonal;
    j["model"] = cfg.model.to_string();
    const ResolvedPopulation pop = resolve_population(cfg);
    j["lambda"] = pop.lambda;
    j["mu"] = pop.mu;
    j["max_generations"] = cfg.max_generations;
    j["cross"] = to_string(cfg.cross);
    j["mutation"] = cfg.mutation == MutationMode::SingleBit ? "single-bit" : "per-bit";
    j["mutation_rate"] = cfg.mutation_rate;
    switch (cfg.fitness.kind) {
        case FitnessChoice::Kind::Auto: j["fitness"] = "auto"; break;
        case FitnessChoice::Kind::Exact: j["fitness"] = "exact"; break;
        case FitnessChoice::Kind::Approx:
            j["fitness"] = "approx:" + std::to_string(cfg.fitness.t);
            break;
    }
    if (cfg.target_distance) j["target_distance"] = *cfg.target_distance;
    if (cfg.target_fitness) j["target_fitness"] = *cfg.target_fitness;
    j["seed"] = cfg.seed;
    return j;
}

}  // namespace

std::string search_result_to_json(const SearchResult& result) {
    nlohmann::json j;
    j["config"] = config_to_json(result.config);
    j["seed"] = result.seed;
    j["best"]["genotype"] = bits_to_hex(result.best.bits);
    j["best"]["fitness"] = result.best_fitness;
    j["best"]["generation_found"] = result.generation_found;
    j["best"]["distance"] = result.best_distance;
    j["generations_run"] = result.trace.empty() ? 0 : result.trace.back().generation;
    j["evaluations"] = result.evaluations;
    j["terminated_by"] = result.terminated_by;
    nlohmann::json trace = nlohmann::json::array();
    for (const TraceRow& row : result.trace) {
        trace.push_back({row.generation, row.best_fitness, row.best_so_far, row.distance});
    }
    j["trace"] = trace;
    return j.dump(2) + "\n";
}

std::string trace_to_csv(const SearchResult& result) {
    std::ostringstream out;
    out.precision(17);
    out << "generation,best_fitness,best_so_far,distance\n";
    for (const TraceRow& row : result.trace) {
        out << row.generation << ',' << row.best_fitness << ',' << row.best_so_far << ','
            << row.distance << '\n';
    }
    return out.str();
}

std::vector<BenchRow> read_bench_table(std::istream& in) {
    std::vector<BenchRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string na, ka, da;
        if (!std::getline(ls, na, ',') || !std::getline(ls, ka, ',') || !std::getline(ls, da))
            throw data_error("bench table line " + std::to_string(lineno) +
                             ": expected 'n,k,d'");
        if (lineno == 1 && (na == "n" || na == "N")) continue;  // header
        BenchRow row;
        try {
            row.n = std::stoul(na);
            row.k = std::stoul(ka);
            row.best_known = std::stoul(da);
        } catch (const std::exception&) {
            throw data_error("bench table line " + std::to_string(lineno) +
                             ": invalid number");
        }
        if (row.k < 1 || row.k >= row.n || row.best_known < 1)
            throw data_error("bench table line " + std::to_string(lineno) +
                             ": requires 1 <= k < n and d >= 1");
        rows.push_back(row);
    }
    return rows;
}

std::vector<BenchRow> read_bench_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open bench table '" + path + "'");
    return read_bench_table(in);
}

}  // namespace stabevo
