#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stabevo/cli.hpp"
#include "stabevo/code.hpp"
#include "stabevo/errors.hpp"
#include "stabevo/evolve.hpp"
#include "stabevo/fitness.hpp"
#include "stabevo/io.hpp"
#include "stabevo/pauli.hpp"

namespace py = pybind11;
using namespace stabevo;

namespace {

F2Matrix matrix_from_rows(const std::vector<std::string>& rows) {
    return F2Matrix::from_rows(rows);
}

std::vector<std::string> matrix_to_rows(const F2Matrix& m) {
    std::vector<std::string> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row_vec(r).to_string());
    return rows;
}

SearchConfig build_config(const CodeShape& shape, const ErrorModel& model, std::size_t lambda,
                          std::size_t mu, double mu_ratio, std::size_t max_generations,
                          const std::string& cross, const std::string& mutation,
                          double mutation_rate, const std::string& fitness, std::size_t fitness_t,
                          std::optional<std::size_t> target_distance,
                          std::optional<double> target_fitness, std::uint64_t seed,
                          std::size_t threads) {
    SearchConfig cfg;
    cfg.shape = shape;
    cfg.model = model;
    cfg.lambda = lambda;
    cfg.mu = mu;
    cfg.mu_ratio = mu_ratio;
    cfg.max_generations = max_generations;
    cfg.cross = cross_type_from_string(cross);
    if (mutation == "auto") {
        cfg.mutation = cfg.cross == CrossType::None ? MutationMode::SingleBit
                                                    : MutationMode::PerBitRate;
    } else if (mutation == "single-bit") {
        cfg.mutation = MutationMode::SingleBit;
    } else if (mutation == "per-bit") {
        cfg.mutation = MutationMode::PerBitRate;
    } else {
        throw std::invalid_argument("mutation must be auto, single-bit or per-bit");
    }
    cfg.mutation_rate = mutation_rate;
    if (fitness == "auto") {
        cfg.fitness.kind = FitnessChoice::Kind::Auto;
    } else if (fitness == "exact") {
        cfg.fitness.kind = FitnessChoice::Kind::Exact;
    } else if (fitness == "approx") {
        cfg.fitness.kind = FitnessChoice::Kind::Approx;
    } else {
        throw std::invalid_argument("fitness must be auto, exact or approx");
    }
    cfg.fitness.t = fitness_t;
    cfg.target_distance = target_distance;
    cfg.target_fitness = target_fitness;
    cfg.seed = seed;
    cfg.threads = threads;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Evolutionary search for stabiliser quantum error-correction codes";

    py::register_exception<resource_limit_error>(m, "ResourceLimitError", PyExc_RuntimeError);
    py::register_exception<data_error>(m, "DataError", PyExc_ValueError);

    py::class_<F2Matrix>(m, "F2Matrix")
        .def(py::init(&matrix_from_rows), py::arg("rows"),
             "Build from '0'/'1' row strings; '|' separators are ignored.")
        .def_property_readonly("rows", &F2Matrix::rows)
        .def_property_readonly("cols", &F2Matrix::cols)
        .def("to_rows", &matrix_to_rows)
        .def("__eq__", [](const F2Matrix& a, const F2Matrix& b) { return a == b; })
        .def("__repr__", [](const F2Matrix& m_) {
            return "F2Matrix(" + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) + ")";
        });

    py::class_<RrefResult>(m, "RrefResult")
        .def_readonly("reduced", &RrefResult::reduced)
        .def_readonly("rank", &RrefResult::rank)
        .def_readonly("pivot_cols", &RrefResult::pivot_cols)
        .def_readonly("transform", &RrefResult::transform);

    m.def("rref", [](const F2Matrix& m_) { return rref(m_); }, py::arg("matrix"));
    m.def(
        "in_span",
        [](const F2Matrix& m_, const std::string& v) { return in_span(m_, F2Vec::from_string(v)); },
        py::arg("matrix"), py::arg("vector"));
    m.def(
        "symplectic_product",
        [](const std::string& a, const std::string& b) {
            return symplectic_product(F2Vec::from_string(a), F2Vec::from_string(b));
        },
        py::arg("a"), py::arg("b"), "Symplectic form on '0'/'1' strings of length 2n.");

    py::class_<PauliOp>(m, "PauliOp")
        .def(py::init([](const std::string& s) { return PauliOp::from_string(s); }),
             py::arg("pauli"))
        .def_property_readonly("n", [](const PauliOp& p) { return p.n; })
        .def("weight", &PauliOp::weight)
        .def("to_vec", [](const PauliOp& p) { return p.to_vec().to_string(); })
        .def("__str__", &PauliOp::to_string)
        .def("__repr__", [](const PauliOp& p) { return "PauliOp('" + p.to_string() + "')"; });

    py::class_<ErrorModel>(m, "ErrorModel")
        .def_static("depolarising", &ErrorModel::depolarising, py::arg("p"))
        .def_static("pauli", &ErrorModel::pauli, py::arg("p_x"), py::arg("p_y"), py::arg("p_z"))
        .def_static("parse", [](const std::string& s) { return ErrorModel::parse(s); },
                    py::arg("literal"))
        .def_property_readonly("p_i", &ErrorModel::p_i)
        .def_property_readonly("p_x", &ErrorModel::p_x)
        .def_property_readonly("p_y", &ErrorModel::p_y)
        .def_property_readonly("p_z", &ErrorModel::p_z)
        .def("op_probability", &ErrorModel::op_probability, py::arg("op"))
        .def("__repr__", [](const ErrorModel& em) { return "ErrorModel(" + em.to_string() + ")"; });

    py::class_<CodeShape>(m, "CodeShape")
        .def_static("general", &CodeShape::general, py::arg("n"), py::arg("k"),
                    py::arg("include_m_diagonal") = false)
        .def_static("general_r", &CodeShape::general_r, py::arg("n"), py::arg("k"), py::arg("r"),
                    py::arg("include_m_diagonal") = false)
        .def_static("css", &CodeShape::css_shape, py::arg("n"), py::arg("k"))
        .def_static("css_r", &CodeShape::css_shape_r, py::arg("n"), py::arg("k"), py::arg("r"))
        .def_readonly("n", &CodeShape::n)
        .def_readonly("k", &CodeShape::k)
        .def_readonly("r", &CodeShape::r)
        .def_property_readonly("s", &CodeShape::s)
        .def_readonly("include_m_diagonal", &CodeShape::include_m_diagonal)
        .def_readonly("is_css", &CodeShape::css)
        .def("__repr__", [](const CodeShape& s) {
            return "CodeShape(n=" + std::to_string(s.n) + ", k=" + std::to_string(s.k) +
                   ", r=" + std::to_string(s.r) + (s.css ? ", css" : "") + ")";
        });

    m.def("genotype_length", &genotype_length, py::arg("shape"));

    py::class_<CodeGenotype>(m, "CodeGenotype")
        .def(py::init([](const CodeShape& shape, const std::string& bits) {
                 return CodeGenotype::from_bits(shape, F2Vec::from_string(bits));
             }),
             py::arg("shape"), py::arg("bits"))
        .def_static(
            "from_hex",
            [](const CodeShape& shape, const std::string& hex) {
                return CodeGenotype::from_bits(shape, bits_from_hex(hex));
            },
            py::arg("shape"), py::arg("hex"))
        .def_static(
            "random",
            [](const CodeShape& shape, std::uint64_t seed) {
                RngStream rng(seed);
                return CodeGenotype::random(shape, rng);
            },
            py::arg("shape"), py::arg("seed"))
        .def_readonly("shape", &CodeGenotype::shape)
        .def_property_readonly("bits", [](const CodeGenotype& g) { return g.bits.to_string(); })
        .def("to_hex", [](const CodeGenotype& g) { return bits_to_hex(g.bits); })
        .def("__eq__", [](const CodeGenotype& a, const CodeGenotype& b) { return a == b; });

    py::class_<CanonicalCode>(m, "CanonicalCode")
        .def_readonly("shape", &CanonicalCode::shape)
        .def_readonly("C", &CanonicalCode::C)
        .def_readonly("A", &CanonicalCode::A)
        .def_readonly("M", &CanonicalCode::M);

    py::class_<StabiliserCode>(m, "StabiliserCode")
        .def_readonly("shape", &StabiliserCode::shape)
        .def_readonly("S", &StabiliserCode::S)
        .def_readonly("L", &StabiliserCode::L)
        .def_readonly("R", &StabiliserCode::R)
        .def_property_readonly("n", &StabiliserCode::n)
        .def_property_readonly("k", &StabiliserCode::k);

    m.def("decode_genotype", &decode_genotype, py::arg("genotype"));
    m.def("encode_genotype", &encode_genotype, py::arg("canonical"));
    m.def("build_code", py::overload_cast<const CanonicalCode&>(&build_code), py::arg("canonical"));
    m.def("build_code", py::overload_cast<const CodeGenotype&>(&build_code), py::arg("genotype"));
    m.def("css_decode", &css_decode, py::arg("genotype"));
    m.def("tableau", &tableau, py::arg("canonical"));

    py::class_<StandardFormResult>(m, "StandardFormResult")
        .def_readonly("canonical", &StandardFormResult::canonical)
        .def_readonly("qubit_map", &StandardFormResult::qubit_map)
        .def_readonly("standard_matrix", &StandardFormResult::standard_matrix)
        .def_readonly("rank", &StandardFormResult::rank);

    m.def("standard_form", &standard_form, py::arg("check_matrix"));

    m.def(
        "encoding_circuit",
        [](const CanonicalCode& c) {
            std::vector<py::tuple> gates;
            for (const Gate& g : encoding_circuit(c)) {
                switch (g.kind) {
                    case GateKind::CX: gates.push_back(py::make_tuple("CX", g.q0, g.q1)); break;
                    case GateKind::CZ: gates.push_back(py::make_tuple("CZ", g.q0, g.q1)); break;
                    case GateKind::S: gates.push_back(py::make_tuple("S", g.q0)); break;
                    case GateKind::H: gates.push_back(py::make_tuple("H", g.q0)); break;
                }
            }
            return gates;
        },
        py::arg("canonical"));

    py::class_<DistanceReport>(m, "DistanceReport")
        .def_readonly("distance", &DistanceReport::distance)
        .def_readonly("nontrivial_logicals", &DistanceReport::nontrivial_logicals);

    m.def("distance_exact", &distance_exact, py::arg("code"), py::arg("cap_n_plus_k") = 26);

    py::class_<LinCombSet>(m, "LinCombSet")
        .def_readonly("t", &LinCombSet::t)
        .def_readonly("coeffs", &LinCombSet::coeffs)
        .def_readonly("rows", &LinCombSet::rows)
        .def_readonly("additions", &LinCombSet::additions)
        .def("__len__", &LinCombSet::size);

    m.def("lincombs_up_to", &lincombs_up_to, py::arg("matrix"), py::arg("t"));

    py::class_<QDistEvolResult>(m, "QDistEvolResult")
        .def_readonly("generators", &QDistEvolResult::generators)
        .def_readonly("min_weight", &QDistEvolResult::min_weight)
        .def_readonly("best_total_probability", &QDistEvolResult::best_total_probability)
        .def_readonly("best_permutation", &QDistEvolResult::best_permutation);

    m.def(
        "qdistevol",
        [](const StabiliserCode& code, const ErrorModel& model, std::size_t population,
           std::size_t pool, std::size_t generations, std::uint64_t seed) {
            QDistEvolParams params{population, pool, generations, seed};
            return qdistevol(code, model, params);
        },
        py::arg("code"), py::arg("model"), py::arg("population") = 0, py::arg("pool") = 0,
        py::arg("generations") = 100, py::arg("seed") = 0);

    py::class_<FitnessReport>(m, "FitnessReport")
        .def_readonly("value", &FitnessReport::value)
        .def_property_readonly("mode",
                               [](const FitnessReport& r) {
                                   return r.mode == FitnessMode::Exact ? "exact" : "approx";
                               })
        .def_readonly("t", &FitnessReport::t)
        .def_readonly("logical_generators", &FitnessReport::logical_generators)
        .def_readonly("terms_summed", &FitnessReport::terms_summed)
        .def_readonly("row_additions", &FitnessReport::row_additions)
        .def("to_json", &FitnessReport::to_json);

    m.def("uer_exact", &uer_exact, py::arg("code"), py::arg("model"),
          py::arg("cap_n_plus_k") = 20);
    m.def(
        "uer_approx",
        [](const StabiliserCode& code, const ErrorModel& model, std::size_t t,
           std::size_t generations, std::uint64_t seed) {
            QDistEvolParams params;
            params.generations = generations;
            params.seed = seed;
            return uer_approx(code, model, t, params);
        },
        py::arg("code"), py::arg("model"), py::arg("t"), py::arg("qdist_generations") = 100,
        py::arg("seed") = 0);

    py::class_<TraceRow>(m, "TraceRow")
        .def_readonly("generation", &TraceRow::generation)
        .def_readonly("best_fitness", &TraceRow::best_fitness)
        .def_readonly("best_so_far", &TraceRow::best_so_far)
        .def_readonly("distance", &TraceRow::distance);

    py::class_<SearchResult>(m, "SearchResult")
        .def_readonly("best", &SearchResult::best)
        .def_readonly("best_fitness", &SearchResult::best_fitness)
        .def_readonly("generation_found", &SearchResult::generation_found)
        .def_readonly("best_distance", &SearchResult::best_distance)
        .def_readonly("trace", &SearchResult::trace)
        .def_readonly("seed", &SearchResult::seed)
        .def_readonly("evaluations", &SearchResult::evaluations)
        .def_readonly("terminated_by", &SearchResult::terminated_by)
        .def("to_json", [](const SearchResult& r) { return search_result_to_json(r); })
        .def("trace_csv", [](const SearchResult& r) { return trace_to_csv(r); });

    m.def(
        "run_search",
        [](const CodeShape& shape, const ErrorModel& model, std::size_t population,
           std::size_t mu, double mu_ratio, std::size_t max_generations,
           const std::string& cross, const std::string& mutation, double mutation_rate,
           const std::string& fitness, std::size_t fitness_t,
           std::optional<std::size_t> target_distance, std::optional<double> target_fitness,
           std::uint64_t seed, std::size_t threads) {
            return run_search(build_config(shape, model, population, mu, mu_ratio,
                                           max_generations, cross, mutation, mutation_rate,
                                           fitness, fitness_t, target_distance, target_fitness,
                                           seed, threads));
        },
        py::arg("shape"), py::arg("model"), py::arg("population") = 0, py::arg("mu") = 0,
        py::arg("mu_ratio") = 20.0, py::arg("max_generations") = 1000, py::arg("cross") = "none",
        py::arg("mutation") = "auto", py::arg("mutation_rate") = 0.05,
        py::arg("fitness") = "auto", py::arg("fitness_t") = 3,
        py::arg("target_distance") = py::none(), py::arg("target_fitness") = py::none(),
        py::arg("seed") = 0, py::arg("threads") = 1);

    m.def(
        "hamming_profile",
        [](const CodeShape& shape, const ErrorModel& model, std::size_t samples,
           std::uint64_t seed) {
            std::vector<py::tuple> records;
            for (const HammingRecord& rec : hamming_fitness_profile(shape, model, samples, seed))
                records.push_back(py::make_tuple(rec.hamming, rec.delta));
            return records;
        },
        py::arg("shape"), py::arg("model"), py::arg("samples"), py::arg("seed"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Invoke the command-line surface; returns (exit_code, stdout, stderr).");

    m.attr("__version__") = "0.1.0";
}
