#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "fixtures.hpp"
#include "stabevo/cli.hpp"
#include "stabevo/code.hpp"
#include "stabevo/errors.hpp"
#include "stabevo/io.hpp"

using namespace stabevo;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("stabevo_test_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_CASE("genotype hex round trip") {
    const CodeGenotype g = fixtures::five_qubit_genotype();
    const std::string hex = bits_to_hex(g.bits);
    CHECK(hex == "18:9f260");
    CHECK(bits_from_hex(hex) == g.bits);

    CHECK(bits_to_hex(F2Vec(0)) == "0:");
    CHECK(bits_from_hex("0:") == F2Vec(0));

    CHECK_THROWS_AS((void)bits_from_hex("9f260"), data_error);
    CHECK_THROWS_AS((void)bits_from_hex("18:9f26"), data_error);
    CHECK_THROWS_AS((void)bits_from_hex("18:9f261"), data_error);  // nonzero padding
    CHECK_THROWS_AS((void)bits_from_hex("18:9g260"), data_error);
}

TEST_CASE("code files round trip") {
    TempDir dir;
    const StabiliserCode code = fixtures::five_qubit_code();
    const std::string path = dir.file("five.code");
    write_code_file(path, code);

    const StabiliserCode loaded = read_code_file(path);
    CHECK(loaded.S == code.S);
    CHECK(loaded.L == code.L);
    CHECK(loaded.R == code.R);
    CHECK(loaded.shape.n == 5);
    CHECK(loaded.shape.k == 1);
}

TEST_CASE("code files with broken structure are rejected") {
    TempDir dir;
    const std::string path = dir.file("bad.code");
    {
        std::ofstream out(path);
        out << "2 1 1 0 0\n";
        out << "10|00\n";  // X0
        out << "01|00\n";  // X1: anticommutes with nothing, but L must pair
        out << "00|01\n";
    }
    CHECK_THROWS_AS((void)read_code_file(path), data_error);

    {
        std::ofstream out(path);
        out << "2 1 1 0 0\n";
        out << "10|00\n";
        out << "00|10\n";  // Z0 anticommutes with X0
        out << "01|00\n";
        out << "00|01\n";
    }
    CHECK_THROWS_AS((void)read_code_file(path), data_error);

    CHECK_THROWS_AS((void)read_code_file(dir.file("missing.code")), data_error);
}

TEST_CASE("bench tables parse") {
    std::istringstream in("n,k,d\n5,1,3\n8,1,3\n");
    const auto rows = read_bench_table(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 5);
    CHECK(rows[1].best_known == 3);

    std::istringstream bad("5,5,3\n");
    CHECK_THROWS_AS((void)read_bench_table(bad), data_error);
    std::istringstream bad2("5,1\n");
    CHECK_THROWS_AS((void)read_bench_table(bad2), data_error);
}

TEST_CASE("cli usage errors exit with 64") {
    std::string err;
    CHECK(cli({"search", "--n", "5"}, nullptr, &err) == exit_usage);          // missing --k
    CHECK(cli({"search", "--n", "5", "--k", "1", "--bogus"}, nullptr, &err) == exit_usage);
    CHECK(cli({"frobnicate"}, nullptr, &err) == exit_usage);
    CHECK(cli({"example", "--name", "six-qubit"}, nullptr, &err) == exit_usage);
    CHECK(cli({"eval", "--model", "depolarising:0.01"}, nullptr, &err) == exit_usage);
    CHECK(cli({"search", "--n", "3", "--k", "2", "--mu", "9", "--seed", "1"}, nullptr, &err) ==
          exit_usage);  // mu > lambda
}

TEST_CASE("cli example prints the five-qubit walkthrough") {
    std::string out;
    REQUIRE(cli({"example", "--name", "five-qubit"}, &out) == exit_ok);
    CHECK(out.find("10001|11011") != std::string::npos);
    CHECK(out.find("ZZZZZ") != std::string::npos);
    CHECK(out.find("ZIIZX") != std::string::npos);
    CHECK(out.find("1001|1111|0010,011,00,0") != std::string::npos);
    CHECK(out.find("1001|1111|010,11,0") != std::string::npos);
    CHECK(out.find("distance = 3") != std::string::npos);
}

TEST_CASE("cli eval agrees between code files and genotypes") {
    TempDir dir;
    write_code_file(dir.file("five.code"), fixtures::five_qubit_code());

    std::string from_file, from_genotype;
    REQUIRE(cli({"eval", "--code", dir.file("five.code"), "--model", "depolarising:0.01",
                 "--distance"},
                &from_file) == exit_ok);
    REQUIRE(cli({"eval", "--genotype", "18:9f260", "--n", "5", "--k", "1", "--m-diag", "on",
                 "--model", "depolarising:0.01", "--distance"},
                &from_genotype) == exit_ok);
    CHECK(from_file == from_genotype);
    CHECK(from_file.find("P_S = ") != std::string::npos);
    CHECK(from_file.find("mode = exact") != std::string::npos);
    CHECK(from_file.find("distance = 3") != std::string::npos);
}

TEST_CASE("cli eval reports data errors with exit 65") {
    std::string err;
    CHECK(cli({"eval", "--code", "/nonexistent/x.code", "--model", "depolarising:0.01"},
              nullptr, &err) == exit_data);
}

TEST_CASE("cli search writes results and honours the target") {
    TempDir dir;
    std::string out;
    const std::vector<std::string> base = {
        "search", "--n", "4",      "--k",    "1",          "--max-gen", "20",
        "--seed", "3",   "--out",  dir.file("r.json"),     "--trace",   dir.file("t.csv"),
    };
    REQUIRE(cli(base, &out) == exit_ok);
    CHECK(fs::exists(dir.file("r.json")));
    CHECK(fs::exists(dir.file("t.csv")));

    std::ifstream json_in(dir.file("r.json"));
    nlohmann::json parsed = nlohmann::json::parse(json_in);
    CHECK(parsed["config"]["n"] == 4);
    CHECK(parsed["best"].contains("genotype"));

    std::ifstream csv_in(dir.file("t.csv"));
    std::string header;
    std::getline(csv_in, header);
    CHECK(header == "generation,best_fitness,best_so_far,distance");

    // [[4,1]] codes cannot reach distance 3.
    auto miss = base;
    miss.push_back("--target-distance");
    miss.push_back("3");
    CHECK(cli(miss, &out) == exit_target_missed);
}

TEST_CASE("cli search is byte-identical for a fixed seed across thread counts") {
    TempDir dir;
    auto run = [&](const std::string& tag, const std::string& threads) {
        std::string out;
        REQUIRE(cli({"search", "--n", "5", "--k", "1", "--max-gen", "15", "--seed", "7",
                     "--threads", threads, "--out", dir.file(tag + ".json"), "--trace",
                     dir.file(tag + ".csv")},
                    &out) == exit_ok);
        std::ifstream j(dir.file(tag + ".json")), c(dir.file(tag + ".csv"));
        std::stringstream js, cs;
        js << j.rdbuf();
        cs << c.rdbuf();
        return std::pair<std::string, std::string>(js.str(), cs.str());
    };
    const auto one = run("one", "1");
    const auto eight = run("eight", "8");
    CHECK(one.first == eight.first);
    CHECK(one.second == eight.second);
}

TEST_CASE("cli bench runs a tiny sweep") {
    TempDir dir;
    {
        std::ofstream table(dir.file("table.csv"));
        table << "n,k,d\n5,1,3\n";
    }
    std::string out, err;
    REQUIRE(cli({"bench", "--table", dir.file("table.csv"), "--n-max", "5", "--k-max", "1",
                 "--runs", "1", "--max-gen", "400", "--seed", "2", "--out",
                 dir.file("bench.csv")},
                &out, &err) == exit_ok);
    CHECK(out.find("cells = 1") != std::string::npos);
    CHECK(out.find("cells reaching best known = 1") != std::string::npos);
    CHECK(err.find("skipping") != std::string::npos);  // (2..4,k) cells missing

    std::ifstream csv(dir.file("bench.csv"));
    std::string header, row;
    std::getline(csv, header);
    CHECK(header == "n,k,run,found_distance,best_known,delta,generations_used,seed");
    std::getline(csv, row);
    CHECK(row.rfind("5,1,0,3,3,0,", 0) == 0);
}

TEST_CASE("cli bench sweep reaches every certain best-known distance") {
    // Distances that are provably optimal for these parameters.
    TempDir dir;
    {
        std::ofstream table(dir.file("table.csv"));
        table << "4,1,2\n5,1,3\n6,1,3\n";
    }
    std::string out, err;
    REQUIRE(cli({"bench", "--table", dir.file("table.csv"), "--n-max", "6", "--k-max", "1",
                 "--runs", "2", "--max-gen", "1000", "--seed", "17", "--out",
                 dir.file("bench.csv")},
                &out, &err) == exit_ok);
    CHECK(out.find("cells = 3") != std::string::npos);
    CHECK(out.find("cells reaching best known = 3") != std::string::npos);
    CHECK(out.find("runs reaching best known = 6") != std::string::npos);
}

TEST_CASE("cli search with the CSS genotype uses the CSS layout") {
    TempDir dir;
    std::string out;
    REQUIRE(cli({"search", "--n", "12", "--k", "1", "--css", "--max-gen", "2", "--seed", "4",
                 "--out", dir.file("css.json"), "--trace", dir.file("css.csv")},
                &out) == exit_ok);
    std::ifstream in(dir.file("css.json"));
    const nlohmann::json parsed = nlohmann::json::parse(in);
    CHECK(parsed["config"]["css"] == true);
    CHECK(parsed["config"]["lambda"] == 41);  // k(n-k) + rs with r = 5, s = 6
    const F2Vec bits = bits_from_hex(parsed["best"]["genotype"].get<std::string>());
    CHECK(bits.size() == 41);
}

TEST_CASE("cli bench with an empty intersection exits zero") {
    TempDir dir;
    {
        std::ofstream table(dir.file("table.csv"));
        table << "12,1,5\n";
    }
    std::string out;
    REQUIRE(cli({"bench", "--table", dir.file("table.csv"), "--n-max", "4", "--runs", "1",
                 "--seed", "2", "--out", dir.file("bench.csv")},
                &out) == exit_ok);
    CHECK(out.find("cells = 0") != std::string::npos);
}

TEST_CASE("cli reads flat key=value config files") {
    TempDir dir;
    {
        std::ofstream cfg(dir.file("search.cfg"));
        cfg << "# search settings\n";
        cfg << "n=5\n";
        cfg << "k=1\n";
        cfg << "max-gen=10\n";
        cfg << "seed=9\n";
    }
    std::string out;
    REQUIRE(cli({"search", "--config", dir.file("search.cfg"), "--out", dir.file("r.json"),
                 "--trace", dir.file("t.csv")},
                &out) == exit_ok);
    std::ifstream json_in(dir.file("r.json"));
    const nlohmann::json parsed = nlohmann::json::parse(json_in);
    CHECK(parsed["config"]["n"] == 5);
    CHECK(parsed["seed"] == 9);

    // The same flag from both the file and the command line is a usage error.
    CHECK(cli({"search", "--config", dir.file("search.cfg"), "--n", "6", "--out",
               dir.file("r2.json"), "--trace", dir.file("t2.csv")}) == exit_usage);
    CHECK(cli({"search", "--config", dir.file("absent.cfg")}) == exit_data);
}

TEST_CASE("cli hamming writes pair records") {
    TempDir dir;
    std::string out;
    REQUIRE(cli({"hamming", "--n", "4", "--k", "1", "--samples", "2", "--seed", "5", "--out",
                 dir.file("h.csv")},
                &out) == exit_ok);
    CHECK(out.find("pairs = 1") != std::string::npos);
    std::ifstream csv(dir.file("h.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "hamming_distance,delta_uer");
}

TEST_CASE("search results serialise with stable content") {
    SearchConfig cfg;
    cfg.shape = CodeShape::general(4, 1, false);
    cfg.model = ErrorModel::depolarising(0.01);
    cfg.max_generations = 5;
    cfg.seed = 21;
    const SearchResult result = run_search(cfg);
    const nlohmann::json parsed = nlohmann::json::parse(search_result_to_json(result));
    CHECK(parsed["seed"] == 21);
    CHECK(parsed["trace"].size() == result.trace.size());
    CHECK(parsed["best"]["distance"] == result.best_distance);
    const F2Vec bits = bits_from_hex(parsed["best"]["genotype"].get<std::string>());
    CHECK(bits == result.best.bits);
}
