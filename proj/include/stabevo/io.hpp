#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "stabevo/code.hpp"
#include "stabevo/evolve.hpp"
#include "stabevo/f2.hpp"

namespace stabevo {

// Hex form of a bit string with explicit length, e.g. "18:9f260". Bit 0 is
// the most significant bit of the first digit; pad bits must be zero.
std::string bits_to_hex(const F2Vec& bits);
F2Vec bits_from_hex(std::string_view text);

// Code interchange format: header "n k r s css", then the rows of S, L and R
// as '0'/'1' strings with '|' between the X and Z halves.
void write_code(std::ostream& out, const StabiliserCode& code);
StabiliserCode read_code(std::istream& in);
StabiliserCode read_code_file(const std::string& path);
void write_code_file(const std::string& path, const StabiliserCode& code);

// Search result as a JSON document (schema stable across runs and thread
// counts for a fixed seed).
std::string search_result_to_json(const SearchResult& result);

// Per-generation trace: "generation,best_fitness,best_so_far,distance".
std::string trace_to_csv(const SearchResult& result);

struct BenchRow {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t best_known = 0;
};

// Best-known-distance table: CSV lines "n,k,d" (a header line is allowed).
std::vector<BenchRow> read_bench_table(std::istream& in);
std::vector<BenchRow> read_bench_table_file(const std::string& path);

}  // namespace stabevo
