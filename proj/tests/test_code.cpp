#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "stabevo/code.hpp"
#include "stabevo/errors.hpp"
#include "stabevo/rng.hpp"

using namespace stabevo;

namespace {

// All non-CSS and CSS shapes with n <= n_max, k < n, default r.
std::vector<CodeShape> small_shapes(std::size_t n_max, bool with_css) {
    std::vector<CodeShape> shapes;
    for (std::size_t n = 2; n <= n_max; ++n) {
        for (std::size_t k = 1; k < n; ++k) {
            shapes.push_back(CodeShape::general(n, k, false));
            shapes.push_back(CodeShape::general(n, k, true));
            if (with_css) shapes.push_back(CodeShape::css_shape(n, k));
        }
    }
    return shapes;
}

}  // namespace

TEST_CASE("genotype lengths match the closed forms") {
    CHECK(genotype_length(CodeShape::general_r(12, 1, 11, false)) == 77);
    CHECK(genotype_length(CodeShape::general_r(5, 1, 4, true)) == 18);
    CHECK(genotype_length(CodeShape::general_r(5, 1, 4, false)) == 14);
    CHECK(genotype_length(CodeShape::css_shape_r(5, 1, 2)) == 8);
    // (n-k)(n+3k-1)/2 for the default r = n-k without the diagonal
    for (std::size_t n = 3; n <= 12; ++n) {
        for (std::size_t k = 1; k < n; ++k) {
            CHECK(genotype_length(CodeShape::general(n, k, false)) ==
                  (n - k) * (n + 3 * k - 1) / 2);
        }
    }
}

TEST_CASE("shape validation") {
    CHECK_THROWS_AS(CodeShape::general_r(5, 5, 0, false), std::invalid_argument);
    CHECK_THROWS_AS(CodeShape::general_r(5, 0, 4, false), std::invalid_argument);
    CHECK_THROWS_AS(CodeShape::general_r(5, 1, 5, false), std::invalid_argument);
    CHECK(CodeShape::css_shape(5, 1).r == 2);
    CHECK(CodeShape::css_shape(7, 1).r == 3);
}

TEST_CASE("decoding the five-qubit genotype reproduces the canonical blocks") {
    const CanonicalCode c = decode_genotype(fixtures::five_qubit_genotype());

    F2Matrix expected_c(4, 1);
    expected_c.set(0, 0, true);
    expected_c.set(3, 0, true);
    CHECK(c.C == expected_c);

    F2Matrix expected_a(4, 1);
    for (std::size_t i = 0; i < 4; ++i) expected_a.set(i, 0, true);
    CHECK(c.A == expected_a);

    const std::vector<std::string> m_rows = {"0010", "0011", "1100", "0100"};
    CHECK(c.M == F2Matrix::from_rows(m_rows));
}

TEST_CASE("the all-zero genotype decodes to zero matrices") {
    const CodeShape shape = CodeShape::general_r(6, 2, 4, true);
    const CanonicalCode c = decode_genotype(CodeGenotype::zero(shape));
    CHECK(c.C.is_zero());
    CHECK(c.A.is_zero());
    CHECK(c.M.is_zero());
}

TEST_CASE("encode is the inverse of decode") {
    RngStream rng(0xc0de01);
    const auto shapes = small_shapes(8, true);
    int checked = 0;
    while (checked < 1000) {
        for (const CodeShape& shape : shapes) {
            const CodeGenotype g = CodeGenotype::random(shape, rng);
            CHECK(encode_genotype(decode_genotype(g)) == g);
            ++checked;
        }
    }
}

TEST_CASE("build_code reproduces the five-qubit standard form") {
    const StabiliserCode code = build_code(fixtures::five_qubit_canonical());
    const std::vector<std::string> expected_s = {
        "10001|11011", "01001|00110", "00101|11000", "00011|10111"};
    CHECK(code.S == F2Matrix::from_rows(expected_s));

    CHECK(PauliOp::from_vec(code.L.row_vec(0)).to_string() == "ZZZZZ");
    CHECK(PauliOp::from_vec(code.L.row_vec(1)).to_string() == "ZIIZX");
    CHECK_FALSE(oracle::check_code_invariants(code).has_value());
}

TEST_CASE("zero canonical form gives bare X and Z checks") {
    // n=3, k=1, r=2, s=0: checks X0, X1; logical Z on the last qubit.
    const CanonicalCode c = decode_genotype(CodeGenotype::zero(CodeShape::general_r(3, 1, 2, false)));
    const StabiliserCode code = build_code(c);
    CHECK(PauliOp::from_vec(code.S.row_vec(0)).to_string() == "XII");
    CHECK(PauliOp::from_vec(code.S.row_vec(1)).to_string() == "IXI");
    CHECK(PauliOp::from_vec(code.L.row_vec(0)).to_string() == "IIZ");
    CHECK(PauliOp::from_vec(code.L.row_vec(1)).to_string() == "IIX");
    CHECK_FALSE(oracle::check_code_invariants(code).has_value());
}

TEST_CASE("every random genotype builds a valid code") {
    RngStream rng(0xc0de02);
    const auto shapes = small_shapes(10, false);
    int built = 0;
    while (built < 500) {
        for (const CodeShape& shape : shapes) {
            const StabiliserCode code = build_code(CodeGenotype::random(shape, rng));
            const auto violation = oracle::check_code_invariants(code);
            if (violation) FAIL("invariant violated: ", *violation);
            ++built;
        }
    }
}

TEST_CASE("standard_form of the five-qubit generators") {
    const StandardFormResult sf = standard_form(fixtures::five_qubit_raw());
    CHECK(sf.rank == 4);
    CHECK(sf.canonical.shape.k == 1);
    CHECK(sf.canonical.shape.r == 4);
    CHECK(sf.canonical.shape.s() == 0);
    CHECK(sf.qubit_map == std::vector<std::size_t>{0, 1, 2, 3, 4});

    F2Matrix expected_a(4, 1);
    for (std::size_t i = 0; i < 4; ++i) expected_a.set(i, 0, true);
    CHECK(sf.canonical.A == expected_a);

    F2Matrix expected_c(4, 1);
    expected_c.set(0, 0, true);
    expected_c.set(3, 0, true);
    CHECK(sf.canonical.C == expected_c);

    const std::vector<std::string> m_rows = {"0010", "0011", "1100", "0100"};
    CHECK(sf.canonical.M == F2Matrix::from_rows(m_rows));
}

TEST_CASE("standard_form is a fixed point on built codes") {
    RngStream rng(0xc0de03);
    for (int trial = 0; trial < 50; ++trial) {
        const CodeShape shape = CodeShape::general(6, 2, true);
        const CanonicalCode c = decode_genotype(CodeGenotype::random(shape, rng));
        const StabiliserCode code = build_code(c);
        const StandardFormResult sf = standard_form(code.S);
        CHECK(sf.canonical.C == c.C);
        CHECK(sf.canonical.A == c.A);
        CHECK(sf.canonical.M == c.M);
        CHECK(sf.standard_matrix == code.S);
        bool identity = true;
        for (std::size_t i = 0; i < sf.qubit_map.size(); ++i)
            identity = identity && sf.qubit_map[i] == i;
        CHECK(identity);
    }
}

TEST_CASE("standard_form rejects anticommuting rows") {
    F2Matrix bad(2, 2);
    bad.set(0, 0, true);  // X
    bad.set(1, 1, true);  // Z
    CHECK_THROWS_WITH_AS((void)standard_form(bad), doctest::Contains("0 and 1"), data_error);
}

TEST_CASE("standard_form round-trips the row span of random codes") {
    RngStream rng(0xc0de04);
    const auto shapes = small_shapes(8, false);
    int done = 0;
    while (done < 200) {
        for (const CodeShape& shape : shapes) {
            const StabiliserCode code = build_code(CodeGenotype::random(shape, rng));
            // Scramble rows to exercise the reduction: add row i+1 into row i.
            F2Matrix scrambled = code.S;
            for (std::size_t i = 0; i + 1 < scrambled.rows(); ++i) scrambled.xor_rows(i, i + 1);
            const StandardFormResult sf = standard_form(scrambled);
            const StabiliserCode rebuilt = build_code(sf.canonical);
            CHECK(spans_equal(unpermute_qubits(rebuilt.S, sf.qubit_map), code.S));
            ++done;
        }
    }
}

TEST_CASE("css zero genotype yields X and Z checks") {
    const CodeShape shape = CodeShape::css_shape_r(4, 1, 1);
    const StabiliserCode code = css_decode(CodeGenotype::zero(shape));
    CHECK(PauliOp::from_vec(code.S.row_vec(0)).to_string() == "XIII");
    CHECK(PauliOp::from_vec(code.S.row_vec(1)).to_string() == "IZII");
    CHECK(PauliOp::from_vec(code.S.row_vec(2)).to_string() == "IIZI");
    CHECK_FALSE(oracle::check_code_invariants(code).has_value());
}

TEST_CASE("css_decode requires a CSS shape") {
    const CodeShape shape = CodeShape::general(4, 1, false);
    CHECK_THROWS_AS((void)css_decode(CodeGenotype::zero(shape)), std::invalid_argument);
}

TEST_CASE("random CSS genotypes give pure X or Z checks") {
    RngStream rng(0xc0de05);
    const auto all = small_shapes(10, true);
    std::vector<CodeShape> css_shapes;
    for (const CodeShape& s : all)
        if (s.css) css_shapes.push_back(s);
    int built = 0;
    while (built < 500) {
        for (const CodeShape& shape : css_shapes) {
            const StabiliserCode code = css_decode(CodeGenotype::random(shape, rng));
            const auto violation = oracle::check_code_invariants(code);
            if (violation) FAIL("invariant violated: ", *violation);
            ++built;
        }
    }
}

TEST_CASE("a non-CSS genotype with zero C1 and M blocks reduces to CSS rows") {
    // Choosing r=2 for [[5,1]] and zeroing the C1/M bits must yield rows
    // that are X-only or Z-only.
    const CodeShape shape = CodeShape::general_r(5, 1, 2, false);
    RngStream rng(0xc0de06);
    for (int trial = 0; trial < 20; ++trial) {
        CodeGenotype g = CodeGenotype::random(shape, rng);
        CanonicalCode c = decode_genotype(g);
        for (std::size_t i = 0; i < c.shape.r; ++i) {
            for (std::size_t j = 0; j < c.shape.r; ++j) c.M.set(i, j, false);
            for (std::size_t j = 0; j < c.shape.k; ++j) c.C.set(i, j, false);
        }
        const StabiliserCode code = build_code(c);
        for (std::size_t i = 0; i < code.S.rows(); ++i) {
            bool has_x = false, has_z = false;
            for (std::size_t q = 0; q < 5; ++q) {
                has_x = has_x || code.S.get(i, q);
                has_z = has_z || code.S.get(i, 5 + q);
            }
            CHECK_FALSE((has_x && has_z));
        }
    }
}

TEST_CASE("encoding circuit of the zero canonical form is Hadamards only") {
    const CanonicalCode c = decode_genotype(CodeGenotype::zero(CodeShape::general_r(5, 2, 2, true)));
    const std::vector<Gate> gates = encoding_circuit(c);
    REQUIRE(gates.size() == 3);  // qubits 2, 3, 4
    for (std::size_t i = 0; i < gates.size(); ++i) {
        CHECK(gates[i].kind == GateKind::H);
        CHECK(gates[i].q0 == 2 + i);
    }
}

TEST_CASE("encoding circuit of the five-qubit code") {
    const std::vector<Gate> gates = encoding_circuit(fixtures::five_qubit_canonical());
    auto count = [&](GateKind kind) {
        std::size_t c = 0;
        for (const Gate& g : gates) c += g.kind == kind;
        return c;
    };
    CHECK(count(GateKind::CX) == 2);
    CHECK(count(GateKind::S) == 0);  // M has an empty diagonal
    CHECK(count(GateKind::CZ) == 7);  // three pairs from M plus four from A
    CHECK(count(GateKind::H) == 1);

    auto has = [&](Gate g) {
        for (const Gate& other : gates)
            if (other == g) return true;
        return false;
    };
    CHECK(has({GateKind::CX, 0, 4}));
    CHECK(has({GateKind::CX, 3, 4}));
    CHECK(has({GateKind::CZ, 0, 2}));
    CHECK(has({GateKind::CZ, 1, 2}));
    CHECK(has({GateKind::CZ, 1, 3}));
    CHECK(has({GateKind::CZ, 0, 4}));
    CHECK(has({GateKind::CZ, 3, 4}));
    CHECK(has({GateKind::H, 4, 0}));
}

TEST_CASE("circuit symplectic matrix equals the tableau and preserves the form") {
    RngStream rng(0xc0de07);
    const auto shapes = small_shapes(10, false);
    int done = 0;
    while (done < 100) {
        for (const CodeShape& shape : shapes) {
            const CanonicalCode c = decode_genotype(CodeGenotype::random(shape, rng));
            const F2Matrix tau = circuit_symplectic(encoding_circuit(c), shape.n);
            CHECK(tau == tableau(c));
            const F2Matrix omega = symplectic_form(shape.n);
            CHECK(tau.multiply(omega).multiply(tau.transposed()) == omega);
            ++done;
        }
    }
}

TEST_CASE("distance of the five-qubit code is 3") {
    const DistanceReport report = distance_exact(fixtures::five_qubit_code());
    CHECK(report.distance == 3);
    CHECK(report.nontrivial_logicals == 48);
}

TEST_CASE("a bare [[2,1]] code has a weight-1 logical") {
    const StabiliserCode code = build_code(CodeGenotype::zero(CodeShape::general(2, 1, false)));
    CHECK(distance_exact(code).distance == 1);
}

TEST_CASE("logical operator counts match 2^(n-k) (4^k - 1)") {
    RngStream rng(0xc0de08);
    for (const CodeShape& shape :
         {CodeShape::general(5, 1, false), CodeShape::general(6, 2, false),
          CodeShape::general(4, 3, false), CodeShape::css_shape(7, 1)}) {
        const StabiliserCode code = build_code(CodeGenotype::random(shape, rng));
        const std::uint64_t expected =
            (std::uint64_t(1) << (shape.n - shape.k)) * ((std::uint64_t(1) << (2 * shape.k)) - 1);
        CHECK(distance_exact(code).nontrivial_logicals == expected);
    }
}

TEST_CASE("distance_exact refuses oversized codes") {
    const StabiliserCode code = build_code(CodeGenotype::zero(CodeShape::general(8, 1, false)));
    CHECK_THROWS_AS((void)distance_exact(code, 8), resource_limit_error);
}

TEST_CASE("five-qubit logical count verified against brute force") {
    const StabiliserCode code = fixtures::five_qubit_code();
    const oracle::IntMatrix s_rows = oracle::to_int_matrix(code.S);
    const auto span = oracle::enumerate_span(s_rows, 10);
    std::size_t count = 0;
    std::vector<std::size_t> digits(5, 0);
    while (true) {
        oracle::IntRow op(10, 0);
        for (std::size_t q = 0; q < 5; ++q) {
            if (digits[q] == 1 || digits[q] == 2) op[q] = 1;
            if (digits[q] == 2 || digits[q] == 3) op[5 + q] = 1;
        }
        bool commutes = true;
        for (const auto& row : s_rows)
            if (oracle::naive_symplectic(row, op)) commutes = false;
        if (commutes && span.find(op) == span.end()) ++count;
        std::size_t q = 0;
        while (q < 5 && digits[q] == 3) digits[q++] = 0;
        if (q == 5) break;
        ++digits[q];
    }
    CHECK(count == 48);
}
