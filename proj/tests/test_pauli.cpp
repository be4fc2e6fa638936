#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "stabevo/pauli.hpp"

using namespace stabevo;

TEST_CASE("weight counts non-identity factors") {
    CHECK(PauliOp::from_string("IIIII").weight() == 0);
    CHECK(PauliOp::from_string("ZIIZX").weight() == 3);
    CHECK(PauliOp::from_string("IXZZX").weight() == 4);
    CHECK(weight(PauliOp::from_string("YY")) == 2);
}

TEST_CASE("weight is zero only for the identity") {
    for (const char* s : {"I", "X", "Y", "Z"}) {
        const PauliOp p = PauliOp::from_string(s);
        CHECK((p.weight() == 0) == p.is_identity());
    }
}

TEST_CASE("pauli string round trip") {
    const PauliOp p = PauliOp::from_string("XYZI");
    CHECK(p.to_string() == "XYZI");
    CHECK(PauliOp::from_vec(p.to_vec()) == p);
    CHECK_THROWS_AS(PauliOp::from_string("XQ"), std::invalid_argument);
}

TEST_CASE("depolarising model construction") {
    const ErrorModel noiseless = ErrorModel::depolarising(0.0);
    CHECK(noiseless.p_i() == 1.0);
    CHECK(noiseless.p_x() == 0.0);

    const ErrorModel m = ErrorModel::depolarising(0.01);
    CHECK(m.p_i() == doctest::Approx(0.97).epsilon(1e-15));
    CHECK(m.p_x() == 0.01);
    CHECK(m.p_y() == 0.01);
    CHECK(m.p_z() == 0.01);

    const ErrorModel boundary = ErrorModel::depolarising(1.0 / 3.0);
    CHECK(boundary.p_i() == doctest::Approx(0.0).epsilon(1e-15));

    CHECK_THROWS_AS(ErrorModel::depolarising(0.4), std::invalid_argument);
    CHECK_THROWS_AS(ErrorModel::depolarising(-0.1), std::invalid_argument);
}

TEST_CASE("model literals parse and print") {
    const ErrorModel dep = ErrorModel::parse("depolarising:0.01");
    CHECK(dep == ErrorModel::depolarising(0.01));
    CHECK(dep.is_depolarising());

    const ErrorModel biased = ErrorModel::parse("pauli:0.01,0.01,0.001");
    CHECK(biased.p_z() == 0.001);
    CHECK(biased.p_i() == doctest::Approx(0.979).epsilon(1e-15));
    CHECK_FALSE(biased.is_depolarising());

    CHECK_THROWS_AS(ErrorModel::parse("gauss:0.1"), std::invalid_argument);
    CHECK_THROWS_AS(ErrorModel::parse("pauli:0.1,0.1"), std::invalid_argument);
    CHECK_THROWS_AS(ErrorModel::parse("depolarising:zzz"), std::invalid_argument);
}

TEST_CASE("op_probability for a weight-3 depolarising error") {
    const ErrorModel m = ErrorModel::depolarising(0.01);
    const PauliOp p = PauliOp::from_string("XYZII");
    // p^3 (1-3p)^2
    CHECK(m.op_probability(p) == doctest::Approx(9.409e-7).epsilon(1e-12));
}

TEST_CASE("op_probability of the identity is p_i^n") {
    const ErrorModel m = ErrorModel::pauli(0.02, 0.01, 0.005);
    const PauliOp id = PauliOp::from_string("IIII");
    CHECK(m.op_probability(id) == doctest::Approx(std::pow(m.p_i(), 4)).epsilon(1e-14));
}

TEST_CASE("op_probability of ZZ under the biased model") {
    const ErrorModel m = ErrorModel::pauli(0.01, 0.01, 0.001);
    CHECK(m.op_probability(PauliOp::from_string("ZZ")) == doctest::Approx(1e-6).epsilon(1e-12));
}

TEST_CASE("zero-probability components suppress operators") {
    const ErrorModel m = ErrorModel::pauli(0.1, 0.0, 0.05);
    CHECK(m.op_probability(PauliOp::from_string("Y")) == 0.0);
    CHECK(m.op_probability(PauliOp::from_string("X")) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("probabilities over all operators sum to one") {
    const ErrorModel m = ErrorModel::pauli(0.02, 0.01, 0.005);
    for (std::size_t n = 1; n <= 6; ++n) {
        double total = 0.0;
        std::vector<std::size_t> digits(n, 0);
        while (true) {
            PauliOp p(n);
            for (std::size_t q = 0; q < n; ++q) {
                if (digits[q] == 1 || digits[q] == 2) p.x.set(q, true);
                if (digits[q] == 2 || digits[q] == 3) p.z.set(q, true);
            }
            total += m.op_probability(p);
            std::size_t q = 0;
            while (q < n && digits[q] == 3) digits[q++] = 0;
            if (q == n) break;
            ++digits[q];
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("depolarising probability depends only on the weight") {
    const ErrorModel m = ErrorModel::depolarising(0.03);
    const double a = m.op_probability(PauliOp::from_string("XXIII"));
    const double b = m.op_probability(PauliOp::from_string("IZYII"));
    const double c = m.op_probability(PauliOp::from_string("IIIZY"));
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
    CHECK(b == doctest::Approx(c).epsilon(1e-14));
}

TEST_CASE("model invariants are enforced") {
    CHECK_THROWS_AS(ErrorModel(0.5, 0.5, 0.5, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(ErrorModel(0.5, 0.3, 0.1, 0.2), std::invalid_argument);
}
