"""Smoke tests for the python bindings."""

import json

import pytest

import stabevo


FIVE_QUBIT_STABILISERS = [
    "01001|00110",
    "10100|00011",
    "01010|10001",
    "00101|11000",
    "10010|01100",
]


def five_qubit_code():
    sf = stabevo.standard_form(stabevo.F2Matrix(FIVE_QUBIT_STABILISERS))
    return stabevo.build_code(sf.canonical)


def test_rref_rank():
    m = stabevo.F2Matrix(FIVE_QUBIT_STABILISERS)
    assert stabevo.rref(m).rank == 4
    assert stabevo.in_span(m, "0" * 10)


def test_symplectic_product():
    assert stabevo.symplectic_product("1|0", "0|1") == 1
    assert stabevo.symplectic_product("1|0", "1|0") == 0


def test_pauli_and_model():
    op = stabevo.PauliOp("ZIIZX")
    assert op.weight() == 3
    model = stabevo.ErrorModel.depolarising(0.01)
    assert model.op_probability(stabevo.PauliOp("XYZII")) == pytest.approx(9.409e-7)
    with pytest.raises(ValueError):
        stabevo.ErrorModel.depolarising(0.5)


def test_genotype_roundtrip():
    shape = stabevo.CodeShape.general_r(5, 1, 4, include_m_diagonal=True)
    assert stabevo.genotype_length(shape) == 18
    g = stabevo.CodeGenotype(shape, "1001" "1111" "0010" "011" "00" "0")
    assert g.to_hex() == "18:9f260"
    assert stabevo.CodeGenotype.from_hex(shape, "18:9f260") == g
    canonical = stabevo.decode_genotype(g)
    assert stabevo.encode_genotype(canonical) == g
    assert canonical.M.to_rows() == ["0010", "0011", "1100", "0100"]


def test_build_and_distance():
    code = five_qubit_code()
    report = stabevo.distance_exact(code)
    assert report.distance == 3
    assert report.nontrivial_logicals == 48


def test_uer_exact_and_approx():
    code = five_qubit_code()
    model = stabevo.ErrorModel.depolarising(0.01)
    exact = stabevo.uer_exact(code, model)
    assert exact.value == pytest.approx(2.82288e-05, rel=1e-9)
    approx = stabevo.uer_approx(code, model, t=3)
    assert approx.value == exact.value
    assert json.loads(exact.to_json())["mode"] == "exact"


def test_css_decode():
    shape = stabevo.CodeShape.css(7, 1)
    g = stabevo.CodeGenotype.random(shape, seed=5)
    code = stabevo.css_decode(g)
    for row in code.S.to_rows():
        x, z = row[:7], row[7:]
        assert x == "0" * 7 or z == "0" * 7


def test_encoding_circuit():
    sf = stabevo.standard_form(stabevo.F2Matrix(FIVE_QUBIT_STABILISERS))
    gates = stabevo.encoding_circuit(sf.canonical)
    assert ("CX", 0, 4) in gates
    assert ("H", 4) in gates


def test_qdistevol_bound():
    code = five_qubit_code()
    result = stabevo.qdistevol(code, stabevo.ErrorModel.depolarising(0.01),
                               generations=50, seed=1)
    assert result.min_weight == 3
    assert result.generators.rows == 2


def test_run_search_deterministic():
    shape = stabevo.CodeShape.general(5, 1)
    model = stabevo.ErrorModel.depolarising(0.01)
    a = stabevo.run_search(shape, model, max_generations=100, seed=7, target_distance=3)
    b = stabevo.run_search(shape, model, max_generations=100, seed=7, target_distance=3,
                           threads=4)
    assert a.best_distance == 3
    assert a.to_json() == b.to_json()
    assert a.trace[0].generation == 0


def test_resource_limit_error():
    shape = stabevo.CodeShape.general(8, 1)
    code = stabevo.build_code(stabevo.CodeGenotype.random(shape, seed=1))
    with pytest.raises(stabevo.ResourceLimitError):
        stabevo.uer_exact(code, stabevo.ErrorModel.depolarising(0.01), cap_n_plus_k=4)


def test_cli_surface():
    status, out, _ = stabevo.run_cli(["example", "--name", "five-qubit"])
    assert status == 0
    assert "1001|1111|0010,011,00,0" in out
    status, _, _ = stabevo.run_cli(["example", "--name", "bogus"])
    assert status == 64
