import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import unitary_group

from tqcsim.circuits import (
    Circuit,
    Gate,
    apply_gate,
    basis_state,
    circuit_from_json,
    circuit_to_json,
    classify,
    gate_library,
    make_gate,
    prob_first_qubit_one,
    run_circuit,
)


def test_cnot_on_10():
    out = run_circuit(Circuit(2, (make_gate("cnot", (0, 1)),)), basis_state(2, 0b10))
    assert np.allclose(out, basis_state(2, 0b11))


def test_phase_on_1():
    out = run_circuit(Circuit(1, (make_gate("phase", (0,)),)), basis_state(1, 1))
    assert np.allclose(out, cmath.exp(2j * math.pi / 5) * basis_state(1, 1))


def test_empty_circuit():
    psi = basis_state(3, 5)
    assert np.array_equal(run_circuit(Circuit(3), psi), psi)


def test_first_qubit_probability():
    assert prob_first_qubit_one(Circuit(2, (make_gate("x", (0,)),))) == pytest.approx(1.0)
    assert prob_first_qubit_one(Circuit(2, (make_gate("h", (0,)),))) == pytest.approx(0.5)
    assert prob_first_qubit_one(Circuit(2, (make_gate("x", (1,)),))) == pytest.approx(0.0)


def test_library_unitary():
    for m in gate_library().values():
        assert np.allclose(m.conj().T @ m, np.eye(m.shape[0]), atol=1e-12)


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate(np.array([[1, 1], [0, 1]]), (0,))
    with pytest.raises(ValueError):
        Gate(np.eye(4), (1, 1))
    with pytest.raises(ValueError):
        Circuit(2, (make_gate("x", (2,)),))
    with pytest.raises(ValueError):
        run_circuit(Circuit(2), basis_state(3))


def test_classify():
    assert classify(0.9) == "accept"
    assert classify(2 / 3) == "accept"
    assert classify(0.5) == "undecided"
    assert classify(0.1) == "reject"


def test_disjoint_gates_commute():
    rng = np.random.Generator(np.random.PCG64(5))
    g1 = Gate(unitary_group.rvs(2, random_state=rng), (0,))
    g2 = Gate(unitary_group.rvs(4, random_state=rng), (2, 1))
    psi = basis_state(3, 3)
    a = apply_gate(apply_gate(psi, g1, 3), g2, 3)
    b = apply_gate(apply_gate(psi, g2, 3), g1, 3)
    assert np.allclose(a, b, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_norm_preserved(seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    gates = [Gate(unitary_group.rvs(4, random_state=rng), (0, 2)), make_gate("h", (1,)), make_gate("cnot", (2, 0))]
    out = run_circuit(Circuit(3, tuple(gates)), basis_state(3))
    assert np.linalg.norm(out) == pytest.approx(1.0, abs=1e-12)
    assert 0.0 <= prob_first_qubit_one(Circuit(3, tuple(gates))) <= 1.0 + 1e-12


def test_json_roundtrip():
    c = Circuit(2, (make_gate("h", (0,)), make_gate("cnot", (0, 1))))
    back = circuit_from_json(circuit_to_json(c))
    assert back.n == 2
    for g, h in zip(c.gates, back.gates):
        assert np.array_equal(g.matrix, h.matrix) and g.targets == h.targets
    named = circuit_from_json({"n": 1, "gates": [{"name": "x", "targets": [0]}]})
    assert prob_first_qubit_one(named) == 1.0
