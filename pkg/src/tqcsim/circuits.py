"""Reference state-vector simulator for the qubit circuit model.

Qubit 0 (the "first qubit") is the most significant bit of the basis index.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .constants import BQP_ACCEPT, BQP_REJECT


@dataclass(frozen=True)
class Gate:
    matrix: np.ndarray
    targets: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        k = len(self.targets)
        if k not in (1, 2) or m.shape != (2**k, 2**k):
            raise ValueError(f"gate {self.name!r}: matrix shape {m.shape} does not fit {k} targets")
        if len(set(self.targets)) != k:
            raise ValueError(f"gate {self.name!r}: targets must be distinct")
        if not np.allclose(m.conj().T @ m, np.eye(2**k), atol=1e-12, rtol=0):
            raise ValueError(f"gate {self.name!r} is not unitary")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if any(not 0 <= t < self.n for t in g.targets):
                raise ValueError(f"gate {g.name!r} targets {g.targets} outside {self.n} qubits")


def gate_library() -> dict[str, np.ndarray]:
    """Named one- and two-qubit matrices."""
    s = 1.0 / math.sqrt(2.0)
    return {
        "phase": np.array([[1, 0], [0, cmath.exp(2j * math.pi / 5)]], dtype=complex),
        "cnot": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
        "x": np.array([[0, 1], [1, 0]], dtype=complex),
        "z": np.array([[1, 0], [0, -1]], dtype=complex),
        "h": np.array([[s, s], [s, -s]], dtype=complex),
    }


def make_gate(name: str, targets) -> Gate:
    lib = gate_library()
    if name not in lib:
        raise KeyError(f"unknown gate {name!r}; library has {sorted(lib)}")
    return Gate(lib[name], tuple(targets), name)


def basis_state(n: int, index: int = 0) -> np.ndarray:
    psi = np.zeros(2**n, dtype=complex)
    psi[index] = 1.0
    return psi


def apply_gate(psi: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    k = len(gate.targets)
    t = psi.reshape((2,) * n)
    t = np.moveaxis(t, gate.targets, range(k))
    shape = t.shape
    t = (gate.matrix @ t.reshape(2**k, -1)).reshape(shape)
    t = np.moveaxis(t, range(k), gate.targets)
    return t.reshape(-1)


def run_circuit(c: Circuit, psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (2**c.n,):
        raise ValueError(f"state of length {psi.shape} does not match {c.n} qubits")
    for g in c.gates:
        psi = apply_gate(psi, g, c.n)
    return psi


def prob_first_qubit_one(c: Circuit) -> float:
    psi = run_circuit(c, basis_state(c.n))
    half = 2 ** (c.n - 1)
    return float(np.sum(np.abs(psi[half:]) ** 2))


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Dense 2^n x 2^n matrix of the circuit, built from Kronecker products."""
    total = np.eye(2**c.n, dtype=complex)
    for g in c.gates:
        total = embed(g, c.n) @ total
    return total


def embed(g: Gate, n: int) -> np.ndarray:
    """Full matrix of a gate, via a permutation of the Kronecker product."""
    k = len(g.targets)
    rest = [q for q in range(n) if q not in g.targets]
    full = np.kron(g.matrix, np.eye(2 ** (n - k)))
    order = list(g.targets) + rest  # qubit held by each tensor slot of ``full``
    perm = np.argsort(order)
    t = full.reshape((2,) * (2 * n))
    t = t.transpose(list(perm) + [n + p for p in perm])
    return t.reshape(2**n, 2**n)


def classify(p_one: float) -> str:
    """Accept / reject / undecided against the 2/3 and 1/3 thresholds."""
    if p_one >= BQP_ACCEPT:
        return "accept"
    if p_one <= BQP_REJECT:
        return "reject"
    return "undecided"


def circuit_from_json(doc: dict) -> Circuit:
    """{"n": int, "gates": [{"name": str | "matrix": [[[re, im], ...]], "targets": [...]}]}"""
    gates = []
    for item in doc["gates"]:
        if "matrix" in item:
            m = np.array([[complex(*z) for z in row] for row in item["matrix"]])
            gates.append(Gate(m, tuple(item["targets"]), item.get("name", "custom")))
        else:
            gates.append(make_gate(item["name"], item["targets"]))
    return Circuit(int(doc["n"]), tuple(gates))


def circuit_to_json(c: Circuit) -> dict:
    return {
        "n": c.n,
        "gates": [
            {
                "name": g.name,
                "matrix": [[[z.real, z.imag] for z in row] for row in g.matrix],
                "targets": list(g.targets),
            }
            for g in c.gates
        ],
    }
