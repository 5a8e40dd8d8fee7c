"""k-code checker for subspaces of qudit tensor products.

A subspace W is a k-code when every operator acting on at most k tensor
factors, compressed to W, is a multiple of the identity.  Operators are
spanned by matrix units (default) or by generalised Pauli products
X^a Z^b on each factor; both span all linear maps, Hermitian or not.
"""

from __future__ import annotations

import itertools
import json
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .constants import ALGEBRA_TOL, KCODE_MAX_DIM, ORACLE_TOL

#: Absolute floor on the scalarity threshold so that compressions that are
#: numerically zero are not judged against a zero tolerance.
SCALAR_FLOOR = 1e-5


class DimensionTooLarge(RuntimeError):
    """The total Hilbert-space dimension exceeds the desk-scale limit."""


def _check_dim(n: int, d: int) -> int:
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 factors of dimension d >= 1")
    total = d**n
    if total > KCODE_MAX_DIM:
        raise DimensionTooLarge(f"dimension {d}^{n} = {total} exceeds limit {KCODE_MAX_DIM}")
    return total


@dataclass(frozen=True)
class Subspace:
    n: int
    d: int
    basis: np.ndarray  # shape (d**n, dim W), orthonormal columns

    def __post_init__(self):
        total = _check_dim(self.n, self.d)
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 2 or b.shape[0] != total or b.shape[1] < 1:
            raise ValueError(f"basis must have shape ({total}, m) with m >= 1, got {b.shape}")
        gram = b.conj().T @ b
        if np.abs(gram - np.eye(b.shape[1])).max() > ALGEBRA_TOL:
            raise ValueError("basis vectors are not orthonormal")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def from_vectors(cls, n: int, d: int, vectors) -> "Subspace":
        """Orthonormalise arbitrary spanning vectors (rows) into a Subspace."""
        v = np.asarray(vectors, dtype=complex).T
        u, s, _ = np.linalg.svd(v, full_matrices=False)
        rank = int(np.sum(s > ALGEBRA_TOL * max(s.max(), 1.0)))
        return cls(n, d, u[:, :rank])

    def to_json(self) -> str:
        vecs = [[[float(z.real), float(z.imag)] for z in col] for col in self.basis.T]
        return json.dumps({"n": self.n, "d": self.d, "basis": vecs})

    @classmethod
    def from_json(cls, text: str) -> "Subspace":
        obj = json.loads(text)
        try:
            n, d, raw = int(obj["n"]), int(obj["d"]), obj["basis"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"subspace JSON needs n, d, basis: {exc}") from None
        vecs = np.array([[complex(re, im) for re, im in vec] for vec in raw], dtype=complex)
        return cls(n, d, vecs.T)


@dataclass(frozen=True)
class LocalOperatorSpec:
    support: tuple[int, ...]
    operator: np.ndarray
    label: str = ""

    def __post_init__(self):
        op = np.asarray(self.operator, dtype=complex)
        side = round(op.shape[0] ** (1 / max(len(self.support), 1))) if self.support else 1
        if op.shape != (side ** len(self.support),) * 2:
            raise ValueError("operator shape does not match its support")
        object.__setattr__(self, "operator", op)

    def full(self, n: int, d: int) -> np.ndarray:
        """Dense d^n x d^n matrix with the identity on unsupported factors."""
        rest = [i for i in range(n) if i not in self.support]
        big = np.kron(self.operator, np.eye(d ** len(rest)))
        # big acts on factors ordered support + rest; reorder to 0..n-1
        order = list(self.support) + rest
        t = big.reshape((d,) * (2 * n))
        inv = np.argsort(order)
        t = t.transpose(list(inv) + [n + i for i in inv])
        return t.reshape(d**n, d**n)


def _clock_shift(d: int) -> tuple[np.ndarray, np.ndarray]:
    x = np.roll(np.eye(d), 1, axis=0)
    z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return x, z


def _pauli_name(a: int, b: int, d: int) -> str:
    if d == 2:
        return {(0, 0): "I", (0, 1): "Z", (1, 0): "X", (1, 1): "XZ"}[(a, b)]
    return f"X{a}Z{b}"


def _single_ops(d: int, kind: str) -> list[tuple[str, np.ndarray]]:
    if kind == "units":
        out = []
        for i, j in itertools.product(range(d), repeat=2):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            out.append((f"|{i}><{j}|", e))
        return out
    if kind == "pauli":
        x, z = _clock_shift(d)
        return [
            (_pauli_name(a, b, d), np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b))
            for a in range(d)
            for b in range(d)
        ]
    raise ValueError(f"unknown operator basis {kind!r}; use 'units' or 'pauli'")


def _support_ops(support, d, kind) -> Iterator[LocalOperatorSpec]:
    singles = _single_ops(d, kind)
    for combo in itertools.product(singles, repeat=len(support)):
        op = np.ones((1, 1), dtype=complex)
        for _, m in combo:
            op = np.kron(op, m)
        label = " ".join(f"{name}@{q}" for (name, _), q in zip(combo, support))
        yield LocalOperatorSpec(tuple(support), op, label)


def local_operator_basis(n: int, d: int, k: int, kind: str = "units") -> Iterator[LocalOperatorSpec]:
    """Spanning set of operators on exactly k factors, supports in lexicographic order.

    Operators on fewer factors are identity-paddings of these, so they are
    covered by linearity.  k = 0 yields the single scalar operator.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    _single_ops(d, kind)  # validate kind eagerly
    if k == 0:
        yield LocalOperatorSpec((), np.ones((1, 1), dtype=complex), "1")
        return
    for support in itertools.combinations(range(n), k):
        yield from _support_ops(support, d, kind)


def compress(w: Subspace, spec: LocalOperatorSpec) -> np.ndarray:
    """B^dagger O B without forming the full d^n x d^n operator."""
    n, d, m = w.n, w.d, w.dim
    s = list(spec.support)
    if not s:
        return spec.operator[0, 0] * np.eye(m, dtype=complex)
    k = len(s)
    t = w.basis.reshape((d,) * n + (m,))
    op = spec.operator.reshape((d,) * (2 * k))
    # contract operator inputs with the supported axes, outputs land first
    applied = np.tensordot(op, t, axes=(list(range(k, 2 * k)), s))
    rest = [i for i in range(n) if i not in s]
    order = s + rest
    applied = np.moveaxis(applied, list(range(n)), order)
    return w.basis.conj().T @ applied.reshape(d**n, m)


def scalar_deviation(m: np.ndarray) -> tuple[float, float]:
    """(distance of m from its scalar part, norm of m), both spectral norms."""
    dim = m.shape[0]
    dev = np.linalg.norm(m - (np.trace(m) / dim) * np.eye(dim), 2)
    return float(dev), float(np.linalg.norm(m, 2))


def _violates(m: np.ndarray, tol: float) -> bool:
    dev, norm = scalar_deviation(m)
    return dev > tol * max(norm, SCALAR_FLOOR)


@dataclass(frozen=True)
class KCodeResult:
    holds: bool
    witness: LocalOperatorSpec | None

    def __bool__(self) -> bool:
        return self.holds


def _scan_support(w, support, kind, tol, stop_at):
    for spec in _support_ops(support, w.d, kind):
        if stop_at():
            return None
        if _violates(compress(w, spec), tol):
            return spec
    return None


def is_k_code(
    w: Subspace, k: int, tol: float = ORACLE_TOL, kind: str = "units", threads: int | None = None
) -> KCodeResult:
    """Check the k-code condition; on failure return the first violating operator.

    "First" means earliest support in lexicographic order, then earliest
    operator within it, regardless of ``threads``.
    """
    if not 0 <= k <= w.n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={w.n}")
    if k == 0 or w.dim == 1:
        return KCodeResult(True, None)
    supports = list(itertools.combinations(range(w.n), k))
    if not threads or threads <= 1:
        for support in supports:
            hit = _scan_support(w, support, kind, tol, lambda: False)
            if hit is not None:
                return KCodeResult(False, hit)
        return KCodeResult(True, None)

    # workers skip supports that come after an already-found violation
    lock = threading.Lock()
    first = [len(supports)]

    def job(idx):
        if idx > first[0]:
            return None
        hit = _scan_support(w, supports[idx], kind, tol, lambda: idx > first[0])
        if hit is not None:
            with lock:
                first[0] = min(first[0], idx)
        return hit

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(job, range(len(supports))))
    for hit in results:
        if hit is not None:
            return KCodeResult(False, hit)
    return KCodeResult(True, None)


def max_k(w: Subspace, tol: float = ORACLE_TOL, kind: str = "units", threads: int | None = None) -> int:
    """Largest k for which ``w`` is a k-code (verdicts are monotone in k)."""
    best = 0
    for k in range(1, w.n + 1):
        if not is_k_code(w, k, tol, kind, threads):
            break
        best = k
    return best


# -- stabilizer helpers -----------------------------------------------------

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_string(s: str) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for ch in s:
        out = np.kron(out, _PAULI[ch])
    return out


def stabilizer_code(generators: list[str]) -> Subspace:
    """Joint +1 eigenspace of commuting Pauli strings on qubits."""
    n = len(generators[0])
    _check_dim(n, 2)
    mats = [pauli_string(g) for g in generators]
    for a, b in itertools.combinations(mats, 2):
        if np.abs(a @ b - b @ a).max() > ALGEBRA_TOL:
            raise ValueError("stabilizer generators must commute")
    proj = np.eye(2**n, dtype=complex)
    for g in mats:
        proj = proj @ (np.eye(2**n) + g) / 2
    vals, vecs = np.linalg.eigh((proj + proj.conj().T) / 2)
    keep = vals > 0.5
    if not keep.any():
        raise ValueError("stabilizer generators have no common +1 eigenspace")
    return Subspace(n, 2, vecs[:, keep])


def five_qubit_code() -> Subspace:
    gens = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
    return stabilizer_code(gens)


def weight(spec: LocalOperatorSpec, d: int) -> int:
    """Number of factors on which a product operator is not proportional to the identity."""
    k = len(spec.support)
    if k == 0:
        return 0
    t = spec.operator.reshape((d,) * (2 * k))
    w = 0
    for pos in range(k):
        moved = np.moveaxis(t, [pos, k + pos], [0, 1]).reshape(d, d, -1)
        if any(np.abs(moved[:, :, j] - moved[0, 0, j] * np.eye(d)).max() > ALGEBRA_TOL for j in range(moved.shape[2])):
            w += 1
    return w
