"""Compile unitaries on the computational subspace into braid words.

Search is exhaustive over freely reduced words in the generators that act
inside the target's batches.  Ties in distance (to ``DISTANCE_QUANTUM``)
are broken by shorter word, then lexicographically in the generator order
``i1, -i1, i2, -i2, ...``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _accel
from .braidrep import braid_generator, represent_word
from .computer import computational_paths
from .anyons import path_index
from .links import BraidWord

DISTANCE_QUANTUM = 1e-9
DEFAULT_LEAKAGE_TOL = 1e-2
UNITARY_TOL = 1e-12

#: Largest base distance handed to Solovay-Kitaev refinement.  Set to the
#: measured covering radius of the default depth-7 net (about 0.30 over 300
#: Haar samples); farther out the first commutator step is not guaranteed
#: to contract.
SK_NET_THRESHOLD = 0.30


class CompilationError(RuntimeError):
    def __init__(self, message: str, best: "CompilationResult | None" = None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class GateTarget:
    matrix: np.ndarray
    scope: tuple[int, ...] = (1,)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        scope = tuple(sorted(int(b) for b in self.scope))
        if len(scope) not in (1, 2) or scope[0] < 1:
            raise ValueError("scope must name one batch or two adjacent batches (1-based)")
        if len(scope) == 2 and scope[1] != scope[0] + 1:
            raise ValueError("two-batch targets must use adjacent batches")
        dim = 2 ** len(scope)
        if m.shape != (dim, dim):
            raise ValueError(f"target must be {dim}x{dim} for scope {scope}")
        if not np.allclose(m.conj().T @ m, np.eye(dim), atol=UNITARY_TOL, rtol=0):
            raise ValueError("target is not unitary")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "scope", scope)

    @property
    def generators(self) -> list[int]:
        lo = 4 * self.scope[0] - 3
        return list(range(lo, lo + 4 * len(self.scope) - 1))

    @property
    def strands(self) -> int:
        return 4 * self.scope[-1]


@dataclass(frozen=True)
class CompilationResult:
    word: BraidWord
    distance: float
    leakage_bound: float
    depth_searched: int

    def sidecar(self) -> dict:
        return {
            "distance": self.distance,
            "leakage_bound": self.leakage_bound,
            "depth_searched": self.depth_searched,
        }


def gate_distance(u: np.ndarray, v: np.ndarray) -> float:
    """min over unit phases z of the operator norm of u - z v."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape or u.shape[0] != u.shape[1]:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    eye = np.eye(u.shape[0])

    def is_unitary(m):
        return np.allclose(m.conj().T @ m, eye, atol=UNITARY_TOL, rtol=0)

    if not is_unitary(v):
        if not is_unitary(u):
            raise ValueError("at least one argument must be unitary")
        u, v = v, u
    k = v.conj().T @ u
    return float(_accel.phase_min_norm(np.ascontiguousarray(k), is_unitary(u)))


def _letter_table(gens: list[int]) -> list[int]:
    return [s * g for g in gens for s in (1, -1)]


def _local(target: GateTarget):
    """Local strand count, generator shift and computational indices."""
    n_local = 4 * len(target.scope)
    shift = 4 * (target.scope[0] - 1)
    index = path_index(n_local, 0)
    cols = [index[p] for p in computational_paths(n_local).values()]
    return n_local, shift, np.array(cols, dtype=np.int64)


def word_image(word, target: GateTarget) -> np.ndarray:
    """Restriction of the represented word to the target's computational block."""
    n_local, shift, cols = _local(target)
    local = []
    for x in word:
        g = abs(x) - shift
        if not 1 <= g <= n_local - 1:
            raise ValueError(f"letter {x} acts outside batches {target.scope}")
        local.append(g if x > 0 else -g)
    full = represent_word(local, n_local, 0)
    return full[np.ix_(cols, cols)]


def batch_image(word, batch: int = 1) -> np.ndarray:
    """2x2 image of a single-batch word in the {0, 2} basis."""
    return word_image(word, GateTarget(np.eye(2), (batch,)))


def block_leakage(block: np.ndarray) -> float:
    return float(_accel.leakage_of(np.ascontiguousarray(block)))


def compile(target: GateTarget, max_depth: int = 8, leakage_tol: float = DEFAULT_LEAKAGE_TOL) -> CompilationResult:
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    if leakage_tol < 0:
        raise ValueError("leakage_tol must be non-negative")
    n_local, shift, cols = _local(target)
    table = _letter_table(list(range(1, n_local)))
    gens = np.stack([np.asarray(braid_generator(x, n_local, 0)) for x in table]).astype(np.complex128)
    inverse = np.array([k ^ 1 for k in range(len(table))], dtype=np.int64)
    dim = gens.shape[1]
    start = np.ascontiguousarray(np.eye(dim, dtype=np.complex128)[:, cols])
    target_h = np.ascontiguousarray(target.matrix.conj().T)
    exact_block = len(cols) == dim

    empty_d = gate_distance(np.eye(len(cols)), target.matrix)
    candidates = [(math.floor(empty_d / DISTANCE_QUANTUM + 0.5), 0, (), empty_d, 0.0)]
    qd, dist, leak, length, words = _accel.search_words(
        gens, inverse, start, cols, target_h, max_depth, leakage_tol, exact_block, UNITARY_TOL, DISTANCE_QUANTUM
    )
    for f in range(len(table)):
        if np.isfinite(dist[f]):
            w = tuple(int(x) for x in words[f, : length[f]])
            candidates.append((int(qd[f]), int(length[f]), w, float(dist[f]), float(leak[f])))
    if not candidates:
        raise CompilationError("no word within the leakage tolerance")
    _, _, best, d, lk = min(candidates, key=lambda c: (c[0], c[1], c[2]))
    letters = [table[k] + (shift if table[k] > 0 else -shift) for k in best]
    return CompilationResult(BraidWord(letters, target.strands), d, lk, max_depth)


def verify_result(result: CompilationResult, target: GateTarget) -> tuple[float, float]:
    """Recompute (distance, leakage) of a result from scratch."""
    block = word_image(result.word, target)
    return gate_distance(block, target.matrix), block_leakage(block)


# -- Solovay-Kitaev refinement ----------------------------------------------


def _to_su2(u: np.ndarray) -> np.ndarray:
    return u / np.sqrt(np.linalg.det(u))


def _quat(u: np.ndarray) -> np.ndarray:
    """SU(2) matrix -> unit 4-vector; Euclidean distance tracks Frobenius distance."""
    q = np.array([u[0, 0].real, u[0, 0].imag, u[1, 0].real, u[1, 0].imag])
    return q / np.linalg.norm(q)


def _from_axis_angle(axis: np.ndarray, theta: float) -> np.ndarray:
    x, y, z = axis
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c - 1j * s * z, -1j * s * x - s * y], [-1j * s * x + s * y, c + 1j * s * z]])


def _axis_angle(u: np.ndarray) -> tuple[np.ndarray, float]:
    u = _to_su2(u)
    c = max(-1.0, min(1.0, (u[0, 0] + u[1, 1]).real / 2))
    theta = 2 * math.acos(c)
    s = math.sin(theta / 2)
    if abs(s) < 1e-15:
        return np.array([0.0, 0.0, 1.0]), 0.0
    x = -(u[0, 1] + u[1, 0]).imag / (2 * s)
    y = (u[1, 0] - u[0, 1]).real / (2 * s)
    z = -(u[0, 0] - u[1, 1]).imag / (2 * s)
    axis = np.array([x, y, z])
    return axis / np.linalg.norm(axis), theta


def _group_commutator(delta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Balanced V, W with V W V^-1 W^-1 = delta (in SU(2))."""
    axis, theta = _axis_angle(delta)
    st = math.sin(theta / 2)
    # sin(theta/2) = 2 sin^2(phi/2) sqrt(1 - sin^4(phi/2))
    x = math.sqrt(max(0.0, (1 - math.sqrt(max(0.0, 1 - st * st))) / 2))
    phi = 2 * math.asin(math.sqrt(x))
    v = _from_axis_angle(np.array([1.0, 0.0, 0.0]), phi)
    w = _from_axis_angle(np.array([0.0, 1.0, 0.0]), phi)
    comm = v @ w @ v.conj().T @ w.conj().T
    c_axis, _ = _axis_angle(comm)
    s = _rotation_between(c_axis, axis)
    return s @ v @ s.conj().T, s @ w @ s.conj().T


def _rotation_between(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """SU(2) element rotating Bloch axis ``a`` onto ``b``."""
    cross = np.cross(a, b)
    dot = float(np.clip(np.dot(a, b), -1.0, 1.0))
    n = np.linalg.norm(cross)
    if n < 1e-14:
        if dot > 0:
            return np.eye(2, dtype=complex)
        perp = np.cross(a, [1.0, 0.0, 0.0])
        if np.linalg.norm(perp) < 1e-8:
            perp = np.cross(a, [0.0, 1.0, 0.0])
        return _from_axis_angle(perp / np.linalg.norm(perp), math.pi)
    return _from_axis_angle(cross / n, math.acos(dot))


class BasicNet:
    """All freely reduced single-batch words up to ``depth``, indexed for lookup."""

    def __init__(self, depth: int = 7, batch: int = 1):
        from scipy.spatial import cKDTree

        target = GateTarget(np.eye(2), (batch,))
        _, shift, _ = _local(target)
        table = _letter_table([1, 2, 3])
        gens = [np.asarray(braid_generator(x, 4, 0)) for x in table]
        words: list[tuple[int, ...]] = [()]
        mats = [np.eye(2, dtype=complex)]
        frontier = [((), np.eye(2, dtype=complex))]
        for _ in range(depth):
            nxt = []
            for w, m in frontier:
                for k, g in enumerate(gens):
                    if w and k == (w[-1] ^ 1):
                        continue
                    nxt.append((w + (k,), g @ m))
            frontier = nxt
            for w, m in nxt:
                words.append(w)
                mats.append(m)
        self.shift = shift
        self.table = table
        self.words = words
        self.mats = np.array(mats)
        quats = np.array([_quat(_to_su2(m)) for m in mats])
        self._tree = cKDTree(np.vstack([quats, -quats]))

    def letters(self, idx: int) -> list[int]:
        return [self.table[k] + (self.shift if self.table[k] > 0 else -self.shift) for k in self.words[idx]]

    def nearest(self, u: np.ndarray) -> tuple[list[int], np.ndarray]:
        _, i = self._tree.query(_quat(_to_su2(u)))
        i = int(i) % len(self.words)
        return self.letters(i), _to_su2(self.mats[i])


def _sk(u: np.ndarray, level: int, net: BasicNet) -> tuple[list[int], np.ndarray]:
    if level == 0:
        return net.nearest(u)
    w_prev, u_prev = _sk(u, level - 1, net)
    delta = u @ u_prev.conj().T
    # lifts to SU(2) are defined up to sign; keep delta near +1
    if np.trace(delta).real < 0:
        delta = -delta
    v, w = _group_commutator(delta)
    wv, mv = _sk(v, level - 1, net)
    ww, mw = _sk(w, level - 1, net)
    inv = lambda letters: [-x for x in reversed(letters)]  # noqa: E731
    # matrix V W V^-1 W^-1 U_prev acts right to left; words read first-acts-first
    word = w_prev + inv(ww) + inv(wv) + ww + wv
    mat = mv @ mw @ mv.conj().T @ mw.conj().T @ u_prev
    return word, mat


def _free_reduce(letters: list[int]) -> list[int]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def sk_refine(target: GateTarget, base: CompilationResult, levels: int, net: BasicNet | None = None) -> CompilationResult:
    """Solovay-Kitaev refinement of a single-batch result; never worse than ``base``.

    Returns ``base`` unchanged when ``levels == 0``, when the target spans
    two batches, or when ``base.distance`` exceeds ``SK_NET_THRESHOLD``.
    """
    if levels <= 0 or len(target.scope) != 1 or base.distance > SK_NET_THRESHOLD:
        return base
    net = net or BasicNet(batch=target.scope[0])
    best = base
    u = _to_su2(target.matrix)
    for level in range(1, levels + 1):
        letters, _ = _sk(u, level, net)
        word = BraidWord(_free_reduce(letters), target.strands)
        block = word_image(word, target)
        d = gate_distance(block, target.matrix)
        if d < best.distance:
            best = CompilationResult(word, d, 0.0, base.depth_searched)
    return best
