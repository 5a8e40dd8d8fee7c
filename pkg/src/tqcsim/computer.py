"""The anyonic computer: initialise, braid, measure the leftmost pair.

A register of ``2n`` type-1 anyons lives in the charge-0 sector of the
fusion-path space.  Anyons are grouped into batches of four; batch ``b``
encodes one qubit in the charge (0 or 2) of its first pair, read off the
path entry ``p[4b - 2]`` while ``p[4b] = 0``.  A trailing pair that does not
fill a batch is kept in the vacuum and carries no qubit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .anyons import fusion_paths, path_index
from .braidrep import represent_word, tl_generator, vacuum_path, vacuum_state
from .constants import DELTA, JONES_A, PROB_PREFACTOR
from .links import BraidWord, count_components, count_minima, insert_measurement_loop, jones_at, plat_closure, writhe


@dataclass(frozen=True)
class AnyonRegister:
    n_anyons: int
    state: np.ndarray

    @property
    def n_qubits(self) -> int:
        return self.n_anyons // 4

    @property
    def n_pairs(self) -> int:
        return self.n_anyons // 2


def initialize(n_anyons: int) -> AnyonRegister:
    if n_anyons % 2 or n_anyons < 4:
        raise ValueError("need an even number of anyons, at least 4")
    state = vacuum_state(n_anyons)
    state.setflags(write=False)
    return AnyonRegister(n_anyons, state)


def execute_braid(r: AnyonRegister, w: BraidWord) -> AnyonRegister:
    if w.strands != r.n_anyons:
        raise ValueError(f"braid on {w.strands} strands applied to {r.n_anyons} anyons")
    state = represent_word(w, r.n_anyons, 0) @ r.state
    state.setflags(write=False)
    return AnyonRegister(r.n_anyons, state)


def pair_projector(n_anyons: int, pair: int) -> np.ndarray:
    """Projector onto the vacuum channel of ``pair``: e_{2i-1} / delta."""
    if not 1 <= pair <= n_anyons // 2:
        raise ValueError(f"invalid pair index {pair}")
    return tl_generator(2 * pair - 1, n_anyons, 0) / DELTA


def measure_pair(r: AnyonRegister, pair: int = 1) -> float:
    """Probability that ``pair`` fuses to the vacuum."""
    proj = pair_projector(r.n_anyons, pair)
    return float(np.real(r.state.conj() @ proj @ r.state))


def computational_paths(n_anyons: int) -> dict[str, tuple[int, ...]]:
    """Map from bit strings over {0, 2} to the fusion path they label."""
    n_q = n_anyons // 4
    out = {}
    for bits in itertools.product("02", repeat=n_q):
        path = [0]
        for x in bits:
            path += [1, int(x), 1, 0]
        path += [1, 0] * ((n_anyons - 4 * n_q) // 2)
        out["".join(bits)] = tuple(path)
    return out


def readout_distribution(r: AnyonRegister) -> dict[str, float]:
    index = path_index(r.n_anyons, 0)
    probs = np.abs(r.state) ** 2
    return {bits: float(probs[index[p]]) for bits, p in computational_paths(r.n_anyons).items()}


def leakage(r: AnyonRegister) -> float:
    inside = sum(readout_distribution(r).values())
    return float(min(max(float(np.vdot(r.state, r.state).real) - inside, 0.0), 1.0))


def measurement_link(b: BraidWord):
    """Diagram of plat(b^-1 gamma b): b first, loop around pair 1, then b^-1."""
    d = plat_closure(b + b.inverse())
    return insert_measurement_loop(d, 1, after_crossings=len(b))


def prob_via_jones(b: BraidWord, orientation=None) -> float:
    """Vacuum probability of pair 1 after ``b``, from the Jones polynomial.

    prob0 = (1 + (-1)^(c+w) (-a)^(3w) V~_L / [2]^(m-2)) / (1 + [2]^2), where
    V~_L is V_L at exp(2 pi i/5) scaled so that the unknot evaluates to the
    loop value -(a^2 + a^-2) = -[2]; with the usual unknot = 1 scaling the
    identity braid would not give probability 1.
    """
    d = measurement_link(b)
    c, w, m = count_components(d), writhe(d, orientation), count_minima(d)
    v = jones_at(d, orientation) * (-(JONES_A**2) - JONES_A**-2)
    term = (-1) ** (c + w) * (-JONES_A) ** (3 * w) * v / DELTA ** (m - 2)
    return float(PROB_PREFACTOR * (1.0 + term.real))


def target_prob0(matrix: np.ndarray) -> float:
    """prob0 predicted for a unitary on the computational subspace of batches 1..k.

    The register starts in the all-zero string and pair 1 reads the first
    qubit, so this is the weight of X|0...0> on strings whose first bit is 0.
    """
    m = np.asarray(matrix, dtype=complex)
    col = m[:, 0]
    return float(np.sum(np.abs(col[: m.shape[0] // 2]) ** 2))


def register_from_paths(n_anyons: int, amplitudes: dict[tuple[int, ...], complex]) -> AnyonRegister:
    """Build a register from explicit path amplitudes (normalised)."""
    index = path_index(n_anyons, 0)
    state = np.zeros(len(fusion_paths(n_anyons, 0)), dtype=complex)
    for p, amp in amplitudes.items():
        state[index[p]] = amp
    state = state / np.linalg.norm(state)
    state.setflags(write=False)
    return AnyonRegister(n_anyons, state)


__all__ = [
    "AnyonRegister",
    "computational_paths",
    "execute_braid",
    "initialize",
    "leakage",
    "measure_pair",
    "measurement_link",
    "pair_projector",
    "prob_via_jones",
    "readout_distribution",
    "register_from_paths",
    "target_prob0",
    "vacuum_path",
]
