"""SU(2) level-3 anyon labels, fusion rules and the fusion-path basis.

Labels are the integers 0..3 with 0 the vacuum.  A fusion path records the
running total charge after fusing type-1 anyons in from the left, so a path
for ``n`` anyons is a tuple ``(p_0, ..., p_n)`` with ``p_0 = 0`` and each step
moving to a neighbour on the graph 0 - 1 - 2 - 3.
"""

from __future__ import annotations

import functools
import math

import numpy as np

LEVEL = 3
LABELS = (0, 1, 2, 3)

FusionPath = tuple[int, ...]


def _check_label(a: int) -> None:
    if a not in LABELS:
        raise ValueError(f"invalid label {a!r}; labels are 0..3")


def fuse(a: int, b: int) -> frozenset[int]:
    """Return the admissible total charges of ``a`` and ``b``."""
    _check_label(a)
    _check_label(b)
    upper = min(a + b, 2 * LEVEL - a - b)
    return frozenset(c for c in range(abs(a - b), upper + 1) if (a + b + c) % 2 == 0)


def q_integer(n: int) -> float:
    """[n]_5 = sin(n pi / 5) / sin(pi / 5)."""
    return math.sin(n * math.pi / (LEVEL + 2)) / math.sin(math.pi / (LEVEL + 2))


def qdim(a: int) -> float:
    _check_label(a)
    return q_integer(a + 1)


@functools.lru_cache(maxsize=None)
def fusion_paths(n: int, end: int) -> tuple[FusionPath, ...]:
    """All fusion paths of ``n`` type-1 anyons with total charge ``end``.

    The result is in lexicographic order, which is the basis order used by
    every matrix in the package.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    _check_label(end)
    out: list[FusionPath] = []

    def walk(path: list[int]) -> None:
        if len(path) == n + 1:
            if path[-1] == end:
                out.append(tuple(path))
            return
        remaining = n + 1 - len(path)
        for nxt in sorted(fuse(path[-1], 1)):
            # prune walks that can no longer reach ``end``
            if abs(nxt - end) <= remaining - 1:
                path.append(nxt)
                walk(path)
                path.pop()

    walk([0])
    return tuple(out)


def path_count(n: int, end: int) -> int:
    """Count fusion paths with the transfer matrix of the 0-1-2-3 graph.

    Independent of :func:`fusion_paths`; used to cross-check it.
    """
    adj = np.zeros((LEVEL + 1, LEVEL + 1), dtype=object)
    for a in LABELS:
        for c in fuse(a, 1):
            adj[a, c] = 1
    vec = np.zeros(LEVEL + 1, dtype=object)
    vec[0] = 1
    for _ in range(n):
        vec = vec.dot(adj)
    return int(vec[end])


def path_index(n: int, end: int) -> dict[FusionPath, int]:
    return {p: i for i, p in enumerate(fusion_paths(n, end))}


def s_matrix() -> np.ndarray:
    """Modular S-matrix, S_ab = sqrt(2/5) sin((a+1)(b+1) pi / 5)."""
    k2 = LEVEL + 2
    idx = np.arange(1, LEVEL + 2)
    return math.sqrt(2.0 / k2) * np.sin(np.outer(idx, idx) * math.pi / k2).astype(complex)
