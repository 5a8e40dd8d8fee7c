"""Unitary Jones representation of the braid group on fusion paths.

The Temperley-Lieb generator ``e_i`` acts on position ``i`` of a path and is
nonzero only when ``p[i-1] == p[i+1]``.  Braid generators are
``rho(sigma_i) = A + A^-1 e_i`` and ``rho(sigma_i^-1) = A^-1 + A e_i``.

Words are read left to right and the first letter acts first on column
vectors, so ``represent_word([w1, w2])`` is ``rho(w2) @ rho(w1)``.
"""

from __future__ import annotations

import functools
import math
from collections.abc import Iterable

import numpy as np

from .anyons import fusion_paths, path_index, qdim
from .constants import A, DELTA


def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n - 1:
        raise IndexError(f"generator index {i} out of range for {n} strands")


@functools.lru_cache(maxsize=None)
def _tl_cached(i: int, n: int, sector: int) -> np.ndarray:
    paths = fusion_paths(n, sector)
    index = path_index(n, sector)
    dim = len(paths)
    e = np.zeros((dim, dim))
    for col, p in enumerate(paths):
        if p[i - 1] != p[i + 1]:
            continue
        for mid in (p[i - 1] - 1, p[i - 1] + 1):
            q = p[:i] + (mid,) + p[i + 1 :]
            row = index.get(q)
            if row is None:
                continue
            e[row, col] = math.sqrt(qdim(p[i]) * qdim(mid)) / qdim(p[i - 1])
    e.setflags(write=False)
    return e


def tl_generator(i: int, n: int, sector: int) -> np.ndarray:
    """Temperley-Lieb generator e_i on ``fusion_paths(n, sector)``."""
    _check_index(i, n)
    return _tl_cached(i, n, sector)


@functools.lru_cache(maxsize=None)
def _braid_cached(letter: int, n: int, sector: int) -> np.ndarray:
    e = _tl_cached(abs(letter), n, sector)
    a = A if letter > 0 else 1.0 / A
    m = a * np.eye(e.shape[0]) + e / a
    m.setflags(write=False)
    return m


def braid_generator(i: int, n: int, sector: int) -> np.ndarray:
    """Image of sigma_i (``i > 0``) or sigma_|i|^-1 (``i < 0``)."""
    if i == 0:
        raise ValueError("zero is not a generator")
    _check_index(abs(i), n)
    return _braid_cached(i, n, sector)


def represent_word(word: Iterable[int], n: int, sector: int) -> np.ndarray:
    letters = list(word)
    for letter in letters:
        if letter == 0:
            raise ValueError("zero is not a generator")
        _check_index(abs(letter), n)
    out = np.eye(len(fusion_paths(n, sector)), dtype=complex)
    for letter in letters:
        out = _braid_cached(letter, n, sector) @ out
    return out


def vacuum_path(n: int) -> tuple[int, ...]:
    """The path (0, 1, 0, 1, ..., 0) in which every adjacent pair is in the vacuum."""
    if n % 2:
        raise ValueError("vacuum pairing needs an even number of strands")
    return tuple(j % 2 for j in range(n + 1))


def vacuum_state(n: int) -> np.ndarray:
    vec = np.zeros(len(fusion_paths(n, 0)), dtype=complex)
    vec[path_index(n, 0)[vacuum_path(n)]] = 1.0
    return vec


def plat_amplitude(word: Iterable[int], n: int) -> complex:
    """Matrix element <vac| rho(word) |vac> in the charge-0 sector.

    The normalised Kauffman bracket of the plat closure at the constant
    ``A`` equals ``plat_bracket_scale(n) * plat_amplitude(word, n)``.
    """
    if n % 2:
        raise ValueError("plat closure needs an even number of strands")
    vac = vacuum_state(n)
    return complex(vac.conj() @ represent_word(word, n, 0) @ vac)


def plat_bracket_scale(n: int) -> float:
    """Calibration constant between the plat amplitude and the bracket.

    The vacuum vector is the cup state divided by delta^(n/2), and the
    bracket is normalised so a single circle is 1; hence delta^(n/2 - 1).
    No per-crossing phase is needed with the crossing convention used in
    :mod:`tqcsim.links`.
    """
    return DELTA ** (n // 2 - 1)
