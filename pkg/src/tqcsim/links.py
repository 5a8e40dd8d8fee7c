"""Braid words, plat closures and link invariants.

A :class:`LinkDiagram` is stored as a Morse presentation: a bottom-to-top
list of events acting on a row of strand positions (0-based).

* ``("cup", p)`` creates two new strands at positions ``p`` and ``p + 1``.
* ``("cap", p)`` joins the strands at ``p`` and ``p + 1`` and removes them.
* ``("x", j, s)`` crosses the strands at ``j`` and ``j + 1``.  For ``s = +1``
  the strand running from bottom-left to top-right passes over; for
  ``s = -1`` the one running from bottom-right to top-left does.  Braid
  letter ``i`` is ``("x", i - 1, sign(i))``.

With this convention the A-smoothing of a ``+1`` crossing is the vertical
(identity) smoothing, matching ``rho(sigma) = A + A^-1 e`` in
:mod:`tqcsim.braidrep`.  Local minima of the height function are exactly
the cups.
"""

from __future__ import annotations

import cmath
import functools
import json
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from . import _accel
from .constants import CROSSING_BUDGET, JONES_A

Event = tuple  # ("cup", p) | ("cap", p) | ("x", j, sign)


class CrossingBudgetExceeded(RuntimeError):
    """Raised when a state sum would need more than CROSSING_BUDGET crossings."""


class MalformedDiagram(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    letters: tuple[int, ...]
    strands: int

    def __init__(self, letters: Iterable[int], strands: int):
        letters = tuple(int(x) for x in letters)
        if strands < 1:
            raise ValueError("strand count must be positive")
        for x in letters:
            if x == 0:
                raise ValueError("zero is not a generator")
            if not 1 <= abs(x) <= strands - 1:
                raise ValueError(f"index out of range: {x} on {strands} strands")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "strands", int(strands))

    def __iter__(self):
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.letters + other.letters, self.strands)

    def inverse(self) -> "BraidWord":
        return BraidWord((-x for x in reversed(self.letters)), self.strands)

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.letters)


def random_braid_word(rng: np.random.Generator, strands: int, length: int) -> BraidWord:
    """Uniform letters from +-1..strands-1, drawn from ``rng``."""
    if strands < 2:
        raise ValueError("need at least two strands")
    gens = rng.integers(1, strands, size=length)
    signs = rng.choice(np.array([-1, 1]), size=length)
    return BraidWord((int(g * s) for g, s in zip(gens, signs)), strands)


@dataclass(frozen=True)
class LinkDiagram:
    events: tuple[Event, ...]
    loops: tuple[int, ...] = field(default=())  # event indices of measurement-loop cups

    def __post_init__(self):
        _build(self)  # validates

    @property
    def crossings(self) -> list[dict]:
        return [
            {"height": h, "position": ev[1], "sign": ev[2]}
            for h, ev in enumerate(self.events)
            if ev[0] == "x"
        ]

    @property
    def cups(self) -> list[dict]:
        return [{"height": h, "position": ev[1]} for h, ev in enumerate(self.events) if ev[0] == "cup"]

    @property
    def caps(self) -> list[dict]:
        return [{"height": h, "position": ev[1]} for h, ev in enumerate(self.events) if ev[0] == "cap"]

    @property
    def n_crossings(self) -> int:
        return sum(1 for ev in self.events if ev[0] == "x")

    def to_json(self) -> str:
        return json.dumps(
            {
                "crossings": self.crossings,
                "cups": self.cups,
                "caps": self.caps,
                "loops": list(self.loops),
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "LinkDiagram":
        doc = json.loads(text)
        items = []
        for c in doc.get("cups", []):
            items.append((c["height"], ("cup", int(c["position"]))))
        for c in doc.get("caps", []):
            items.append((c["height"], ("cap", int(c["position"]))))
        for c in doc.get("crossings", []):
            items.append((c["height"], ("x", int(c["position"]), int(c["sign"]))))
        items.sort(key=lambda t: t[0])
        if [h for h, _ in items] != list(range(len(items))):
            raise MalformedDiagram("event heights must be 0..N-1 without gaps")
        return cls(tuple(ev for _, ev in items), tuple(doc.get("loops", [])))


@dataclass
class _Graph:
    n_edges: int
    cup_joins: list[tuple[int, int]]
    cap_joins: list[tuple[int, int]]
    crossings: list[tuple[int, int, int, int, int]]  # bl, br, tl, tr, sign


@functools.lru_cache(maxsize=256)
def _build(d: LinkDiagram) -> _Graph:
    row: list[int] = []
    n_edges = 0
    cups, caps, cross = [], [], []
    for h, ev in enumerate(d.events):
        kind = ev[0]
        if kind == "cup":
            p = ev[1]
            if not 0 <= p <= len(row):
                raise MalformedDiagram(f"cup at {p} outside row of width {len(row)} (height {h})")
            row[p:p] = [n_edges, n_edges + 1]
            cups.append((n_edges, n_edges + 1))
            n_edges += 2
        elif kind == "cap":
            p = ev[1]
            if not 0 <= p <= len(row) - 2:
                raise MalformedDiagram(f"cap at {p} outside row of width {len(row)} (height {h})")
            caps.append((row[p], row[p + 1]))
            del row[p : p + 2]
        elif kind == "x":
            j, s = ev[1], ev[2]
            if s not in (1, -1):
                raise MalformedDiagram(f"crossing sign must be +-1, got {s}")
            if not 0 <= j <= len(row) - 2:
                raise MalformedDiagram(f"crossing at {j} outside row of width {len(row)} (height {h})")
            tl, tr = n_edges, n_edges + 1
            n_edges += 2
            cross.append((row[j], row[j + 1], tl, tr, s))
            row[j], row[j + 1] = tl, tr
        else:
            raise MalformedDiagram(f"unknown event {ev!r}")
    if row:
        raise MalformedDiagram(f"{len(row)} free strand ends at the top")
    for li in d.loops:
        if not (0 <= li < len(d.events) and d.events[li][0] == "cup"):
            raise MalformedDiagram(f"loop marker {li} does not point at a cup")
    return _Graph(n_edges, cups, caps, cross)


# -- construction -----------------------------------------------------------


def plat_closure(b: BraidWord) -> LinkDiagram:
    """Cups on (1,2),(3,4),... below the braid, caps on the same pairs above."""
    if b.strands % 2:
        raise ValueError("plat closure needs an even number of strands")
    half = b.strands // 2
    events: list[Event] = [("cup", 2 * k) for k in range(half)]
    events += [("x", abs(x) - 1, 1 if x > 0 else -1) for x in b.letters]
    events += [("cap", 0)] * half
    return LinkDiagram(tuple(events))


def _row_widths(d: LinkDiagram) -> list[int]:
    """Row width below each event, plus the final width."""
    widths, w = [], 0
    for ev in d.events:
        widths.append(w)
        w += 2 if ev[0] == "cup" else -2 if ev[0] == "cap" else 0
    widths.append(w)
    return widths


def _insert(d: LinkDiagram, at: int, new: Sequence[Event], new_loop: bool = False) -> LinkDiagram:
    events = d.events[:at] + tuple(new) + d.events[at:]
    shift = len(new)
    loops = tuple(li + shift if li >= at else li for li in d.loops)
    if new_loop:
        loops = tuple(sorted(loops + (at,)))
    return LinkDiagram(events, loops)


def insert_measurement_loop(d: LinkDiagram, pair: int, after_crossings: int = 0) -> LinkDiagram:
    """Add a small circle around the strands of ``pair`` (1-based).

    The circle is placed just above the first ``after_crossings`` crossings
    (and above every leading cup).  Its lower arc passes over both strands
    and its upper arc under both, so it links the pair.
    """
    at = 0
    seen = 0
    while at < len(d.events) and (d.events[at][0] == "cup" or seen < after_crossings):
        if d.events[at][0] == "x":
            seen += 1
        at += 1
    if seen < after_crossings:
        raise ValueError("diagram has fewer crossings than after_crossings")
    width = _row_widths(d)[at]
    p = 2 * (pair - 1)
    if pair < 1 or p + 1 >= width:
        raise ValueError(f"invalid pair index {pair} for a row of {width} strands")
    gamma = [("cup", p), ("x", p + 1, 1), ("x", p + 2, 1), ("x", p + 2, 1), ("x", p + 1, 1), ("cap", p)]
    return _insert(d, at, gamma, new_loop=True)


def reidemeister1(d: LinkDiagram, at: int, position: int, sign: int) -> LinkDiagram:
    """Insert a one-crossing curl on the strand at ``position`` below event ``at``."""
    if not 0 <= position < _row_widths(d)[at]:
        raise ValueError("no strand at that position")
    return _insert(d, at, [("cup", position + 1), ("x", position, sign), ("cap", position + 1)])


def reidemeister2(d: LinkDiagram, at: int, position: int, sign: int) -> LinkDiagram:
    """Insert a cancelling crossing pair between ``position`` and ``position + 1``."""
    if not 0 <= position <= _row_widths(d)[at] - 2:
        raise ValueError("no strand pair at that position")
    return _insert(d, at, [("x", position, sign), ("x", position, -sign)])


def reidemeister3(d: LinkDiagram, at: int) -> LinkDiagram:
    """Rewrite crossings (j, j+1, j) of equal sign starting at ``at`` as (j+1, j, j+1) or back."""
    ev = d.events[at : at + 3]
    if len(ev) < 3 or any(e[0] != "x" for e in ev):
        raise ValueError("need three consecutive crossings")
    (_, j0, s0), (_, j1, s1), (_, j2, s2) = ev
    if not (s0 == s1 == s2 and j0 == j2 and abs(j1 - j0) == 1):
        raise ValueError("crossings do not form a Reidemeister III triangle")
    new = (("x", j1, s0), ("x", j0, s0), ("x", j1, s0))
    return LinkDiagram(d.events[:at] + new + d.events[at + 3 :], d.loops)


# -- combinatorial invariants -----------------------------------------------


def _strand_ends(g: _Graph) -> dict[tuple[int, str], tuple[int, str]]:
    """Partner of each edge end; ends are (edge, 'B') or (edge, 'T')."""
    partner = {}
    for a, b in g.cup_joins:
        partner[(a, "B")] = (b, "B")
        partner[(b, "B")] = (a, "B")
    for a, b in g.cap_joins:
        partner[(a, "T")] = (b, "T")
        partner[(b, "T")] = (a, "T")
    for bl, br, tl, tr, _ in g.crossings:
        partner[(bl, "T")] = (tr, "B")
        partner[(tr, "B")] = (bl, "T")
        partner[(br, "T")] = (tl, "B")
        partner[(tl, "B")] = (br, "T")
    return partner


@functools.lru_cache(maxsize=256)
def _components(d: LinkDiagram) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Components as tuples of (edge, direction) in traversal order.

    Each component starts at its lowest-numbered edge traversed upward.
    """
    g = _build(d)
    partner = _strand_ends(g)
    seen = [False] * g.n_edges
    comps = []
    for start in range(g.n_edges):
        if seen[start]:
            continue
        comp = []
        edge, direction = start, 1
        while not seen[edge]:
            seen[edge] = True
            comp.append((edge, direction))
            exit_end = (edge, "T" if direction == 1 else "B")
            nxt, end = partner[exit_end]
            edge, direction = nxt, (1 if end == "B" else -1)
        comps.append(tuple(comp))
    return tuple(comps)


def count_components(d: LinkDiagram) -> int:
    return len(_components(d))


def count_minima(d: LinkDiagram) -> int:
    return sum(1 for ev in d.events if ev[0] == "cup")


def _edge_directions(d: LinkDiagram, orientation: Sequence[bool] | None) -> list[int]:
    comps = _components(d)
    if orientation is None:
        orientation = [False] * len(comps)
    if len(orientation) != len(comps):
        raise ValueError(f"orientation needs {len(comps)} entries")
    dirs = [0] * _build(d).n_edges
    for comp, flip in zip(comps, orientation):
        for edge, direction in comp:
            dirs[edge] = -direction if flip else direction
    return dirs


def crossing_signs(d: LinkDiagram, orientation: Sequence[bool] | None = None) -> list[int]:
    """Right-hand-rule sign of each crossing.

    ``orientation[k]`` reverses component ``k`` (in the order produced by
    component tracing) when true.
    """
    dirs = _edge_directions(d, orientation)
    signs = []
    for bl, br, _, _, s in _build(d).crossings:
        up_slash = (1, 1) if dirs[bl] == 1 else (-1, -1)
        up_back = (-1, 1) if dirs[br] == 1 else (1, -1)
        over, under = (up_slash, up_back) if s == 1 else (up_back, up_slash)
        cross = over[0] * under[1] - over[1] * under[0]
        signs.append(1 if cross > 0 else -1)
    return signs


def writhe(d: LinkDiagram, orientation: Sequence[bool] | None = None) -> int:
    return sum(crossing_signs(d, orientation))


@dataclass(frozen=True)
class LinkStats:
    c: int
    w: int
    m: int


def link_stats(d: LinkDiagram, orientation: Sequence[bool] | None = None) -> LinkStats:
    return LinkStats(count_components(d), writhe(d, orientation), count_minima(d))


# -- state sum --------------------------------------------------------------


@functools.lru_cache(maxsize=256)
def state_histogram(d: LinkDiagram) -> tuple[np.ndarray, int]:
    """Integer counts of states by (#A-smoothings, #loops), plus free loops.

    Exact, so every evaluation derived from it is independent of thread
    count and summation order.
    """
    g = _build(d)
    n = len(g.crossings)
    if n > CROSSING_BUDGET:
        raise CrossingBudgetExceeded(f"{n} crossings exceed the state-sum budget of {CROSSING_BUDGET}")
    parent = list(range(g.n_edges))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in g.cup_joins + g.cap_joins:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(e) for e in range(g.n_edges)})
    touched = sorted({find(e) for c in g.crossings for e in c[:4]})
    relabel = {r: k for k, r in enumerate(touched)}
    free = len(roots) - len(touched)
    ports = np.array([[relabel[find(e)] for e in c[:4]] for c in g.crossings], dtype=np.int64).reshape(n, 4)
    a_vertical = np.array([c[4] == 1 for c in g.crossings], dtype=np.bool_)
    if n == 0:
        hist = np.zeros((1, 1), dtype=np.int64)
        hist[0, 0] = 1
    else:
        hist = _accel.state_sum_histogram(len(touched), ports, a_vertical)
    hist.setflags(write=False)
    return hist, free


def bracket_polynomial(d: LinkDiagram) -> dict[int, int]:
    """The normalised bracket as an exact Laurent polynomial {exponent: coeff} in A."""
    hist, free = state_histogram(d)
    n = hist.shape[0] - 1
    poly: dict[int, int] = {}
    for n_a, n_loops in zip(*np.nonzero(hist)):
        k = int(n_loops) + free - 1
        if k < 0:
            raise MalformedDiagram("empty diagram has no bracket")
        # (-A^2 - A^-2)^k = sum_j C(k, j) (-1)^k A^(2k - 4j)
        count = int(hist[n_a, n_loops])
        base = 2 * int(n_a) - n
        for j in range(k + 1):
            e = base + 2 * k - 4 * j
            poly[e] = poly.get(e, 0) + (-1) ** k * math.comb(k, j) * count
    return {e: c for e, c in sorted(poly.items()) if c}


def _root_order(z: complex, limit: int = 120) -> int | None:
    if abs(abs(z) - 1.0) > 1e-12:
        return None
    for n in range(1, limit + 1):
        if abs(z**n - 1.0) < 1e-9:
            return n
    return None


@functools.lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for k in range(1, n):
        if n % k == 0:
            num = _poly_divmod(num, list(_cyclotomic(k)))[0]
    return tuple(num)


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division by a monic integer polynomial (lowest degree first)."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            q[shift] = c
            for i, dc in enumerate(den):
                num[shift + i] -= c * dc
    rem = num[: len(den) - 1] or [0]
    return q, rem


def evaluate_laurent(poly: dict[int, int], z: complex) -> complex:
    """Evaluate an integer Laurent polynomial at ``z``.

    At a root of unity the polynomial is first reduced exactly modulo the
    cyclotomic polynomial of its order, so large integer cancellations
    never reach floating point.
    """
    order = _root_order(z)
    if order is None:
        return complex(sum(c * z**e for e, c in poly.items()))
    folded = [0] * order
    for e, c in poly.items():
        folded[e % order] += c
    _, rem = _poly_divmod(folded, list(_cyclotomic(order)))
    # powers of z from its exact argument
    arg = cmath.phase(z)
    k = round(arg * order / (2 * math.pi)) % order
    total = 0j
    for e, c in enumerate(rem):
        if c:
            total += c * cmath.exp(2j * math.pi * ((k * e) % order) / order)
    return complex(total)


def kauffman_bracket(d: LinkDiagram, A: complex) -> complex:
    """Kauffman bracket by full state sum, normalised so the unknot is 1."""
    return evaluate_laurent(bracket_polynomial(d), A)


def jones_at(d: LinkDiagram, orientation: Sequence[bool] | None = None) -> complex:
    """V_L at t = exp(2 pi i / 5): (-a^3)^(-w) <L>_a with a = exp(i pi / 10)."""
    w = writhe(d, orientation)
    return complex((-(JONES_A**3)) ** (-w) * kauffman_bracket(d, JONES_A))
