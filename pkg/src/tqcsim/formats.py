"""Text and JSON file formats.

Braid word text::

    n=<strands>
    <signed generator indices separated by whitespace>

The second line may be missing or blank for the empty word.  Lines starting
with ``#`` are ignored.

Gate target JSON::

    {"matrix": [[[re, im], ...], ...], "scope": [1]}    or
    {"name": "h", "scope": [1]}

``scope`` lists one batch or two adjacent batches (1-based) and defaults
to ``[1]``; ``name`` refers to ``circuits.gate_library()``.
"""

from __future__ import annotations

import re

import numpy as np

from .circuits import gate_library
from .compiler import GateTarget
from .links import BraidWord

_HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s*$")


class FormatError(ValueError):
    pass


def parse_braid_word(text: str) -> BraidWord:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise FormatError("malformed header: empty input, expected 'n=<strands>'")
    m = _HEADER.match(lines[0])
    if not m:
        raise FormatError(f"malformed header: expected 'n=<strands>', got {lines[0].strip()!r}")
    if len(lines) > 2:
        raise FormatError("malformed braid word: expected a single line of letters after the header")
    strands = int(m.group(1))
    tokens = lines[1].split() if len(lines) == 2 else []
    letters = []
    for tok in tokens:
        try:
            letters.append(int(tok))
        except ValueError:
            raise FormatError(f"malformed letter {tok!r}: expected a signed integer") from None
    try:
        return BraidWord(letters, strands)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_braid_word(w: BraidWord) -> str:
    return f"n={w.strands}\n{w}\n"


def complex_matrix(raw) -> np.ndarray:
    try:
        return np.array([[complex(float(z[0]), float(z[1])) for z in row] for row in raw], dtype=complex)
    except (TypeError, ValueError, IndexError):
        raise FormatError("matrix entries must be [re, im] pairs") from None


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def target_from_json(doc: dict) -> GateTarget:
    if not isinstance(doc, dict):
        raise FormatError("gate target must be a JSON object")
    scope = tuple(doc.get("scope", [1]))
    if "matrix" in doc:
        m = complex_matrix(doc["matrix"])
    elif "name" in doc:
        lib = gate_library()
        if doc["name"] not in lib:
            raise FormatError(f"unknown gate {doc['name']!r}; known: {', '.join(sorted(lib))}")
        m = lib[doc["name"]]
    else:
        raise FormatError("gate target needs 'matrix' or 'name'")
    try:
        return GateTarget(m, scope)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def target_to_json(t: GateTarget) -> dict:
    return {"matrix": matrix_to_json(t.matrix), "scope": list(t.scope)}
