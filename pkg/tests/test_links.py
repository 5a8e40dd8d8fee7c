import cmath
import math

import numpy as np
import pytest

from tqcsim.constants import A, DELTA
from tqcsim.links import (
    BraidWord,
    CrossingBudgetExceeded,
    LinkDiagram,
    MalformedDiagram,
    bracket_polynomial,
    count_components,
    count_minima,
    crossing_signs,
    evaluate_laurent,
    jones_at,
    kauffman_bracket,
    link_stats,
    plat_closure,
    random_braid_word,
    writhe,
)


def test_braid_word_validation():
    with pytest.raises(ValueError, match="zero is not a generator"):
        BraidWord([0], 4)
    with pytest.raises(ValueError, match="index out of range"):
        BraidWord([4], 4)
    w = BraidWord([1, -2], 4)
    assert w.inverse().letters == (2, -1)
    assert (w + w.inverse()).letters == (1, -2, 2, -1)
    assert str(w) == "1 -2"


def test_hopf_link():
    d = plat_closure(BraidWord([2, 2], 4))
    assert count_components(d) == 2
    assert abs(writhe(d)) == 2
    assert writhe(d, [False, True]) == -writhe(d)
    assert count_minima(d) == 2


def test_trefoil_stats():
    d = plat_closure(BraidWord([2, 2, 2], 4))
    assert link_stats(d).c == 1 and link_stats(d).w == 3 and link_stats(d).m == 2
    assert crossing_signs(d) == [1, 1, 1]


def test_sigma1_powers_on_two_strands_are_unknots():
    for k in range(4):
        d = plat_closure(BraidWord([1] * k, 2))
        assert count_components(d) == 1
        assert jones_at(d) == pytest.approx(1.0)


def test_mirror_conjugates_jones():
    d = plat_closure(BraidWord([2, 2, 2], 4))
    m = plat_closure(BraidWord([-2, -2, -2], 4))
    assert jones_at(m) == pytest.approx(jones_at(d).conjugate())


def test_jones_independent_of_orientation_for_knots():
    d = plat_closure(BraidWord([2, -1, 2, 3, -2], 4))
    if count_components(d) == 1:
        assert jones_at(d, [True]) == pytest.approx(jones_at(d))


def test_unlink_brackets():
    for n in (2, 4, 6):
        d = plat_closure(BraidWord([], n))
        assert kauffman_bracket(d, A) == pytest.approx(DELTA ** (n // 2 - 1))


def test_json_roundtrip():
    d = plat_closure(BraidWord([1, -2, 3], 4))
    back = LinkDiagram.from_json(d.to_json())
    assert back == d
    with pytest.raises(MalformedDiagram):
        LinkDiagram.from_json('{"cups": [{"height": 1, "position": 0}]}')


def test_malformed_events():
    with pytest.raises(MalformedDiagram):
        LinkDiagram((("cap", 0),))


def test_crossing_budget():
    d = plat_closure(BraidWord([1] * 23, 2))
    with pytest.raises(CrossingBudgetExceeded):
        bracket_polynomial(d)


def test_laurent_evaluation_matches_plain_sum():
    poly = {-7: 3, 0: -1, 5: 2, 12: 1}
    for z in (cmath.exp(0.3j), A, cmath.exp(1j * math.pi / 10)):
        plain = sum(c * z**e for e, c in poly.items())
        assert evaluate_laurent(poly, z) == pytest.approx(plain, abs=1e-12)


def test_random_braid_word_is_seeded():
    a = random_braid_word(np.random.Generator(np.random.PCG64(1)), 6, 10)
    b = random_braid_word(np.random.Generator(np.random.PCG64(1)), 6, 10)
    assert a == b and len(a) == 10
