import numpy as np
import pytest

from tqcsim.braidrep import represent_word
from tqcsim.computer import (
    computational_paths,
    execute_braid,
    initialize,
    leakage,
    measure_pair,
    pair_projector,
    prob_via_jones,
    readout_distribution,
    target_prob0,
)
from tqcsim.constants import A, DELTA, PROB_PREFACTOR
from tqcsim.links import BraidWord, count_components


def test_initialize():
    r = initialize(4)
    assert np.allclose(r.state, [1, 0])
    for pair in (1, 2):
        assert np.allclose(pair_projector(4, pair) @ r.state, r.state)
    with pytest.raises(ValueError):
        initialize(5)
    with pytest.raises(ValueError):
        initialize(2)


def test_projector_idempotent():
    p = pair_projector(8, 2)
    assert np.abs(p @ p - p).max() < 1e-10


def test_measure_examples():
    assert measure_pair(initialize(8), 3) == pytest.approx(1.0)
    assert measure_pair(execute_braid(initialize(4), BraidWord([1], 4))) == pytest.approx(1.0)


def test_measure_after_sigma2_squared_by_hand():
    r = DELTA**-0.5
    e2 = np.array([[1 / DELTA, r], [r, 1.0]])
    s = A * np.eye(2) + A**-1 * e2
    psi = s @ s @ np.array([1.0, 0.0])
    expected = abs(psi[0]) ** 2
    got = measure_pair(execute_braid(initialize(4), BraidWord([2, 2], 4)))
    assert 0 < got < 1
    assert got == pytest.approx(expected, abs=1e-12)
    assert got == pytest.approx(DELTA**-4, abs=1e-12)  # regression: (7 - 3 sqrt 5) / 2


def test_braid_then_inverse_restores():
    w = BraidWord([1, -2, 3, 2, 4, -5], 6)
    r = execute_braid(execute_braid(initialize(6), w), w.inverse())
    assert np.allclose(r.state, initialize(6).state, atol=1e-10)


def test_strand_mismatch():
    with pytest.raises(ValueError):
        execute_braid(initialize(4), BraidWord([1], 6))


def test_leakage():
    assert leakage(initialize(8)) == 0
    r = execute_braid(initialize(8), BraidWord([1, 2, -3, 2, 5, 6, -7], 8))
    assert leakage(r) < 1e-12
    cross = execute_braid(initialize(8), BraidWord([2, 4, 2], 8))
    assert leakage(cross) > 1e-3
    dist = readout_distribution(cross)
    assert sum(dist.values()) == pytest.approx(1 - leakage(cross), abs=1e-10)


def test_readout_marginal_matches_pair_measurement():
    r = execute_braid(initialize(8), BraidWord([2, -1, 2, 6, 7], 8))
    dist = readout_distribution(r)
    marginal = sum(p for bits, p in dist.items() if bits[0] == "0")
    assert marginal == pytest.approx(measure_pair(r, 1), abs=1e-10)
    assert readout_distribution(initialize(8)) == {"00": 1.0, "02": 0.0, "20": 0.0, "22": 0.0}


def test_computational_paths_with_spare_pair():
    paths = computational_paths(6)
    assert paths == {"0": (0, 1, 0, 1, 0, 1, 0), "2": (0, 1, 2, 1, 0, 1, 0)}


def test_prob_via_jones_examples():
    assert PROB_PREFACTOR == pytest.approx(0.2763932, abs=1e-7)
    assert prob_via_jones(BraidWord([], 4)) == pytest.approx(1.0, abs=1e-10)
    b = BraidWord([2, -3, 1, 2], 6)
    assert prob_via_jones(b) == pytest.approx(measure_pair(execute_braid(initialize(6), b)), abs=1e-8)


def test_prob_via_jones_orientation_robust():
    from tqcsim.computer import measurement_link

    b = BraidWord([2, 2, -1, 3], 4)
    c = count_components(measurement_link(b))
    base = prob_via_jones(b)
    for k in range(c):
        flip = [i == k for i in range(c)]
        assert prob_via_jones(b, flip) == pytest.approx(base, abs=1e-8)


def test_target_prob0():
    assert target_prob0(np.eye(2)) == 1.0
    assert target_prob0(np.array([[0, 1], [1, 0]])) == 0.0
    u = represent_word([2, 1, 2], 4, 0)
    assert target_prob0(u) == pytest.approx(measure_pair(execute_braid(initialize(4), BraidWord([2, 1, 2], 4))))
