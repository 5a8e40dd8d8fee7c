import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tqcsim.anyons import fusion_paths
from tqcsim.braidrep import (
    braid_generator,
    plat_amplitude,
    represent_word,
    tl_generator,
    vacuum_path,
    vacuum_state,
)
from tqcsim.constants import A, DELTA


def test_generator_errors():
    with pytest.raises(ValueError, match="zero is not a generator"):
        braid_generator(0, 4, 0)
    with pytest.raises(IndexError):
        braid_generator(4, 4, 0)
    with pytest.raises(IndexError):
        tl_generator(0, 4, 0)


def test_generators_read_only():
    e = tl_generator(1, 6, 0)
    with pytest.raises(ValueError):
        e[0, 0] = 5


def test_loop_value():
    assert -A**2 - A**-2 == pytest.approx(DELTA)


def test_sigma_eigenvalues():
    ev = np.sort_complex(np.linalg.eigvals(braid_generator(1, 4, 0)))
    assert np.allclose(ev, np.sort_complex(np.array([A, -A**-3])))


def test_tl_on_four_strands_by_hand():
    # paths (0,1,0,1,0), (0,1,2,1,0); e_2 entries sqrt(d d')/d(1)
    e2 = tl_generator(2, 4, 0)
    r = np.sqrt(DELTA) / DELTA
    assert np.allclose(e2, [[1 / DELTA, r], [r, 1.0]])
    assert np.allclose(tl_generator(1, 4, 0), [[DELTA, 0], [0, 0]])


def test_vacuum_state():
    assert vacuum_path(6) == (0, 1, 0, 1, 0, 1, 0)
    v = vacuum_state(6)
    assert v[fusion_paths(6, 0).index(vacuum_path(6))] == 1
    assert np.linalg.norm(v) == 1


def test_plat_amplitude_odd_strands():
    with pytest.raises(ValueError):
        plat_amplitude([1], 3)


def test_first_letter_acts_first():
    m = represent_word([1, 2], 4, 0)
    assert np.allclose(m, braid_generator(2, 4, 0) @ braid_generator(1, 4, 0))


words = st.lists(st.integers(1, 5).flatmap(lambda g: st.sampled_from([g, -g])), max_size=8)


@settings(max_examples=50, deadline=None)
@given(words, words)
def test_representation_is_homomorphism(w1, w2):
    lhs = represent_word(w1 + w2, 6, 0)
    rhs = represent_word(w2, 6, 0) @ represent_word(w1, 6, 0)
    assert np.allclose(lhs, rhs, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(words)
def test_word_times_inverse_is_identity(w):
    inv = [-x for x in reversed(w)]
    assert np.allclose(represent_word(w + inv, 6, 2), np.eye(len(fusion_paths(6, 2))), atol=1e-12)
