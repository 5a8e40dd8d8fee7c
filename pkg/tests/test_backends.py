"""The numpy fallback must reproduce the numba kernels exactly."""

import numpy as np
import pytest
from scipy.stats import unitary_group

from conftest import run_cli_subprocess
from tqcsim._accel import numba_kernels, numpy_kernels
from tqcsim.braidrep import braid_generator
from tqcsim.compiler import GateTarget, _letter_table, _local
from tqcsim.links import _build, plat_closure, random_braid_word


def _ports(d):
    g = _build(d)
    parent = list(range(g.n_edges))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in g.cup_joins + g.cap_joins:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    touched = sorted({find(e) for c in g.crossings for e in c[:4]})
    relabel = {r: k for k, r in enumerate(touched)}
    ports = np.array([[relabel[find(e)] for e in c[:4]] for c in g.crossings], dtype=np.int64)
    return len(touched), ports, np.array([c[4] == 1 for c in g.crossings], dtype=np.bool_)


@pytest.mark.parametrize("seed", range(5))
def test_state_sum_backends_agree(seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    d = plat_closure(random_braid_word(rng, 6, 14))
    args = _ports(d)
    assert np.array_equal(numba_kernels.state_sum_histogram(*args), numpy_kernels.state_sum_histogram(*args))


def _search_args(target, depth, leak_tol=1e-2):
    n_local, _, cols = _local(target)
    table = _letter_table(list(range(1, n_local)))
    gens = np.stack([np.asarray(braid_generator(x, n_local, 0)) for x in table]).astype(np.complex128)
    inverse = np.array([k ^ 1 for k in range(len(table))], dtype=np.int64)
    start = np.ascontiguousarray(np.eye(gens.shape[1], dtype=np.complex128)[:, cols])
    exact = len(cols) == gens.shape[1]
    return (gens, inverse, start, cols, np.ascontiguousarray(target.matrix.conj().T), depth, leak_tol, exact, 1e-12, 1e-9)


@pytest.mark.parametrize("scope,depth", [((1,), 5), ((1, 2), 2)])
def test_search_backends_agree(scope, depth):
    target = GateTarget(unitary_group.rvs(2 ** len(scope), random_state=depth), scope)
    args = _search_args(target, depth)
    a = numba_kernels.search_words(*args)
    b = numpy_kernels.search_words(*args)
    assert np.array_equal(a[0], b[0])
    assert np.allclose(a[1], b[1], rtol=0, atol=1e-12)
    assert np.allclose(a[2], b[2], rtol=0, atol=1e-12)
    assert np.array_equal(a[3], b[3]) and np.array_equal(a[4], b[4])


def test_phase_and_leakage_kernels_agree():
    rng = np.random.Generator(np.random.PCG64(2))
    for _ in range(5):
        k = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        k = np.ascontiguousarray(k / np.linalg.norm(k, 2))
        assert numba_kernels.phase_min_norm(k, False) == pytest.approx(numpy_kernels.phase_min_norm(k, False), abs=1e-10)
        assert numba_kernels.leakage_of(k) == pytest.approx(numpy_kernels.leakage_of(k), abs=1e-12)
        u = np.ascontiguousarray(unitary_group.rvs(3, random_state=rng))
        assert numba_kernels.phase_min_norm(u, True) == pytest.approx(numpy_kernels.phase_min_norm(u, True), abs=1e-12)


def test_env_flag_selects_numpy_and_output_matches():
    args = ("--json", "verify", "--random", "4", "--strands", "4", "--len", "6", "--seed", "5")
    code_np, out_np, _ = run_cli_subprocess(*args, env_extra={"TQCSIM_DISABLE_NUMBA": "1"})
    code_nb, out_nb, _ = run_cli_subprocess(*args, env_extra={"TQCSIM_DISABLE_NUMBA": ""})
    assert code_np == code_nb == 0
    assert out_np == out_nb
    code, out, _ = run_cli_subprocess_backend()
    assert out.strip() == b"numpy"


def run_cli_subprocess_backend():
    import os
    import subprocess
    import sys

    env = dict(os.environ, TQCSIM_DISABLE_NUMBA="1")
    proc = subprocess.run(
        [sys.executable, "-c", "from tqcsim import _accel; print(_accel.BACKEND)"], capture_output=True, env=env
    )
    return proc.returncode, proc.stdout, proc.stderr
