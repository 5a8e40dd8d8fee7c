"""Compare the numba and numpy kernel backends on the two hot loops.

    python3 benchmarks/bench_kernels.py [--crossings 16] [--depth 6] [--repeat 3]

Both backends are imported directly, so the environment flag is not needed
here; results are checked for exact agreement before timings are printed.
"""

import argparse
import time

import numpy as np

from tqcsim._accel import numba_kernels, numpy_kernels
from tqcsim.compiler import GateTarget, _letter_table, _local
from tqcsim.braidrep import braid_generator
from tqcsim.links import _build, plat_closure, random_braid_word


def _state_sum_inputs(n_cross, seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    # plat closure of a word with n_cross letters has exactly n_cross crossings
    d = plat_closure(random_braid_word(rng, 6, n_cross))
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
    a_vertical = np.array([c[4] == 1 for c in g.crossings], dtype=np.bool_)
    return len(touched), ports, a_vertical


def _search_inputs(depth, seed):
    from scipy.stats import unitary_group

    target = GateTarget(unitary_group.rvs(2, random_state=seed))
    n_local, _, cols = _local(target)
    table = _letter_table(list(range(1, n_local)))
    gens = np.stack([np.asarray(braid_generator(x, n_local, 0)) for x in table]).astype(np.complex128)
    inverse = np.array([k ^ 1 for k in range(len(table))], dtype=np.int64)
    start = np.ascontiguousarray(np.eye(gens.shape[1], dtype=np.complex128)[:, cols])
    target_h = np.ascontiguousarray(target.matrix.conj().T)
    return (gens, inverse, start, cols, target_h, depth, 1e-2, True, 1e-12, 1e-9)


def _best_time(fn, args, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--crossings", type=int, default=16)
    ap.add_argument("--depth", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cases = [
        ("state_sum_histogram", f"{args.crossings} crossings", _state_sum_inputs(args.crossings, args.seed)),
        ("search_words", f"depth {args.depth}", _search_inputs(args.depth, args.seed)),
    ]
    print(f"{'kernel':<22}{'size':<16}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, size, inputs in cases:
        jit_fn, np_fn = getattr(numba_kernels, name), getattr(numpy_kernels, name)
        jit_fn(*inputs)  # compile or load from cache
        t_np, r_np = _best_time(np_fn, inputs, args.repeat)
        t_nb, r_nb = _best_time(jit_fn, inputs, args.repeat)
        for a, b in zip(np.atleast_1d(r_np) if name == "state_sum_histogram" else r_np,
                        np.atleast_1d(r_nb) if name == "state_sum_histogram" else r_nb):
            if not np.array_equal(np.asarray(a), np.asarray(b)) and not np.allclose(a, b, rtol=0, atol=1e-12):
                raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<22}{size:<16}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
