"""Pure numpy/scipy versions of the kernels in ``numba_kernels``.

Same signatures and same results; used when numba is disabled or missing.
"""

import math

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

STATE_CHUNK = 1 << 14


def state_sum_histogram(n_nodes, ports, a_vertical):
    n_cross = ports.shape[0]
    n_states = 1 << n_cross
    out = np.zeros((n_cross + 1, n_nodes + 1), dtype=np.int64)
    if n_cross == 0:
        out[0, n_nodes] = 1
        return out
    shifts = np.arange(n_cross, dtype=np.int64)
    for lo in range(0, n_states, STATE_CHUNK):
        s = np.arange(lo, min(lo + STATE_CHUNK, n_states), dtype=np.int64)
        c = s.shape[0]
        bits = (s[:, None] >> shifts[None, :]) & 1
        vertical = np.where(bits == 0, a_vertical[None, :], ~a_vertical[None, :])
        # two joins per crossing: (bl, tl|br) and (br|tl, tr)
        u1 = np.broadcast_to(ports[:, 0], (c, n_cross))
        v1 = np.where(vertical, ports[None, :, 2], ports[None, :, 1])
        u2 = np.where(vertical, ports[None, :, 1], ports[None, :, 2])
        v2 = np.broadcast_to(ports[:, 3], (c, n_cross))
        offset = (np.arange(c, dtype=np.int64) * n_nodes)[:, None]
        rows = np.concatenate([(u1 + offset).ravel(), (u2 + offset).ravel()])
        cols = np.concatenate([(v1 + offset).ravel(), (v2 + offset).ravel()])
        graph = coo_matrix(
            (np.ones(rows.shape[0], dtype=np.int8), (rows, cols)),
            shape=(c * n_nodes, c * n_nodes),
        )
        _, labels = connected_components(graph, directed=False)
        labels = np.sort(labels.reshape(c, n_nodes), axis=1)
        loops = 1 + np.count_nonzero(np.diff(labels, axis=1), axis=1)
        n_a = n_cross - bits.sum(axis=1)
        np.add.at(out, (n_a, loops), 1)
    return out


def _gap_distance(eigs):
    if len(eigs) == 1:
        return 0.0
    th = np.sort(np.angle(eigs))
    gaps = np.append(np.diff(th), th[0] + 2.0 * math.pi - th[-1])
    half_arc = max(math.pi - 0.5 * gaps.max(), 0.0)
    return 2.0 * math.sin(0.5 * half_arc)


def _shifted_norm(k, phi):
    d = k - complex(math.cos(phi), math.sin(phi)) * np.eye(k.shape[0])
    top = np.linalg.eigvalsh(d.conj().T @ d)[-1]
    return math.sqrt(top) if top > 0.0 else 0.0


def phase_min_norm(k, unitary):
    if unitary:
        return _gap_distance(np.linalg.eigvals(k))
    n_grid = 64
    step = 2.0 * math.pi / n_grid
    vals = [_shifted_norm(k, g * step) for g in range(n_grid)]
    best = int(np.argmin(vals))
    best_val = vals[best]
    lo, hi = (best - 1) * step, (best + 1) * step
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - inv_phi * (hi - lo)
    d = lo + inv_phi * (hi - lo)
    fc, fd = _shifted_norm(k, c), _shifted_norm(k, d)
    while hi - lo > 1e-12:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - inv_phi * (hi - lo)
            fc = _shifted_norm(k, c)
        else:
            lo, c, fc = c, d, fd
            d = lo + inv_phi * (hi - lo)
            fd = _shifted_norm(k, d)
    return min(_shifted_norm(k, 0.5 * (lo + hi)), best_val)


def leakage_of(m):
    return max(1.0 - np.linalg.eigvalsh(m.conj().T @ m)[0], 0.0)


def _unitary2_distance(k):
    tr = k[0, 0] + k[1, 1]
    det = k[0, 0] * k[1, 1] - k[0, 1] * k[1, 0]
    root = np.sqrt(tr * tr - 4.0 * det + 0j)
    r = 0.5 * (tr + root) * np.conj(0.5 * (tr - root))
    return 2.0 * math.sin(0.25 * abs(math.atan2(r.imag, r.real)))


def score(cur, rows, target_h, leak_tol, exact_block, unitary_tol):
    blk = cur[rows, :]
    if exact_block and len(rows) == 2:
        return _unitary2_distance(target_h @ blk), 0.0
    leak = 0.0 if exact_block else leakage_of(blk)
    if leak > leak_tol:
        return np.inf, leak
    return phase_min_norm(target_h @ blk, leak <= unitary_tol), leak


def search_words(gens, inverse, start, rows, target_h, max_depth, leak_tol,
                 exact_block, unitary_tol, quantum):
    """Breadth-first version of the numba search with the same outputs."""
    n_gen = gens.shape[0]
    big = np.iinfo(np.int64).max
    out_qd = np.full(n_gen, big, dtype=np.int64)
    out_d = np.full(n_gen, np.inf)
    out_leak = np.zeros(n_gen)
    out_len = np.zeros(n_gen, dtype=np.int64)
    out_word = np.zeros((n_gen, max(max_depth, 1)), dtype=np.int64)
    if max_depth < 1:
        return out_qd, out_d, out_leak, out_len, out_word
    words = np.arange(n_gen, dtype=np.int64)[:, None]
    mats = np.einsum("gij,jk->gik", gens, start)
    best = [None] * n_gen
    for depth in range(1, max_depth + 1):
        for w, cur in zip(words, mats):
            d, leak = score(cur, rows, target_h, leak_tol, exact_block, unitary_tol)
            if d == np.inf:
                continue
            key = (int(math.floor(d / quantum + 0.5)), depth, tuple(w))
            f = int(w[0])
            if best[f] is None or key < best[f][0]:
                best[f] = (key, d, leak)
        if depth == max_depth:
            break
        ok = np.arange(n_gen)[None, :] != inverse[words[:, -1]][:, None]
        parent, gen = np.nonzero(ok)
        words = np.concatenate([words[parent], gen[:, None]], axis=1)
        mats = np.einsum("pij,pjk->pik", gens[gen], mats[parent])
    for f, item in enumerate(best):
        if item is None:
            continue
        (qd, length, w), d, leak = item
        out_qd[f], out_d[f], out_leak[f], out_len[f] = qd, d, leak, length
        out_word[f, :length] = w
    return out_qd, out_d, out_leak, out_len, out_word
