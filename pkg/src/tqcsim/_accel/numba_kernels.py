"""numba implementations of the hot loops."""

import math

import numpy as np
from numba import njit, prange

STATE_BLOCK = 1 << 12


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _union(parent, x, y):
    rx = _find(parent, x)
    ry = _find(parent, y)
    if rx != ry:
        if rx < ry:
            parent[ry] = rx
        else:
            parent[rx] = ry
        return 1
    return 0


@njit(cache=True, parallel=True)
def state_sum_histogram(n_nodes, ports, a_vertical):
    """Histogram of (number of A-smoothings, number of loops) over all states.

    ``ports[j] = (bl, br, tl, tr)`` are the node ids at crossing j after all
    cup/cap joins have been merged.  Bit j of the state index selects the
    B-smoothing of crossing j.
    """
    n_cross = ports.shape[0]
    n_states = 1 << n_cross
    n_blocks = (n_states + STATE_BLOCK - 1) // STATE_BLOCK
    hist = np.zeros((n_blocks, n_cross + 1, n_nodes + 1), dtype=np.int64)
    for blk in prange(n_blocks):
        parent = np.empty(n_nodes, dtype=np.int64)
        lo = blk * STATE_BLOCK
        hi = min(lo + STATE_BLOCK, n_states)
        for s in range(lo, hi):
            for v in range(n_nodes):
                parent[v] = v
            merged = 0
            n_b = 0
            for j in range(n_cross):
                b = (s >> j) & 1
                n_b += b
                vertical = a_vertical[j] if b == 0 else not a_vertical[j]
                if vertical:
                    merged += _union(parent, ports[j, 0], ports[j, 2])
                    merged += _union(parent, ports[j, 1], ports[j, 3])
                else:
                    merged += _union(parent, ports[j, 0], ports[j, 1])
                    merged += _union(parent, ports[j, 2], ports[j, 3])
            hist[blk, n_cross - n_b, n_nodes - merged] += 1
    out = np.zeros((n_cross + 1, n_nodes + 1), dtype=np.int64)
    for blk in range(n_blocks):
        out += hist[blk]
    return out


@njit(cache=True)
def _gap_distance(eigs):
    m = eigs.shape[0]
    if m == 1:
        return 0.0
    th = np.empty(m)
    for k in range(m):
        th[k] = math.atan2(eigs[k].imag, eigs[k].real)
    th.sort()
    gap = th[0] + 2.0 * math.pi - th[m - 1]
    for k in range(1, m):
        g = th[k] - th[k - 1]
        if g > gap:
            gap = g
    half_arc = math.pi - 0.5 * gap
    if half_arc < 0.0:
        half_arc = 0.0
    return 2.0 * math.sin(0.5 * half_arc)


@njit(cache=True)
def _shifted_norm(k, phi):
    m = k.shape[0]
    d = k.copy()
    z = complex(math.cos(phi), math.sin(phi))
    for i in range(m):
        d[i, i] -= z
    h = d.conj().T @ d
    w = np.linalg.eigvalsh(h)
    top = w[m - 1]
    return math.sqrt(top) if top > 0.0 else 0.0


@njit(cache=True)
def phase_min_norm(k, unitary):
    """min over unit phases z of the spectral norm of ``k - z``."""
    if unitary:
        return _gap_distance(np.linalg.eigvals(k))
    n_grid = 64
    best = 0
    best_val = np.inf
    step = 2.0 * math.pi / n_grid
    for g in range(n_grid):
        val = _shifted_norm(k, g * step)
        if val < best_val:
            best_val = val
            best = g
    lo = (best - 1) * step
    hi = (best + 1) * step
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - inv_phi * (hi - lo)
    d = lo + inv_phi * (hi - lo)
    fc = _shifted_norm(k, c)
    fd = _shifted_norm(k, d)
    while hi - lo > 1e-12:
        if fc < fd:
            hi = d
            d = c
            fd = fc
            c = hi - inv_phi * (hi - lo)
            fc = _shifted_norm(k, c)
        else:
            lo = c
            c = d
            fc = fd
            d = lo + inv_phi * (hi - lo)
            fd = _shifted_norm(k, d)
    val = _shifted_norm(k, 0.5 * (lo + hi))
    return min(val, best_val)


@njit(cache=True)
def leakage_of(m):
    """Worst-case weight leaving the subspace: 1 - sigma_min(m)^2."""
    w = np.linalg.eigvalsh(m.conj().T @ m)
    leak = 1.0 - w[0]
    if leak < 0.0:
        leak = 0.0
    return leak


@njit(cache=True)
def _unitary2_distance(k00, k01, k10, k11):
    """Phase-minimised distance of a 2x2 unitary from the identity, closed form."""
    tr = k00 + k11
    det = k00 * k11 - k01 * k10
    root = np.sqrt(tr * tr - 4.0 * det)
    l1 = 0.5 * (tr + root)
    l2 = 0.5 * (tr - root)
    r = l1 * np.conj(l2)
    sep = abs(math.atan2(r.imag, r.real))
    return 2.0 * math.sin(0.25 * sep)


@njit(cache=True)
def score(cur, rows, target_h, leak_tol, exact_block, unitary_tol):
    """Return (distance, leakage) of a column block, distance = inf if leaky."""
    m = rows.shape[0]
    if exact_block and m == 2:
        a00 = cur[rows[0], 0]
        a01 = cur[rows[0], 1]
        a10 = cur[rows[1], 0]
        a11 = cur[rows[1], 1]
        k00 = target_h[0, 0] * a00 + target_h[0, 1] * a10
        k01 = target_h[0, 0] * a01 + target_h[0, 1] * a11
        k10 = target_h[1, 0] * a00 + target_h[1, 1] * a10
        k11 = target_h[1, 0] * a01 + target_h[1, 1] * a11
        return _unitary2_distance(k00, k01, k10, k11), 0.0
    blk = np.empty((m, m), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            blk[i, j] = cur[rows[i], j]
    if exact_block:
        leak = 0.0
    else:
        leak = leakage_of(blk)
        if leak > leak_tol:
            return np.inf, leak
    k = target_h @ blk
    return phase_min_norm(k, leak <= unitary_tol), leak


@njit(cache=True)
def _matmul_into(out, a, b):
    n = a.shape[0]
    p = a.shape[1]
    q = b.shape[1]
    for i in range(n):
        for j in range(q):
            acc = 0j
            for k in range(p):
                acc += a[i, k] * b[k, j]
            out[i, j] = acc


@njit(cache=True)
def _better(qd, length, word, best_qd, best_len, best_word):
    if qd != best_qd:
        return qd < best_qd
    if length != best_len:
        return length < best_len
    for i in range(length):
        if word[i] != best_word[i]:
            return word[i] < best_word[i]
    return False


@njit(cache=True, parallel=True)
def search_words(gens, inverse, start, rows, target_h, max_depth, leak_tol,
                 exact_block, unitary_tol, quantum):
    """Exhaustive search over freely reduced words, partitioned by first letter.

    Returns per-partition best (quantised distance, distance, leakage,
    length, word); the caller merges partitions with the same ordering.
    """
    n_gen = gens.shape[0]
    dim = start.shape[0]
    m = start.shape[1]
    big = np.iinfo(np.int64).max
    out_qd = np.full(n_gen, big, dtype=np.int64)
    out_d = np.full(n_gen, np.inf)
    out_leak = np.zeros(n_gen)
    out_len = np.zeros(n_gen, dtype=np.int64)
    out_word = np.zeros((n_gen, max(max_depth, 1)), dtype=np.int64)
    if max_depth < 1:
        return out_qd, out_d, out_leak, out_len, out_word
    for first in prange(n_gen):
        stack = np.zeros((max_depth + 1, dim, m), dtype=np.complex128)
        word = np.zeros(max_depth, dtype=np.int64)
        nxt = np.zeros(max_depth + 1, dtype=np.int64)
        best_qd = big
        best_d = np.inf
        best_leak = 0.0
        best_len = 0
        best_word = np.zeros(max_depth, dtype=np.int64)
        stack[0] = start
        _matmul_into(stack[1], gens[first], start)
        word[0] = first
        depth = 1
        nxt[1] = 0
        d, leak = score(stack[1], rows, target_h, leak_tol, exact_block, unitary_tol)
        if d < np.inf:
            qd = np.int64(math.floor(d / quantum + 0.5))
            if _better(qd, 1, word, best_qd, best_len, best_word):
                best_qd, best_d, best_leak, best_len = qd, d, leak, 1
                best_word[:1] = word[:1]
        while depth >= 1:
            if depth == max_depth or nxt[depth] >= n_gen:
                depth -= 1
                continue
            g = nxt[depth]
            nxt[depth] += 1
            if g == inverse[word[depth - 1]]:
                continue
            _matmul_into(stack[depth + 1], gens[g], stack[depth])
            word[depth] = g
            depth += 1
            nxt[depth] = 0
            d, leak = score(stack[depth], rows, target_h, leak_tol, exact_block, unitary_tol)
            if d < np.inf:
                qd = np.int64(math.floor(d / quantum + 0.5))
                if _better(qd, depth, word, best_qd, best_len, best_word):
                    best_qd, best_d, best_leak, best_len = qd, d, leak, depth
                    best_word[:depth] = word[:depth]
        out_qd[first] = best_qd
        out_d[first] = best_d
        out_leak[first] = best_leak
        out_len[first] = best_len
        out_word[first, :best_len] = best_word[:best_len]
    return out_qd, out_d, out_leak, out_len, out_word
