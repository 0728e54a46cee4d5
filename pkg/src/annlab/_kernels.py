"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The fallback is selected by setting the environment variable
``ANNLAB_NO_NUMBA=1`` before import (or automatically when numba is not
importable).  Both paths are exercised by the test suite and compared by
``benchmarks/bench_kernels.py``.

Bit packing convention: a d-bit vector occupies ``ceil(d/64)`` uint64
words; coordinate j lives in word ``j // 64`` at bit ``j % 64``.
"""

from __future__ import annotations

import os

import numpy as np

_WORD_BITS = 64


def pack_bits(rows: np.ndarray) -> np.ndarray:
    """Pack a (k, d) 0/1 array into a (k, ceil(d/64)) uint64 array."""
    rows = np.asarray(rows, dtype=np.uint8)
    if rows.ndim == 1:
        rows = rows[None, :]
    k, d = rows.shape
    nwords = (d + _WORD_BITS - 1) // _WORD_BITS
    packed = np.zeros((k, nwords), dtype=np.uint64)
    for j in range(d):
        w, b = divmod(j, _WORD_BITS)
        packed[:, w] |= rows[:, j].astype(np.uint64) << np.uint64(b)
    return packed


# ---------------------------------------------------------------------------
# Pure-numpy implementations
# ---------------------------------------------------------------------------

def _np_hamming_cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """All-pairs Hamming distances between packed rows of a and b."""
    xor = a[:, None, :] ^ b[None, :, :]
    return np.bitwise_count(xor).sum(axis=2, dtype=np.int64)


def _np_forcing_sweep(u: np.ndarray, v: np.ndarray, c_num: int, c_den: int) -> np.ndarray:
    """Exhaustive forcing sweep over all selectors x and all queries.

    u, v: packed (n, W) point pairs; queries are the u rows.  Returns an
    (n_violations, 2) int64 array of (x, i) pairs where the valid c-ANN
    answer set is not exactly {i}.
    """
    n = u.shape[0]
    violations = []
    for x in range(1 << n):
        pts = u.copy()
        for j in range(n):
            if (x >> j) & 1:
                pts[j] = v[j]
        dist = _np_hamming_cross(u, pts)  # dist[i, j] = Ham(q_i, p_j)
        dmin = dist.min(axis=1)
        valid = dist * c_den <= c_num * dmin[:, None]
        counts = valid.sum(axis=1)
        for i in range(n):
            if counts[i] != 1 or not valid[i, i]:
                violations.append((x, i))
    return np.array(violations, dtype=np.int64).reshape(-1, 2)


def _np_grover_amplitudes(m_size: int, marked: np.ndarray, k: int) -> np.ndarray:
    """Amplitude vector after k Grover iterates on an M-element register."""
    amp = np.full(m_size, 1.0 / np.sqrt(m_size))
    for _ in range(k):
        amp[marked] = -amp[marked]
        amp = (2.0 * amp.mean()) - amp
    return amp


def _np_bbbv_distances(m_size: int, q: int) -> np.ndarray:
    """Squared distance to the empty-oracle run, for every marked position s.

    Column s of the amplitude matrix evolves under the oracle marking {s};
    the empty oracle leaves the uniform state fixed.
    """
    amps = np.full((m_size, m_size), 1.0 / np.sqrt(m_size))
    idx = np.arange(m_size)
    for _ in range(q):
        amps[idx, idx] = -amps[idx, idx]
        amps = (2.0 * amps.mean(axis=0))[None, :] - amps
    ref = np.full(m_size, 1.0 / np.sqrt(m_size))
    return ((amps - ref[:, None]) ** 2).sum(axis=0)


# ---------------------------------------------------------------------------
# Numba fast path
# ---------------------------------------------------------------------------

def _build_numba_kernels():
    from numba import njit

    u64 = np.uint64

    @njit(cache=True, inline="always")
    def _popcount64(x):
        x = x - ((x >> u64(1)) & u64(0x5555555555555555))
        x = (x & u64(0x3333333333333333)) + ((x >> u64(2)) & u64(0x3333333333333333))
        x = (x + (x >> u64(4))) & u64(0x0F0F0F0F0F0F0F0F)
        return (x * u64(0x0101010101010101)) >> u64(56)

    @njit(cache=True)
    def hamming_cross(a, b):
        na, nw = a.shape
        nb = b.shape[0]
        out = np.empty((na, nb), dtype=np.int64)
        for i in range(na):
            for j in range(nb):
                acc = u64(0)
                for w in range(nw):
                    acc += _popcount64(a[i, w] ^ b[j, w])
                out[i, j] = np.int64(acc)
        return out

    @njit(cache=True)
    def forcing_sweep(u, v, c_num, c_den):
        n, nw = u.shape
        viol = np.empty(((1 << n) * n, 2), dtype=np.int64)
        nviol = 0
        dist = np.empty(n, dtype=np.int64)
        for x in range(1 << n):
            for i in range(n):
                dmin = np.int64(1 << 60)
                for j in range(n):
                    acc = u64(0)
                    if (x >> j) & 1:
                        for w in range(nw):
                            acc += _popcount64(u[i, w] ^ v[j, w])
                    else:
                        for w in range(nw):
                            acc += _popcount64(u[i, w] ^ u[j, w])
                    dist[j] = np.int64(acc)
                    if dist[j] < dmin:
                        dmin = dist[j]
                nvalid = 0
                self_valid = False
                for j in range(n):
                    if dist[j] * c_den <= c_num * dmin:
                        nvalid += 1
                        if j == i:
                            self_valid = True
                if nvalid != 1 or not self_valid:
                    viol[nviol, 0] = x
                    viol[nviol, 1] = i
                    nviol += 1
        return viol[:nviol].copy()

    @njit(cache=True)
    def grover_amplitudes(m_size, marked, k):
        amp = np.full(m_size, 1.0 / np.sqrt(m_size))
        for _ in range(k):
            for s in marked:
                amp[s] = -amp[s]
            mean2 = 2.0 * amp.mean()
            for j in range(m_size):
                amp[j] = mean2 - amp[j]
        return amp

    @njit(cache=True)
    def bbbv_distances(m_size, q):
        ref = np.full(m_size, 1.0 / np.sqrt(m_size))
        out = np.empty(m_size)
        for s in range(m_size):
            amp = np.full(m_size, 1.0 / np.sqrt(m_size))
            for _ in range(q):
                amp[s] = -amp[s]
                mean2 = 2.0 * amp.mean()
                for j in range(m_size):
                    amp[j] = mean2 - amp[j]
            d = 0.0
            for j in range(m_size):
                d += (amp[j] - ref[j]) ** 2
            out[s] = d
        return out

    return hamming_cross, forcing_sweep, grover_amplitudes, bbbv_distances


def _forcing_sweep_np(u, v, c_num, c_den):
    return _np_forcing_sweep(u, v, int(c_num), int(c_den))


USING_NUMBA = False
if os.environ.get("ANNLAB_NO_NUMBA", "0") != "1":
    try:
        (hamming_cross, forcing_sweep,
         grover_amplitudes, bbbv_distances) = _build_numba_kernels()
        USING_NUMBA = True
    except ImportError:
        pass

if not USING_NUMBA:
    hamming_cross = _np_hamming_cross
    forcing_sweep = _forcing_sweep_np
    grover_amplitudes = _np_grover_amplitudes
    bbbv_distances = _np_bbbv_distances
