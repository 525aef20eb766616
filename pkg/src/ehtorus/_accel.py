"""Bounded enumeration of nonnegative lattice points, with an optional numba kernel.

Set EHTORUS_NO_NUMBA=1 to force the pure numpy path.
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("EHTORUS_NO_NUMBA", "") not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False


def _scan_numpy(d0: np.ndarray, P: np.ndarray, bound: int, first_only: bool) -> np.ndarray:
    k = P.shape[0]
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64) if (d0 >= 0).all() else np.zeros((0, 0), dtype=np.int64)
    axis = np.arange(-bound, bound + 1, dtype=np.int64)
    found = []
    # sweep the last coordinate in one vectorized block per prefix
    for prefix in np.ndindex(*([2 * bound + 1] * (k - 1))):
        c_pre = np.array(prefix, dtype=np.int64) - bound
        base = d0 + (c_pre @ P[:-1] if k > 1 else 0)
        cand = base[None, :] + axis[:, None] * P[-1][None, :]
        ok = (cand >= 0).all(axis=1)
        for j in np.nonzero(ok)[0]:
            found.append(np.concatenate([c_pre, [axis[j]]]))
            if first_only:
                return np.array(found, dtype=np.int64)
    return np.array(found, dtype=np.int64).reshape(-1, k)


if USE_NUMBA:

    @njit(cache=True)
    def _scan_numba(d0, P, bound, first_only):  # pragma: no cover - compiled
        k, R = P.shape
        side = 2 * bound + 1
        total = 1
        for _ in range(k):
            total *= side
        out = np.empty((total if not first_only else 1, k), dtype=np.int64)
        n_found = 0
        c = np.empty(k, dtype=np.int64)
        for idx in range(total):
            rem = idx
            for i in range(k - 1, -1, -1):  # lexicographic order
                c[i] = rem % side - bound
                rem //= side
            ok = True
            for j in range(R):
                v = d0[j]
                for i in range(k):
                    v += c[i] * P[i, j]
                if v < 0:
                    ok = False
                    break
            if ok:
                out[n_found, :] = c
                n_found += 1
                if first_only:
                    break
        return out[:n_found]


def enumerate_nonnegative(d0, basis, bound: int, first_only: bool = False, use_numba: bool | None = None):
    """All c in [-bound, bound]^k with d0 + c . basis >= 0, lexicographically sorted."""
    d0a = np.asarray(d0, dtype=np.int64)
    P = np.asarray(basis, dtype=np.int64).reshape(len(basis), len(d0))
    use = USE_NUMBA if use_numba is None else (use_numba and USE_NUMBA)
    if P.shape[0] == 0:
        return [()] if (d0a >= 0).all() else []
    if use:
        res = _scan_numba(d0a, P, int(bound), bool(first_only))
    else:
        res = _scan_numpy(d0a, P, int(bound), bool(first_only))
    sols = sorted(tuple(int(x) for x in row) for row in res)
    return sols[:1] if first_only else sols
