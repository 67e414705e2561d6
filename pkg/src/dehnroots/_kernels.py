"""Hot loops: residue reachability over cone multisets, and the pair-degree scan.

Each kernel has a numba ``@njit`` version and a pure-numpy version with the
same signature.  The numba path is used when numba imports and the
environment variable ``DEHNROOTS_DISABLE_NUMBA`` is unset or ``0``; call
:func:`use_backend` to switch at runtime (tests and the benchmark do).
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit
except ImportError:  # pragma: no cover
    numba = None

__all__ = ["BACKEND", "use_backend", "reach_table", "best_pair", "available_backends"]


def _env_disabled() -> bool:
    return os.environ.get("DEHNROOTS_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")


# ---------------------------------------------------------------- numpy path

def _reach_table_numpy(n, wmax, lcm_idx, cone_div, cone_wt, shifts, nshift):
    ndiv = lcm_idx.shape[0]
    reach = np.zeros((wmax + 1, ndiv, n), dtype=np.uint8)
    reach[0, 0, 0] = 1
    mats = []
    for j in range(len(cone_div)):
        m = np.zeros((n, n), dtype=np.int32)
        r = np.arange(n)
        for s in shifts[j, : nshift[j]]:
            m[r, (r + s) % n] = 1
        mats.append(m)
    for w in range(1, wmax + 1):
        for j in range(len(cone_div)):
            w0 = w - cone_wt[j]
            if w0 < 0:
                continue
            src = reach[w0]
            if not src.any():
                continue
            hit = (src.astype(np.int32) @ mats[j]) > 0
            for d in range(ndiv):
                if hit[d].any():
                    dd = lcm_idx[d, cone_div[j]]
                    reach[w, dd] |= hit[d]
    return reach


def _best_pair_numpy(n1, k1, n2, k2, floor):
    best, bi, bj = floor, -1, -1
    if len(n2) == 0:
        return best, bi, bj
    g = np.gcd(n1[:, None], n2[None, :])
    L = (n1[:, None] // g) * n2[None, :]
    lhs = (L // n1[:, None]) * k1[:, None] + (L // n2[None, :]) * k2[None, :]
    ok = (lhs % L == 1 % L) & (L > best) & (L > 1)
    if ok.any():
        cand = np.where(ok, L, 0)
        flat = int(np.argmax(cand))
        bi, bj = divmod(flat, len(n2))
        best = int(cand[bi, bj])
    return best, bi, bj


# ---------------------------------------------------------------- numba path

if numba is not None:

    @njit(cache=True)
    def _reach_table_numba(n, wmax, lcm_idx, cone_div, cone_wt, shifts, nshift):
        ndiv = lcm_idx.shape[0]
        reach = np.zeros((wmax + 1, ndiv, n), dtype=np.uint8)
        reach[0, 0, 0] = 1
        for w in range(1, wmax + 1):
            for j in range(cone_div.shape[0]):
                w0 = w - cone_wt[j]
                if w0 < 0:
                    continue
                jd = cone_div[j]
                for d in range(ndiv):
                    dd = lcm_idx[d, jd]
                    for r in range(n):
                        if reach[w0, d, r]:
                            for t in range(nshift[j]):
                                reach[w, dd, (r + shifts[j, t]) % n] = 1
        return reach

    @njit(cache=True)
    def _gcd(a, b):
        while b:
            a, b = b, a % b
        return a

    @njit(cache=True)
    def _best_pair_numba(n1, k1, n2, k2, floor):
        best, bi, bj = floor, -1, -1
        for i in range(n1.shape[0]):
            a = n1[i]
            for j in range(n2.shape[0]):
                b = n2[j]
                L = a // _gcd(a, b) * b
                if L <= best or L <= 1:
                    continue
                if ((L // a) * k1[i] + (L // b) * k2[j]) % L == 1:
                    best, bi, bj = L, i, j
        return best, bi, bj


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if numba is not None else ("numpy",)


def use_backend(name: str) -> None:
    """Select ``"numba"`` or ``"numpy"`` for subsequent kernel calls."""
    global BACKEND, reach_table, best_pair
    if name not in available_backends():
        raise ValueError(f"backend {name!r} unavailable")
    BACKEND = name
    if name == "numba":
        reach_table, best_pair = _reach_table_numba, _best_pair_numba
    else:
        reach_table, best_pair = _reach_table_numpy, _best_pair_numpy


BACKEND = "numpy"
reach_table = _reach_table_numpy
best_pair = _best_pair_numpy
use_backend("numba" if numba is not None and not _env_disabled() else "numpy")
