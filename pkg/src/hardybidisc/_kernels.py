"""Hot loops for matrix assembly.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version with the same signature.  The numba path is used unless numba is
missing or ``HARDYBIDISC_DISABLE_NUMBA`` is set to a non-empty value other
than ``0``.  Both paths sum in the same frequency order, so they agree to
roundoff; each one is bit-stable run to run.

Coefficient lookups go through a dense grid ``grid[d1 + off1, d2 + off2]``
holding the symbol's coefficient at frequency ``(d1, d2)``; frequencies
outside the grid are zero.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _numba_requested() -> bool:
    flag = os.environ.get("HARDYBIDISC_DISABLE_NUMBA", "")
    return numba is not None and flag in ("", "0")


USE_NUMBA = _numba_requested()


# ---------------------------------------------------------------------------
# pure numpy
# ---------------------------------------------------------------------------

def _lookup_np(grid, off, d):
    """Gather ``grid`` at integer offsets ``d`` (shape (..., 2)); zero outside."""
    i = d[..., 0] + off[0]
    j = d[..., 1] + off[1]
    inside = (i >= 0) & (i < grid.shape[0]) & (j >= 0) & (j < grid.shape[1])
    out = np.zeros(d.shape[:-1], dtype=np.complex128)
    out[inside] = grid[i[inside], j[inside]]
    return out


def toeplitz_fill_np(rows, cols, grid, off):
    d = rows[:, None, :] - cols[None, :, :]
    return _lookup_np(grid, off, d)


def semicomm_fill_np(box, gidx, gval, fgrid, foff):
    K = box.shape[0]
    S = np.zeros((K, K), dtype=np.complex128)
    for c in range(K):
        m = box[c] + gidx
        neg = (m[:, 0] < 0) | (m[:, 1] < 0)
        if not neg.any():
            continue
        m = m[neg]
        gj = gval[neg]
        # rows a, terms j: f_{a - m_j}
        F = _lookup_np(fgrid, foff, box[:, None, :] - m[None, :, :])
        acc = np.zeros(K, dtype=np.complex128)
        for t in range(m.shape[0]):
            acc -= gj[t] * F[:, t]
        S[:, c] = acc
    return S


# ---------------------------------------------------------------------------
# numba
# ---------------------------------------------------------------------------

if numba is not None:

    @numba.njit(cache=True)
    def toeplitz_fill_nb(rows, cols, grid, off):
        R = rows.shape[0]
        C = cols.shape[0]
        n1, n2 = grid.shape
        out = np.zeros((R, C), dtype=np.complex128)
        for r in range(R):
            for c in range(C):
                i = rows[r, 0] - cols[c, 0] + off[0]
                j = rows[r, 1] - cols[c, 1] + off[1]
                if 0 <= i < n1 and 0 <= j < n2:
                    out[r, c] = grid[i, j]
        return out

    @numba.njit(cache=True)
    def semicomm_fill_nb(box, gidx, gval, fgrid, foff):
        K = box.shape[0]
        J = gidx.shape[0]
        n1, n2 = fgrid.shape
        S = np.zeros((K, K), dtype=np.complex128)
        for c in range(K):
            for a in range(K):
                acc = 0j
                for t in range(J):
                    m1 = box[c, 0] + gidx[t, 0]
                    m2 = box[c, 1] + gidx[t, 1]
                    if m1 >= 0 and m2 >= 0:
                        continue
                    i = box[a, 0] - m1 + foff[0]
                    j = box[a, 1] - m2 + foff[1]
                    if 0 <= i < n1 and 0 <= j < n2:
                        acc -= gval[t] * fgrid[i, j]
                S[a, c] = acc
        return S

else:  # pragma: no cover
    toeplitz_fill_nb = toeplitz_fill_np
    semicomm_fill_nb = semicomm_fill_np


def _prep(*arrays):
    return tuple(np.ascontiguousarray(a) for a in arrays)


def toeplitz_fill(rows, cols, grid, off):
    """Matrix with entry ``grid`` lookup at ``rows[r] - cols[c]``."""
    rows, cols, grid = _prep(
        np.asarray(rows, dtype=np.int64),
        np.asarray(cols, dtype=np.int64),
        np.asarray(grid, dtype=np.complex128),
    )
    off = np.asarray(off, dtype=np.int64)
    if USE_NUMBA:
        return toeplitz_fill_nb(rows, cols, grid, off)
    return toeplitz_fill_np(rows, cols, grid, off)


def semicomm_fill(box, gidx, gval, fgrid, foff):
    """Entries ``-sum_{m outside the first quadrant} g_{m-c} f_{a-m}``."""
    box, gidx, gval, fgrid = _prep(
        np.asarray(box, dtype=np.int64),
        np.asarray(gidx, dtype=np.int64).reshape(-1, 2),
        np.asarray(gval, dtype=np.complex128),
        np.asarray(fgrid, dtype=np.complex128),
    )
    foff = np.asarray(foff, dtype=np.int64)
    if USE_NUMBA:
        return semicomm_fill_nb(box, gidx, gval, fgrid, foff)
    return semicomm_fill_np(box, gidx, gval, fgrid, foff)
