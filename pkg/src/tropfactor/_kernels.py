"""Integer kernels with a numba path and a pure-numpy fallback.

The backend is picked once at import from ``TROPFACTOR_BACKEND``:

* ``numba``  -- require numba, fail loudly if missing
* ``numpy``  -- never touch numba
* ``auto``   -- numba when importable (default)

Every kernel is exact. Integer products go through int64 only when an a
priori bound proves that no intermediate value can overflow; otherwise the
caller's Python ints are used via object arrays.
"""

from __future__ import annotations

import os

import numpy as np

_REQUESTED = os.environ.get("TROPFACTOR_BACKEND", "auto").strip().lower()
if _REQUESTED not in {"auto", "numba", "numpy"}:
    raise ValueError(f"TROPFACTOR_BACKEND must be auto, numba or numpy, got {_REQUESTED!r}")

_njit = None
if _REQUESTED != "numpy":
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover - depends on environment
        if _REQUESTED == "numba":
            raise
        _njit = None

BACKEND = "numba" if _njit is not None else "numpy"

# |a_ij| * |b_jk| * inner_dim must stay below this to use int64.
_INT64_SAFE = 2**62


def _max_abs(rows) -> int:
    m = 0
    for row in rows:
        for x in row:
            ax = -x if x < 0 else x
            if ax > m:
                m = ax
    return m


def fits_int64(a_bound: int, b_bound: int, inner: int) -> bool:
    return a_bound * b_bound * max(inner, 1) < _INT64_SAFE


# --------------------------------------------------------------------------
# pure-numpy implementations
# --------------------------------------------------------------------------

def _matmul_np(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b


def _adjacent_pairs_np(z: np.ndarray, pos: np.ndarray, neg: np.ndarray,
                       min_common: int) -> np.ndarray:
    out = []
    n_rays = z.shape[0]
    for i in pos:
        zi = z[i]
        for j in neg:
            common = zi & z[j]
            if common.sum() < min_common:
                continue
            cols = np.flatnonzero(common)
            hits = np.all(z[:, cols], axis=1) if cols.size else np.ones(n_rays, dtype=bool)
            # i and j themselves always contain the common set
            if hits.sum() == 2:
                out.append((i, j))
    return np.array(out, dtype=np.int64).reshape(-1, 2)


def _tie_mask_np(values: np.ndarray) -> np.ndarray:
    return values == values.max(axis=1, keepdims=True)


# --------------------------------------------------------------------------
# numba implementations
# --------------------------------------------------------------------------

if _njit is not None:

    @_njit(cache=True)
    def _matmul_nb(a, b):  # pragma: no cover - compiled
        n, k = a.shape
        m = b.shape[1]
        out = np.zeros((n, m), dtype=np.int64)
        for i in range(n):
            for t in range(k):
                ait = a[i, t]
                if ait == 0:
                    continue
                for j in range(m):
                    out[i, j] += ait * b[t, j]
        return out

    @_njit(cache=True)
    def _adjacent_pairs_nb(z, pos, neg, min_common):  # pragma: no cover - compiled
        n_rays, n_cons = z.shape
        out = np.empty((pos.size * neg.size, 2), dtype=np.int64)
        count = 0
        common = np.zeros(n_cons, dtype=np.bool_)
        for a in range(pos.size):
            i = pos[a]
            for b in range(neg.size):
                j = neg[b]
                c = 0
                for t in range(n_cons):
                    common[t] = z[i, t] and z[j, t]
                    if common[t]:
                        c += 1
                if c < min_common:
                    continue
                adjacent = True
                for r in range(n_rays):
                    if r == i or r == j:
                        continue
                    contains = True
                    for t in range(n_cons):
                        if common[t] and not z[r, t]:
                            contains = False
                            break
                    if contains:
                        adjacent = False
                        break
                if adjacent:
                    out[count, 0] = i
                    out[count, 1] = j
                    count += 1
        return out[:count]

    @_njit(cache=True)
    def _tie_mask_nb(values):  # pragma: no cover - compiled
        n, m = values.shape
        out = np.zeros((n, m), dtype=np.bool_)
        for i in range(n):
            best = values[i, 0]
            for j in range(1, m):
                if values[i, j] > best:
                    best = values[i, j]
            for j in range(m):
                out[i, j] = values[i, j] == best
        return out


def _impl(name: str, backend: str | None):
    backend = backend or BACKEND
    if backend == "numba":
        if _njit is None:
            raise RuntimeError("numba backend requested but numba is unavailable")
        return globals()[f"_{name}_nb"]
    return globals()[f"_{name}_np"]


# --------------------------------------------------------------------------
# public entry points
# --------------------------------------------------------------------------

def int_matmul(a_rows, b_rows, backend: str | None = None) -> list[list[int]]:
    """Exact product of two integer matrices given as nested sequences."""
    a_rows = [list(r) for r in a_rows]
    b_rows = [list(r) for r in b_rows]
    if not a_rows or not b_rows:
        width = len(b_rows[0]) if b_rows else 0
        return [[0] * width for _ in a_rows]
    inner = len(b_rows)
    if fits_int64(_max_abs(a_rows), _max_abs(b_rows), inner):
        a = np.array(a_rows, dtype=np.int64)
        b = np.array(b_rows, dtype=np.int64)
        return _impl("matmul", backend)(a, b).tolist()
    a = np.array(a_rows, dtype=object)
    b = np.array(b_rows, dtype=object)
    return (a @ b).tolist()


def adjacent_pairs(z: np.ndarray, pos, neg, min_common: int,
                   backend: str | None = None) -> list[tuple[int, int]]:
    """Combinatorial adjacency test of the double description method.

    ``z`` is the boolean ray-by-constraint incidence matrix. A pair
    ``(i, j)`` with ``i`` in ``pos`` and ``j`` in ``neg`` is adjacent when
    their common zero set has at least ``min_common`` members and no third
    ray vanishes on all of it.
    """
    pos = np.asarray(pos, dtype=np.int64)
    neg = np.asarray(neg, dtype=np.int64)
    if pos.size == 0 or neg.size == 0:
        return []
    z = np.ascontiguousarray(z, dtype=np.bool_)
    pairs = _impl("adjacent_pairs", backend)(z, pos, neg, int(min_common))
    return [(int(i), int(j)) for i, j in pairs]


def tie_mask(values, backend: str | None = None) -> np.ndarray:
    """Row-wise boolean mask of entries attaining the row maximum."""
    rows = [list(r) for r in values]
    if fits_int64(_max_abs(rows), 1, 1):
        arr = np.array(rows, dtype=np.int64)
        return _impl("tie_mask", backend)(arr)
    arr = np.array(rows, dtype=object)
    best = arr.max(axis=1, keepdims=True)
    return np.asarray(arr == best, dtype=bool)
