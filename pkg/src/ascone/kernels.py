"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``ASCONE_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("ASCONE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "compiled"

# int64 kernel overflows long before this; larger modules use the fallback
_COMPILED_DIM_LIMIT = 10**12


def freudenthal(cartan, gram, posroots, doms, dim_hint: int = 0):
    if _impl is not _kernels_py and dim_hint > _COMPILED_DIM_LIMIT:
        return _kernels_py.freudenthal(cartan, gram, posroots, doms)
    return _impl.freudenthal(cartan, gram, posroots, doms)


def to_dominant(w, cartan):
    return _kernels_py.to_dominant(w, cartan)


_INT64_SAFE = 2**62


def alternating_pairing(points, signs, lkeys, lvals, rkeys, rvals) -> int:
    """``sum_p sign_p * sum_a L[a] * R[p - a]`` over integer weight rows.

    ``points``/``lkeys``/``rkeys`` are integer arrays with one weight per row;
    ``L`` and ``R`` are the sparse maps ``lkeys -> lvals`` and ``rkeys ->
    rvals``.  Rows are packed into int64 keys when that cannot overflow;
    otherwise an exact loop over tuples runs.
    """
    points = np.asarray(points, dtype=np.int64)
    lkeys = np.asarray(lkeys, dtype=np.int64)
    rkeys = np.asarray(rkeys, dtype=np.int64)
    if not len(points) or not len(lkeys) or not len(rkeys):
        return 0
    d = points.shape[1]
    m = max(int(np.abs(points).max(initial=0)) + int(np.abs(lkeys).max(initial=0)), int(np.abs(rkeys).max(initial=0)))
    base = 2 * m + 1
    biggest = int(np.abs(lvals).max()) * int(np.abs(rvals).max())
    fits = base**d < _INT64_SAFE and biggest * len(lkeys) * len(points) < _INT64_SAFE
    if not fits:
        right = {tuple(int(x) for x in k): int(v) for k, v in zip(rkeys, rvals)}
        total = 0
        for p, s in zip(points.tolist(), signs):
            for a, lv in zip(lkeys.tolist(), lvals):
                v = right.get(tuple(x - y for x, y in zip(p, a)))
                if v:
                    total += int(s) * int(lv) * v
        return total
    strides = np.array([base**i for i in range(d)], dtype=np.int64)
    return int(
        _impl.alternating_pairing(
            points @ strides, np.asarray(signs, dtype=np.int64),
            lkeys @ strides, np.asarray(lvals, dtype=np.int64),
            rkeys @ strides, np.asarray(rvals, dtype=np.int64),
        )
    )
