"""Compare the compiled kernels with the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from ascone import _kernels_py
from ascone.rootdata import _dominant_weights_below, _factor_data, factor_weight_arrays

try:
    from ascone import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

FREUDENTHAL_CASES = [("A", 3, (3, 2, 3)), ("B", 3, (2, 1, 2)), ("D", 4, (2, 1, 1, 2)), ("F", 4, (1, 0, 0, 1)), ("G", 2, (4, 3))]
PAIRING_CASES = [("A", 3, (4, 2, 4)), ("D", 4, (2, 1, 1, 2))]


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_freudenthal(impl, repeat: int) -> list[tuple[str, float, list]]:
    rows = []
    for kind, n, lam in FREUDENTHAL_CASES:
        data = _factor_data(kind, n)
        doms = _dominant_weights_below(lam, data)
        out = []
        t = best_of(lambda: out.append(impl.freudenthal(data.cartan, data.gram, data.posroots, doms)), repeat)
        rows.append((f"freudenthal {kind}{n} {lam}", t, list(out[-1])))
    return rows


def pairing_inputs(kind: str, n: int, lam: tuple):
    keys, vals = factor_weight_arrays(kind, n, lam)
    weyl = _factor_data(kind, n).weyl
    rho = np.ones(n, dtype=np.int64)
    points = rho @ weyl - rho
    signs = np.array([int(round(np.linalg.det(w))) for w in weyl], dtype=np.int64)
    base = 2 * int(np.abs(keys).max() + np.abs(points).max()) + 1
    strides = np.array([base**i for i in range(n)], dtype=np.int64)
    return points @ strides, signs, keys @ strides, vals, keys @ strides, vals


def bench_pairing(impl, repeat: int) -> list[tuple[str, float, int]]:
    rows = []
    for kind, n, lam in PAIRING_CASES:
        args = pairing_inputs(kind, n, lam)
        out = []
        t = best_of(lambda: out.append(int(impl.alternating_pairing(*args))), repeat)
        rows.append((f"alternating_pairing {kind}{n} {lam}", t, out[-1]))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = {"python": _kernels_py}
    if _compiled is not None:
        impls["compiled"] = _compiled
    results = {name: bench_freudenthal(impl, args.repeat) + bench_pairing(impl, args.repeat) for name, impl in impls.items()}
    print(f"{'kernel':<42}" + "".join(f"{n:>12}" for n in impls) + ("     speedup  agree" if len(impls) == 2 else ""))
    for i, (label, _, ref) in enumerate(results["python"]):
        line = f"{label:<42}" + "".join(f"{results[n][i][1] * 1e3:>10.2f}ms" for n in impls)
        if len(impls) == 2:
            py, cc = results["python"][i], results["compiled"][i]
            line += f"  {py[1] / cc[1]:>9.1f}x  {py[2] == cc[2]}"
        print(line)
    if _compiled is None:
        print("compiled extension not available; build with `pip install --no-build-isolation -e .`")


if __name__ == "__main__":
    main()
