"""Exact rational vectors, small dense matrices and an exact simplex.

Vectors are plain tuples of :class:`fractions.Fraction`; matrices are tuples of
row tuples.  Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

RatVec = tuple  # tuple[Fraction, ...]
RatMat = tuple  # tuple[RatVec, ...]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact computations")
    return Fraction(x)


def vec(xs: Iterable) -> RatVec:
    return tuple(to_fraction(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> RatMat:
    return tuple(vec(r) for r in rows)


def zero(n: int) -> RatVec:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> RatVec:
    return tuple(Fraction(int(j == i)) for j in range(n))


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def add(u: Sequence, v: Sequence) -> RatVec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> RatVec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> RatVec:
    return tuple(c * a for a in v)


def neg(v: Sequence) -> RatVec:
    return tuple(-a for a in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def matvec(m: Sequence[Sequence], v: Sequence) -> RatVec:
    return tuple(dot(row, v) for row in m)


def transpose(m: Sequence[Sequence], ncols: int | None = None) -> RatMat:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> RatMat:
    bt = transpose(b)
    return tuple(tuple(dot(r, c) for c in bt) for r in a)


def identity(n: int) -> RatMat:
    return tuple(unit(n, i) for i in range(n))


def primitive(v: Sequence) -> RatVec:
    """Positive rescaling of ``v`` to a primitive integer vector."""
    if is_zero(v):
        return vec(v)
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(Fraction(x // g) for x in ints)


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[RatVec]:
    """Basis of {x : row . x = 0 for all rows}, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return basis


def independent_rows(rows: Sequence[Sequence], ncols: int) -> list[int]:
    """Indices of a greedily chosen (first-come) maximal independent subset."""
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for idx, row in enumerate(rows):
        r = [Fraction(x) for x in row]
        for b, p in zip(basis, pivots):
            if r[p] != 0:
                f = r[p]
                r = [x - f * y for x, y in zip(r, b)]
        c = next((j for j, x in enumerate(r) if x != 0), None)
        if c is None:
            continue
        inv = 1 / r[c]
        r = [x * inv for x in r]
        for i, b in enumerate(basis):
            if b[c] != 0:
                f = b[c]
                basis[i] = [x - f * y for x, y in zip(b, r)]
        basis.append(r)
        pivots.append(c)
        chosen.append(idx)
        if len(chosen) == ncols:
            break
    return chosen


def inverse(m: Sequence[Sequence]) -> RatMat:
    n = len(m)
    aug = [list(r) + list(unit(n, i)) for i, r in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(r[n:]) for r in red)


def solve(m: Sequence[Sequence], b: Sequence) -> RatVec | None:
    """Some solution x of m x = b, or None when inconsistent."""
    ncols = len(m[0]) if m else 0
    aug = [list(r) + [bi] for r, bi in zip(m, b)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x)


def fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise TypeError(f"cannot read {s!r} as an exact rational")


# --------------------------------------------------------------------------
# exact LP feasibility
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    x: RatVec | None = None
    farkas: RatVec | None = None  # y with y.A >= 0 columnwise and y.b < 0


def feasible_point(a: Sequence[Sequence], b: Sequence) -> Feasibility:
    """Decide ``{x >= 0 : a x = b}`` exactly (phase-one simplex, Bland's rule).

    On infeasibility the returned ``farkas`` vector ``y`` satisfies
    ``y . a[:, j] >= 0`` for every column and ``y . b < 0``.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return Feasibility(True, zero(n))
    sign = [Fraction(-1) if bi < 0 else Fraction(1) for bi in b]
    # tableau rows: [A | I | b] with rows flipped so that b >= 0
    t = [
        [sign[i] * a[i][j] for j in range(n)]
        + [Fraction(int(k == i)) for k in range(m)]
        + [sign[i] * b[i]]
        for i in range(m)
    ]
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise sum of artificials; reduced cost row
    cost = [Fraction(0)] * n + [Fraction(1)] * m
    while True:
        # reduced costs r_j = c_j - c_B B^-1 A_j
        red = []
        for j in range(width):
            rj = cost[j] - sum((cost[basis[i]] * t[i][j] for i in range(m)), Fraction(0))
            red.append(rj)
        enter = next((j for j in range(width) if red[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if t[i][enter] > 0:
                ratio = t[i][width] / t[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded cannot happen for phase one
            raise ArithmeticError("phase-one LP unbounded")
        piv = t[leave][enter]
        t[leave] = [v / piv for v in t[leave]]
        for i in range(m):
            if i != leave and t[i][enter] != 0:
                f = t[i][enter]
                t[i] = [u - f * w for u, w in zip(t[i], t[leave])]
        basis[leave] = enter
    value = sum((t[i][width] for i in range(m) if basis[i] >= n), Fraction(0))
    if value == 0:
        x = [Fraction(0)] * n
        for i in range(m):
            if basis[i] < n:
                x[basis[i]] = t[i][width]
        return Feasibility(True, tuple(x))
    # duals of the flipped system: y' = 1 - reduced cost of artificial columns
    y_flipped = [1 - red[n + i] for i in range(m)]
    y = tuple(-sign[i] * y_flipped[i] for i in range(m))
    return Feasibility(False, farkas=y)
