"""Root data of compact connected groups: products of simple factors and tori.

Weights are stored internally as *Dynkin labels* (coefficients in the
fundamental weights, one block per simple factor) followed by coordinates
along the central directions.  Standard orthonormal coordinates are used at
the interface; ``to_std`` / ``from_std`` convert between the two.

Supported simple types: A_n, B_n, C_n, D_n (n >= 2), G2, F4, and ``U<n>`` for
the unitary group (A_{n-1} sharing its coordinates with the central circle).
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial, lcm, prod

import numpy as np

from . import kernels
from . import rational as rq
from .ratcone import Cone

# "double": unitary factors carry the lattice Z^n u (Z+1/2)^n of the double
# cover of U(n) that sits inside Spin(2n); otherwise as "weight".
LATTICES = ("weight", "root", "standard", "double")


class RootDatumError(ValueError):
    pass


def _simple_roots_std(kind: str, n: int) -> tuple[int, list[tuple]]:
    """(ambient width, simple roots) in standard coordinates."""
    F = Fraction
    e = lambda w, i: tuple(F(int(j == i)) for j in range(w))  # noqa: E731
    if kind == "A":
        w = n + 1
        return w, [rq.sub(e(w, i), e(w, i + 1)) for i in range(n)]
    if kind in "BCD":
        w = n
        roots = [rq.sub(e(w, i), e(w, i + 1)) for i in range(n - 1)]
        if kind == "B":
            roots.append(e(w, n - 1))
        elif kind == "C":
            roots.append(rq.scale(2, e(w, n - 1)))
        else:
            roots.append(rq.add(e(w, n - 2), e(w, n - 1)))
        return w, roots
    if kind == "G":
        return 3, [rq.vec((1, -1, 0)), rq.vec((-2, 1, 1))]
    if kind == "F":
        h = F(1, 2)
        return 4, [rq.vec((0, 1, -1, 0)), rq.vec((0, 0, 1, -1)), rq.vec((0, 0, 0, 1)), (h, -h, -h, -h)]
    raise RootDatumError(f"unsupported Cartan type {kind}{n}")


def _weyl_order(kind: str, n: int) -> int:
    return {
        "A": factorial(n + 1),
        "B": 2**n * factorial(n),
        "C": 2**n * factorial(n),
        "D": 2 ** (n - 1) * factorial(n),
        "G": 12,
        "F": 1152,
    }[kind]


@dataclass(frozen=True)
class SimpleFactor:
    kind: str
    rank: int
    std_offset: int
    std_width: int
    dynkin_offset: int
    unitary: bool = False  # U(n): carries its own central circle

    @property
    def label(self) -> str:
        return f"U{self.rank + 1}" if self.unitary else f"{self.kind}{self.rank}"


_FACTOR_RE = re.compile(r"^(?:([ABCDFG])(\d+)|U(\d+))$")


def parse_cartan_type(text: str) -> tuple[list[tuple[str, int, bool]], int]:
    """Parse ``"A2"``, ``"D4xD4"``, ``"A3+center1"``, ``"U3xU2"``, ``"+center2"``.

    ``"1"`` denotes the trivial group.

    Returns ``([(kind, rank, unitary), ...], extra_central_dim)``.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise RootDatumError("empty Cartan type")
    center = 0
    m = re.match(r"^(.*?)\+center(\d+)$", s)
    if m:
        s, center = m.group(1), int(m.group(2))
    factors = []
    if s == "1":  # the trivial group
        return [], center
    if s:
        parts = s.split("x")
        for part in parts:
            fm = _FACTOR_RE.match(part)
            if not fm:
                raise RootDatumError(f"unknown Cartan type component {part!r} in {text!r}")
            if fm.group(3):
                n = int(fm.group(3))
                if n < 1:
                    raise RootDatumError(f"U{n} is not a group")
                factors.append(("A", n - 1, True))
                continue
            kind, n = fm.group(1), int(fm.group(2))
            ok = {
                "A": n >= 1,
                "B": n >= 1,
                "C": n >= 1,
                "D": n >= 2,
                "G": n == 2,
                "F": n == 4,
            }[kind]
            if not ok:
                raise RootDatumError(f"invalid rank in Cartan type {part!r}")
            factors.append((kind, n, False))
    if not factors and center == 0:
        raise RootDatumError(f"empty Cartan type {text!r} (write '1' for the trivial group)")
    return factors, center


@dataclass(frozen=True)
class CentralDirection:
    std: tuple  # direction in standard coordinates
    unit: Fraction  # generator of the central lattice along this direction
    factor: int | None  # index of the unitary factor sharing coordinates, if any


class RootDatum:
    """Combinatorial skeleton of a compact connected group.

    ``rank`` counts simple roots; ``dim`` is the dimension of ``t*``
    (rank plus central dimension).
    """

    def __init__(self, cartan_type: str, lattice: str = "weight"):
        if lattice not in LATTICES:
            raise RootDatumError(f"unknown lattice {lattice!r}; choose from {LATTICES}")
        spec, extra_center = parse_cartan_type(cartan_type)
        self.cartan_type = cartan_type.strip()
        self.lattice = lattice
        factors: list[SimpleFactor] = []
        simple: list[tuple] = []  # (factor index, std root in own block)
        offset = 0
        doff = 0
        for kind, n, unitary in spec:
            if unitary and n == 0:
                width = 1
                roots = []
            else:
                width, roots = _simple_roots_std(kind, n)
            factors.append(SimpleFactor(kind, n, offset, width, doff, unitary))
            for r in roots:
                simple.append((len(factors) - 1, r))
            offset += width
            doff += n
        N = offset + extra_center
        self.ambient_dim = N
        self.factors = tuple(factors)
        self.rank = doff
        roots_std = []
        for fi, r in simple:
            f = factors[fi]
            v = [Fraction(0)] * N
            v[f.std_offset : f.std_offset + f.std_width] = r
            roots_std.append(tuple(v))
        self.simple_roots = tuple(roots_std)
        central = []
        for fi, f in enumerate(factors):
            if f.unitary:
                v = [Fraction(0)] * N
                for j in range(f.std_width):
                    v[f.std_offset + j] = Fraction(1)
                unit = Fraction(1, f.std_width) / (2 if lattice == "double" else 1)
                central.append(CentralDirection(tuple(v), unit, fi))
        for j in range(extra_center):
            central.append(CentralDirection(rq.unit(N, offset + j), Fraction(1), None))
        self.central = tuple(central)
        self.central_directions = tuple(c.std for c in central)
        self.dim = self.rank + len(central)
        self._build()

    # ------------------------------------------------------------------
    def _build(self) -> None:
        r = self.rank
        sr = self.simple_roots
        self.cartan = tuple(
            tuple(int(2 * rq.dot(sr[i], sr[j]) / rq.dot(sr[j], sr[j])) for j in range(r)) for i in range(r)
        )
        coroots = [rq.scale(2 / rq.dot(a, a), a) for a in sr]
        self.simple_coroots = tuple(coroots)
        if r:
            cinv = rq.inverse(self.cartan)
            fw = []
            for i in range(r):
                v = rq.zero(self.ambient_dim)
                for k in range(r):
                    v = rq.add(v, rq.scale(cinv[i][k], sr[k]))
                fw.append(v)
        else:
            fw = []
        self.fundamental_weights = tuple(fw)
        cols = list(fw) + list(self.central_directions)
        # to_std: ambient x dim
        self.to_std_matrix = tuple(
            tuple(c[row] for c in cols) for row in range(self.ambient_dim)
        )
        rows = list(coroots) + [rq.scale(1 / rq.dot(z, z), z) for z in self.central_directions]
        self.from_std_matrix = tuple(rows)
        self.inner_product = tuple(tuple(rq.dot(a, b) for b in cols) for a in cols)
        for z in self.central_directions:
            if any(rq.dot(z, a) != 0 for a in sr):
                raise RootDatumError("central directions must be orthogonal to the roots")

    # coordinates -------------------------------------------------------
    def to_std(self, w) -> tuple:
        return rq.matvec(self.to_std_matrix, rq.vec(w))

    def from_std(self, v) -> tuple:
        """Internal coordinates of a standard-coordinate weight.

        For A_n and G2 blocks the all-ones direction of the block is not part
        of ``t*`` and is projected away; any other residual is an error.
        """
        v = rq.vec(v)
        if len(v) != self.ambient_dim:
            raise RootDatumError(f"expected {self.ambient_dim} standard coordinates, got {len(v)}")
        w = rq.matvec(self.from_std_matrix, v)
        residual = rq.sub(v, self.to_std(w))
        for f in self.factors:
            seg = residual[f.std_offset : f.std_offset + f.std_width]
            if not f.unitary and f.kind in "AG" and len(set(seg)) == 1:
                continue
            if not rq.is_zero(seg):
                raise RootDatumError(f"{[rq.fmt(x) for x in v]} is not in the weight space")
        tail = residual[sum(f.std_width for f in self.factors) :]
        if not rq.is_zero(tail):
            raise RootDatumError(f"{[rq.fmt(x) for x in v]} is not in the weight space")
        return w

    def pair(self, u, v) -> Fraction:
        g = self.inner_product
        return sum((u[i] * g[i][j] * v[j] for i in range(self.dim) for j in range(self.dim) if u[i] and v[j]), Fraction(0))

    # roots -------------------------------------------------------------
    @cached_property
    def simple_roots_dynkin(self) -> tuple:
        return tuple(tuple(row) + (0,) * len(self.central) for row in self.cartan)

    @cached_property
    def positive_roots(self) -> tuple:
        """Positive roots in internal coordinates, sorted."""
        r = self.rank
        cinv = rq.inverse(self.cartan) if r else ()
        seen = set()
        queue = deque(tuple(row) for row in self.cartan)
        while queue:
            a = queue.popleft()
            if a in seen:
                continue
            seen.add(a)
            for i in range(r):
                b = tuple(a[j] - a[i] * self.cartan[i][j] for j in range(r))
                if b not in seen:
                    queue.append(b)
        pos = []
        for a in seen:
            q = [sum((Fraction(a[j]) * cinv[j][k] for j in range(r)), Fraction(0)) for k in range(r)]
            if all(x >= 0 for x in q):
                pos.append(tuple(a) + (0,) * len(self.central))
        return tuple(sorted(pos))

    @property
    def roots(self) -> tuple:
        pos = self.positive_roots
        return pos + tuple(tuple(-x for x in a) for a in pos)

    @cached_property
    def rho(self) -> tuple:
        return (1,) * self.rank + (0,) * len(self.central)

    @property
    def weyl_order(self) -> int:
        return prod(_weyl_order(f.kind, f.rank) for f in self.factors if f.rank)

    # Weyl group --------------------------------------------------------
    def reflect(self, i: int, w) -> tuple:
        c = w[i]
        if not c:
            return tuple(w)
        row = self.cartan[i]
        return tuple(w[j] - c * row[j] if j < self.rank else w[j] for j in range(self.dim))

    def is_dominant(self, w) -> bool:
        return all(w[i] >= 0 for i in range(self.rank))

    def to_dominant(self, w) -> tuple[tuple, list[int]]:
        """Dominant representative and the reflection word used (applied in order)."""
        w = tuple(w)
        word = []
        while True:
            i = next((k for k in range(self.rank) if w[k] < 0), None)
            if i is None:
                return w, word
            w = self.reflect(i, w)
            word.append(i)

    def apply_word(self, word, w) -> tuple:
        for i in word:
            w = self.reflect(i, w)
        return tuple(w)

    def weyl_orbit(self, w) -> list[tuple]:
        start = tuple(w)
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for i in range(self.rank):
                y = self.reflect(i, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def weyl_elements_signed(self) -> list[tuple[tuple, int]]:
        """Pairs ``(rho - w rho, sign(w))`` over the whole Weyl group."""
        start = self.rho
        sign = {start: 1}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for i in range(self.rank):
                y = self.reflect(i, x)
                if y not in sign:
                    sign[y] = -sign[x]
                    queue.append(y)
        return sorted((tuple(a - b for a, b in zip(start, y)), s) for y, s in sign.items())

    def weyl_matrices(self) -> list[tuple[tuple, list[int]]]:
        """All Weyl elements as (reduced word, image of rho); BFS order = length order."""
        start = self.rho
        words = {start: []}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for i in range(self.rank):
                y = self.reflect(i, x)
                if y not in words:
                    words[y] = [i] + words[x]
                    queue.append(y)
        return [(y, w) for y, w in words.items()]

    # chambers and lattices ---------------------------------------------
    def dominant_chamber(self) -> Cone:
        d = self.dim
        gens = [rq.unit(d, i) for i in range(self.rank)]
        for j in range(len(self.central)):
            u = rq.unit(d, self.rank + j)
            gens += [u, rq.neg(u)]
        return Cone.from_generators(gens, d)

    def semisimple_chamber(self) -> Cone:
        """``t*_+ & (t^s)*``: the chamber with all central coordinates zero."""
        d = self.dim
        return Cone.from_generators([rq.unit(d, i) for i in range(self.rank)], d)

    def chamber_std(self) -> Cone:
        c = self.dominant_chamber()
        return Cone.from_generators([self.to_std(g) for g in c.generators], self.ambient_dim)

    def in_lattice(self, w) -> bool:
        r = self.rank
        if any(Fraction(x).denominator != 1 for x in w[:r]):
            return False
        std = self.to_std(w)
        for f in self.factors:
            block = slice(f.dynkin_offset, f.dynkin_offset + f.rank)
            if f.unitary:
                seg = std[f.std_offset : f.std_offset + f.std_width]
                if self.lattice == "double":
                    seg = [2 * x for x in seg]
                    if any(x.denominator != 1 for x in seg) or len({int(x) % 2 for x in seg}) > 1:
                        return False
                elif any(x.denominator != 1 for x in seg):
                    return False
                continue
            if self.lattice == "root" and f.rank:
                a = [Fraction(x) for x in w[block]]
                cart = [row[block] for row in self.cartan[block]]
                q = rq.solve(rq.transpose(cart), a)
                if q is None or any(x.denominator != 1 for x in q):
                    return False
            if self.lattice == "standard" and f.kind in "BCD":
                seg = std[f.std_offset : f.std_offset + f.std_width]
                if any(x.denominator != 1 for x in seg):
                    return False
        for j, c in enumerate(self.central):
            if c.factor is None:
                x = Fraction(w[r + j]) / c.unit
                if x.denominator != 1:
                    return False
        return True

    def height(self, w) -> Fraction:
        h = sum((Fraction(x) for x in w[: self.rank]), Fraction(0))
        for j, c in enumerate(self.central):
            h += abs(Fraction(w[self.rank + j])) / c.unit
        return h

    def dominant_lattice_weights(self, bound: int) -> list[tuple]:
        """All dominant lattice weights of height <= bound, graded-lex order."""
        r = self.rank
        out = []
        for total in range(bound + 1):
            for labels in _compositions(total, r, bound):
                rest = bound - sum(labels)
                for cs in self._central_candidates(rest):
                    w = tuple(labels) + cs
                    if self.in_lattice(w) and self.height(w) <= bound:
                        out.append(w)
        seen = set()
        uniq = []
        for w in out:
            if w not in seen:
                seen.add(w)
                uniq.append(w)
        uniq.sort(key=lambda w: (self.height(w), tuple(-Fraction(x) for x in w)))
        return uniq

    def _central_candidates(self, rest):
        # central coordinates of height <= rest lie on the grid unit * Z
        grids = [[k * c.unit for k in range(-rest, rest + 1)] for c in self.central]
        yield from itertools.product(*grids)

    # representations ---------------------------------------------------
    def check_dominant(self, w) -> tuple:
        w = tuple(w)
        if len(w) != self.dim:
            raise RootDatumError(f"weight has {len(w)} coordinates, expected {self.dim}")
        if not self.is_dominant(w):
            raise RootDatumError(f"{w} is not dominant")
        if not self.in_lattice(w):
            raise RootDatumError(f"{w} is not in the {self.lattice} lattice")
        return tuple(int(x) if i < self.rank else Fraction(x) for i, x in enumerate(w))

    def weyl_dimension(self, w) -> int:
        w = self.check_dominant(w)
        num = Fraction(1)
        for a in self.positive_roots:
            lr = tuple(x + y for x, y in zip(w, self.rho))
            num *= self.pair(lr, a) / self.pair(self.rho, a)
        if num.denominator != 1:
            raise ArithmeticError("Weyl dimension formula returned a non-integer")
        return int(num)

    def factor_block(self, w, fi: int) -> tuple:
        f = self.factors[fi]
        return tuple(int(x) for x in w[f.dynkin_offset : f.dynkin_offset + f.rank])

    def central_part(self, w) -> tuple:
        return tuple(Fraction(x) for x in w[self.rank :])

    def weight_multiplicities(self, w) -> dict[tuple, int]:
        """Multiplicities of all weights of ``V_w`` in internal coordinates."""
        w = self.check_dominant(w)
        maps = [factor_weight_multiplicities(f.kind, f.rank, self.factor_block(w, i)) for i, f in enumerate(self.factors)]
        central = self.central_part(w)
        out: dict[tuple, int] = {(): 1}
        for m in maps:
            nxt = {}
            for k1, v1 in out.items():
                for k2, v2 in m.items():
                    nxt[k1 + k2] = v1 * v2
            out = nxt
        return {k + central: v for k, v in out.items()}

    def dominant_multiplicities(self, w) -> dict[tuple, int]:
        w = self.check_dominant(w)
        maps = [factor_dominant_multiplicities(f.kind, f.rank, self.factor_block(w, i)) for i, f in enumerate(self.factors)]
        out: dict[tuple, int] = {(): 1}
        for m in maps:
            out = {k1 + k2: v1 * v2 for k1, v1 in out.items() for k2, v2 in m.items()}
        central = self.central_part(w)
        return {k + central: v for k, v in out.items()}

    def multiplicity(self, w, mu) -> int:
        """Multiplicity of the (arbitrary) weight ``mu`` in ``V_w``."""
        dom, _ = self.to_dominant(tuple(mu))
        return self.dominant_multiplicities(w).get(dom, 0)

    def __repr__(self) -> str:
        return f"RootDatum({self.cartan_type!r}, lattice={self.lattice!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RootDatum) and (self.cartan_type, self.lattice) == (other.cartan_type, other.lattice)

    def __hash__(self) -> int:
        return hash((self.cartan_type, self.lattice))


def _compositions(total: int, parts: int, bound: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    # graded lexicographic: larger leading entries first
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1, bound):
            yield (first,) + rest


# --------------------------------------------------------------------------
# per-simple-factor data shared by all RootDatum instances
# --------------------------------------------------------------------------


@dataclass
class _FactorData:
    cartan: tuple
    gram: tuple  # integer-scaled Gram matrix of fundamental weights
    posroots: tuple
    heights: tuple  # height of each positive root
    dominant_cache: dict = field(default_factory=dict)
    array_cache: dict = field(default_factory=dict)
    full_cache: dict = field(default_factory=dict)
    _weyl: np.ndarray | None = None

    @property
    def weyl(self) -> np.ndarray:
        """All Weyl group elements as integer matrices acting on row vectors."""
        if self._weyl is None:
            r = len(self.cartan)
            gens = []
            for i in range(r):
                m = np.eye(r, dtype=np.int64)
                m[i, :] -= np.array(self.cartan[i], dtype=np.int64)
                gens.append(m)
            seen = {np.eye(r, dtype=np.int64).tobytes(): np.eye(r, dtype=np.int64)}
            frontier = list(seen.values())
            while frontier:
                nxt = []
                for m in frontier:
                    for g in gens:
                        y = m @ g
                        k = y.tobytes()
                        if k not in seen:
                            seen[k] = y
                            nxt.append(y)
                frontier = nxt
            self._weyl = np.stack(list(seen.values()))
        return self._weyl


_FACTOR_DATA: dict[tuple[str, int], _FactorData] = {}


def _factor_data(kind: str, n: int) -> _FactorData:
    key = (kind, n)
    if key not in _FACTOR_DATA:
        rd = RootDatum(f"{kind}{n}")
        g = rd.inner_product
        den = lcm(*(x.denominator for row in g for x in row))
        gram = tuple(tuple(int(x * den) for x in row) for row in g)
        pos = tuple(tuple(int(x) for x in a) for a in rd.positive_roots)
        cinv = rq.inverse(rd.cartan)
        heights = tuple(
            int(sum((Fraction(a[j]) * cinv[j][k] for j in range(n) for k in range(n)), Fraction(0))) for a in pos
        )
        _FACTOR_DATA[key] = _FactorData(rd.cartan, gram, pos, heights)
    return _FACTOR_DATA[key]


def _dominant_weights_below(lam: tuple, data: _FactorData) -> list[tuple]:
    """Dominant weights of ``V_lam`` ordered by depth below ``lam``.

    Depth (the height of ``lam - mu``) is path independent, and every
    dominant weight of ``V_lam`` is reachable from ``lam`` through dominant
    weights by subtracting positive roots.
    """
    depth = {lam: 0}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a, h in zip(data.posroots, data.heights):
                nu = tuple(x - y for x, y in zip(mu, a))
                if all(x >= 0 for x in nu) and nu not in depth:
                    depth[nu] = depth[mu] + h
                    nxt.append(nu)
        frontier = nxt
    return sorted(depth, key=lambda w: (depth[w], tuple(-x for x in w)))


def factor_dominant_multiplicities(kind: str, n: int, lam: tuple) -> dict[tuple, int]:
    lam = tuple(int(x) for x in lam)
    if n == 0:
        return {(): 1}
    data = _factor_data(kind, n)
    if lam not in data.dominant_cache:
        doms = _dominant_weights_below(lam, data)
        mults = kernels.freudenthal(data.cartan, data.gram, data.posroots, doms)
        data.dominant_cache[lam] = dict(zip(doms, mults))
    return data.dominant_cache[lam]


def factor_weight_arrays(kind: str, n: int, lam: tuple) -> tuple[np.ndarray, np.ndarray]:
    """All weights of ``V_lam`` (rows, Dynkin labels) and their multiplicities."""
    lam = tuple(int(x) for x in lam)
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64), np.ones(1, dtype=np.int64)
    data = _factor_data(kind, n)
    if lam not in data.array_cache:
        dom = factor_dominant_multiplicities(kind, n, lam)
        weyl = data.weyl
        keys, vals = [], []
        for mu, m in dom.items():
            orbit = np.unique(np.asarray(mu, dtype=np.int64) @ weyl, axis=0)
            keys.append(orbit)
            vals.append(np.full(len(orbit), m, dtype=np.int64))
        data.array_cache[lam] = (np.concatenate(keys), np.concatenate(vals))
    return data.array_cache[lam]


def factor_weight_multiplicities(kind: str, n: int, lam: tuple) -> dict[tuple, int]:
    lam = tuple(int(x) for x in lam)
    if n == 0:
        return {(): 1}
    data = _factor_data(kind, n)
    if lam not in data.full_cache:
        keys, vals = factor_weight_arrays(kind, n, lam)
        data.full_cache[lam] = {tuple(int(x) for x in k): int(v) for k, v in zip(keys, vals)}
    return data.full_cache[lam]


def clear_caches() -> None:
    for d in _FACTOR_DATA.values():
        d.dominant_cache.clear()
        d.array_cache.clear()
        d.full_cache.clear()
