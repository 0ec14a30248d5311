"""Subgroup embeddings, branching rules, invariants and spherical monoids.

An :class:`Embedding` of ``K' c K`` is recorded by the restriction of weights
``t* -> t'*``, i.e. the transpose of the inclusion of Cartan subalgebras.  It is
entered in standard coordinates and converted to internal coordinates of both
root data.  Tori are root data without roots (``"+center<k>"``), the trivial
group is ``"1"``.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Sequence

import numpy as np

from . import kernels
from . import rational as rq
from .ratcone import Cone
from .rootdata import RootDatum, RootDatumError, factor_weight_arrays


class EmbeddingError(ValueError):
    pass


def _as_datum(x) -> RootDatum:
    return x if isinstance(x, RootDatum) else RootDatum(str(x))


@dataclass(frozen=True, eq=False)
class Embedding:
    """``K' = target`` inside ``K = source``.

    ``matrix`` maps internal source coordinates to internal target
    coordinates.  ``sigma_std`` (optional) is an involution of ``t*`` in
    standard source coordinates whose fixed group is ``K'``; it lets the
    symmetric-pair method compute the momentum cone.
    """

    source: RootDatum
    target: RootDatum
    matrix: tuple
    name: str = "raw"
    std_matrix: tuple | None = None
    sigma_std: tuple | None = None
    fixed_root_signs: dict | None = field(default=None, compare=False)

    # construction ----------------------------------------------------------
    @classmethod
    def from_std(cls, source, target, std_matrix, name: str = "raw", sigma_std=None, fixed_root_signs=None) -> "Embedding":
        """Build from a ``target.ambient_dim x source.ambient_dim`` matrix."""
        src, tgt = _as_datum(source), _as_datum(target)
        s = rq.mat(std_matrix) if std_matrix else ()
        if len(s) != tgt.ambient_dim or any(len(r) != src.ambient_dim for r in s):
            raise EmbeddingError(
                f"restriction matrix must be {tgt.ambient_dim} x {src.ambient_dim} for {tgt.cartan_type} in {src.cartan_type}"
            )
        cols = []
        for j in range(src.dim):
            img = rq.matvec(s, [row[j] for row in src.to_std_matrix]) if s else ()
            try:
                cols.append(tgt.from_std(img))
            except RootDatumError as exc:
                raise EmbeddingError(f"restriction does not land in the weight space of {tgt.cartan_type}: {exc}") from None
        m = tuple(tuple(cols[j][i] for j in range(src.dim)) for i in range(tgt.dim))
        sig = rq.mat(sigma_std) if sigma_std is not None else None
        e = cls(src, tgt, m, name, s, sig, fixed_root_signs)
        e.check_lattice()
        e.check_characters()
        return e

    @classmethod
    def from_internal(cls, source, target, matrix, name: str = "raw") -> "Embedding":
        src, tgt = _as_datum(source), _as_datum(target)
        m = rq.mat(matrix) if matrix else ()
        if len(m) != tgt.dim or any(len(r) != src.dim for r in m):
            raise EmbeddingError(f"internal restriction matrix must be {tgt.dim} x {src.dim}")
        std = rq.matmul(tgt.to_std_matrix, rq.matmul(m, src.from_std_matrix)) if tgt.dim and src.dim else tuple(
            (Fraction(0),) * src.ambient_dim for _ in range(tgt.ambient_dim)
        )
        e = cls(src, tgt, m, name, std)
        e.check_lattice()
        e.check_characters()
        return e

    # basic maps ------------------------------------------------------------
    def restrict(self, w) -> tuple:
        return rq.matvec(self.matrix, rq.vec(w)) if self.target.dim else ()

    def check_lattice(self) -> None:
        """Images of small lattice weights and of roots must be target lattice weights."""
        probes = list(self.source.dominant_lattice_weights(2)) + list(self.source.positive_roots)
        for w in probes:
            img = self.restrict(w)
            if not self.target.in_lattice(img):
                raise EmbeddingError(
                    f"restriction is not lattice-compatible: {w} maps to {[rq.fmt(x) for x in img]}"
                )

    def check_characters(self) -> None:
        """Restricted characters of small modules must be invariant under the target Weyl group."""
        t = self.target
        if not t.rank:
            return
        for w in self.source.dominant_lattice_weights(2):
            res = self.restricted_multiplicities(w)
            for k, m in res.items():
                mu = self.from_target_int(k)
                for i in range(t.rank):
                    if res.get(self.to_target_int(t.reflect(i, mu)), 0) != m:
                        raise EmbeddingError(
                            f"not a homomorphism: the restriction of V_{w} is not a character of {t.cartan_type}"
                        )

    @cached_property
    def sigma(self) -> tuple | None:
        """The involution in internal source coordinates."""
        if self.sigma_std is None:
            return None
        src = self.source
        return rq.matmul(src.from_std_matrix, rq.matmul(self.sigma_std, src.to_std_matrix))

    @property
    def is_symmetric(self) -> bool:
        return self.sigma_std is not None

    # integer coordinates on the target ------------------------------------
    @cached_property
    def _target_scale(self) -> tuple:
        t = self.target
        return (Fraction(1),) * t.rank + tuple(1 / c.unit for c in t.central)

    def to_target_int(self, w) -> tuple:
        out = []
        for x, s in zip(w, self._target_scale):
            y = Fraction(x) * s
            if y.denominator != 1:
                raise EmbeddingError(f"{[rq.fmt(v) for v in w]} is not a lattice weight of {self.target.cartan_type}")
            out.append(int(y))
        return tuple(out)

    def from_target_int(self, k) -> tuple:
        t = self.target
        return tuple(int(x) for x in k[: t.rank]) + tuple(Fraction(x) / s for x, s in zip(k[t.rank :], self._target_scale[t.rank :]))

    @cached_property
    def _blocks(self) -> list[tuple[int, np.ndarray, int]]:
        """Per source factor: (index, integer matrix D*M_i in target int coords, D)."""
        out = []
        scale = self._target_scale
        for fi, f in enumerate(self.source.factors):
            if not f.rank:
                continue
            cols = range(f.dynkin_offset, f.dynkin_offset + f.rank)
            block = [[self.matrix[i][j] * scale[i] for j in cols] for i in range(self.target.dim)]
            den = lcm(1, *(x.denominator for row in block for x in row))
            ints = np.array([[int(x * den) for x in row] for row in block], dtype=np.int64).reshape(self.target.dim, f.rank)
            out.append((fi, ints, den))
        return out

    def _central_shift(self, w) -> tuple:
        src = self.source
        scale = self._target_scale
        shift = []
        for i in range(self.target.dim):
            v = sum((self.matrix[i][src.rank + j] * Fraction(w[src.rank + j]) for j in range(len(src.central))), Fraction(0))
            shift.append(v * scale[i])
        if any(x.denominator != 1 for x in shift):
            raise EmbeddingError("central character does not restrict to a lattice weight")
        return tuple(int(x) for x in shift)

    @cached_property
    def _factor_cache(self) -> dict:
        return {}

    def _restricted_factor_map(self, fi: int, ints: np.ndarray, den: int, lam: tuple) -> tuple[np.ndarray, np.ndarray]:
        key = (fi, lam)
        cache = self._factor_cache
        if key not in cache:
            f = self.source.factors[fi]
            keys, vals = factor_weight_arrays(f.kind, f.rank, lam)
            img = keys @ ints.T
            if den != 1:
                if np.any(img % den):
                    raise EmbeddingError(f"a weight of factor {f.label} with highest weight {lam} restricts outside the lattice")
                img //= den
            cache[key] = _aggregate(img, vals)
        return cache[key]

    def _factor_maps(self, w) -> list[tuple[np.ndarray, np.ndarray]]:
        return [self._restricted_factor_map(fi, ints, den, self.source.factor_block(w, fi)) for fi, ints, den in self._blocks]

    def _restricted_arrays(self, w) -> tuple[np.ndarray, np.ndarray]:
        shift = np.array([self._central_shift(w)], dtype=np.int64).reshape(1, self.target.dim)
        acc = (shift, np.ones(1, dtype=np.int64))
        for m in self._factor_maps(w):
            acc = _convolve(acc, m)
        return acc

    def restricted_multiplicities(self, w) -> dict[tuple, int]:
        """Weight multiplicities of ``V_w`` restricted to ``K'`` (target int coords)."""
        w = self.source.check_dominant(w)
        if self.target.dim == 0:
            return {(): self.source.weyl_dimension(w)}
        keys, vals = self._restricted_arrays(w)
        return {tuple(int(x) for x in k): int(v) for k, v in zip(keys, vals)}

    def __repr__(self) -> str:
        return f"Embedding({self.name!r}: {self.target.cartan_type} in {self.source.cartan_type})"


def _aggregate(keys: np.ndarray, vals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if keys.shape[1] == 0:
        return keys[:1], np.array([vals.sum()], dtype=vals.dtype)
    uniq, inv = np.unique(keys, axis=0, return_inverse=True)
    out = np.zeros(len(uniq), dtype=vals.dtype)
    np.add.at(out, inv.reshape(-1), vals)
    return uniq, out


def _convolve(a, b):
    ka, va = a
    kb, vb = b
    keys = (ka[:, None, :] + kb[None, :, :]).reshape(-1, ka.shape[1])
    vals = (va[:, None] * vb[None, :]).reshape(-1)
    return _aggregate(keys, vals)


# --------------------------------------------------------------------------
# branching
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BranchingResult:
    multiplicities: dict  # target internal weight -> multiplicity
    dims: dict  # target internal weight -> dimension of the K'-type

    def total_dimension(self) -> int:
        return sum(m * self.dims[k] for k, m in self.multiplicities.items())


def branch(e: Embedding, lam) -> BranchingResult:
    """Decompose ``V_lam|K'`` by stripping highest weights."""
    t = e.target
    res = e.restricted_multiplicities(lam)
    rank = t.rank
    dom = {k: v for k, v in res.items() if all(x >= 0 for x in k[:rank])}
    # a functional positive on the positive roots of K'
    rho_pair = [t.pair(rq.unit(t.dim, i), t.rho) for i in range(rank)] if rank else []
    out: dict = {}
    dims: dict = {}
    while dom:
        top = max(dom, key=lambda k: (sum(Fraction(k[i]) * rho_pair[i] for i in range(rank)), k))
        m = dom[top]
        if m < 0:
            raise EmbeddingError(f"negative multiplicity {m} at {top}: invalid embedding data")
        nu = e.from_target_int(top)
        out[nu] = m
        sub = t.dominant_multiplicities(nu)
        dims[nu] = t.weyl_dimension(nu)
        for k, v in sub.items():
            ki = e.to_target_int(k)
            left = dom.get(ki, 0) - m * v
            if left < 0:
                raise EmbeddingError(f"negative multiplicity while stripping {top}: invalid embedding data")
            if left:
                dom[ki] = left
            else:
                dom.pop(ki, None)
    return BranchingResult(dict(sorted(out.items())), dims)


@dataclass(frozen=True)
class _SignedPoints:
    points: np.ndarray
    signs: np.ndarray


def _signed_points(e: Embedding) -> _SignedPoints:
    cache = e.__dict__.setdefault("_signed_cache", [])
    if not cache:
        pts, sg = [], []
        for p, s in e.target.weyl_elements_signed():
            pts.append(e.to_target_int(p))
            sg.append(s)
        arr = np.array(pts, dtype=np.int64).reshape(len(pts), e.target.dim)
        cache.append(_SignedPoints(arr, np.array(sg, dtype=np.int64)))
    return cache[0]


def invariant_dimension(e: Embedding, lam) -> int:
    """``dim Hom_{K'}(1, V_lam)`` via the alternating Weyl sum for ``K'``.

    The multiplicity of the trivial type in a ``W'``-invariant character with
    weight multiplicities ``m`` is ``sum_w sign(w) m(rho' - w rho')``.
    """
    lam = e.source.check_dominant(lam)
    if e.target.dim == 0:
        return e.source.weyl_dimension(lam)
    sp = _signed_points(e)
    shift = np.array([e._central_shift(lam)], dtype=np.int64).reshape(1, e.target.dim)
    maps = e._factor_maps(lam)
    if not maps:
        hit = np.all(sp.points == shift, axis=1)
        return int(sp.signs[hit].sum())
    left = (shift, np.ones(1, dtype=np.int64))
    for m in maps[:-1]:
        left = _convolve(left, m)
    return kernels.alternating_pairing(sp.points, sp.signs, left[0], left[1], maps[-1][0], maps[-1][1])


# --------------------------------------------------------------------------
# spherical monoid
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SphericalMonoid:
    generators: tuple  # minimal generators, internal source coordinates
    elements: tuple  # every spherical weight found below the bound
    saturated: bool
    bound: int

    def cone(self, dim: int) -> Cone:
        return Cone.from_generators(self.generators, dim)


def minimal_generators(elements: Sequence[tuple]) -> list[tuple]:
    """Elements that are not a sum of two nonzero elements of the set."""
    pool = {tuple(Fraction(x) for x in w) for w in elements}
    nonzero = sorted(w for w in pool if any(w))
    gens = []
    for w in nonzero:
        if not any(
            any(v) and any(x != y for x, y in zip(v, w)) and tuple(x - y for x, y in zip(w, v)) in pool
            for v in nonzero
        ):
            gens.append(w)
    return gens


def in_monoid(w: tuple, gens: Sequence[tuple], rd: RootDatum) -> bool:
    """Is ``w`` a ``Z>=0``-combination of ``gens``?  (gens are dominant.)"""
    target = tuple(Fraction(x) for x in w)
    seen = set()
    stack = [target]
    h = rd.height
    while stack:
        x = stack.pop()
        if not any(x):
            return True
        if x in seen:
            continue
        seen.add(x)
        for g in gens:
            y = tuple(a - b for a, b in zip(x, g))
            if rd.is_dominant(y) and h(y) < h(x) and y not in seen:
                stack.append(y)
    return False


def spherical_monoid(e: Embedding, bound: int, jobs: int = 1) -> SphericalMonoid:
    """Spherical weights of ``K/K'`` with height at most ``bound``."""
    if bound <= 0:
        raise ValueError("bound must be a positive integer")
    rd = e.source
    candidates = rd.dominant_lattice_weights(bound)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            dims = list(pool.map(lambda w: invariant_dimension(e, w), candidates))
    else:
        dims = [invariant_dimension(e, w) for w in candidates]
    found = [tuple(Fraction(x) for x in w) for w, d in zip(candidates, dims) if d > 0]
    gens = minimal_generators(found)
    half = Fraction(bound, 2)
    early = [g for g in gens if rd.height(g) <= half]
    # an empty find proves nothing unless K' = K (equal dimensions)
    whole = len(rd.roots) + rd.dim == len(e.target.roots) + e.target.dim
    nonempty = whole or any(any(w) for w in found)
    saturated = nonempty and all(in_monoid(w, early, rd) for w in found)
    return SphericalMonoid(tuple(gens), tuple(sorted(found)), saturated, bound)


# --------------------------------------------------------------------------
# presets
# --------------------------------------------------------------------------

_H = Fraction(1, 2)
# orthonormal weights of a half-spin representation of Spin(8)
_SPIN8_PLUS = (
    (_H, _H, _H, _H),
    (_H, _H, -_H, -_H),
    (_H, -_H, _H, -_H),
    (_H, -_H, -_H, _H),
)
# the vector weights e_i of SO(8) read as spin weights of Spin(7)
_SPIN7_SPIN = (
    (_H, _H, _H),
    (_H, _H, -_H),
    (_H, -_H, _H),
    (_H, -_H, -_H),
)


def _ident(n: int) -> tuple:
    return rq.identity(n)


def _factor_type(rd: RootDatum) -> tuple[str, int, int]:
    if len(rd.factors) != 1 or rd.ambient_dim != rd.factors[0].std_width:
        raise EmbeddingError(f"preset needs a single simple factor, got {rd.cartan_type}")
    f = rd.factors[0]
    return ("U" if f.unitary else f.kind), f.rank, f.std_width


def _torus_embedding(rd: RootDatum, which: str) -> Embedding:
    r, c = rd.rank, len(rd.central)
    inv_units = [1 / z.unit for z in rd.central]
    if which == "torus":
        rows = [rq.unit(rd.dim, i) for i in range(r)] + [rq.scale(inv_units[j], rq.unit(rd.dim, r + j)) for j in range(c)]
    elif which == "derived-torus":
        rows = [rq.unit(rd.dim, i) for i in range(r)]
    else:  # center
        rows = [rq.scale(inv_units[j], rq.unit(rd.dim, r + j)) for j in range(c)]
    target = f"+center{len(rows)}" if rows else "1"
    e = Embedding.from_internal(rd, target, rows, which)
    return e


def _pair_swap_negate(n: int) -> tuple:
    s = [[Fraction(0)] * n for _ in range(n)]
    for k in range(0, n - 1, 2):
        s[k][k + 1] = Fraction(-1)
        s[k + 1][k] = Fraction(-1)
    if n % 2:
        s[n - 1][n - 1] = Fraction(1)
    return tuple(tuple(r) for r in s)


def preset_embedding(name: str, source) -> Embedding:
    """Named subgroup of the group ``source`` (a RootDatum or type string)."""
    rd = _as_datum(source)
    name = name.strip()
    N = rd.ambient_dim
    if name in ("identity", "whole"):
        return Embedding.from_std(rd, rd.cartan_type, _ident(N), name, sigma_std=_ident(N))
    if name == "trivial":
        return Embedding.from_std(rd, "1", (), name)
    if name in ("torus", "derived-torus", "center"):
        return _torus_embedding(rd, name)
    if name == "diagonal":
        if len(rd.factors) != 2 or rd.factors[0].label != rd.factors[1].label or len(rd.central) != sum(f.unitary for f in rd.factors):
            raise EmbeddingError(f"diagonal preset needs a type of the form HxH, got {rd.cartan_type}")
        w = rd.factors[0].std_width
        m = [[Fraction(int(j == i or j == i + w)) for j in range(N)] for i in range(w)]
        swap = [[Fraction(int(j == (i + w) % N)) for j in range(N)] for i in range(N)]
        return Embedding.from_std(rd, rd.factors[0].label, m, name, sigma_std=swap)
    if name == "triality-twisted-diagonal":
        if rd.cartan_type.replace(" ", "") != "D4xD4":
            raise EmbeddingError("triality-twisted-diagonal lives in D4xD4")
        p = tuple(tuple(_SPIN8_PLUS[i][j] for i in range(4)) for j in range(4))  # column i = s_i
        m = [list(rq.unit(4, i)) + list(p[i]) for i in range(4)]
        z = [[Fraction(0)] * 4 for _ in range(4)]
        sigma = [list(z[i]) + list(p[i]) for i in range(4)] + [list(p[i]) + list(z[i]) for i in range(4)]
        return Embedding.from_std(rd, "D4", m, name, sigma_std=sigma)
    kind, n, w = _factor_type(rd)
    if name == "so(2n-1)-in-so(2n)":
        if kind != "D":
            raise EmbeddingError(f"{name} needs type D_n, got {rd.cartan_type}")
        m = [rq.unit(n, i) for i in range(n - 1)]
        sigma = [rq.scale(-1 if i == n - 1 else 1, rq.unit(n, i)) for i in range(n)]
        return Embedding.from_std(rd, f"B{n - 1}", m, name, sigma_std=sigma)
    if name == "u(n)-in-so(2n)":
        if kind != "D":
            raise EmbeddingError(f"{name} needs type D_n, got {rd.cartan_type}")
        # inside Spin(2n) the preimage of U(n) is a double cover
        target = RootDatum(f"U{n}", "double" if rd.lattice == "weight" else "weight")
        return Embedding.from_std(rd, target, _ident(n), name, sigma_std=_pair_swap_negate(n))
    if name == "so(n)-in-su(n)":
        if kind != "A" or n < 2:
            raise EmbeddingError(f"{name} needs type A_(n-1) with n >= 3, got {rd.cartan_type}")
        size = n + 1
        half = size // 2
        target = f"B{half}" if size % 2 else f"D{half}"
        m = [tuple(Fraction(int(j == k) - int(j == size - 1 - k)) for j in range(size)) for k in range(half)]
        return Embedding.from_std(rd, target, m, name, sigma_std=tuple(rq.scale(-1, r) for r in rq.identity(size)))
    if name == "spin7-triality-in-so8":
        if (kind, n) != ("D", 4):
            raise EmbeddingError(f"{name} needs type D4, got {rd.cartan_type}")
        m = [tuple(_SPIN7_SPIN[i][j] for i in range(4)) for j in range(3)]
        sigma = [tuple(Fraction(int(i == j)) - _H for j in range(4)) for i in range(4)]
        return Embedding.from_std(rd, "B3", m, name, sigma_std=sigma)
    raise EmbeddingError(f"unknown embedding preset {name!r}; known: {', '.join(PRESETS)}")


PRESETS = (
    "identity",
    "whole",
    "trivial",
    "torus",
    "derived-torus",
    "center",
    "diagonal",
    "triality-twisted-diagonal",
    "so(2n-1)-in-so(2n)",
    "u(n)-in-so(2n)",
    "so(n)-in-su(n)",
    "spin7-triality-in-so8",
)

# how many simple factors a preset consumes inside a product
_PRESET_WIDTH = {"diagonal": 2, "triality-twisted-diagonal": 2}


def _split_type(rd: RootDatum) -> tuple[list[str], int]:
    extra = len(rd.central) - sum(f.unitary for f in rd.factors)
    return [f.label for f in rd.factors], extra


def _join_type(labels: list[str], extra: int) -> str:
    s = "x".join(labels) if labels else ""
    if extra:
        return f"{s}+center{extra}"
    return s or "1"


def _ambient_layout(parts: list[RootDatum]) -> list[list[int]]:
    """Positions of each part's ambient coordinates inside the product."""
    widths = [sum(f.std_width for f in p.factors) for p in parts]
    extras = [p.ambient_dim - w for p, w in zip(parts, widths)]
    total_w = sum(widths)
    pos, out, cpos = 0, [], total_w
    for w, x in zip(widths, extras):
        out.append(list(range(pos, pos + w)) + list(range(cpos, cpos + x)))
        pos += w
        cpos += x
    return out


def product_embedding(parts: Sequence[Embedding], name: str | None = None) -> Embedding:
    """``K'_1 x ... x K'_m`` inside ``K_1 x ... x K_m``."""
    if not parts:
        raise EmbeddingError("empty product of embeddings")
    if len(parts) == 1:
        return parts[0]
    srcs = [p.source for p in parts]
    tgts = [p.target for p in parts]
    s_labels, s_extra = [], 0
    t_labels, t_extra = [], 0
    for s, t in zip(srcs, tgts):
        a, b = _split_type(s)
        s_labels += a
        s_extra += b
        a, b = _split_type(t)
        t_labels += a
        t_extra += b
    src = RootDatum(_join_type(s_labels, s_extra), srcs[0].lattice)
    tgt = RootDatum(_join_type(t_labels, t_extra), "double" if any(t.lattice == "double" for t in tgts) else "weight")
    s_lay, t_lay = _ambient_layout(srcs), _ambient_layout(tgts)
    m = [[Fraction(0)] * src.ambient_dim for _ in range(tgt.ambient_dim)]
    for p, sl, tl in zip(parts, s_lay, t_lay):
        for i, ti in enumerate(tl):
            for j, sj in enumerate(sl):
                m[ti][sj] = p.std_matrix[i][j]
    sigma = None
    if all(p.sigma_std is not None for p in parts):
        sigma = [[Fraction(0)] * src.ambient_dim for _ in range(src.ambient_dim)]
        for p, sl in zip(parts, s_lay):
            for i, si in enumerate(sl):
                for j, sj in enumerate(sl):
                    sigma[si][sj] = p.sigma_std[i][j]
    label = name or " x ".join(p.name for p in parts)
    return Embedding.from_std(src, tgt, m, label, sigma_std=sigma)


def resolve_embedding(spec, source) -> Embedding:
    """A preset name, a list of per-factor preset names, or a raw matrix dict."""
    rd = _as_datum(source)
    if isinstance(spec, str):
        return preset_embedding(spec, rd)
    if isinstance(spec, dict):
        if "matrix" not in spec or "target" not in spec:
            raise EmbeddingError("a raw embedding needs 'target' and 'matrix'")
        unknown = set(spec) - {"target", "target_lattice", "matrix", "sigma", "name"}
        if unknown:
            raise EmbeddingError(f"unknown embedding keys: {sorted(unknown)}")
        m = [[rq.parse_rational(x) for x in row] for row in spec["matrix"]]
        sigma = spec.get("sigma")
        if sigma is not None:
            sigma = [[rq.parse_rational(x) for x in row] for row in sigma]
        target = RootDatum(spec["target"], spec.get("target_lattice", "weight"))
        return Embedding.from_std(rd, target, m, spec.get("name", "raw"), sigma_std=sigma)
    names = list(spec)
    if not names:
        raise EmbeddingError("empty preset list")
    labels, extra = _split_type(rd)
    if extra:
        raise EmbeddingError("per-factor presets need a group without extra central torus")
    parts, k = [], 0
    for nm in names:
        width = _PRESET_WIDTH.get(nm, 1)
        if k + width > len(labels):
            raise EmbeddingError(f"preset list {names} does not match the factors of {rd.cartan_type}")
        sub = RootDatum("x".join(labels[k : k + width]), rd.lattice)
        parts.append(preset_embedding(nm, sub))
        k += width
    if k != len(labels):
        raise EmbeddingError(f"preset list {names} does not cover all factors of {rd.cartan_type}")
    return product_embedding(parts)
