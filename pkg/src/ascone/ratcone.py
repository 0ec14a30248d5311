"""Rational polyhedral cones with exact double description.

A :class:`Cone` is the nonnegative real span of finitely many rational
generators.  Facets use the inner-normal convention ``<f, x> >= 0``; an
equation is stored as the pair ``f, -f``.  Lineality is allowed, so a line is a
legitimate (non-pointed) cone.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import rational as rq
from .rational import RatVec


class DimensionMismatch(ValueError):
    pass


def _check_dim(v: Sequence, n: int) -> None:
    if len(v) != n:
        raise DimensionMismatch(f"expected dimension {n}, got {len(v)}")


def _canonical(rays: Iterable[RatVec]) -> tuple[RatVec, ...]:
    out = {rq.primitive(r) for r in rays if not rq.is_zero(r)}
    return tuple(sorted(out))


# --------------------------------------------------------------------------
# double description: H-representation -> V-representation
# --------------------------------------------------------------------------


def _lineality_basis(rows: Sequence[RatVec], n: int) -> list[RatVec]:
    basis = rq.nullspace(rows, n) if rows else [rq.unit(n, i) for i in range(n)]
    return basis


def hrep_to_vrep(ineqs: Sequence[RatVec], n: int) -> tuple[list[RatVec], list[RatVec]]:
    """Generators of ``{x : a.x >= 0 for a in ineqs}``.

    Returns ``(lineality_basis, extreme_rays)``; rays are extreme rays of the
    pointed part inside the row space of ``ineqs``.  Rows are processed in
    the given order and adjacency is decided by the combinatorial test, so
    the output is deterministic.
    """
    rows = [tuple(r) for r in ineqs if not rq.is_zero(r)]
    lin = _lineality_basis(rows, n)
    if not rows:
        return lin, []
    basis_idx = rq.independent_rows(rows, n)
    b = [rows[i] for i in basis_idx]  # basis of the row space
    d = len(b)
    # constraint matrix in row-space coordinates x = sum y_k b_k
    m = [tuple(rq.dot(r, bk) for bk in b) for r in rows]
    start = rq.independent_rows(m, d)
    m0 = [m[i] for i in start]
    inv = rq.inverse(m0)
    rays = [tuple(inv[k][j] for k in range(d)) for j in range(d)]
    done = list(start)
    zsets = [frozenset(i for i in done if rq.dot(m[i], r) == 0) for r in rays]
    for i in range(len(m)):
        if i in start:
            continue
        a = m[i]
        vals = [rq.dot(a, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        negs = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays = []
        new_z = []
        for p in pos:
            for q in negs:
                common = zsets[p] & zsets[q]
                if len(common) < d - 2:
                    continue
                if any(k != p and k != q and common <= zsets[k] for k in range(len(rays))):
                    continue
                r = rq.sub(rq.scale(vals[p], rays[q]), rq.scale(vals[q], rays[p]))
                new_rays.append(r)
                new_z.append(common | {i})
        keep = pos + zer
        rays = [rays[k] for k in keep] + new_rays
        zsets = [zsets[k] | ({i} if vals[k] == 0 else frozenset()) for k in keep] + new_z
        zsets = [frozenset(z) for z in zsets]
        done.append(i)
    ambient = [
        tuple(sum((y[k] * b[k][j] for k in range(d)), Fraction(0)) for j in range(n))
        for y in rays
    ]
    return lin, list(_canonical(ambient))


# --------------------------------------------------------------------------
# cones
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Cone:
    """Nonnegative span of ``generators`` in ``Q^dim``.

    ``facets`` is either ``None`` or an H-representation of the same set.
    Build cones with :meth:`from_generators` / :meth:`from_facets`; call
    :func:`dd_convert` to fill in the missing representation.
    """

    dim: int
    generators: tuple[RatVec, ...]
    facets: tuple[RatVec, ...] | None = None
    lineality: tuple[RatVec, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        for g in self.generators:
            _check_dim(g, self.dim)
            if rq.is_zero(g):
                raise ValueError("cone generators must be nonzero")
        for f in self.facets or ():
            _check_dim(f, self.dim)

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence], dim: int | None = None) -> "Cone":
        g = [rq.vec(x) for x in gens]
        if dim is None:
            if not g:
                raise ValueError("dimension required for an empty generator list")
            dim = len(g[0])
        return cls(dim, tuple(x for x in g if not rq.is_zero(x)))

    @classmethod
    def from_facets(cls, facets: Iterable[Sequence], dim: int) -> "Cone":
        f = [rq.vec(x) for x in facets]
        lin, rays = hrep_to_vrep(f, dim)
        gens = list(rays) + [s for v in lin for s in (v, rq.neg(v))]
        return cls(dim, tuple(gens), tuple(f), tuple(lin))

    @classmethod
    def zero(cls, dim: int) -> "Cone":
        return cls(dim, ())

    @classmethod
    def full(cls, dim: int) -> "Cone":
        return cls.from_facets([], dim)

    @property
    def is_zero(self) -> bool:
        return len(self.generators) == 0

    def contains(self, v: Sequence) -> bool:
        return membership(rq.vec(v), self)[0]

    def to_json(self) -> dict:
        c = dd_convert(self)
        return {
            "dim": c.dim,
            "generators": [[rq.fmt(x) for x in g] for g in c.generators],
            "facets": [[rq.fmt(x) for x in f] for f in c.facets],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Cone":
        gens = [[rq.parse_rational(x) for x in g] for g in data["generators"]]
        return cls.from_generators(gens, int(data["dim"]))


@dataclass(frozen=True)
class ConeUnion:
    components: tuple[Cone, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("a cone union needs at least one component")
        dims = {c.dim for c in self.components}
        if len(dims) != 1:
            raise DimensionMismatch(f"components have dimensions {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.components[0].dim

    @property
    def is_zero(self) -> bool:
        return all(dd_convert(c).is_zero for c in self.components)

    def contains(self, v: Sequence) -> bool:
        return any(c.contains(v) for c in self.components)


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------


def membership(v: RatVec, c: Cone) -> tuple[bool, RatVec | None]:
    """Exact test ``v in c``; on success also nonnegative coefficients."""
    _check_dim(v, c.dim)
    gens = c.generators
    if rq.is_zero(v):
        return True, rq.zero(len(gens))
    if not gens:
        return False, None
    a = [tuple(g[i] for g in gens) for i in range(c.dim)]
    res = rq.feasible_point(a, v)
    return (True, res.x) if res.feasible else (False, None)


def separating_facet(v: RatVec, c: Cone) -> RatVec | None:
    """A vector ``f`` with ``f.g >= 0`` on generators and ``f.v < 0``, if any."""
    _check_dim(v, c.dim)
    if rq.is_zero(v):
        return None
    if not c.generators:
        # any coordinate functional that is negative on v
        i = next(k for k, x in enumerate(v) if x != 0)
        return tuple(Fraction(-1 if v[i] > 0 else 1) if k == i else Fraction(0) for k in range(c.dim))
    a = [tuple(g[i] for g in c.generators) for i in range(c.dim)]
    res = rq.feasible_point(a, v)
    return None if res.feasible else rq.primitive(res.farkas)


def dd_convert(c: Cone) -> Cone:
    """Return ``c`` carrying canonical generators and facets."""
    if c.facets is not None and c.lineality is not None:
        return c
    if c.facets is not None and not c.generators:
        return Cone.from_facets(c.facets, c.dim)
    # V -> H through the dual cone {f : f.g >= 0}
    dlin, drays = hrep_to_vrep(c.generators, c.dim)
    facets = list(drays) + [s for v in dlin for s in (v, rq.neg(v))]
    # canonical generators: H -> V again
    lin, rays = hrep_to_vrep(facets, c.dim)
    gens = list(rays) + [s for v in lin for s in (v, rq.neg(v))]
    return Cone(c.dim, tuple(gens), tuple(facets), tuple(lin))


def intersect(c1: Cone, c2: Cone) -> Cone:
    if c1.dim != c2.dim:
        raise DimensionMismatch(f"cannot intersect dimensions {c1.dim} and {c2.dim}")
    f = list(dd_convert(c1).facets) + list(dd_convert(c2).facets)
    return Cone.from_facets(f, c1.dim)


def cone_sum(c1: Cone, c2: Cone) -> Cone:
    if c1.dim != c2.dim:
        raise DimensionMismatch(f"cannot add dimensions {c1.dim} and {c2.dim}")
    return Cone(c1.dim, c1.generators + c2.generators)


def contains_cone(big: Cone, small: Cone) -> bool:
    return all(membership(g, big)[0] for g in small.generators)


def same_cone(c1: Cone, c2: Cone) -> bool:
    """Set equality by mutual generator membership."""
    return c1.dim == c2.dim and contains_cone(c1, c2) and contains_cone(c2, c1)


def linear_image(m: Sequence[Sequence], c: Cone) -> Cone:
    """Image of ``c`` under the rational matrix ``m`` (rows = output coords)."""
    out_dim = len(m)
    gens = [rq.matvec(m, g) for g in c.generators]
    return Cone(out_dim, tuple(g for g in gens if not rq.is_zero(g)))


@dataclass(frozen=True)
class TrivialityCertificate:
    """Outcome evidence for ``c1 & c2 == {0}``.

    ``kind == "witness"``: ``witness = sum(coeffs1[i] * c1.gen[i]) =
    sum(coeffs2[j] * c2.gen[j])`` and is nonzero.  ``kind ==
    "empty-intersection"``: ``hrep_evidence`` is the combined facet system
    whose double description has no nonzero ray.
    """

    kind: str
    witness: RatVec | None = None
    coeffs1: RatVec | None = None
    coeffs2: RatVec | None = None
    hrep_evidence: tuple[RatVec, ...] | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.witness is not None:
            out["witness"] = [rq.fmt(x) for x in self.witness]
            out["coefficients"] = [
                [rq.fmt(x) for x in self.coeffs1],
                [rq.fmt(x) for x in self.coeffs2],
            ]
        if self.hrep_evidence is not None:
            out["hrep_evidence"] = [[rq.fmt(x) for x in f] for f in self.hrep_evidence]
        return out


def _witness_lp(c1: Cone, c2: Cone):
    """Search a common nonzero vector with LPs, one per coordinate and sign."""
    n = c1.dim
    g1, g2 = c1.generators, c2.generators
    k1, k2 = len(g1), len(g2)
    if not k1 or not k2:
        return None
    # variables (a, b) >= 0: sum a g1 - sum b g2 = 0 and +-(sum a g1)_i = 1
    base = [tuple(g[i] for g in g1) + tuple(-g[i] for g in g2) for i in range(n)]
    for i in range(n):
        for s in (1, -1):
            row = tuple(s * g[i] for g in g1) + (Fraction(0),) * k2
            res = rq.feasible_point(base + [row], rq.zero(n) + (Fraction(1),))
            if res.feasible:
                a, b = res.x[:k1], res.x[k1:]
                w = tuple(sum((a[j] * g1[j][t] for j in range(k1)), Fraction(0)) for t in range(n))
                return w, a, b
    return None


def is_trivial_intersection(c1: Cone, c2: Cone) -> tuple[bool, TrivialityCertificate]:
    """Decide ``c1 & c2 == {0}`` and certify the answer.

    A nonempty intersection is found by exact LP and certified by a witness
    with both coefficient vectors.  Emptiness is certified by the combined
    facet system; the double-description result is cross-checked against the
    LP route and a disagreement raises.
    """
    if c1.dim != c2.dim:
        raise DimensionMismatch(f"cannot intersect dimensions {c1.dim} and {c2.dim}")
    found = _witness_lp(c1, c2)
    combined = tuple(dd_convert(c1).facets) + tuple(dd_convert(c2).facets)
    dd_zero = Cone.from_facets(combined, c1.dim).is_zero
    if found is None:
        if not dd_zero:
            raise ArithmeticError("LP and double description disagree on triviality")
        return True, TrivialityCertificate("empty-intersection", hrep_evidence=combined)
    if dd_zero:
        raise ArithmeticError("LP and double description disagree on triviality")
    w, a, b = found
    # rescale to an integral witness
    p = rq.primitive(w)
    nz = next(i for i, x in enumerate(w) if x != 0)
    f = p[nz] / w[nz]
    return False, TrivialityCertificate(
        "witness", p, rq.scale(f, a), rq.scale(f, b)
    )


def verify_certificate(c1: Cone, c2: Cone, cert: TrivialityCertificate) -> bool:
    """Independent re-check of a certificate produced for ``(c1, c2)``."""
    if cert.kind == "witness":
        w = cert.witness
        if w is None or rq.is_zero(w):
            return False
        if any(x < 0 for x in cert.coeffs1) or any(x < 0 for x in cert.coeffs2):
            return False
        lhs = tuple(sum((a * g[t] for a, g in zip(cert.coeffs1, c1.generators)), Fraction(0)) for t in range(c1.dim))
        rhs = tuple(sum((b * g[t] for b, g in zip(cert.coeffs2, c2.generators)), Fraction(0)) for t in range(c2.dim))
        return lhs == w and rhs == w and membership(w, c1)[0] and membership(w, c2)[0]
    if cert.kind == "empty-intersection":
        facets = cert.hrep_evidence or ()
        # every facet must be valid on its own cone's generators
        own = set(dd_convert(c1).facets) | set(dd_convert(c2).facets)
        if not set(facets) <= own:
            return False
        for f in facets:
            valid1 = all(rq.dot(f, g) >= 0 for g in c1.generators)
            valid2 = all(rq.dot(f, g) >= 0 for g in c2.generators)
            if not (valid1 or valid2):
                return False
        lin, rays = hrep_to_vrep(list(facets), c1.dim)
        if lin:
            return False
        # each candidate ray must fail membership somewhere
        return all(not (membership(r, c1)[0] and membership(r, c2)[0]) for r in rays)
    return False


def limit_cone(finite: Iterable[Sequence] | None = None, monoid: Iterable[Sequence] | None = None, dim: int | None = None) -> Cone:
    """Limit cone of a support description.

    A finite weight set has the zero cone as limit; the ``Z>=0``-span of
    monoid generators has the nonnegative real span as limit.
    """
    if finite is not None and monoid is not None:
        raise ValueError("give either a finite set or monoid generators")
    if finite is not None:
        pts = [rq.vec(p) for p in finite]
        if not pts:
            raise ValueError("empty support description")
        return Cone.zero(len(pts[0]))
    if monoid is not None:
        gens = [rq.vec(g) for g in monoid]
        if not gens:
            if dim is None:
                raise ValueError("empty support description")
            return Cone.zero(dim)
        return Cone.from_generators(gens)
    raise ValueError("empty support description")


def hull_membership(z: Sequence, points: Sequence[Sequence]) -> bool:
    if not points:
        raise ValueError("empty point list")
    n = len(points[0])
    for p in points:
        _check_dim(p, n)
    _check_dim(z, n)
    a = [tuple(rq.to_fraction(p[i]) for p in points) for i in range(n)]
    a.append((Fraction(1),) * len(points))
    b = rq.vec(z) + (Fraction(1),)
    return rq.feasible_point(a, b).feasible


def hull_facets(points: Sequence[Sequence]) -> list[RatVec]:
    """Facets ``(f, f0)`` with ``f.x + f0 >= 0`` describing ``Conv(points)``."""
    lifted = [rq.vec(p) + (Fraction(1),) for p in points]
    c = dd_convert(Cone.from_generators(lifted))
    return list(c.facets)


def cone_to_json_str(c: Cone) -> str:
    return json.dumps(c.to_json(), sort_keys=True)
