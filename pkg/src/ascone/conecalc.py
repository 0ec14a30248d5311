"""The two cones of the admissibility criterion.

``c_cone`` computes the momentum cone ``C_K(K')`` by the cheapest applicable
method (closed forms for tori, the restricted chamber of a symmetric pair, or
enumeration of the spherical monoid).  ``as_support`` builds the asymptotic
K-support ``AS_K(X)`` from a finite description of a K-module.  All cones live
in internal weight coordinates of the root datum.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from typing import Sequence

from . import rational as rq
from .branching import Embedding, EmbeddingError, preset_embedding, resolve_embedding, spherical_monoid
from .ratcone import Cone, ConeUnion, dd_convert, hull_facets, same_cone
from .rootdata import RootDatum

DEFAULT_BOUND = 6


class SpecError(ValueError):
    pass


# --------------------------------------------------------------------------
# involutions and restricted roots
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class InvolutionData:
    """An involution of ``t*`` (internal coordinates) induced by ``sigma``.

    ``fixed_root_signs`` gives the eigenvalue of ``sigma`` on the root space
    of each sigma-fixed root (default +1, the compact case).
    """

    sigma_on_t: tuple
    root_permutation: tuple
    fixed_root_signs: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_matrix(cls, rd: RootDatum, sigma, fixed_root_signs: dict | None = None) -> "InvolutionData":
        s = rq.mat(sigma)
        d = rd.dim
        if len(s) != d or any(len(r) != d for r in s):
            raise SpecError(f"involution must be a {d} x {d} matrix")
        if rq.matmul(s, s) != rq.identity(d):
            raise SpecError("sigma is not an involution")
        g = rd.inner_product
        if rq.matmul(rq.transpose(s), rq.matmul(g, s)) != tuple(tuple(Fraction(x) for x in row) for row in g):
            raise SpecError("sigma does not preserve the invariant form")
        roots = [tuple(Fraction(x) for x in a) for a in rd.roots]
        index = {a: i for i, a in enumerate(roots)}
        perm = []
        for a in roots:
            b = rq.matvec(s, a)
            if b not in index:
                raise SpecError("sigma does not permute the roots")
            perm.append(index[b])
        for w in rd.dominant_lattice_weights(2):
            if not rd.in_lattice(rq.matvec(s, w)):
                raise SpecError("sigma does not preserve the weight lattice")
        return cls(s, tuple(perm), dict(fixed_root_signs or {}))

    @classmethod
    def from_embedding(cls, e: Embedding) -> "InvolutionData":
        if e.sigma is None:
            raise SpecError(f"{e.name} carries no involution")
        return cls.from_matrix(e.source, e.sigma, e.fixed_root_signs)


@dataclass(frozen=True)
class RestrictedRootData:
    minus_chamber: Cone  # (t^{-sigma})*_+ for the chosen positive restricted roots
    restricted_positive: tuple  # Sigma+
    compatible_positive: tuple  # Delta+ compatible with Sigma+
    iota_word: tuple  # reflections carrying the compatible chamber to the standard one
    chamber: Cone  # iota-image of minus_chamber, inside t*_+


def _pair(g, u, v) -> Fraction:
    return rq.dot(u, rq.matvec(g, v))


def _is_root_system(sigma_roots: Sequence[tuple], g) -> bool:
    pool = set(sigma_roots)
    for a in pool:
        aa = _pair(g, a, a)
        for b in pool:
            n = 2 * _pair(g, b, a) / aa
            if n.denominator != 1:
                return False
            if rq.sub(b, rq.scale(n, a)) not in pool:
                return False
    return True


def restricted_chamber(rd: RootDatum, inv: InvolutionData) -> RestrictedRootData:
    d = rd.dim
    g = rd.inner_product
    s = inv.sigma_on_t
    roots = [tuple(Fraction(x) for x in a) for a in rd.roots]
    bar = {a: rq.scale(Fraction(1, 2), rq.sub(a, rq.matvec(s, a))) for a in roots}
    for a in roots:
        if rq.is_zero(bar[a]) and inv.fixed_root_signs.get(tuple(int(x) for x in a), 1) != 1:
            raise SpecError("the -1 eigenspace of sigma is not maximal abelian (a fixed root is noncompact)")
    sigma_roots = sorted({bar[a] for a in roots if not rq.is_zero(bar[a])})
    if not _is_root_system(sigma_roots, g):
        raise SpecError("restricted roots do not form a root system; sigma data rejected")
    plus_rows = [tuple(s[i][j] + int(i == j) for j in range(d)) for i in range(d)]
    minus_basis = rq.nullspace(plus_rows, d)
    # a regular element of the -1 eigenspace, then a tie-break regular for all roots
    h = None
    for t in range(2, 50):
        cand = rq.zero(d)
        for k, b in enumerate(minus_basis):
            cand = rq.add(cand, rq.scale(Fraction(t) ** k, b))
        if all(_pair(g, a, cand) != 0 for a in sigma_roots):
            h = cand
            break
    if h is None:
        raise SpecError("no regular element found in the -1 eigenspace")
    rho = tuple(Fraction(x) for x in rd.rho)
    compat = []
    for a in roots:
        x = _pair(g, a, h)
        if x > 0 or (x == 0 and _pair(g, a, rho) > 0):
            compat.append(a)
    sigma_plus = sorted({b for b in sigma_roots if _pair(g, b, h) > 0})
    induced = sorted({bar[a] for a in compat if not rq.is_zero(bar[a])})
    if induced != sigma_plus:
        raise SpecError("no positive system compatible with the restricted positive roots")
    facets = [rq.matvec(g, b) for b in sigma_plus]
    for r in plus_rows:
        if not rq.is_zero(r):
            facets += [r, rq.neg(r)]
    minus = Cone.from_facets(facets, d) if minus_basis else Cone.zero(d)
    two_rho_c = rq.zero(d)
    for a in compat:
        two_rho_c = rq.add(two_rho_c, a)
    dom, word = rd.to_dominant(two_rho_c)
    if tuple(dom) != tuple(2 * x for x in rho):
        raise SpecError("compatible positive system is not a Weyl translate of the standard one")
    image = Cone.from_generators([rd.apply_word(word, x) for x in minus.generators], d)
    if not all(rd.is_dominant(x) for x in image.generators):
        raise ArithmeticError("aligned restricted chamber left the dominant chamber")
    return RestrictedRootData(minus, tuple(sigma_plus), tuple(sorted(compat)), tuple(word), dd_convert(image))


# --------------------------------------------------------------------------
# subgroup specifications
# --------------------------------------------------------------------------

SUBGROUP_KINDS = ("maximal-torus", "derived-maximal-torus", "central-torus", "symmetric-pair", "general", "trivial", "whole")


@dataclass(frozen=True, eq=False)
class SubgroupSpec:
    kind: str
    embedding: Embedding | None = None
    involution: InvolutionData | None = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in SUBGROUP_KINDS:
            raise SpecError(f"unknown subgroup kind {self.kind!r}")
        if self.kind == "general" and self.embedding is None:
            raise SpecError("a general subgroup needs an embedding")
        if self.kind == "symmetric-pair" and self.involution is None:
            raise SpecError("a symmetric pair needs involution data")

    @classmethod
    def maximal_torus(cls) -> "SubgroupSpec":
        return cls("maximal-torus", label="T")

    @classmethod
    def derived_maximal_torus(cls) -> "SubgroupSpec":
        return cls("derived-maximal-torus", label="T^s")

    @classmethod
    def central_torus(cls) -> "SubgroupSpec":
        return cls("central-torus", label="Z_K")

    @classmethod
    def from_embedding(cls, e: Embedding) -> "SubgroupSpec":
        if e.sigma_std is not None:
            return cls("symmetric-pair", e, InvolutionData.from_embedding(e), e.name)
        return cls("general", e, label=e.name)

    @classmethod
    def from_preset(cls, spec, rd: RootDatum) -> "SubgroupSpec":
        toral = {"torus": "maximal-torus", "derived-torus": "derived-maximal-torus", "center": "central-torus"}
        if isinstance(spec, str) and spec in toral:
            return cls(toral[spec], preset_embedding(spec, rd), label=spec)
        if isinstance(spec, str) and spec in ("trivial", "whole", "identity"):
            kind = "trivial" if spec == "trivial" else "whole"
            return cls(kind, preset_embedding(spec, rd), label=spec)
        try:
            return cls.from_embedding(resolve_embedding(spec, rd))
        except EmbeddingError as exc:
            raise SpecError(str(exc)) from None

    def embedding_for(self, rd: RootDatum) -> Embedding:
        if self.embedding is not None:
            return self.embedding
        name = {"maximal-torus": "torus", "derived-maximal-torus": "derived-torus", "central-torus": "center"}.get(self.kind, self.kind)
        return preset_embedding(name, rd)


@dataclass(frozen=True)
class CCone:
    cone: Cone
    method: str
    saturated: bool
    generators_found: tuple = ()


def c_cone(rd: RootDatum, sub: SubgroupSpec, bound: int = DEFAULT_BOUND, method: str = "auto", jobs: int = 1) -> CCone:
    """``C_K(K')`` in internal coordinates, with the method used and saturation."""
    if method not in ("auto", "enumerate"):
        raise SpecError(f"unknown method {method!r}")
    if sub.embedding is not None and sub.embedding.source != rd:
        raise SpecError(f"subgroup is embedded in {sub.embedding.source.cartan_type}, not {rd.cartan_type}")
    if method == "enumerate" or sub.kind == "general":
        e = sub.embedding_for(rd)
        mon = spherical_monoid(e, bound, jobs=jobs)
        cone = dd_convert(mon.cone(rd.dim))
        return CCone(cone, "enumeration", mon.saturated, mon.generators)
    if sub.kind in ("maximal-torus", "central-torus"):
        return CCone(dd_convert(rd.semisimple_chamber()), "toral-closed-form", True)
    if sub.kind in ("derived-maximal-torus", "trivial"):
        return CCone(dd_convert(rd.dominant_chamber()), "toral-closed-form" if sub.kind != "trivial" else "closed-form", True)
    if sub.kind == "whole":
        return CCone(dd_convert(Cone.zero(rd.dim)), "closed-form", True)
    data = restricted_chamber(rd, sub.involution)
    return CCone(data.chamber, "symmetric-pair", True)


# --------------------------------------------------------------------------
# K-modules and asymptotic support
# --------------------------------------------------------------------------

MODULE_KINDS = ("finite-dimensional", "monoid-support", "orbit-components", "parabolic-induced")


@dataclass(frozen=True, eq=False)
class KModuleSpec:
    kind: str
    generators: tuple = ()  # monoid-support: weights; orbit-components: tuple of weight tuples
    qcapk: SubgroupSpec | None = None
    label: str = ""

    def validate(self, rd: RootDatum) -> None:
        if self.kind not in MODULE_KINDS:
            raise SpecError(f"unknown module kind {self.kind!r}")
        lists = ()
        if self.kind == "monoid-support":
            lists = (self.generators,)
        elif self.kind == "orbit-components":
            if not self.generators:
                raise SpecError("orbit-components needs at least one component")
            lists = self.generators
        elif self.kind == "parabolic-induced" and self.qcapk is None:
            raise SpecError("parabolic-induced needs the subgroup Q cap K")
        for lst in lists:
            for w in lst:
                if len(w) != rd.dim:
                    raise SpecError(f"weight {[rq.fmt(x) for x in w]} has the wrong number of coordinates")
                if not rd.is_dominant(w) or not rd.in_lattice(w):
                    raise SpecError(f"weight {[rq.fmt(x) for x in w]} is not a dominant lattice weight")


@dataclass(frozen=True)
class ASResult:
    union: ConeUnion
    saturated: bool
    methods: tuple


def as_support_detailed(rd: RootDatum, X: KModuleSpec, bound: int = DEFAULT_BOUND, jobs: int = 1) -> ASResult:
    X.validate(rd)
    d = rd.dim
    if X.kind == "finite-dimensional":
        return ASResult(ConeUnion((Cone.zero(d),)), True, ("finite",))
    if X.kind == "monoid-support":
        gens = [g for g in X.generators if any(g)]
        return ASResult(ConeUnion((Cone.from_generators(gens, d),)), True, ("monoid",))
    if X.kind == "orbit-components":
        comps = tuple(Cone.from_generators([g for g in lst if any(g)], d) for lst in X.generators)
        return ASResult(ConeUnion(comps), True, ("orbit-components",))
    cc = c_cone(rd, X.qcapk, bound=bound, jobs=jobs)
    return ASResult(ConeUnion((cc.cone,)), cc.saturated, ("parabolic-induced", cc.method))


def as_support(rd: RootDatum, X: KModuleSpec, bound: int = DEFAULT_BOUND, jobs: int = 1) -> ConeUnion:
    return as_support_detailed(rd, X, bound, jobs).union


# --------------------------------------------------------------------------
# catalog
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    group: str
    lattice: str
    raw: dict

    @cached_property
    def root_datum(self) -> RootDatum:
        return RootDatum(self.group, self.lattice)

    def module(self) -> KModuleSpec:
        return module_from_dict(self.raw, self.root_datum, self.name)


def _std_weights(rd: RootDatum, ws) -> tuple:
    out = []
    for w in ws:
        v = [rq.parse_rational(x) for x in w]
        out.append(rd.from_std(v))
    return tuple(out)


def module_from_dict(data: dict, rd: RootDatum, label: str = "") -> KModuleSpec:
    """Module description with weights in standard coordinates."""
    kind = data.get("kind")
    allowed = {"kind", "generators", "components", "qcapk", "name", "group", "lattice", "description", "catalog"}
    unknown = set(data) - allowed
    if unknown:
        raise SpecError(f"unknown module keys: {sorted(unknown)}")
    if kind == "finite-dimensional":
        m = KModuleSpec(kind, label=label)
    elif kind == "monoid-support":
        m = KModuleSpec(kind, _std_weights(rd, data.get("generators", [])), label=label)
    elif kind == "orbit-components":
        comps = tuple(_std_weights(rd, c) for c in data.get("components", []))
        m = KModuleSpec(kind, comps, label=label)
    elif kind == "parabolic-induced":
        if "qcapk" not in data:
            raise SpecError("parabolic-induced needs 'qcapk'")
        m = KModuleSpec(kind, qcapk=subgroup_from_value(data["qcapk"], rd), label=label)
    else:
        raise SpecError(f"unknown module kind {kind!r}; expected one of {MODULE_KINDS}")
    m.validate(rd)
    return m


def subgroup_from_value(value, rd: RootDatum) -> SubgroupSpec:
    """A preset name, a per-factor list, or a table {kind|preset|target+matrix}."""
    if isinstance(value, dict):
        if "kind" in value:
            kind = value["kind"]
            simple = {
                "maximal-torus": SubgroupSpec.maximal_torus,
                "derived-maximal-torus": SubgroupSpec.derived_maximal_torus,
                "central-torus": SubgroupSpec.central_torus,
            }
            if kind in simple:
                return simple[kind]()
            if kind in ("trivial", "whole"):
                return SubgroupSpec.from_preset(kind, rd)
            raise SpecError(f"subgroup kind {kind!r} needs a preset or matrix")
        if "preset" in value:
            return SubgroupSpec.from_preset(value["preset"], rd)
        return SubgroupSpec.from_preset(value, rd)
    return SubgroupSpec.from_preset(value, rd)


def load_catalog(text: str | None = None) -> dict[str, CatalogEntry]:
    from ._toml import loads

    if text is None:
        text = resources.files("ascone").joinpath("data/catalog.toml").read_text()
    data = loads(text)
    out = {}
    for name, entry in sorted(data.get("module", {}).items()):
        if "group" not in entry:
            raise SpecError(f"catalog entry {name!r} lacks a group")
        out[name] = CatalogEntry(name, entry["group"], entry.get("lattice", "weight"), dict(entry))
    return out


# --------------------------------------------------------------------------
# Kostant convexity (numerical sanity check, test harness only)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class KostantReport:
    samples: int
    max_violation: float
    inside: bool
    orbit: tuple


def kostant_projection_check(rd: RootDatum, y, samples: int = 1000, seed: int = 0, tol: float = 1e-9) -> KostantReport:
    """Project ``Ad(k) Y`` onto ``t`` for Haar-random ``k`` in ``SU(n)``.

    ``y`` is a diagonal element given by its standard coordinates.  The
    projection is tested against exact facets of ``Conv(W Y)``.
    """
    import numpy as np

    if len(rd.factors) != 1 or rd.factors[0].kind != "A" or rd.factors[0].rank not in (1, 2) or rd.factors[0].unitary:
        raise SpecError(f"sampling supports A1 and A2 only, not {rd.cartan_type}")
    n = rd.factors[0].rank + 1
    yv = rq.vec(y)
    if len(yv) != n or sum(yv) != 0:
        raise SpecError(f"Y must have {n} standard coordinates summing to zero")
    orbit = sorted(set(_permutations(yv)))
    if rq.is_zero(yv):
        return KostantReport(samples, 0.0, True, tuple(orbit))
    facets = hull_facets(orbit)
    fa = np.array([[float(x) for x in f[:-1]] for f in facets])
    f0 = np.array([float(f[-1]) for f in facets])
    rng = np.random.default_rng(seed)
    ydiag = np.array([float(x) for x in yv])
    worst = 0.0
    done = 0
    batch = 1000
    while done < samples:
        m = min(batch, samples - done)
        z = (rng.standard_normal((m, n, n)) + 1j * rng.standard_normal((m, n, n))) / np.sqrt(2)
        q, r = np.linalg.qr(z)
        ph = np.diagonal(r, axis1=1, axis2=2)
        q = q * (ph / np.abs(ph))[:, None, :]
        # diag(k Y k*)_i = sum_j |k_ij|^2 y_j
        proj = (np.abs(q) ** 2) @ ydiag
        viol = -(proj @ fa.T + f0)
        worst = max(worst, float(viol.max(initial=0.0)))
        done += m
    scale = max(1.0, float(np.abs(ydiag).max()))
    return KostantReport(samples, worst, worst <= tol * scale, tuple(orbit))


def _permutations(v):
    from itertools import permutations

    return [tuple(p) for p in permutations(v)]


def same_c_cone(a: CCone, b: CCone) -> bool:
    return same_cone(a.cone, b.cone)
