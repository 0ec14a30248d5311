"""Admissibility verdicts from the intersection of the two cones.

A verdict is three-valued: admissible, not admissible, or provisional.  An
enumerated cone is only a lower bound for the true cone, so a nontrivial
intersection is conclusive while a trivial one is provisional whenever some
input cone is unsaturated.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import rational as rq
from .conecalc import DEFAULT_BOUND, KModuleSpec, SpecError, SubgroupSpec, as_support_detailed, c_cone
from .ratcone import Cone, ConeUnion, DimensionMismatch, TrivialityCertificate, intersect, is_trivial_intersection, same_cone, verify_certificate
from .rootdata import RootDatum


@dataclass(frozen=True)
class Verdict:
    admissible: bool
    provisional: bool
    witness: tuple | None
    witness_component: int | None
    certificates: tuple  # TrivialityCertificate per AS component
    inputs_digest: str
    method_tags: tuple = ()
    criterion: str = "cone-intersection"
    witness_std: tuple | None = field(default=None, compare=False)

    @property
    def status(self) -> str:
        if not self.admissible:
            return "not-admissible"
        return "provisional" if self.provisional else "admissible"

    @property
    def exit_code(self) -> int:
        return {"admissible": 0, "not-admissible": 1, "provisional": 2}[self.status]

    def to_json(self) -> dict:
        out = {
            "admissible": self.admissible,
            "provisional": self.provisional,
            "status": self.status,
            "criterion": self.criterion,
            "certificates": [dict(c.to_json(), component=i) for i, c in enumerate(self.certificates)],
            "inputs_digest": self.inputs_digest,
            "method_tags": list(self.method_tags),
        }
        if self.witness is not None:
            out["witness"] = {
                "component": self.witness_component,
                "internal": [rq.fmt(x) for x in self.witness],
            }
            if self.witness_std is not None:
                out["witness"]["standard"] = [rq.fmt(x) for x in self.witness_std]
        return out


def inputs_digest(as_k: ConeUnion, c: Cone) -> str:
    payload = {"as": [comp.to_json() for comp in as_k.components], "c": c.to_json()}
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def decide_admissible(
    as_k: ConeUnion,
    c: Cone,
    provisional_inputs: bool = False,
    method_tags: tuple = (),
    criterion: str = "cone-intersection",
    rd: RootDatum | None = None,
) -> Verdict:
    """Admissible iff every component of ``as_k`` meets ``c`` only at 0."""
    if as_k.dim != c.dim:
        raise DimensionMismatch(f"AS has dimension {as_k.dim}, C has {c.dim}")
    certs: list[TrivialityCertificate] = []
    witness = None
    where = None
    for i, comp in enumerate(as_k.components):
        trivial, cert = is_trivial_intersection(comp, c)
        if not verify_certificate(comp, c, cert):
            raise ArithmeticError(f"certificate for component {i} failed verification")
        # independent path: facet intersection then emptiness
        if intersect(comp, c).is_zero != trivial:
            raise ArithmeticError(f"intersection paths disagree on component {i}")
        certs.append(cert)
        if not trivial and witness is None:
            witness, where = cert.witness, i
    admissible = witness is None
    return Verdict(
        admissible,
        admissible and provisional_inputs,
        witness,
        where,
        tuple(certs),
        inputs_digest(as_k, c),
        tuple(method_tags),
        criterion,
        rd.to_std(witness) if (rd is not None and witness is not None) else None,
    )


def _decide_pair(rd: RootDatum, a: SubgroupSpec, b: SubgroupSpec, bound: int, jobs: int, criterion: str) -> Verdict:
    ca = c_cone(rd, a, bound=bound, jobs=jobs)
    cb = c_cone(rd, b, bound=bound, jobs=jobs)
    tags = (f"first:{ca.method}", f"second:{cb.method}")
    return decide_admissible(
        ConeUnion((ca.cone,)), cb.cone, not (ca.saturated and cb.saturated), tags, criterion, rd
    )


def decide_q_series(rd: RootDatum, qcapk: SubgroupSpec, kprime: SubgroupSpec, bound: int = DEFAULT_BOUND, jobs: int = 1) -> Verdict:
    """Every representation in the Q-series is K'-admissible iff C_K(Q cap K) and C_K(K') meet only at 0."""
    return _decide_pair(rd, qcapk, kprime, bound, jobs, "q-series")


def decide_all_irreps(rd: RootDatum, m: SubgroupSpec, kprime: SubgroupSpec, bound: int = DEFAULT_BOUND, jobs: int = 1) -> Verdict:
    """Every irreducible representation is K'-admissible iff C_K(M) and C_K(K') meet only at 0."""
    return _decide_pair(rd, m, kprime, bound, jobs, "all-irreducibles")


def hermitian_center_check(rd: RootDatum, circle: SubgroupSpec | None = None, bound: int = DEFAULT_BOUND) -> bool:
    """Does ``C_K(T)`` equal ``C_K(Z)`` for the one-dimensional centre ``Z``?

    ``circle`` replaces the centre by another circle subgroup, which is how a
    configuration without the equality is exhibited.
    """
    if len(rd.central) != 1:
        raise SpecError(f"{rd.cartan_type} has a centre of dimension {len(rd.central)}, expected 1")
    ct = c_cone(rd, SubgroupSpec.maximal_torus(), bound=bound)
    cz = c_cone(rd, circle or SubgroupSpec.central_torus(), bound=bound)
    return same_cone(ct.cone, cz.cone)


def decide_discrete_series(rd: RootDatum, X: KModuleSpec, kprime: SubgroupSpec, bound: int = DEFAULT_BOUND, jobs: int = 1) -> Verdict:
    """Cone criterion for a discrete series module ``X``; only this criterion is computed."""
    res = as_support_detailed(rd, X, bound=bound, jobs=jobs)
    cc = c_cone(rd, kprime, bound=bound, jobs=jobs)
    tags = tuple(f"as:{m}" for m in res.methods) + (f"c:{cc.method}",)
    return decide_admissible(res.union, cc.cone, not (res.saturated and cc.saturated), tags, "criterion (iii)", rd)
