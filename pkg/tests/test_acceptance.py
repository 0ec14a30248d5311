"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
from __future__ import annotations

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from ascone import rational as rq
from ascone.branching import PRESETS, EmbeddingError, branch, preset_embedding
from ascone.conecalc import DEFAULT_BOUND, SubgroupSpec, as_support, c_cone, kostant_projection_check, load_catalog
from ascone.decision import decide_admissible, decide_q_series, hermitian_center_check
from ascone.ratcone import Cone, ConeUnion, hull_membership, is_trivial_intersection, membership, verify_certificate
from ascone.rootdata import RootDatum

from conftest import brute_common_point

H = Fraction(1, 2)


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number: int, title: str, limit: float):
        start = time.perf_counter()
        ok = False
        note = {}
        try:
            yield note
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            in_time = elapsed < limit
            status = "PASS" if ok and in_time else "FAIL"
            extra = f" [{note['info']}]" if "info" in note else ""
            with capsys.disabled():
                print(f"\nacceptance {number}: {status} {title} ({elapsed:.1f}s, limit {limit:.0f}s){extra}")
        assert in_time, f"criterion {number} took {elapsed:.1f}s (limit {limit}s)"

    return run


def mutual_membership(a: Cone, b: Cone) -> bool:
    return all(membership(g, b)[0] for g in a.generators) and all(membership(g, a)[0] for g in b.generators)


def std_cone(rd: RootDatum, gens) -> Cone:
    return Cone.from_generators([rd.from_std(g) for g in gens], rd.dim)


def test_criterion_1_so_upq(criterion):
    with criterion(1, "SO(4,4) > U(2)xU(2): cones and Q-series verdict", 10):
        rd = RootDatum("D2xD2")
        q = SubgroupSpec.from_preset(["so(2n-1)-in-so(2n)"] * 2, rd)
        k = SubgroupSpec.from_preset(["u(n)-in-so(2n)"] * 2, rd)
        # {(a,0;b,0)} and {(x1,x1;y1,y1)}
        assert mutual_membership(c_cone(rd, q).cone, std_cone(rd, [(1, 0, 0, 0), (0, 0, 1, 0)]))
        assert mutual_membership(c_cone(rd, k).cone, std_cone(rd, [(1, 1, 0, 0), (0, 0, 1, 1)]))
        v = decide_q_series(rd, q, k)
        assert v.status == "admissible"


def zeta_cone(rd: RootDatum) -> Cone:
    """{(x, zeta(x1,x2,x3,-x4)) : x1>=x2>=x3>=|x4|}, zeta the 3-cycle w1 -> w4 -> w3 -> w1."""
    w = [(1, 0, 0, 0), (1, 1, 0, 0), (H, H, H, -H), (H, H, H, H)]
    images = [w[3], w[1], w[0], w[2]]
    zeta = rq.matmul(rq.transpose(rq.mat(images)), rq.inverse(rq.transpose(rq.mat(w))))
    assert rq.matmul(zeta, rq.matmul(zeta, zeta)) == rq.identity(4)
    return std_cone(rd, [tuple(x) + rq.matvec(zeta, (x[0], x[1], x[2], -x[3])) for x in w])


def test_criterion_2_so88_triality(criterion):
    with criterion(2, "SO(8,8) > Spin(1,8): zeta-twisted cone, trivial intersection", 30):
        rd = RootDatum("D4xD4")
        c = c_cone(rd, SubgroupSpec.from_preset("triality-twisted-diagonal", rd)).cone
        assert mutual_membership(c, zeta_cone(rd))
        ab = std_cone(rd, [(1, 0, 0, 0, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0, 0, 0)])
        trivial, cert = is_trivial_intersection(ab, c)
        assert trivial and verify_certificate(ab, c, cert)


def test_criterion_3_torus_enumeration(criterion):
    with criterion(3, "C_K(T) = dominant chamber by enumeration (A2, B2, D4)", 60):
        for group in ("A2", "B2", "D4"):
            rd = RootDatum(group)
            cc = c_cone(rd, SubgroupSpec.maximal_torus(), bound=max(6, DEFAULT_BOUND), method="enumerate")
            assert cc.method == "enumeration" and cc.saturated
            assert mutual_membership(cc.cone, rd.dominant_chamber()), group


def test_criterion_4_hermitian(criterion):
    with criterion(4, "C_K(T) = C_K(Z_K) for U(2), U(3)", 5):
        assert hermitian_center_check(RootDatum("U2"))
        assert hermitian_center_check(RootDatum("U3"))


def test_criterion_5_random_cone_pairs(criterion):
    with criterion(5, "1000 random cone pairs vs brute-force oracle", 120) as note:
        rnd = random.Random(20261018)
        missed = 0
        for _ in range(1000):
            d = rnd.randint(1, 4)
            gen = lambda: [tuple(rnd.randint(-3, 3) for _ in range(d)) for _ in range(rnd.randint(1, 3))]  # noqa: E731
            g1, g2 = gen(), gen()
            c1, c2 = Cone.from_generators(g1, d), Cone.from_generators(g2, d)
            trivial, cert = is_trivial_intersection(c1, c2)
            oracle = brute_common_point(g1, g2, 6)
            if oracle is not None:
                assert not trivial, (g1, g2, oracle)
            if not trivial:
                assert not rq.is_zero(cert.witness)
                assert membership(cert.witness, c1)[0] and membership(cert.witness, c2)[0]
                assert verify_certificate(c1, c2, cert)
                missed += oracle is None
        note["info"] = f"{missed} nontrivial pairs need coefficients > 6"


def symmetric_presets(max_rank: int):
    groups = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "D2", "D3", "D4", "G2", "F4",
              "A1xA1", "A2xA2", "B2xB2", "G2xG2", "D2xD2", "U2", "U3"]
    out = []
    for g in groups:
        rd = RootDatum(g)
        if rd.rank > max_rank:
            continue
        for name in PRESETS:
            try:
                e = preset_embedding(name, rd)
            except EmbeddingError:
                continue
            if e.is_symmetric:
                out.append((name, g))
    return out


def random_preset_weights(rnd: random.Random, count: int):
    pairs = [
        ("identity", "B3"), ("trivial", "A2"), ("torus", "D4"), ("torus", "G2"), ("derived-torus", "U3"),
        ("center", "U2"), ("diagonal", "A2xA2"), ("diagonal", "B2xB2"), ("so(2n-1)-in-so(2n)", "D4"),
        ("so(2n-1)-in-so(2n)", "D3"), ("u(n)-in-so(2n)", "D4"), ("u(n)-in-so(2n)", "D3"),
        ("so(n)-in-su(n)", "A3"), ("so(n)-in-su(n)", "A4"), ("spin7-triality-in-so8", "D4"),
        ("triality-twisted-diagonal", "D4xD4"),
    ]
    embs = {p: preset_embedding(p[0], RootDatum(p[1])) for p in pairs}
    out = []
    while len(out) < count:
        p = rnd.choice(pairs)
        e = embs[p]
        rd = e.source
        lam = tuple(rnd.randint(0, 3) for _ in range(rd.rank))
        w = lam + tuple(rnd.randint(-3, 3) for _ in rd.central)
        if not rd.in_lattice(w) or rd.weyl_dimension(w) > 5000:
            continue
        out.append((e, w))
    return out


def test_criterion_6_branching_conservation(criterion):
    with criterion(6, "200 random branchings conserve dimension", 120):
        for e, w in random_preset_weights(random.Random(6), 200):
            assert branch(e, w).total_dimension() == e.source.weyl_dimension(w), (e.name, w)


def test_criterion_7_method_coherence(criterion):
    with criterion(7, "symmetric-pair cone = saturated enumeration cone (rank <= 4)", 300) as note:
        cases = symmetric_presets(4)
        assert len(cases) >= 15
        for name, g in cases:
            rd = RootDatum(g)
            sub = SubgroupSpec.from_embedding(preset_embedding(name, rd))
            sym = c_cone(rd, sub)
            enum = c_cone(rd, sub, method="enumerate")
            assert sym.method == "symmetric-pair"
            assert enum.saturated, (name, g)
            assert mutual_membership(sym.cone, enum.cone), (name, g)
        note["info"] = f"{len(cases)} preset/group pairs"


def test_criterion_8_kostant(criterion):
    with criterion(8, "Kostant convexity sampling and exact 0 in Conv(W Y)", 60):
        for group, y in (("A1", (1, -1)), ("A2", (2, -1, -1)), ("A2", (5, -2, -3))):
            rep = kostant_projection_check(RootDatum(group), y, samples=10_000, seed=8)
            assert rep.inside and rep.max_violation <= 1e-9 * max(1, max(abs(x) for x in y))
        rnd = random.Random(88)
        for i in range(100):
            n = 2 if i % 2 else 3
            while True:
                head = [Fraction(rnd.randint(-9, 9), rnd.randint(1, 5)) for _ in range(n - 1)]
                y = tuple(head) + (-sum(head),)
                if any(y):
                    break
            rep = kostant_projection_check(RootDatum(f"A{n - 1}"), y, samples=1)
            assert hull_membership(rq.zero(n), rep.orbit)


def test_criterion_9_derived_torus(criterion):
    with criterion(9, "every nonzero-AS catalog module fails against T^s", 30) as note:
        checked = 0
        cat = load_catalog()
        groups = sorted({(e.group, e.lattice) for e in cat.values() if not e.root_datum.central})
        assert groups
        for name, entry in sorted(cat.items()):
            rd = entry.root_datum
            if rd.central:
                continue
            as_k = as_support(rd, entry.module())
            if as_k.is_zero:
                continue
            c = c_cone(rd, SubgroupSpec.derived_maximal_torus()).cone
            v = decide_admissible(as_k, c)
            assert not v.admissible, name
            comp = as_k.components[v.witness_component]
            assert membership(v.witness, comp)[0] and membership(v.witness, c)[0]
            assert verify_certificate(comp, c, v.certificates[v.witness_component])
            checked += 1
        assert checked >= 5
        note["info"] = f"{checked} modules on {len(groups)} root data"
