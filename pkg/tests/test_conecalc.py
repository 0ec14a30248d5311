from __future__ import annotations

from fractions import Fraction

import pytest

from ascone import rational as rq
from ascone.branching import Embedding, preset_embedding
from ascone.conecalc import (
    DEFAULT_BOUND,
    InvolutionData,
    KModuleSpec,
    SpecError,
    SubgroupSpec,
    as_support,
    as_support_detailed,
    c_cone,
    kostant_projection_check,
    load_catalog,
    module_from_dict,
    restricted_chamber,
    same_c_cone,
    subgroup_from_value,
)
from ascone.ratcone import Cone, hull_membership, same_cone
from ascone.rootdata import RootDatum

H = Fraction(1, 2)


def std_cone(rd, gens):
    return Cone.from_generators([rd.from_std(g) for g in gens], rd.dim)


def test_so_upq_example_p2_q2():
    rd = RootDatum("D2xD2")
    q = c_cone(rd, SubgroupSpec.from_preset(["so(2n-1)-in-so(2n)"] * 2, rd))
    k = c_cone(rd, SubgroupSpec.from_preset(["u(n)-in-so(2n)"] * 2, rd))
    assert same_cone(q.cone, std_cone(rd, [(1, 0, 0, 0), (0, 0, 1, 0)]))
    assert same_cone(k.cone, std_cone(rd, [(1, 1, 0, 0), (0, 0, 1, 1)]))
    assert q.method == k.method == "symmetric-pair"


def test_so_upq_example_p3_q2():
    # (x1, x1, 0; y1, y1): the odd tail is zero
    rd = RootDatum("D3xD2")
    k = c_cone(rd, SubgroupSpec.from_preset(["u(n)-in-so(2n)"] * 2, rd))
    assert same_cone(k.cone, std_cone(rd, [(1, 1, 0, 0, 0), (0, 0, 0, 1, 1)]))


def test_triality_twisted_cone_is_four_dimensional():
    rd = RootDatum("D4xD4")
    c = c_cone(rd, SubgroupSpec.from_preset("triality-twisted-diagonal", rd)).cone
    assert rq.rank(c.generators, rd.dim) == 4
    # (x, zeta(x1, x2, x3, -x4)) with zeta: w1 -> w4 -> w3 -> w1
    w1, w4 = (1, 0, 0, 0), (H, H, H, H)
    assert c.contains(rd.from_std(w1 + w4))


@pytest.mark.parametrize("group", ["A1", "A2", "B2", "G2", "U2", "A1xA1+center1"])
def test_torus_closed_form_matches_enumeration(group):
    rd = RootDatum(group)
    for sub in (SubgroupSpec.maximal_torus(), SubgroupSpec.central_torus() if rd.central else SubgroupSpec.maximal_torus()):
        closed = c_cone(rd, sub)
        enum = c_cone(rd, sub, method="enumerate")
        assert enum.saturated and same_c_cone(closed, enum)


def test_torus_cone_is_semisimple_chamber():
    rd = RootDatum("U3")
    c = c_cone(rd, SubgroupSpec.maximal_torus()).cone
    assert same_cone(c, rd.semisimple_chamber())
    # {lambda dominant, sum lambda_i = 0}
    assert c.contains(rd.from_std((1, 0, -1))) and not c.contains(rd.from_std((1, 0, 0)))


def test_trivial_and_whole():
    rd = RootDatum("B2")
    assert same_cone(c_cone(rd, SubgroupSpec.from_preset("trivial", rd)).cone, rd.dominant_chamber())
    assert c_cone(rd, SubgroupSpec.from_preset("whole", rd)).cone.is_zero
    assert same_cone(c_cone(rd, SubgroupSpec.derived_maximal_torus()).cone, rd.dominant_chamber())


@pytest.mark.parametrize(
    "spec,group",
    [
        ("so(2n-1)-in-so(2n)", "D2"),
        ("so(2n-1)-in-so(2n)", "D3"),
        ("u(n)-in-so(2n)", "D2"),
        ("u(n)-in-so(2n)", "D3"),
        ("so(n)-in-su(n)", "A2"),
        ("diagonal", "A1xA1"),
        ("diagonal", "B2xB2"),
        ("spin7-triality-in-so8", "D4"),
    ],
)
def test_symmetric_pair_matches_enumeration(spec, group):
    rd = RootDatum(group)
    sub = SubgroupSpec.from_preset(spec, rd)
    sym = c_cone(rd, sub)
    enum = c_cone(rd, sub, method="enumerate")
    assert sym.method == "symmetric-pair" and enum.saturated
    assert same_c_cone(sym, enum)


def test_restricted_chamber_structure():
    rd = RootDatum("D3")
    inv = InvolutionData.from_embedding(preset_embedding("u(n)-in-so(2n)", rd))
    data = restricted_chamber(rd, inv)
    # U(3) in SO(6): restricted root system BC1/C1, rank one
    assert rq.rank(data.minus_chamber.generators, rd.dim) == 1
    assert all(rd.is_dominant(g) for g in data.chamber.generators)
    assert len(data.compatible_positive) == len(rd.positive_roots)
    for w in [rd.apply_word(data.iota_word, g) for g in data.minus_chamber.generators]:
        assert data.chamber.contains(w)


def test_involution_validation():
    rd = RootDatum("A2")
    with pytest.raises(SpecError):
        InvolutionData.from_matrix(rd, [[1, 1], [0, 1]])  # not an involution
    with pytest.raises(SpecError):
        InvolutionData.from_matrix(rd, [[1]])  # wrong shape
    with pytest.raises(SpecError):
        # swaps Dynkin labels of B2: not an automorphism of the form
        InvolutionData.from_matrix(RootDatum("B2"), [[0, 1], [1, 0]])
    # sigma = identity with a noncompact fixed root is not maximal abelian
    d2 = RootDatum("D2")
    root = tuple(int(x) for x in d2.positive_roots[0])
    inv = InvolutionData.from_matrix(d2, rq.identity(2), {root: -1})
    with pytest.raises(SpecError):
        restricted_chamber(d2, inv)


def test_embedding_source_must_match():
    e = preset_embedding("torus", RootDatum("A2"))
    with pytest.raises(SpecError):
        c_cone(RootDatum("B2"), SubgroupSpec.from_embedding(e))
    with pytest.raises(SpecError):
        c_cone(RootDatum("A2"), SubgroupSpec.maximal_torus(), method="guess")


def test_general_embedding_uses_enumeration():
    rd = RootDatum("A2")
    sub = SubgroupSpec.from_embedding(Embedding.from_internal(rd, "A1", [[2, 2]], "principal"))
    cc = c_cone(rd, sub)
    assert cc.method == "enumeration"
    # SO(3) is the principal SU(2) image in SU(3); spherical weights are 2*lambda
    assert same_cone(cc.cone, rd.dominant_chamber())


def test_subgroup_spec_errors():
    with pytest.raises(SpecError):
        SubgroupSpec("bogus")
    with pytest.raises(SpecError):
        SubgroupSpec("general")
    with pytest.raises(SpecError):
        subgroup_from_value({"kind": "mystery"}, RootDatum("A2"))
    with pytest.raises(SpecError):
        SubgroupSpec.from_preset("diagonal", RootDatum("A2"))


def test_subgroup_values():
    rd = RootDatum("D2xD2")
    assert subgroup_from_value({"kind": "maximal-torus"}, rd).kind == "maximal-torus"
    assert subgroup_from_value({"preset": "trivial"}, rd).kind == "trivial"
    assert subgroup_from_value(["u(n)-in-so(2n)"] * 2, rd).kind == "symmetric-pair"


def test_as_support_kinds():
    rd = RootDatum("A2")
    assert as_support(rd, KModuleSpec("finite-dimensional")).is_zero
    m = as_support(rd, KModuleSpec("monoid-support", ((1, 0), (0, 0))))
    assert same_cone(m.components[0], Cone.from_generators([(1, 0)]))
    o = as_support(rd, KModuleSpec("orbit-components", (((1, 0),), ((0, 1),))))
    assert len(o.components) == 2 and o.contains((0, 5)) and not o.contains((1, 1))
    res = as_support_detailed(rd, KModuleSpec("parabolic-induced", qcapk=SubgroupSpec.maximal_torus()))
    assert res.saturated and same_cone(res.union.components[0], rd.semisimple_chamber())


@pytest.mark.parametrize(
    "module",
    [
        KModuleSpec("nonsense"),
        KModuleSpec("monoid-support", ((-1, 0),)),
        KModuleSpec("monoid-support", ((1, 0, 0),)),
        KModuleSpec("orbit-components", ()),
        KModuleSpec("parabolic-induced"),
    ],
)
def test_module_validation(module):
    with pytest.raises(SpecError):
        module.validate(RootDatum("A2"))


def test_module_from_dict():
    rd = RootDatum("B2")
    m = module_from_dict({"kind": "monoid-support", "generators": [["1", "1/1"]]}, rd)
    assert m.generators == (rd.from_std((1, 1)),)
    with pytest.raises(SpecError):
        module_from_dict({"kind": "monoid-support", "generators": [], "colour": "red"}, rd)
    with pytest.raises(SpecError):
        module_from_dict({"kind": "parabolic-induced"}, rd)
    with pytest.raises(SpecError):
        module_from_dict({"kind": "weird"}, rd)


def test_catalog():
    cat = load_catalog()
    assert {"a2-finite", "d4-monoid", "so22-q-series", "so88-q-series"} <= set(cat)
    for name, entry in cat.items():
        m = entry.module()
        m.validate(entry.root_datum)
        assert m.label == name
    with pytest.raises(SpecError):
        load_catalog('[module.x]\nkind = "finite-dimensional"\n')


def test_q_series_support_equals_c_cone():
    cat = load_catalog()
    e = cat["so22-q-series"]
    rd = e.root_datum
    assert same_cone(as_support(rd, e.module()).components[0], std_cone(rd, [(1, 0, 0, 0), (0, 0, 1, 0)]))


@pytest.mark.parametrize("group,y", [("A1", (1, -1)), ("A2", (2, -1, -1)), ("A2", (3, 1, -4))])
def test_kostant_convexity(group, y):
    rep = kostant_projection_check(RootDatum(group), y, samples=2000, seed=1)
    assert rep.inside and rep.max_violation <= 1e-9
    assert hull_membership(rq.zero(len(y)), rep.orbit)


def test_kostant_errors():
    with pytest.raises(SpecError):
        kostant_projection_check(RootDatum("B2"), (1, 0))
    with pytest.raises(SpecError):
        kostant_projection_check(RootDatum("A1"), (1, 0))
    assert kostant_projection_check(RootDatum("A2"), (0, 0, 0)).inside


def test_default_bound():
    assert DEFAULT_BOUND >= 6
