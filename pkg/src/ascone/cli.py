"""Command-line front end.

Job files are TOML::

    [group]
    type = "D2xD2"
    lattice = "weight"          # optional

    [subgroup]                  # K'
    preset = ["u(n)-in-so(2n)", "u(n)-in-so(2n)"]

    [qcapk]                     # exactly one of [module], [qcapk], [levi]
    preset = ["so(2n-1)-in-so(2n)", "so(2n-1)-in-so(2n)"]

    [options]
    bound = 6
    jobs = 1
    format = "json"
    discrete_series = false     # label a [module] verdict "criterion (iii)"

Exit codes: 0 admissible, 1 not admissible, 2 provisional, 3 internal
inconsistency, 4 parse or validation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import rational as rq
from ._toml import TOMLDecodeError, loads
from .branching import EmbeddingError
from .conecalc import (
    DEFAULT_BOUND,
    CatalogEntry,
    KModuleSpec,
    SpecError,
    SubgroupSpec,
    as_support_detailed,
    c_cone,
    load_catalog,
    module_from_dict,
    subgroup_from_value,
)
from .decision import (
    Verdict,
    decide_admissible,
    decide_all_irreps,
    decide_discrete_series,
    decide_q_series,
    hermitian_center_check,
)
from .ratcone import Cone, membership, same_cone
from .rootdata import RootDatum, RootDatumError

EXIT_INTERNAL = 3
EXIT_INPUT = 4

_JOB_KEYS = {"group", "subgroup", "module", "qcapk", "levi", "options"}
_GROUP_KEYS = {"type", "lattice"}
_OPTION_KEYS = {"bound", "jobs", "format", "discrete_series"}
_SUBGROUP_KEYS = {"preset", "kind", "target", "target_lattice", "matrix", "sigma", "name"}
_FORMATS = ("json", "table")


class JobError(ValueError):
    pass


_INPUT_ERRORS = (JobError, SpecError, EmbeddingError, RootDatumError, TOMLDecodeError)


@dataclass(frozen=True, eq=False)
class JobSpec:
    rd: RootDatum
    subgroup: SubgroupSpec | None
    mode: str  # "module" | "qcapk" | "levi"
    module: KModuleSpec | None
    second: SubgroupSpec | None
    bound: int = DEFAULT_BOUND
    jobs: int = 1
    format: str = "json"
    discrete_series: bool = False


def _check_keys(table, allowed: set, where: str) -> None:
    if not isinstance(table, dict):
        raise JobError(f"[{where}] must be a table")
    unknown = set(table) - allowed
    if unknown:
        raise JobError(f"unknown keys in [{where}]: {sorted(unknown)}")


def _subgroup(value, rd: RootDatum, where: str) -> SubgroupSpec:
    if isinstance(value, dict):
        _check_keys(value, _SUBGROUP_KEYS, where)
        if ("preset" in value or "kind" in value) and len(set(value) - {"name"}) != 1:
            raise JobError(f"[{where}] takes either 'preset', 'kind', or a raw 'target'/'matrix' embedding")
    return subgroup_from_value(value, rd)


def _module(value, rd: RootDatum, catalog: dict[str, CatalogEntry] | None) -> KModuleSpec:
    if not isinstance(value, dict):
        raise JobError("[module] must be a table")
    if "catalog" in value:
        _check_keys(value, {"catalog", "description"}, "module")
        cat = catalog if catalog is not None else load_catalog()
        name = value["catalog"]
        if name not in cat:
            raise JobError(f"no catalog module named {name!r}; known: {sorted(cat)}")
        entry = cat[name]
        if entry.root_datum != rd:
            raise JobError(f"catalog module {name!r} lives on {entry.group}, not {rd.cartan_type}")
        return entry.module()
    return module_from_dict(value, rd, value.get("name", "module"))


def parse_job(text: str, catalog: dict[str, CatalogEntry] | None = None, overrides: dict | None = None) -> JobSpec:
    data = loads(text)
    _check_keys(data, _JOB_KEYS, "job")
    if "group" not in data:
        raise JobError("missing [group] table")
    _check_keys(data["group"], _GROUP_KEYS, "group")
    if "type" not in data["group"]:
        raise JobError("[group] needs 'type'")
    rd = RootDatum(data["group"]["type"], data["group"].get("lattice", "weight"))
    opts = dict(data.get("options", {}))
    _check_keys(opts, _OPTION_KEYS, "options")
    opts.update({k: v for k, v in (overrides or {}).items() if v is not None})
    bound, jobs, fmt = opts.get("bound", DEFAULT_BOUND), opts.get("jobs", 1), opts.get("format", "json")
    if not isinstance(bound, int) or bound < 1:
        raise JobError("options.bound must be a positive integer")
    if not isinstance(jobs, int) or jobs < 1:
        raise JobError("options.jobs must be a positive integer")
    if fmt not in _FORMATS:
        raise JobError(f"options.format must be one of {_FORMATS}")
    modes = [m for m in ("module", "qcapk", "levi") if m in data]
    if len(modes) > 1:
        raise JobError(f"give only one of [module], [qcapk], [levi]; got {modes}")
    mode = modes[0] if modes else "module"
    sub = _subgroup(data["subgroup"], rd, "subgroup") if "subgroup" in data else None
    module = second = None
    if mode == "module" and "module" in data:
        module = _module(data["module"], rd, catalog)
    elif mode != "module":
        second = _subgroup(data[mode], rd, mode)
    return JobSpec(rd, sub, mode, module, second, bound, jobs, fmt, bool(opts.get("discrete_series", False)))


def run_check(job: JobSpec) -> Verdict:
    if job.subgroup is None:
        raise JobError("check needs a [subgroup] table")
    if job.mode == "qcapk":
        return decide_q_series(job.rd, job.second, job.subgroup, job.bound, job.jobs)
    if job.mode == "levi":
        return decide_all_irreps(job.rd, job.second, job.subgroup, job.bound, job.jobs)
    if job.module is None:
        raise JobError("check needs one of [module], [qcapk], [levi]")
    if job.discrete_series:
        return decide_discrete_series(job.rd, job.module, job.subgroup, job.bound, job.jobs)
    res = as_support_detailed(job.rd, job.module, job.bound, job.jobs)
    cc = c_cone(job.rd, job.subgroup, job.bound, jobs=job.jobs)
    tags = tuple(f"as:{m}" for m in res.methods) + (f"c:{cc.method}",)
    return decide_admissible(res.union, cc.cone, not (res.saturated and cc.saturated), tags, "cone-intersection", job.rd)


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------


def std_cone(rd: RootDatum, c: Cone) -> Cone:
    return Cone.from_generators([rd.to_std(g) for g in c.generators], rd.ambient_dim)


def cone_payload(rd: RootDatum, c: Cone) -> dict:
    return {"internal": c.to_json(), "standard": std_cone(rd, c).to_json()}


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _table(obj, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            lines += _table(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and all(isinstance(x, (list, dict)) for x in obj):
        for i, x in enumerate(obj):
            lines += _table(x, f"{prefix}{i}.")
    else:
        val = "(" + ", ".join(map(str, obj)) + ")" if isinstance(obj, list) else obj
        lines.append(f"{prefix.rstrip('.')}: {json.dumps(val) if isinstance(val, bool) else val}")
    return lines


def _emit(obj, fmt: str) -> None:
    print(_dumps(obj) if fmt == "json" else "\n".join(_table(obj)))


# --------------------------------------------------------------------------
# golden suite
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GoldenResult:
    name: str
    passed: bool
    detail: str


def _std_gens_cone(rd: RootDatum, gens) -> Cone:
    return Cone.from_generators([rd.from_std(g) for g in gens], rd.dim)


def _zeta_cone(rd: RootDatum) -> Cone:
    """``{(x, zeta(x1,x2,x3,-x4))}`` with zeta the 3-cycle w1 -> w4 -> w3 -> w1 fixing w2."""
    h = Fraction(1, 2)
    w = [(1, 0, 0, 0), (1, 1, 0, 0), (h, h, h, -h), (h, h, h, h)]
    images = [w[3], w[1], w[0], w[2]]
    # zeta = [images] . [w]^-1 on column vectors
    zeta = rq.matmul(rq.transpose(rq.mat(images)), rq.inverse(rq.transpose(rq.mat(w))))
    gens = []
    for x in w:
        y = rq.matvec(zeta, (x[0], x[1], x[2], -x[3]))
        gens.append(tuple(x) + tuple(y))
    return _std_gens_cone(rd, gens)


def _case_so22(cat) -> tuple[bool, str]:
    rd = RootDatum("D2xD2")
    X = cat["so22-q-series"].module()
    as_k = as_support_detailed(rd, X).union
    expect_as = _std_gens_cone(rd, [(1, 0, 0, 0), (0, 0, 1, 0)])
    kp = SubgroupSpec.from_preset(["u(n)-in-so(2n)"] * 2, rd)
    c = c_cone(rd, kp).cone
    expect_c = _std_gens_cone(rd, [(1, 1, 0, 0), (0, 0, 1, 1)])
    v = decide_admissible(as_k, c, rd=rd)
    ok = len(as_k.components) == 1 and same_cone(as_k.components[0], expect_as) and same_cone(c, expect_c) and v.status == "admissible"
    return ok, v.status


def _case_so88(cat) -> tuple[bool, str]:
    rd = RootDatum("D4xD4")
    X = cat["so88-q-series"].module()
    as_k = as_support_detailed(rd, X).union
    expect_as = _std_gens_cone(rd, [(1, 0, 0, 0, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0, 0, 0)])
    c = c_cone(rd, SubgroupSpec.from_preset("triality-twisted-diagonal", rd)).cone
    v = decide_admissible(as_k, c, rd=rd)
    ok = same_cone(as_k.components[0], expect_as) and same_cone(c, _zeta_cone(rd)) and v.status == "admissible"
    return ok, v.status


def _case_torus(kind: str) -> Callable:
    def run(cat) -> tuple[bool, str]:
        rd = RootDatum(kind)
        cc = c_cone(rd, SubgroupSpec.maximal_torus(), method="enumerate")
        return cc.saturated and same_cone(cc.cone, rd.dominant_chamber()), cc.method

    return run


def _case_d4_facets(cat) -> tuple[bool, str]:
    rd = RootDatum("D4")
    got = std_cone(rd, c_cone(rd, SubgroupSpec.maximal_torus()).cone)
    expect = Cone.from_facets([(1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 1, 1)], 4)
    return same_cone(got, expect), "x1>=x2>=x3>=|x4|"


def _case_trivial(cat) -> tuple[bool, str]:
    rd = RootDatum("D4")
    cc = c_cone(rd, SubgroupSpec.from_preset("trivial", rd))
    return same_cone(cc.cone, rd.dominant_chamber()), cc.method


def _case_hermitian(kind: str, expect: bool) -> Callable:
    def run(cat) -> tuple[bool, str]:
        got = hermitian_center_check(RootDatum(kind))
        return got == expect, str(got).lower()

    return run


def _case_non_hermitian(cat) -> tuple[bool, str]:
    from .branching import Embedding

    rd = RootDatum("A1xA1+center1")
    circle = SubgroupSpec.from_embedding(Embedding.from_internal(rd, "+center1", [[1, 0, 0]], "circle"))
    got = hermitian_center_check(rd, circle)
    return got is False, str(got).lower()


def _case_tmult(cat) -> tuple[bool, str]:
    checked = 0
    for name, entry in sorted(cat.items()):
        rd = entry.root_datum
        if rd.central:
            continue
        as_k = as_support_detailed(rd, entry.module()).union
        if as_k.is_zero:
            continue
        c = c_cone(rd, SubgroupSpec.derived_maximal_torus()).cone
        v = decide_admissible(as_k, c, rd=rd)
        if v.admissible or not (membership(v.witness, as_k.components[v.witness_component])[0] and membership(v.witness, c)[0]):
            return False, f"{name}: {v.status}"
        checked += 1
    return checked > 0, f"{checked} modules"


def _case_finite(cat) -> tuple[bool, str]:
    entry = cat["d4-finite"]
    rd = entry.root_datum
    v = decide_admissible(as_support_detailed(rd, entry.module()).union, c_cone(rd, SubgroupSpec.derived_maximal_torus()).cone)
    return v.status == "admissible", v.status


GOLDEN: tuple[tuple[str, Callable], ...] = (
    ("so(4,4)-q-series-vs-u2xu2", _case_so22),
    ("so(8,8)-q-series-vs-spin(1,8)", _case_so88),
    ("torus-chamber-A2", _case_torus("A2")),
    ("torus-chamber-B2", _case_torus("B2")),
    ("torus-chamber-D4", _case_torus("D4")),
    ("d4-torus-facets", _case_d4_facets),
    ("trivial-subgroup-full-chamber", _case_trivial),
    ("hermitian-U2", _case_hermitian("U2", True)),
    ("hermitian-U3", _case_hermitian("U3", True)),
    ("non-hermitian-circle", _case_non_hermitian),
    ("derived-torus-never-admissible", _case_tmult),
    ("finite-dimensional-admissible", _case_finite),
)


def run_golden(catalog: dict[str, CatalogEntry] | None = None, jobs: int = 1) -> list[GoldenResult]:
    cat = catalog if catalog is not None else load_catalog()

    def one(case) -> GoldenResult:
        name, fn = case
        try:
            ok, detail = fn(cat)
        except Exception as exc:  # a broken case is a failed case
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        return GoldenResult(name, bool(ok), detail)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, GOLDEN))
    return [one(c) for c in GOLDEN]


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _load(args) -> JobSpec:
    text = Path(args.job).read_text()
    overrides = {"bound": args.bound, "jobs": args.jobs, "format": args.format}
    catalog = load_catalog(Path(args.catalog).read_text()) if getattr(args, "catalog", None) else None
    return parse_job(text, catalog, overrides)


def cmd_check(args) -> int:
    job = _load(args)
    v = run_check(job)
    out = {"group": job.rd.cartan_type, "lattice": job.rd.lattice, "mode": job.mode, "verdict": v.to_json()}
    _emit(out, job.format)
    return v.exit_code


def cmd_cone(args) -> int:
    job = _load(args)
    if args.which == "ck":
        sub = job.second if job.second is not None and job.subgroup is None else job.subgroup
        if sub is None:
            raise JobError("cone --which ck needs a [subgroup] table")
        cc = c_cone(job.rd, sub, job.bound, jobs=job.jobs)
        out = {"which": "ck", "method": cc.method, "saturated": cc.saturated, "cone": cone_payload(job.rd, cc.cone)}
    else:
        if job.module is not None:
            res = as_support_detailed(job.rd, job.module, job.bound, job.jobs)
        elif job.second is not None:
            res = as_support_detailed(job.rd, KModuleSpec("parabolic-induced", qcapk=job.second), job.bound, job.jobs)
        else:
            raise JobError("cone --which as needs [module], [qcapk] or [levi]")
        out = {
            "which": "as",
            "method": list(res.methods),
            "saturated": res.saturated,
            "components": [cone_payload(job.rd, c) for c in res.union.components],
        }
    out["group"] = job.rd.cartan_type
    _emit(out, job.format)
    return 0


def cmd_support(args) -> int:
    """Generators of the spherical monoid of the subgroup: the K-types with K'-fixed vectors."""
    from .branching import spherical_monoid

    job = _load(args)
    if job.subgroup is None:
        raise JobError("support needs a [subgroup] table")
    e = job.subgroup.embedding_for(job.rd)
    m = spherical_monoid(e, job.bound, jobs=job.jobs)
    out = {
        "group": job.rd.cartan_type,
        "bound": m.bound,
        "saturated": m.saturated,
        "generators": {
            "internal": [[rq.fmt(x) for x in g] for g in m.generators],
            "standard": [[rq.fmt(x) for x in job.rd.to_std(g)] for g in m.generators],
        },
        "elements_found": len(m.elements),
    }
    _emit(out, job.format)
    return 0


def cmd_examples(args) -> int:
    if args.list:
        for name, _ in GOLDEN:
            print(name)
        return 0
    catalog = load_catalog(Path(args.catalog).read_text()) if args.catalog else None
    results = run_golden(catalog, args.jobs or 1)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}  {r.detail}")
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed" + (f"; failed: {', '.join(failed)}" if failed else ""))
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ascone", description="Admissibility of restrictions via cone intersection.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, help="enumeration bound (height of dominant weights)")
    common.add_argument("--jobs", type=int, help="worker threads")
    common.add_argument("--format", choices=_FORMATS, help="output format")
    common.add_argument("--catalog", help="alternative module catalog (TOML)")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="decide admissibility for a job file")
    c.add_argument("job")
    c.set_defaults(func=cmd_check)
    c = sub.add_parser("cone", parents=[common], help="print C_K(K') or AS_K(X)")
    c.add_argument("job")
    c.add_argument("--which", choices=("ck", "as"), default="ck")
    c.set_defaults(func=cmd_cone)
    c = sub.add_parser("support", parents=[common], help="print spherical monoid generators")
    c.add_argument("job")
    c.set_defaults(func=cmd_support)
    c = sub.add_parser("examples", parents=[common], help="run the golden suite")
    c.add_argument("--list", action="store_true", help="list case names without running")
    c.set_defaults(func=cmd_examples)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TOMLDecodeError as exc:
        print(f"error: cannot parse job file: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
