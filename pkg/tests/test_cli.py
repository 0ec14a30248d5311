from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from ascone.cli import GOLDEN, main, parse_job, run_golden
from ascone.conecalc import load_catalog
from ascone.ratcone import Cone, same_cone
from ascone.rootdata import RootDatum

SO22 = """
[group]
type = "D2xD2"

[subgroup]
preset = ["u(n)-in-so(2n)", "u(n)-in-so(2n)"]

[qcapk]
preset = ["so(2n-1)-in-so(2n)", "so(2n-1)-in-so(2n)"]
"""

SO88 = """
[group]
type = "D4xD4"

[subgroup]
preset = "triality-twisted-diagonal"

[qcapk]
preset = ["so(2n-1)-in-so(2n)", "so(2n-1)-in-so(2n)"]
"""

TMULT = """
[group]
type = "D4"

[subgroup]
kind = "derived-maximal-torus"

[module]
catalog = "d4-monoid"
"""

D4_TORUS = """
[group]
type = "D4"

[subgroup]
kind = "maximal-torus"
"""


def write(tmp_path: Path, text: str, name: str = "job.toml") -> str:
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_so22_exit_zero(tmp_path, capsys):
    code, out, _ = run(["check", write(tmp_path, SO22)], capsys)
    assert code == 0
    js = json.loads(out)
    assert js["verdict"]["admissible"] is True and js["verdict"]["provisional"] is False
    assert js["mode"] == "qcapk"


def test_check_so88_exit_zero(tmp_path, capsys):
    code, out, _ = run(["check", write(tmp_path, SO88)], capsys)
    assert code == 0


def test_check_tmult_exit_one(tmp_path, capsys):
    code, out, _ = run(["check", write(tmp_path, TMULT)], capsys)
    assert code == 1
    js = json.loads(out)["verdict"]
    assert js["admissible"] is False and "witness" in js


def test_every_nonzero_catalog_module_fails_against_derived_torus(tmp_path, capsys):
    for name, entry in load_catalog().items():
        rd = entry.root_datum
        if rd.central or entry.raw["kind"] == "finite-dimensional":
            continue
        job = f'[group]\ntype = "{entry.group}"\n[subgroup]\nkind = "derived-maximal-torus"\n[module]\ncatalog = "{name}"\n'
        code, _, _ = run(["check", write(tmp_path, job)], capsys)
        assert code == 1, name


def test_check_provisional_exit_two(tmp_path, capsys):
    job = """
[group]
type = "A2"
[subgroup]
target = "A1"
matrix = [[2, 0, -2], [0, 0, 0]]
[qcapk]
preset = "whole"
[options]
bound = 1
"""
    code, out, _ = run(["check", write(tmp_path, job)], capsys)
    assert code == 2 and json.loads(out)["verdict"]["status"] == "provisional"


@pytest.mark.parametrize(
    "text,needle",
    [
        ('[group]\ntype = "Z9"\n[subgroup]\nkind = "maximal-torus"\n[module]\nkind = "finite-dimensional"\n', "Z9"),
        ('[group]\ntype = "A2"\nbad = = 1\n', "line 3"),
        ('[group]\ntype = "A2"\nextra = 1\n', "extra"),
        ('[groop]\ntype = "A2"\n', "groop"),
        ('[group]\ntype = "A2"\n[subgroup]\npreset = "nope"\n[module]\nkind = "finite-dimensional"\n', "nope"),
        ('[group]\ntype = "A2"\n[subgroup]\npreset = "torus"\n[module]\ncatalog = "missing"\n', "missing"),
        ('[group]\ntype = "A2"\n[subgroup]\npreset = "torus"\n[module]\ncatalog = "d4-monoid"\n', "D4"),
        ('[group]\ntype = "A2"\n[subgroup]\npreset = "torus"\nkind = "maximal-torus"\n', "either"),
        ('[group]\ntype = "A2"\n[subgroup]\npreset = "torus"\n[module]\nkind = "finite-dimensional"\n[qcapk]\npreset = "torus"\n', "only one"),
        ('[group]\ntype = "A2"\n[options]\nbound = 0\n', "bound"),
        ('[group]\ntype = "A2"\n[options]\ncolour = 1\n', "colour"),
        ('[group]\ntype = "A2"\n[subgroup]\npreset = "torus"\n[module]\nkind = "monoid-support"\ngenerators = [["-1", "0", "1"]]\n', "dominant"),
    ],
)
def test_input_errors_exit_four(tmp_path, capsys, text, needle):
    code, out, err = run(["check", write(tmp_path, text)], capsys)
    assert code == 4
    assert needle in err
    assert out == ""


def test_missing_file_exit_four(capsys):
    code, _, err = run(["check", "/nonexistent/job.toml"], capsys)
    assert code == 4 and "error" in err


def test_determinism_and_parallelism(tmp_path, capsys):
    path = write(tmp_path, SO22)
    outs = []
    for jobs in ("1", "1", "4"):
        code, out, _ = run(["check", path, "--jobs", jobs], capsys)
        outs.append((code, out))
    assert outs[0] == outs[1] == outs[2]
    tm = write(tmp_path, TMULT, "tm.toml")
    assert run(["check", tm, "--jobs", "1"], capsys)[:2] == run(["check", tm, "--jobs", "3"], capsys)[:2]


def test_table_format(tmp_path, capsys):
    code, out, _ = run(["check", write(tmp_path, TMULT), "--format", "table"], capsys)
    assert code == 1
    assert "verdict.status: not-admissible" in out


def test_cone_d4_torus(tmp_path, capsys):
    code, out, _ = run(["cone", write(tmp_path, D4_TORUS), "--which", "ck"], capsys)
    assert code == 0
    js = json.loads(out)
    std = Cone.from_generators([[Fraction(x) for x in g] for g in js["cone"]["standard"]["generators"]], 4)
    # x1 >= x2 >= x3 >= |x4|
    assert same_cone(std, Cone.from_facets([(1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 1, 1)], 4))
    assert js["method"] == "toral-closed-form"


def test_cone_triality_and_as(tmp_path, capsys):
    path = write(tmp_path, SO88)
    code, out, _ = run(["cone", path, "--which", "ck"], capsys)
    assert code == 0
    js = json.loads(out)
    assert js["method"] == "symmetric-pair" and len(js["cone"]["standard"]["generators"]) == 4
    code, out, _ = run(["cone", path, "--which", "as"], capsys)
    gens = json.loads(out)["components"][0]["standard"]["generators"]
    assert sorted(gens) == [["0", "0", "0", "0", "1", "0", "0", "0"], ["1", "0", "0", "0", "0", "0", "0", "0"]]


def test_cone_trivial_subgroup_is_full_chamber(tmp_path, capsys):
    job = '[group]\ntype = "B2"\n[subgroup]\npreset = "trivial"\n'
    code, out, _ = run(["cone", write(tmp_path, job)], capsys)
    js = json.loads(out)
    gens = [[Fraction(x) for x in g] for g in js["cone"]["internal"]["generators"]]
    assert same_cone(Cone.from_generators(gens, 2), RootDatum("B2").dominant_chamber())


def test_support(tmp_path, capsys):
    job = '[group]\ntype = "D4"\n[subgroup]\npreset = "so(2n-1)-in-so(2n)"\n'
    code, out, _ = run(["support", write(tmp_path, job), "--bound", "4"], capsys)
    js = json.loads(out)
    assert code == 0 and js["saturated"] and js["generators"]["standard"] == [["1", "0", "0", "0"]]


def test_parse_job_overrides():
    job = parse_job(SO22, overrides={"bound": 3, "jobs": 2, "format": "table"})
    assert (job.bound, job.jobs, job.format) == (3, 2, "table")


def test_examples_list(capsys):
    code, out, _ = run(["examples", "--list"], capsys)
    assert code == 0 and out.split() == [name for name, _ in GOLDEN]


def test_golden_suite_passes(capsys):
    code, out, _ = run(["examples", "--jobs", "2"], capsys)
    assert code == 0, out
    assert f"{len(GOLDEN)}/{len(GOLDEN)} passed" in out


def test_corrupted_catalog_fails_named_case(tmp_path, capsys):
    from importlib import resources

    text = resources.files("ascone").joinpath("data/catalog.toml").read_text()
    bad = text.replace('qcapk = ["so(2n-1)-in-so(2n)", "so(2n-1)-in-so(2n)"]\n\n[module.so88', 'qcapk = "torus"\n\n[module.so88', 1)
    assert bad != text
    results = {r.name: r for r in run_golden(load_catalog(bad))}
    assert not results["so(4,4)-q-series-vs-u2xu2"].passed
    assert all(r.passed for n, r in results.items() if n != "so(4,4)-q-series-vs-u2xu2")
    code, out, _ = run(["examples", "--catalog", write(tmp_path, bad, "bad.toml")], capsys)
    assert code == 1 and "failed: so(4,4)-q-series-vs-u2xu2" in out


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "ascone", "check", write(tmp_path, TMULT)], capture_output=True, text=True)
    assert proc.returncode == 1 and json.loads(proc.stdout)["verdict"]["status"] == "not-admissible"
