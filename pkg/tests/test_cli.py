import io
import json
import subprocess
import sys

import pytest

from artinkit.cli import COMMANDS, EXIT_CAP, EXIT_DOMAIN, EXIT_OK, EXIT_PARSE, check_output, run

A2_DOC = "generators: s t\nedge: s t 3\n"
FIG14_DOC = "generators: s0 s1 s0' s1'\nedge: s0 s1 inf\nedge: s0' s1' inf\n"


@pytest.fixture
def a2(tmp_path):
    p = tmp_path / "a2.cox"
    p.write_text(A2_DOC)
    return str(p)


@pytest.fixture
def fig14(tmp_path):
    p = tmp_path / "fig14.cox"
    p.write_text(FIG14_DOC)
    return str(p)


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def doc(*argv):
    code, out, err = call(*argv)
    assert code == EXIT_OK, err
    return json.loads(out)


def test_normal_form_example(a2):
    assert doc("normal-form", "--graph", a2, "--word", "t s t")["normal_form"] == "s t s"
    code, out, _ = call("normal-form", "--graph", a2, "--word", "t s t", "--format", "table")
    assert "s t s" in out


def test_sphericity_example(fig14):
    d = doc("sphericity", "--graph", fig14)
    assert d["finite"] is False
    assert [c["type"] for c in d["components"]] == ["not spherical", "not spherical"]


def test_homology_example(a2):
    d = doc("homology", "--graph", a2, "--complex", "coxeter")
    assert d["groups"] == [{"dim": 0, "betti": 1, "torsion": []}, {"dim": 1, "betti": 1, "torsion": []}]


def test_inline_and_builtin_graphs():
    assert doc("parse", "--graph", "A3")["rank"] == 3
    assert doc("parse", "--graph", "generators: a b; edge: a b inf")["edges"] == [["a", "b", "inf"]]
    d = doc("parse", "--graph", json.dumps({"generators": ["x"], "edges": []}))
    assert d["generators"] == ["x"]


@pytest.mark.parametrize("argv, code", [
    (["delta", "--graph", "I2(inf)"], EXIT_DOMAIN),
    (["coxeter-complex", "--graph", "fig14"], EXIT_DOMAIN),
    (["salvetti", "--graph", "I2(inf)"], EXIT_DOMAIN),
    (["normal-form", "--graph", "A2", "--word", "s9"], EXIT_PARSE),
    (["parse", "--graph", "generators: a b; edge: a b 1"], EXIT_PARSE),
    (["parse", "--graph", "no/such/file.cox"], EXIT_PARSE),
    (["ball", "--graph", "A2", "--radius", "1000"], EXIT_CAP),
    (["ball", "--graph", "I2(inf)", "--radius", "30", "--cap-group-order", "10"], EXIT_CAP),
    (["homology", "--graph", "A3", "--complex", "P", "--cap-simplices", "50"], EXIT_CAP),
    (["bogus-command", "--graph", "A2"], EXIT_PARSE),
    (["normal-form", "--graph", "A2"], EXIT_DOMAIN),
])
def test_exit_codes(argv, code):
    got, out, err = call(*argv)
    assert got == code
    assert out == "" and err


def test_caps_restored_after_run():
    from artinkit.config import DEFAULT_CAPS, active_caps

    call("ball", "--graph", "A2", "--radius", "2", "--cap-group-order", "3")
    assert active_caps() == DEFAULT_CAPS


SAMPLE_ARGS = {
    "parse": [],
    "normal-form": ["--word", "s2 s1 s2"],
    "word-equal": ["--word", "s1 s2 s1", "--other", "s2 s1 s2"],
    "length": ["--word", "s1 s1 s2"],
    "min-rep": ["--word", "s1 s2 s1", "--right", "s2"],
    "ball": ["--radius", "2"],
    "sphericity": ["--cross-check"],
    "sf-list": [],
    "fc-check": [],
    "monoid-equal": ["--word", "s1 s2 s1", "--other", "s2 s1 s2"],
    "monoid-nf": ["--word", "s2 s1 s2"],
    "meet": ["--element", "s1 s2", "--element", "s1 s1"],
    "join": ["--element", "s1", "--element", "s2"],
    "delta": [],
    "end-set": ["--word", "s1 s2 s1"],
    "group-equal": ["--word", "s1 s2^-1", "--other", "s1 s2^-1"],
    "coxeter-complex": [],
    "coset-poset": ["--variant", "P0"],
    "salvetti": [],
    "salvetti-level": ["--n", "1"],
    "bsal-cells": [],
    "presentation": [],
    "pure-presentation": [],
    "homology": ["--complex", "salvetti"],
    "euler": ["--complex", "P"],
    "retract-check": ["--subset", "s1"],
    "fc-decompose": [],
}


def test_sample_args_cover_every_command():
    assert set(SAMPLE_ARGS) == set(COMMANDS)


@pytest.mark.parametrize("command", sorted(COMMANDS))
def test_every_command_schema_and_determinism(command):
    argv = [command, "--graph", "A2", *SAMPLE_ARGS[command]]
    c1, out1, _ = call(*argv)
    c2, out2, _ = call(*argv)
    assert c1 == c2 == EXIT_OK
    assert out1 == out2
    d = json.loads(out1)
    check_output(command, d)
    # the document round-trips through JSON unchanged
    assert json.dumps(json.loads(json.dumps(d)), sort_keys=True) == json.dumps(d, sort_keys=True)
    code, table, _ = call(*argv, "--format", "table")
    assert code == EXIT_OK and table.strip()


def test_selected_values():
    assert doc("salvetti", "--graph", "A2")["size"] == 24
    assert doc("euler", "--graph", "A2", "--complex", "salvetti")["euler"] == 0
    d = doc("pure-presentation", "--graph", "A2")
    assert d["abelianization"] == {"rank": 3, "torsion": []}
    assert doc("sf-list", "--graph", "fig14")["count"] == 9
    assert doc("join", "--graph", "I2(inf)", "--element", "s", "--element", "t")["status"] == "none"
    assert doc("bsal-cells", "--graph", "A2")["cells"] == [1, 2, 1]
    assert doc("retract-check", "--graph", "A3", "--subset", "s1,s2")["passed"] is True
    assert len(doc("fc-decompose", "--graph", "fig14")["leaves"]) == 4
    assert doc("homology", "--graph", "I2(inf)", "--complex", "Pf", "--trunc", "3",
               "--reduced")["groups"][0]["betti"] == 0


def test_module_entry_point(a2):
    r = subprocess.run([sys.executable, "-m", "artinkit", "length", "--graph", a2, "--word", "s t s t"],
                       capture_output=True, text=True, timeout=60)
    assert r.returncode == 0
    assert json.loads(r.stdout) == {"length": 2}
