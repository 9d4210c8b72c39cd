from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from verdestar.cli import (
    Q1_KEYS,
    Q_KEYS,
    SpecDocument,
    SpecParseError,
    main,
    parse_document,
    serialize_document,
)
from verdestar.exactnum import Scalar


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, text, name="spec.ini"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


# construct -----------------------------------------------------------------


def test_construct_charlier(capsys):
    code, out, _ = run(capsys, "construct", "--family", "charlier", "--params", "a=1", "-n", "2")
    assert code == 0
    assert "u_2 = x^2 - 3x + 1" in out


def test_construct_binomial(capsys):
    code, out, _ = run(capsys, "construct", "--family", "binomial", "-n", "1")
    assert code == 0
    assert "u_1 = x - 1" in out


def test_construct_from_document(capsys, tmp_path):
    # Charlier a=1 written out as raw coefficients
    doc = "[h]\na1 = -1\n[x]\nb1 = 1\n[g]\nd1 = 1\n"
    code, out, _ = run(capsys, "construct", "--spec", write(tmp_path, doc), "-n", "2")
    assert code == 0
    assert "u_2 = x^2 - 3x + 1" in out


def test_construct_gaussian_output(capsys):
    code, out, _ = run(capsys, "construct", "--family", "meixner_pollaczek", "--params", "lam=1,t=2", "-n", "1")
    assert code == 0
    assert "*i" in out and "." not in out.replace("...", "")


# malformed input -------------------------------------------------------------


@pytest.mark.parametrize(
    "text,field",
    [
        ("[h]\na1 = 0.5\n", "a1"),
        ("[h]\na7 = 1\n", "a7"),
        ("family = charlier\nb = 1\n", "b"),
        ("family = hermite\n", "family"),
        ("[x]\nb1 = 1/0\n", "b1"),
    ],
)
def test_malformed_document_exit_2(capsys, tmp_path, text, field):
    code, _, err = run(capsys, "classify", "--spec", write(tmp_path, text))
    assert code == 2
    assert repr(field) in err


def test_parse_error_has_line():
    with pytest.raises(SpecParseError) as ei:
        parse_document("[h]\na0 = 0\na1 = x\n")
    assert ei.value.line == 3 and ei.value.field == "a1"


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "classify")[0] == 2
    assert run(capsys, "classify", "--family", "nope")[0] == 2
    assert run(capsys, "classify", "--spec", str(tmp_path / "missing.ini"))[0] == 2
    assert run(capsys, "verify", "--family", "charlier", "--params", "a")[0] == 2
    with pytest.raises(SystemExit) as ei:
        main(["graph", "--format", "xml"])
    assert ei.value.code == 2


# classify --------------------------------------------------------------------


def test_classify_wilson(capsys):
    code, out, _ = run(capsys, "classify", "--family", "wilson", "--params", "a=1,b=2,c=3,d=4")
    assert code == 0
    assert "(2,4,2) node=W/R" in out


def test_classify_laguerre(capsys):
    code, out, _ = run(capsys, "classify", "--family", "laguerre", "--params", "α=3")
    assert code == 0
    assert "(0,2,1) node=L" in out


def test_classify_constraint_violation(capsys, tmp_path):
    doc = "[h]\na1 = -1\n[x]\nb1 = 1\n[g]\nd1 = 1\nd3 = 5\n"
    code, out, _ = run(capsys, "classify", "--spec", write(tmp_path, doc))
    assert code == 1
    assert "FAIL" in out


# verify ------------------------------------------------------------------------


def test_verify_racah_truncation(capsys):
    code, out, _ = run(capsys, "verify", "--family", "racah", "--params", "α=-6,β=7,γ=1,δ=1", "--nmax", "5")
    assert code == 0
    assert "N=5" in out


def test_verify_racah_collision(capsys):
    code, out, err = run(capsys, "verify", "--family", "racah", "--params", "α=-6,β=1,γ=1,δ=1", "--nmax", "5")
    assert code == 1
    assert "HCollision" in out + err


def test_verify_perturbed_wilson(capsys):
    code, out, _ = run(capsys, "verify", "--family", "wilson", "--perturb", "d3")
    assert code == 1
    assert "CHECK ttrr: FAIL" in out
    assert "residual n=" in out


def test_verify_all_catalog(capsys):
    code, out, _ = run(capsys, "verify", "--all-catalog", "--nmax", "5")
    assert code == 0
    assert "FAIL" not in out and "ERROR" not in out


def test_report_lines_are_machine_parsable(capsys):
    _, out, _ = run(capsys, "verify", "--family", "charlier", "--params", "a=2")
    lines = [ln for ln in out.splitlines() if ln.startswith("CHECK ")]
    assert lines
    for ln in lines:
        name, rest = ln[6:].split(": ", 1)
        assert rest.split(" ", 1)[0] in ("PASS", "FAIL", "ERROR")


# dual, limit, graph ---------------------------------------------------------------


def test_dual(capsys):
    assert run(capsys, "dual", "--family", "hahn")[0] == 0
    code, out, _ = run(capsys, "dual", "--family", "jacobi")
    assert code == 1 and "DualNotDefined" in out


def test_limit_cases(capsys):
    assert run(capsys, "limit", "asc1-to-charlier", "--a", "1", "--K", "8")[0] == 0
    assert run(capsys, "limit", "sw-to-binomial", "--K", "8")[0] == 0
    assert run(capsys, "limit", "no-such-case")[0] == 2
    assert run(capsys, "limit", "sw-to-binomial", "--a", "1")[0] == 2


def test_limit_stretch_case(capsys):
    code, out, _ = run(capsys, "limit", "qhahn-to-hahn")
    assert code == 1 and "ERROR" in out


def test_graph_json(capsys):
    code, out, _ = run(capsys, "graph", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"nodes", "edges", "duals"}
    for node in data["nodes"]:
        assert set(node) == {"id", "names", "degree_triple", "vanishing"}
    by_id = {n["id"]: n for n in data["nodes"]}
    assert by_id["W/R"]["vanishing"] == []
    assert by_id["bin"]["degree_triple"] == [0, 1, 1]


def test_graph_dot(capsys):
    code, out, _ = run(capsys, "graph", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")
    edges = [ln for ln in out.splitlines() if "->" in ln]
    nodes = [ln for ln in out.splitlines() if "[label=" in ln]
    assert len(edges) == 12 and len(nodes) == 9


# document round trip ----------------------------------------------------------------

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=9)
scalars = st.builds(Scalar, fracs, fracs)


@st.composite
def raw_documents(draw):
    is_q = draw(st.booleans())
    keys = Q_KEYS if is_q else Q1_KEYS
    coeffs = {}
    for sec, names in keys.items():
        chosen = draw(st.lists(st.sampled_from(names), unique=True))
        coeffs[sec] = {k: draw(scalars) for k in chosen}
    q = draw(scalars.filter(bool)) if is_q else None
    return SpecDocument(coeffs=coeffs, q=q)


@st.composite
def family_documents(draw):
    from verdestar.catalog import FAMILIES

    e = FAMILIES[draw(st.sampled_from(sorted(FAMILIES)))]
    return SpecDocument(family=e.key, params={p: draw(scalars) for p in e.params})


@given(st.one_of(raw_documents(), family_documents()))
@settings(max_examples=50, deadline=None)
def test_document_round_trip(doc):
    text = serialize_document(doc)
    back = parse_document(text)
    assert back == doc
    assert serialize_document(back) == text
