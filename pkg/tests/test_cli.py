import json
import subprocess
import sys

import pytest

from gbs.cli import main
from gbs.graph import EdgeIndexedGraph, loop_graph, parse_graph
from gbs.moves import Collapse, Expansion, Slide, deformation_to_json
from gbs.graph import OrientedEdge as E


def H(k: int) -> EdgeIndexedGraph:
    return EdgeIndexedGraph.build([("e", "v", "v", 2, 3), ("f", "v", "w", k, 5)])


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_validate(files, capsys):
    code, out = run(capsys, "validate", files("h4.json", H(4).to_json()))
    assert code == 0
    assert json.loads(out) == {"valid": True, "vertices": 2, "edges": 2, "betti": 1}


@pytest.mark.parametrize(
    "doc, code",
    [
        ({"vertices": ["u", "w"], "edges": [{"id": "f", "from": "u", "to": "w", "idx_from": 0, "idx_to": 5}]}, "ZeroIndex"),
        ({"vertices": ["u", "w"], "edges": []}, "Disconnected"),
        ({"vertices": ["u"], "edges": [{"id": "f", "from": "u", "to": "x", "idx_from": 1, "idx_to": 5}]}, "MalformedInput"),
        ("{not json", "MalformedInput"),
    ],
)
def test_validate_errors(files, capsys, doc, code):
    rc, out = run(capsys, "validate", files("bad.json", doc))
    assert rc == 2
    rec = json.loads(out)
    assert rec["error"] == code and rec["message"]


def test_missing_file(capsys, tmp_path):
    rc, out = run(capsys, "validate", str(tmp_path / "nope.json"))
    assert rc == 2 and json.loads(out)["error"] == "MalformedInput"


def test_reduce(files, capsys):
    g = EdgeIndexedGraph.build([("e", "u", "u", 2, 3), ("f", "u", "w", 1, 5)])
    rc, out = run(capsys, "reduce", files("g.json", g.to_json()))
    doc = json.loads(out)
    assert rc == 0
    assert parse_graph(json.dumps(doc["graph"])).num_pairs == 1
    assert [m["kind"] for m in doc["deformation"]] == ["collapse"]
    assert doc["elementary"] == "NonElementary"


def test_invariants(files, capsys):
    rc, out = run(capsys, "invariants", files("g.json", H(4).to_json()))
    doc = json.loads(out)
    assert rc == 0
    assert doc["signed_generators"] == ["3/2"] and doc["integral_moduli"] is False
    rc, out = run(capsys, "invariants", files("l.json", loop_graph(2, 4).to_json()))
    assert json.loads(out)["integral_moduli"] is True


def test_coset(files, capsys):
    f = files("g.json", H(4).to_json())
    rc, out = run(capsys, "coset", f, "4")
    assert rc == 0 and json.loads(out)["integers"] == [4, 6, 9]
    rc, out = run(capsys, "coset", f, "x")
    assert rc == 2 and json.loads(out)["error"] == "MalformedInput"
    rc, out = run(capsys, "coset", files("l.json", loop_graph(2, 4).to_json()), "1")
    assert rc == 2 and json.loads(out)["error"] == "IntegralModuli"


def test_fullreduce(files, capsys):
    g = EdgeIndexedGraph.build([("e", "u", "u", 1, 6), ("f", "u", "w", 3, 5)])
    rc, out = run(capsys, "fullreduce", files("g.json", g.to_json()), "--depth", "16")
    doc = json.loads(out)
    assert rc == 0 and doc["exhaustive"] is True and doc["depth"] == 16
    kinds = {m["kind"] for m in doc["deformation"]}
    assert {"induction", "collapse"} <= kinds
    assert len(doc["graph"]["edges"]) == 1


def test_closure_json_and_dot(files, capsys):
    f = files("h4.json", H(4).to_json())
    rc, out = run(capsys, "closure", f)
    doc = json.loads(out)
    assert rc == 0 and len(doc["states"]) == 3 and doc["start"] == 0
    rc, out = run(capsys, "closure", f, "--format", "dot")
    assert out.startswith("digraph closure {") and out.count("->") == len(doc["transitions"])
    assert "4|5" in out


def test_closure_budget(files, capsys, monkeypatch):
    f = files("h4.json", H(4).to_json())
    rc, out = run(capsys, "closure", f, "--max-states", "2")
    assert rc == 2 and json.loads(out)["error"] == "StateBudgetExceeded"
    monkeypatch.setenv("GBS_MAX_STATES", "1")
    rc, out = run(capsys, "closure", f)
    assert rc == 2 and json.loads(out)["error"] == "StateBudgetExceeded"


def test_iso_exit_codes(files, capsys):
    h4, h9 = files("h4.json", H(4).to_json()), files("h9.json", H(9).to_json())
    bs23, bs25 = files("a.json", loop_graph(2, 3).to_json()), files("b.json", loop_graph(2, 5).to_json())
    rc, out = run(capsys, "iso", h4, h9)
    assert rc == 0 and json.loads(out) == {"verdict": "Isomorphic"}
    rc, out = run(capsys, "iso", bs23, bs25)
    assert rc == 1 and json.loads(out) == {"verdict": "NotIsomorphic"}
    rc, out = run(capsys, "iso", files("c.json", loop_graph(2, 4).to_json()), bs23)
    assert rc == 2 and json.loads(out)["error"] == "IntegralModuli"


def test_normalize(files, capsys):
    g = H(4)
    moves = [Expansion("v", frozenset({E("f", 0)}), 4, "u", "z"), Slide(E("z", 0), E("e", 0)), Collapse(E("f", 0))]
    deformation = deformation_to_json(g, moves)
    rc, out = run(capsys, "normalize", files("g.json", g.to_json()), files("d.json", deformation))
    doc = json.loads(out)
    assert rc == 0
    assert doc["pattern"].startswith("C^0 ") and doc["pattern"].endswith(" E^0")
    assert all(m["kind"] == "slide" for m in doc["deformation"])


def test_normalize_bad_deformation(files, capsys):
    f = files("g.json", H(4).to_json())
    rc, out = run(capsys, "normalize", f, files("d.json", "[{"))
    assert rc == 2 and json.loads(out)["error"] == "MalformedInput"
    rc, out = run(capsys, "normalize", f, files("d2.json", [{"kind": "collapse", "edge": "nope"}]))
    assert rc == 2 and json.loads(out)["error"] == "UnknownReference"


def test_output_is_deterministic(files, capsys):
    f = files("h4.json", H(4).to_json())
    for argv in (["closure", f], ["closure", f, "--format", "dot"], ["fullreduce", f], ["invariants", f]):
        first = run(capsys, *argv)
        assert all(run(capsys, *argv) == first for _ in range(3))


def test_distinct_error_codes():
    from gbs import errors

    classes = [c for c in vars(errors).values() if isinstance(c, type) and issubclass(c, errors.GBSError)]
    codes = [c.code for c in classes]
    assert len(codes) == len(set(codes))


def test_console_entry_point(files):
    f = files("h4.json", H(4).to_json())
    for cmd in (["gbs"], [sys.executable, "-m", "gbs"]):
        res = subprocess.run(cmd + ["-v", "iso", f, f], capture_output=True, text=True)
        assert res.returncode == 0
        assert json.loads(res.stdout) == {"verdict": "Isomorphic"}
