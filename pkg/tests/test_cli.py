import json
import random

import pytest

from varsample.cli import format_system, parse_system, run
from varsample.elim import PolySystem
from varsample.errors import CompositeModulus, ParseError, TooManyPolys, UndeclaredVariable
from varsample.field import Field
from varsample.verify import enumerate_variety

from test_poly import random_multipoly

TWO_POLY = """\
# sphere cut by a plane
q=101
vars: x, y, z
x^2 + y^2 + z^2 - 1
x + y + z
"""


@pytest.fixture
def write(tmp_path):
    def _write(text, name="sys.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def test_parse_system():
    sys = parse_system(TWO_POLY)
    assert (sys.num_vars, sys.k, sys.degree_bound) == (3, 2, 2)
    assert sys.var_names == ("x", "y", "z")
    with pytest.raises(CompositeModulus):
        parse_system("q=91\nvars: x\nx\n")
    with pytest.raises(UndeclaredVariable) as exc:
        parse_system("q=7\nvars: x, y\nx + z^2\n")
    assert exc.value.line == 3
    with pytest.raises(TooManyPolys):
        parse_system("q=7\nvars: a,b,c,d,e\na\nb\nc\nd\ne\n")
    with pytest.raises(ParseError):
        parse_system("vars: x\nq=7\n")
    with pytest.raises(ParseError):
        parse_system("x^2\n")
    with pytest.raises(ParseError):
        parse_system("q=seven\nvars: x\nx\n")


def test_round_trip():
    r = random.Random(0)
    for _ in range(200):
        F = Field(r.choice([7, 13, 101]))
        n = r.randint(1, 4)
        polys = []
        while len(polys) < r.randint(1, n):
            f = random_multipoly(r, F, n, 3)
            if not f.is_zero():
                polys.append(f)
        names = ["x", "y", "z", "w"][:n]
        sys = PolySystem(F, n, polys, names=names)
        assert parse_system(format_system(sys)) == sys


def test_subspaces(capsys):
    assert run(["subspaces", "--n", "2", "--k", "1", "--q", "3"]) == 0
    assert capsys.readouterr().out.strip() == "linear: 4, affine: 12"


def test_sample_single_point(write, capsys):
    path = write("q=7\nvars: x\nx - 3\n")
    assert run(["sample", "--system", path, "--epsilon", "0.25", "--count", "5", "--seed", "1"]) == 0
    assert capsys.readouterr().out.split() == ["3"] * 5


def test_sample_json_and_determinism(write, capsys):
    path = write(TWO_POLY)
    argv = ["sample", "--system", path, "--epsilon", "0.25", "--count", "40", "--seed", "9", "--json"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first
    doc = json.loads(first)
    assert doc["q"] == 101 and doc["vars"] == ["x", "y", "z"]
    assert set(doc["report"]) >= {"fallbacks", "rsamp_failures"}
    on_v = set(enumerate_variety(parse_system(TWO_POLY)))
    assert all(tuple(pt) in on_v for pt in doc["points"])


def test_seed_is_mandatory(write):
    path = write(TWO_POLY)
    with pytest.raises(SystemExit):
        run(["sample", "--system", path, "--epsilon", "0.25"])


def test_solve(write, capsys):
    path = write("q=13\nvars: a, b\na^2 + b^2 - 1\na + b - 1\n")
    assert run(["solve", "--system", path]) == 0
    assert capsys.readouterr().out.split("\n")[:3] == ["zero-dimensional", "0,1", "1,0"]
    assert run(["solve", "--system", write(TWO_POLY, "two.txt")]) == 2


def test_count(write, capsys):
    assert run(["count", "--system", write("q=13\nvars: x, y\nx^2 + y^2 - 1\n")]) == 0
    assert capsys.readouterr().out.strip() == "12"


def test_verify_distance_pass(write, capsys):
    path = write("q=31\nvars: x, y\ny^2 - x^3 - x\n")
    code = run(["verify-distance", "--system", path, "--epsilon", "0.25", "--samples", "3000", "--seed", "2"])
    out = capsys.readouterr().out
    assert code == 0 and out.strip().endswith("PASS")


def test_verify_distance_fail_exit_code(write, capsys, monkeypatch):
    import varsample.verify as verify

    monkeypatch.setattr(verify.DistanceReport, "passed", property(lambda self: False))
    path = write("q=31\nvars: x, y\ny^2 - x^3 - x\n")
    assert run(["verify-distance", "--system", path, "--epsilon", "0.25", "--samples", "100", "--seed", "2"]) == 4


def test_estimate_proper(write, capsys):
    path = write("q=101\nvars: x, y\nx^2 + y^2 - 1\n")
    assert run(["estimate-proper", "--system", path, "--trials", "500", "--seed", "3", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["wilson"][0] <= doc["fraction"] <= doc["wilson"][1]


def test_error_exit_codes(write, capsys):
    assert run(["count", "--system", write("q=91\nvars: x\nx\n")]) == 2
    err = capsys.readouterr().err
    assert err.count("\n") == 1 and "CompositeModulus" in err
    empty = write("q=7\nvars: x\nx^2 + 1\n", "empty.txt")
    assert run(["sample", "--system", empty, "--epsilon", "0.25", "--seed", "0", "--max-wall-budget", "20"]) == 3
    assert run(["count", "--system", "/nonexistent/file"]) == 2
