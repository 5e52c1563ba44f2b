import json
import subprocess
import sys

from alexlmo.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bcoeffs(capsys):
    code, out, _ = call(capsys, "series", "bcoeffs", "--max", "4")
    assert code == 0
    assert out.strip() == '{"2": "1/48", "4": "-1/5760"}'


def test_nu(capsys):
    code, out, _ = call(capsys, "series", "nu", "--max", "4")
    assert json.loads(out)["text"] == "1 - 1/24*h^2 + 7/5760*h^4"


def test_aprime(capsys):
    code, out, _ = call(capsys, "series", "aprime", "--alexander", '{"span": 1, "coeffs": [-1, 3, -1]}')
    assert code == 0 and json.loads(out) == {"2": "1/2", "4": "7/24"}


def test_knot_commands(capsys):
    _, out, _ = call(capsys, "knot", "alexander", "--name", "figure8")
    assert json.loads(out)["text"] == "-t + 3 - t^-1"
    _, out, _ = call(capsys, "knot", "conway", "--name", "5_1")
    assert json.loads(out)["text"] == "1 + 3*z^2 + z^4"
    _, out, _ = call(capsys, "knot", "alexander", "--pd", "[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]")
    assert json.loads(out)["text"] == "t - 1 + t^-1"
    _, out, _ = call(capsys, "knot", "alexander", "--seifert", "[[-1, 1], [0, -1]]")
    assert json.loads(out)["text"] == "t - 1 + t^-1"
    _, out, _ = call(capsys, "knot", "table")
    assert "trefoil" in json.loads(out)


def test_diagram_commands(capsys):
    _, out, _ = call(capsys, "diagram", "weval", "--builtin", "theta")
    assert json.loads(out) == "c^2 - c"
    _, out, _ = call(capsys, "diagram", "wc", "--builtin", "wheels:2,4")
    assert json.loads(out) == {"6": "4"}
    _, out, _ = call(capsys, "diagram", "iota", "--builtin", "interval", "--m", "1")
    data = json.loads(out)
    assert len(data) == 1 and data[0]["coeff"] == "-2"
    _, out, _ = call(capsys, "diagram", "pwh", "--builtin", "wheel:2")
    assert json.loads(out)
    code, out, _ = call(capsys, "diagram", "close", "--builtin", "wheel:2")
    assert code == 0 and len(json.loads(out)) == 1


def test_space_dim(capsys):
    _, out, _ = call(capsys, "space", "dim", "--degree", "4")
    assert json.loads(out) == {"degree": 4, "ambient": 24, "rank": 18, "quotient_dim": 6}


def test_wheels_commands(capsys):
    _, out, _ = call(capsys, "wheels", "alpha", "--alexander", '{"span": 1, "coeffs": [1, -1, 1]}')
    assert json.loads(out) == {"2": "-11/24", "4": "599/2880"}
    code, out, _ = call(capsys, "wheels", "exp", "--alpha", '{"2": "1/2"}', "--max", "4")
    assert code == 0 and json.loads(out)


def test_lmo_round_trip(capsys, tmp_path):
    _, out, _ = call(capsys, "lmo", "forward", "--knot", "trefoil", "--degree", "1")
    data = json.loads(out)
    assert data["degrees"]["1"]["coords"] == ["-11/24"]
    path = tmp_path / "z.json"
    _, out, _ = call(capsys, "lmo", "forward", "--knot", "figure8", "--degree", "3", "--output", str(path))
    assert out == "" and path.exists()
    code, out, _ = call(capsys, "lmo", "invert", "--input", str(path), "--degree", "3", "--span", "1")
    assert code == 0 and json.loads(out)["text"] == "-t + 3 - t^-1"


def test_lmo_invert_documented_value(capsys):
    z = '{"max_degree": 1, "degrees": {"0": {"coords": ["1"]}, "1": {"coords": ["25/24"]}}}'
    code, out, _ = call(capsys, "lmo", "invert", "--input", z, "--degree", "1", "--span", "1")
    assert code == 0 and json.loads(out)["text"] == "-2*t + 5 - 2*t^-1"


def test_exit_codes(capsys):
    assert call(capsys, "knot", "alexander", "--pd", "{not json")[0] == 2
    assert call(capsys, "knot", "alexander", "--name", "no_such_knot")[0] == 2
    assert call(capsys, "knot", "alexander", "--pd", "[[1, 2, 3, 4]]")[0] == 2
    assert call(capsys, "bogus")[0] == 2
    assert call(capsys, "space", "dim", "--degree", "9")[0] == 1
    assert call(capsys, "series", "aprime", "--alexander", '{"span": 1, "coeffs": [1, 0, 1]}')[0] == 1
    z = '{"max_degree": 1, "degrees": {"0": {"coords": ["2"]}, "1": {"coords": ["0"]}}}'
    code, _, err = call(capsys, "lmo", "invert", "--input", z, "--degree", "1")
    assert code == 1 and json.loads(err)["kind"] == "NotInImageError"


def test_verify_subset(capsys):
    code, out, err = call(capsys, "verify", "--only", "1", "3")
    assert code == 0 and json.loads(out)["passed"]
    assert "[PASS] criterion" in err


def _cli(*argv, stdin=None):
    return subprocess.run([sys.executable, "-m", "alexlmo", *argv], input=stdin, capture_output=True, text=True)


def test_reruns_are_byte_identical():
    argv = ("lmo", "forward", "--knot", "5_2", "--degree", "3", "--pretty")
    a, b = _cli(*argv), _cli(*argv)
    assert a.returncode == 0 and a.stdout == b.stdout


def test_stdin_input():
    res = _cli("diagram", "weval", "--input", "-", stdin=json.dumps({"vertices": [[0, 1, 2], [3, 4, 5]], "edges": [[0, 5], [1, 4], [2, 3]]}))
    assert res.returncode == 0
    assert json.loads(res.stdout) == "c^2 - c"
