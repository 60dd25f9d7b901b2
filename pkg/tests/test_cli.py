import json
import subprocess
import sys

import pytest

from conftest import FROBPOLY_11, HYPERELLIPTIC
from unitroot.cli import main
from unitroot.laurent import parse, to_json
from unitroot.padic import parse_digits

HYP = ["--poly", HYPERELLIPTIC, "--vars", "x,y"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_interior_points(capsys):
    code, out, _ = run(capsys, "interior-points", *HYP, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["interior_points"] == [[1, 1], [2, 1]] and data["h"] == 2


def test_interior_points_monomial(capsys):
    code, out, err = run(capsys, "interior-points", "--poly", "x^3*y", "--vars", "x,y")
    assert code == 0 and "h = 0" in out and "no interior points" in err


def test_interior_points_plane_quartic(capsys):
    F = "X^4 + Y^4 + Z^4 + X^2*Y*Z - 3*X*Y^3"
    code, out, _ = run(capsys, "interior-points", "--poly", F, "--vars", "X,Y,Z", "--format", "json")
    assert json.loads(out)["h"] == 3


def test_limit_text_and_digit_roundtrip(capsys):
    code, out, _ = run(capsys, "limit", *HYP, "--prime", "11", "--precision", "3")
    assert code == 0
    lines = dict(line.split(": ", 1) for line in out.splitlines() if line.startswith(("trace", "det")))
    assert lines["trace"] == "8 + 11 + 11^2 + O(11^3)"
    assert lines["det"] == "7 + 6*11 + 3*11^2 + O(11^3)"
    assert parse_digits(lines["trace"]).digits == (8, 1, 1)
    assert parse_digits(lines["det"]).digits == (7, 6, 3)


def test_limit_sides_share_charpoly(capsys):
    outs = []
    for side in ("left", "right"):
        code, out, _ = run(
            capsys, "limit", *HYP, "--prime", "11", "--precision", "2", "--side", side, "--format", "json"
        )
        outs.append(json.loads(out))
    assert outs[0]["charpoly"] == outs[1]["charpoly"]


def test_limit_k1(capsys):
    code, out, _ = run(capsys, "limit", *HYP, "--prime", "11", "--format", "json")
    m = json.loads(out)["matrix"]
    assert m["entries"] == [[str(-81144 % 11), str(-1260 % 11)], [str(-81900 % 11), str(-1260 % 11)]]
    assert m["labels"] == [[1, 1], [2, 1]] and m["precision"] == 1


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", *HYP, "--prime", "11", "--max-s", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"]


def test_double_cover(capsys):
    code, out, _ = run(
        capsys, "double-cover", *HYP, "--prime", "11", "--precision", "3",
        "--frobpoly", FROBPOLY_11, "--asd-n", "121", "--format", "json",
    )
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert any(c["name"].startswith("frobenius polynomial") and c["status"] == "pass" for c in data["checks"])


def test_double_cover_wrong_frobpoly_exit_1(capsys):
    code, _, _ = run(
        capsys, "double-cover", *HYP, "--prime", "11", "--precision", "2", "--frobpoly", "1,3,18,33,120"
    )
    assert code == 1


def test_ghost_verify(capsys):
    code, out, _ = run(capsys, "ghost-verify", "--poly", "x + y + x^-1*y^-1", "--vars", "x,y",
                       "--prime", "2", "--max-n", "8", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]


def test_log_coeffs(capsys):
    code, out, _ = run(capsys, "log-coeffs", *HYP, "--prime", "11", "--terms", "3", "--format", "json")
    data = json.loads(out)
    assert data["coefficients"][0]["entries"] == [["1", "0"], ["0", "1"]]


def test_poly_file(tmp_path, capsys):
    f = tmp_path / "poly.json"
    f.write_text(json.dumps(to_json(parse(HYPERELLIPTIC, ["x", "y"]))))
    code, out, _ = run(capsys, "interior-points", "--poly-file", str(f), "--format", "json")
    assert json.loads(out)["h"] == 2
    f.write_text("{not json")
    assert run(capsys, "interior-points", "--poly-file", str(f))[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["limit", "--poly", "y^2 - x^5 +", "--vars", "x,y", "--prime", "11"],
        ["limit", *HYP, "--prime", "12"],
        ["limit", *HYP, "--prime", "11", "--precision", "0"],
        ["limit", "--poly", "x + y", "--vars", "x,y", "--prime", "3"],
        ["limit", "--poly", HYPERELLIPTIC, "--prime", "11"],
        ["limit", "--poly", "x + q", "--vars", "x", "--prime", "3"],
        ["double-cover", *HYP, "--prime", "11", "--asd-n", "121"],
        ["double-cover", *HYP, "--prime", "11", "--frobpoly", "2,1"],
        ["verify", *HYP, "--prime", "11", "--threads", "0"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_parse_error_shows_position(capsys):
    code, _, err = run(capsys, "limit", "--poly", "y^2 - x^5 $ 1", "--vars", "x,y", "--prime", "11")
    assert code == 2
    caret = err.splitlines()[-1]
    assert caret.index("^") - 2 == "y^2 - x^5 $ 1".index("$")


def test_non_ordinary_exit_1(capsys):
    code, _, err = run(capsys, "limit", "--poly", "y^2 - x^3 - 1", "--vars", "x,y", "--prime", "5")
    assert code == 1 and "non-ordinary at p=5" in err


def test_threads_do_not_change_output():
    base = [sys.executable, "-m", "unitroot", "limit", *HYP, "--prime", "11", "--precision", "2"]
    outs = [subprocess.run(base + ["--threads", t], capture_output=True, check=True).stdout for t in ("1", "4")]
    assert outs[0] == outs[1]
