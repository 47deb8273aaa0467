import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from toda_atlas.cli import main
from toda_atlas.kostant import compute_phi
from toda_atlas.liealg import GammaData
from toda_atlas.puiseux import PuiseuxMatrix
from toda_atlas.repgen import standard_rep


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_info(capsys):
    rc, out, _ = run(capsys, "info", "D4")
    assert rc == 0
    assert "degrees 2 4 6 4" in out
    assert "12 positive roots" in out
    rc, out, _ = run(capsys, "info", "E6", "--format", "json")
    data = json.loads(out)
    assert data["degrees"] == [2, 5, 6, 8, 9, 12]
    assert data["minus_kappa"] == [6, 2, 5, 4, 3, 1]


def test_phi_text_with_negative_gamma(capsys):
    rc, out, _ = run(capsys, "phi", "--type", "D4", "--gamma", "-1/2,1,2,3")
    assert rc == 0
    assert "(8,1): -64/312455 z^12" in out.splitlines()
    assert "(2,1): 2 z^(1/2)" in out.splitlines()


def test_phi_json_round_trip_and_determinism(capsys):
    _, a, _ = run(capsys, "phi", "--type", "B3", "--gamma=1/3,-1/4,2", "--format", "json")
    _, b, _ = run(capsys, "phi", "--type", "B3", "--gamma=1/3,-1/4,2", "--format", "json")
    assert a == b
    back = PuiseuxMatrix.from_json(json.loads(a))
    want = compute_phi(standard_rep("B3"), GammaData.of("B3", ("1/3", "-1/4", "2")))
    assert back == want


def test_phi_spin(capsys):
    rc, out, _ = run(capsys, "phi", "--type", "D4", "--gamma", "0,0,0,0", "--rep", "half_plus")
    assert rc == 0 and out.strip()


def test_solve_csv(capsys, tmp_path):
    target = tmp_path / "grid.csv"
    rc, out, _ = run(capsys, "solve", "--type", "A2", "--gamma", "0,0", "--grid", "1:2:2:4", "--out", str(target))
    assert rc == 0 and out == ""
    rows = list(csv.reader(io.StringIO(target.read_text())))
    assert rows[0] == ["x1", "x2", "U_1", "U_2", "u_1", "u_2"]
    assert len(rows) == 1 + 8
    # A2, gamma = 0, identity group elements: U_i = -log(1 + r^2 + r^4 / 4)
    x1, x2, u1 = (float(v) for v in rows[1][:3])
    r2 = x1 * x1 + x2 * x2
    import math
    assert u1 == pytest.approx(-math.log(1 + r2 + r2 * r2 / 4), rel=1e-13)


def test_params_file_and_inline_json(capsys, tmp_path):
    params = {"type": "D4", "gamma": ["-1/2", "1", "2", "3"], "lambda": [1, 2, 1, 1],
              "c": {"0,1,1,0": [1, 0]}}
    path = tmp_path / "p.json"
    path.write_text(json.dumps(params))
    rc, out, _ = run(capsys, "verify-pde", "--params", str(path))
    assert rc == 0 and json.loads(out)["ok"]
    rc, out, _ = run(capsys, "verify-pde", "--params", json.dumps(params), "--tol", "1e-30")
    assert rc == 1 and not json.loads(out)["ok"]


def test_monodromy_verdicts(capsys):
    rc, out, _ = run(capsys, "monodromy", "--type", "D4", "--gamma", "-1/2,1,2,3", "--c", '{"1,0,0,0": [1, 0]}')
    data = json.loads(out)
    assert rc == 0
    assert data["in_N_Gamma"] is False and data["single_valued"] is False and data["consistent"]
    rc, out, _ = run(capsys, "monodromy", "--type", "D4", "--gamma", "-1/2,1,2,3", "--c", '{"0,1,0,0": [1, 2]}')
    data = json.loads(out)
    assert rc == 0 and data["in_N_Gamma"] and data["single_valued"]


def test_verify_quant_and_asymp(capsys):
    rc, out, _ = run(capsys, "verify-quant", "--type", "A2", "--gamma", "0,0")
    assert rc == 0 and json.loads(out)["ok"]
    rc, out, _ = run(capsys, "verify-quant", "--type", "D4", "--gamma", "-1/2,1,2,3", "--c", '{"1,0,0,0": [1, 0]}')
    assert rc == 2
    rc, out, _ = run(capsys, "verify-asymp", "--type", "A1", "--gamma", "0", "--format", "csv", "--nr", "3")
    assert rc == 0
    assert out.splitlines()[0] == "r,log_r,mean_u_1"
    assert len(out.splitlines()) == 4


def test_winv(capsys):
    rc, out, _ = run(capsys, "winv", "--type", "A1", "--gamma", "1")
    assert rc == 0
    # gamma^1 = 1/2 enters the connection: the raw slice coefficient is 3/4
    assert out.strip() == "d=2  w=3/4  z^-2"
    rc, out, _ = run(capsys, "winv", "--type", "D4", "--gamma", "-1/2,1,2,3", "--format", "json")
    data = json.loads(out)
    assert sorted(r["degree"] for r in data["invariants"]) == [2, 4, 4, 6]
    assert all(r["pure_pole"] for r in data["invariants"])


@pytest.mark.parametrize("argv", [
    ["info", "X9"],
    ["phi", "--type", "A2", "--gamma", "0"],
    ["phi", "--type", "A2", "--gamma", "-1,0"],
    ["phi", "--type", "E6", "--gamma", "0,0,0,0,0,0"],
    ["solve", "--type", "A2"],
    ["solve", "--type", "A2", "--gamma", "0,0", "--grid", "1:2"],
    ["solve", "--type", "A2", "--gamma", "0,0", "--c", "{not json"],
    ["solve", "--type", "A2", "--gamma", "0,0", "--c", '{"3,0": [1, 0]}'],
    ["solve", "--type", "A2", "--gamma", "0,0", "--out", "/nonexistent/dir/x.csv"],
])
def test_bad_input_exit_2(capsys, argv):
    rc, _, err = run(capsys, *argv)
    assert rc == 2
    assert "toda-atlas: error" in err


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point_golden():
    out = subprocess.run([sys.executable, "-m", "toda_atlas", "golden"], capture_output=True, text=True)
    assert out.returncode == 0, out.stdout + out.stderr
    lines = out.stdout.strip().splitlines()
    assert len(lines) == 7 and all(line.startswith("PASS") for line in lines)
