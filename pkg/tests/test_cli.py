import json
import subprocess
import sys

import pytest

from qtriterm import cli
from qtriterm import coefficients as co
from qtriterm.numeric import BasePoint, SeriesControl
from qtriterm.qseries import phi21

PT = ["--a", "0.731", "--b", "0.494", "--c", "0.381", "--x", "0.558", "--q", "0.438"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_eval_phi_trivial(capsys):
    code, out = run_json(capsys, "eval-phi", "--a", "0.6", "--b", "0.7", "--c", "0.55", "--x", "0", "--q", "0.3")
    assert code == 0 and out["v"] == 1 and float(out["value"]) == 1
    code, out = run_json(capsys, "eval-phi", "--a", "1", "--b", "0.7", "--c", "0.55", "--x", "0.4", "--q", "0.3")
    assert code == 0 and float(out["value"]) == 1


@pytest.mark.parametrize("digits", [15, 40])
def test_eval_phi_matches_library(capsys, digits):
    code, out = run_json(capsys, "eval-phi", *PT, "--precision", str(digits))
    ctrl = SeriesControl(digits=digits)
    p = BasePoint.make(ctrl, "0.731", "0.494", "0.381", "0.558", "0.438")
    assert out["value"] == ctrl.fmt(phi21(*p.as_tuple(), ctrl))


def test_eval_qr_shifts(capsys):
    base = ["eval-qr", *PT, "--precision", "30"]
    _, z = run_json(capsys, *base, "--k", "0", "--l", "0", "--m", "0", "--n", "0")
    assert abs(float(z["Q"])) < 1e-25 and abs(float(z["R"]) - 1) < 1e-25
    _, u = run_json(capsys, *base, "--k", "1", "--l", "1", "--m", "1", "--n", "0")
    assert abs(float(u["Q"]) - 1) < 1e-25 and abs(float(u["R"])) < 1e-25
    _, c = run_json(capsys, *base, "--k", "0", "--l", "0", "--m", "1", "--n", "1")
    a, b, cc, x = 0.731, 0.494, 0.381, 0.558
    expect = (1 - a) * (1 - b) * (cc - a * b * x) / ((cc - a) * (cc - b))
    assert abs(float(c["Q"]) - expect) < 1e-12 * abs(expect)
    assert float(c["residual"]) < 1e-25 and c["shift"] == [0, 0, 1, 1]


def test_eval_qr_matches_library(capsys):
    _, out = run_json(capsys, "eval-qr", *PT, "--precision", "25", "--k", "2", "--l", "-1", "--m", "1", "--n", "3")
    ctrl = SeriesControl(digits=25)
    p = BasePoint.make(ctrl, "0.731", "0.494", "0.381", "0.558", "0.438")
    res = co.evaluate_qr((2, -1, 1, 3), p, ctrl)
    assert out["Q"] == ctrl.fmt(res.Q) and out["R"] == ctrl.fmt(res.R)


def test_group_commands(capsys):
    code, out = run_json(capsys, "group", "enum")
    assert code == 0 and out["order"] == 96 and len(out["elements"]) == 96
    code, out = run_json(capsys, "group", "enum", "--generators", "s3,s4,s5")
    assert out["order"] == 24
    code, out = run_json(capsys, "group", "relations")
    assert code == 0 and out["all_hold"] and all(r["holds"] for r in out["relations"])
    code, out, _ = run(capsys, "group", "cayley", "--generators", "s3")
    assert code == 0 and out.startswith("digraph")


def test_verify_commands(capsys):
    common = ["--precision", "15", "--seed", "0"]
    code, out = run_json(capsys, "verify", "base", "--which", "Q", *common)
    assert code == 0 and out["passed"] and len({tuple(r["formulas"]) for r in out["records"]}) == 4
    code, out = run_json(capsys, "verify", "all", "--which", "Q", *common)
    assert code == 0 and out["elements"] == 96 and out["failures"] == 0
    code, out = run_json(capsys, "verify", "bridge", *common)
    assert code == 0 and out["passed"] and out["count"] == 4


def test_verify_failure_exit(capsys):
    code, out = run_json(capsys, "verify", "base", "--which", "R", *PT, "--precision", "15", "--tol", "1e-40")
    assert code == cli.EXIT_VERIFY and not out["passed"]


def test_verify_custom_shifts(capsys):
    code, out = run_json(capsys, "verify", "base", *PT, "--precision", "15", "--shifts", "0,0,1,1;1,2,1,0")
    assert code == 0 and {tuple(r["shift"]) for r in out["records"]} == {(0, 0, 1, 1), (1, 2, 1, 0)}


def test_admissible_search(capsys):
    code, out = run_json(capsys, "admissible", "search", "--seed", "0")
    assert code == 0
    assert {k: float(v) for k, v in out["point"].items()} == dict(a=0.731, b=0.494, c=0.381, x=0.558, q=0.438)


def test_pole_exit_code(capsys):
    code, out = run_json(capsys, "eval-phi", "--a", "0.3", "--b", "0.2", "--c", "4", "--x", "0.4", "--q", "0.5")
    assert code == cli.EXIT_DOMAIN and out["error"] == "PoleError"


def test_domain_exit_code(capsys):
    code, out = run_json(capsys, "eval-phi", "--a", "0.3", "--b", "0.2", "--c", "0.4", "--x", "1.5", "--q", "0.5")
    assert code == cli.EXIT_DOMAIN and out["error"] == "DomainError"


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["eval-qr", *PT],
        ["eval-phi", "--a", "0.3"],
        ["verify", "all", "--shifts", "1,2,3"],
        ["eval-phi", *PT, "--precision", "8"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == cli.EXIT_USAGE and "usage error" in err


def test_config_precedence(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"precision_digits": 20, "point": dict(a=0.6, b=0.7, c=0.55, x=0.4, q=0.3)}))
    monkeypatch.setenv("QTRITERM_PRECISION", "35")
    _, out = run_json(capsys, "eval-phi", "--config", str(cfg))
    ctrl = SeriesControl(digits=20)
    assert out["value"] == ctrl.fmt(phi21(*(ctrl.num(v) for v in ("0.6", "0.7", "0.55", "0.4", "0.3")), ctrl))
    _, out2 = run_json(capsys, "eval-phi", "--config", str(cfg), "--precision", "15", "--x", "0")
    assert out2["value"] == "1.0"


def test_env_precision(monkeypatch, capsys):
    monkeypatch.setenv("QTRITERM_PRECISION", "22")
    args = cli.build_parser().parse_args(["eval-phi", *PT])
    assert cli.RunConfig.load(args).precision_digits == 22


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qtriterm", "group", "enum", "--generators", "s3"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["order"] == 2


def test_verify_all_deterministic(capsys):
    argv = ["verify", "all", "--which", "R", "--precision", "15", *PT]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
