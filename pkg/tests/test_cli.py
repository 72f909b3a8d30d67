import json

import pytest

from fermat_pde.cli import main

CASE_I = ["--n", "3", "--a1", "-1", "--a2", "1", "--p1", "6", "--p2", "2",
          "--lambda1", "1", "--gamma1", "0", "--lambda2=-3", "--gamma2", "0"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("l1, l2, tag, code", [
    ("1", "-3", "NegThreeLambda", 0),
    ("1", "-1", "SumZero", 0),
    ("1", "7", "NoCase", 3),
])
def test_classify(capsys, l1, l2, tag, code):
    rc, out, _ = run(capsys, "classify", "--lambda1", l1, f"--lambda2={l2}")
    assert rc == code and out.strip() == tag


def test_classify_malformed(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--lambda1", "1+", "--lambda2", "2"])
    assert exc.value.code == 2
    assert "offset" in capsys.readouterr().err


def test_solve_case_i(capsys):
    rc, out, _ = run(capsys, "solve", *CASE_I)
    records = json.loads(out)
    assert rc == 0 and len(records) == 6
    assert all(r["verified"] and r["case"] == "NegThreeLambda" for r in records)
    assert {"case", "branch_indices", "required_a1", "f", "verified"} <= set(records[0])
    assert all(r["required_a1"] == "-1" for r in records)


def test_solve_mismatch(capsys):
    argv = list(CASE_I)
    argv[argv.index("--a1") + 1] = "1"
    rc, out, err = run(capsys, "solve", *argv)
    assert rc == 4
    assert "required_a1 = -1" in err
    assert len(json.loads(out)) == 6


def test_solve_n4_no_case(capsys):
    rc, _, _ = run(capsys, "solve", "--n", "4", "--a1", "-16", "--a2", "1", "--p1", "8", "--p2", "8",
                   "--lambda1", "1", "--gamma1", "0", "--lambda2", "2", "--gamma2", "0")
    assert rc == 3


def test_solve_n5_nonconstant_difference(capsys):
    rc, _, err = run(capsys, "solve", "--n", "5", "--a1", "1", "--a2", "1", "--p1", "1", "--p2", "1",
                     "--r", "z1^2", "--s", "z1")
    assert rc == 3 and "constant" in err


def test_solve_problem_file(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"n": 4, "a1": "-16", "a2": 1, "p1": "8", "p2": "8",
                                "lambda1": 1, "gamma1": 0, "lambda2": "-1", "gamma2": 0}))
    rc, out, _ = run(capsys, "solve", "--problem", str(path))
    assert rc == 0 and len(json.loads(out)) == 8


@pytest.mark.parametrize("doc", [
    {"n": 3, "a1": 1, "a2": 1, "p1": 1, "p2": 1},
    {"n": 3, "a1": 1, "a2": 1, "p1": 1, "p2": 1, "lambda1": 1, "gamma1": 0, "lambda2": -3, "gamma2": 0,
     "r": "z1", "s": "z2"},
    {"n": 3, "a1": "1+", "a2": 1, "p1": 1, "p2": 1, "r": "z1", "s": "z2"},
    {"n": 3, "a1": 1, "a2": 0, "p1": 1, "p2": 1, "r": "z1", "s": "z2"},
])
def test_solve_bad_problem_file(tmp_path, capsys, doc):
    path = tmp_path / "p.json"
    path.write_text(json.dumps(doc))
    rc, _, err = run(capsys, "solve", "--problem", str(path))
    assert rc == 2 and err.startswith("error")


def test_verify_exit_codes(capsys):
    rc, out, _ = run(capsys, "verify", "-f", "exp(z1)+exp(-z1)", *CASE_I)
    assert rc == 0 and json.loads(out)["symbolic_zero"] is True
    rc, out, _ = run(capsys, "verify", "-f", "exp(z1)", *CASE_I)
    report = json.loads(out)
    assert rc == 1 and report["symbolic_zero"] is False and report["residual"] != "0"
    rc, _, err = run(capsys, "verify", "-f", "((", *CASE_I)
    assert rc == 2 and "offset 2" in err


def test_commands_are_deterministic(capsys):
    for argv in (["solve", *CASE_I], ["verify", "-f", "exp(z1)", *CASE_I, "--seed", "5"],
                 ["growth", "-f", "exp(z1)", "--samples", "2000"]):
        first = run(capsys, *argv)
        assert run(capsys, *argv) == first


def test_growth_csv(tmp_path, capsys):
    out_path = tmp_path / "g.csv"
    rc, _, _ = run(capsys, "growth", "-f", "exp(z1)", "--samples", "20000", "--out", str(out_path))
    assert rc == 0
    raw = out_path.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    lines = raw.decode().splitlines()
    assert lines[0] == "r,m_estimate,stderr,log_r,log_m"
    assert len(lines) == 14 and lines[-1].startswith("# order_estimate=")
    first = lines[1].split(",")
    assert first[0] == "1" and float(first[3]) == 0
    order = float(lines[-1].split()[1].split("=")[1])
    assert 0.9 <= order <= 1.1


def test_growth_constant_is_degenerate(capsys):
    rc, out, _ = run(capsys, "growth", "-f", "1", "--samples", "500")
    lines = out.splitlines()
    assert rc == 0
    assert all(float(row.split(",")[1]) == 0 for row in lines[1:-1])
    assert "order_estimate=0 " in lines[-1] and "ci_halfwidth=inf" in lines[-1]


def test_growth_quadratic(capsys):
    _, out, _ = run(capsys, "growth", "-f", "exp(z1^2)", "--samples", "20000")
    order = float(out.splitlines()[-1].split()[1].split("=")[1])
    assert 1.85 <= order <= 2.15


@pytest.mark.parametrize("argv", [
    ["--rmin", "10", "--rmax", "1"],
    ["--steps", "5"],
    ["--out", "/nonexistent-dir/x.csv"],
])
def test_growth_input_errors(capsys, argv):
    rc, _, _ = run(capsys, "growth", "-f", "exp(z1)", "--samples", "100", *argv)
    assert rc == 2
