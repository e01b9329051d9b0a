import json
import math

import pytest

from statesep import NumericError, Priors, q_ud
from statesep.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def parse_csv(text):
    lines = text.splitlines()
    header = lines[0].split(",")
    rows = [[_maybe_float(v) for v in line.split(",")] for line in lines[1:]]
    return header, rows


def _maybe_float(v):
    try:
        return float(v)
    except ValueError:
        return v


# ---------------------------------------------------------------------------
# tabular commands


def test_qmin_table(capsys):
    code, out = run_cli(
        capsys, "qmin", "--s", "0.6", "--s-prime", "0.3", "--samples", "33"
    )
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["t", "eta1", "q_min", "q1", "q2"]
    assert len(rows) == 33
    assert rows[0][1] == pytest.approx(0.5, abs=1e-12)
    assert rows[0][2] == pytest.approx(0.4285714285714286, abs=1e-9)
    etas = [r[1] for r in rows]
    assert all(b <= a + 1e-10 for a, b in zip(etas, etas[1:]))


def test_qmin_dispatches_to_ud(capsys):
    code, out = run_cli(
        capsys, "qmin", "--s", "0.6", "--s-prime", "0", "--samples", "5"
    )
    assert code == 0
    header, rows = parse_csv(out)
    assert [r[1] for r in rows] == pytest.approx([0.5, 0.375, 0.25, 0.125, 0.0])
    for r in rows:
        assert math.isnan(r[0])
        assert r[2] == pytest.approx(float(q_ud(Priors.of(r[1]), 0.6)), abs=1e-12)


def test_maxsep_equal_priors_piecewise(capsys):
    code, out = run_cli(
        capsys, "maxsep", "--eta1", "0.5", "--q-max", "0.2", "--samples", "11"
    )
    assert code == 0
    _, rows = parse_csv(out)
    for s, sp in rows:
        expected = 0.0 if s <= 0.2 else (s - 0.2) / 0.8
        assert sp == pytest.approx(expected, abs=1e-9)
    # The breakpoint where full separation stops fitting is an explicit row.
    assert any(s == pytest.approx(0.2, abs=1e-15) for s, _ in rows)


def test_maxsep_worked_example_row(capsys):
    code, out = run_cli(
        capsys, "maxsep", "--eta1", "0.3", "--q-max", "0.35", "--samples", "6"
    )
    assert code == 0
    _, rows = parse_csv(out)
    by_s = {round(s, 12): sp for s, sp in rows}
    assert by_s[0.4] == pytest.approx(0.032, abs=1e-3)


def test_maxsep_zero_budget_identity(capsys):
    code, out = run_cli(
        capsys, "maxsep", "--eta1", "0.3", "--q-max", "0", "--samples", "9"
    )
    assert code == 0
    _, rows = parse_csv(out)
    for s, sp in rows:
        assert sp == pytest.approx(s, abs=1e-9)


def test_tradeoff_rows(capsys):
    code, out = run_cli(
        capsys, "tradeoff", "--eta1", "0.5", "--s", "0.6", "--samples", "17"
    )
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["theta", "q", "s_prime"]
    assert rows[0][1] == 0.0 and rows[0][2] == pytest.approx(0.6, abs=1e-15)
    assert rows[-1][2] == 0.0
    assert rows[-1][1] == pytest.approx(0.6, abs=1e-9)  # q_ud at equal priors
    for _, q, sp in rows:
        assert sp == pytest.approx((0.6 - q) / (1.0 - q), abs=1e-12)


def test_ud_table(capsys):
    code, out = run_cli(capsys, "ud", "--s", "0.6", "--samples", "21")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["eta1", "q_ud", "q1", "q2"]
    mid = rows[10]
    assert mid[0] == pytest.approx(0.5) and mid[1] == pytest.approx(0.6, abs=1e-12)


# ---------------------------------------------------------------------------
# formats, determinism, files


def test_json_output_schema(capsys):
    code, out = run_cli(
        capsys, "tradeoff", "--eta1", "0.1", "--s", "0.6", "--samples", "5",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["meta"]["command"] == "tradeoff"
    assert doc["meta"]["params"] == {"eta1": 0.1, "s": 0.6}
    assert doc["meta"]["version"]
    assert len(doc["rows"]) == 5
    assert set(doc["rows"][0]) == {"theta", "q", "s_prime"}


def test_byte_stable_output(tmp_path, capsys):
    args = ["qmin", "--s", "0.6", "--s-prime", "0.3", "--samples", "50"]
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--output", str(p1)]) == 0
    assert main(args + ["--output", str(p2)]) == 0
    b1, b2 = p1.read_bytes(), p2.read_bytes()
    assert b1 == b2
    assert b"\r" not in b1  # LF line endings
    # 17 significant digits survive a round trip exactly.
    header, rows = parse_csv(b1.decode())
    assert rows[0][0] == pytest.approx(0.7142857142857143, abs=0)


def test_optics_json_report(capsys):
    code, out = run_cli(
        capsys, "optics", "--s", "0.6", "--s-prime", "0.3",
        "--shots", "20000", "--seed", "5", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["passed"] is True
    assert doc["report"]["protocol"]["s_prime_from_amplitudes"] == pytest.approx(
        0.3, abs=1e-12
    )


def test_optics_csv_flatten(capsys):
    code, out = run_cli(
        capsys, "optics", "--s", "0.6", "--s-prime", "0.3", "--shots", "20000"
    )
    assert code == 0
    assert out.splitlines()[0] == "key,value"
    assert any(line.startswith("passed,") for line in out.splitlines())


# ---------------------------------------------------------------------------
# exit codes


def test_usage_errors_exit_2(capsys):
    assert main(["qmin", "--s", "1.2", "--s-prime", "0.3"]) == 2
    assert main(["qmin", "--s", "0.3", "--s-prime", "0.6"]) == 2
    assert main(["maxsep", "--eta1", "0.5", "--q-max", "1.0"]) == 2
    assert main(["qmin", "--s", "0.6"]) == 2  # missing required flag
    assert main(["nonsense"]) == 2
    capsys.readouterr()


def test_numeric_failure_exits_3(capsys, monkeypatch):
    import statesep.solvers as solvers

    def boom(*args, **kwargs):
        raise NumericError("injected")

    monkeypatch.setattr(solvers, "max_separation", boom)
    monkeypatch.setattr("statesep.cli.solvers.max_separation", boom, raising=False)
    assert main(["maxsep", "--eta1", "0.3", "--q-max", "0.2", "--samples", "4"]) == 3
    capsys.readouterr()


def test_verify_small_run_passes(capsys):
    code, out = run_cli(
        capsys, "verify", "--samples", "3", "--shots", "20000", "--seed", "902"
    )
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["check", "worst_deviation", "tolerance", "status"]
    assert all(row[3] == "pass" for row in rows)
    assert any(row[0] == "oracle-agreement" for row in rows)


def test_verify_catches_injected_sign_error(capsys, monkeypatch):
    # Mutation smoke test: flip the sign of the parametric overlap formula
    # and the round-trip check must fail, driving a nonzero exit.
    import statesep.solvers as solvers

    original = solvers._maxsep_s_prime
    monkeypatch.setattr(
        solvers, "_maxsep_s_prime", lambda th, q, d: -original(th, q, d)
    )
    code, out = run_cli(
        capsys, "verify", "--samples", "2", "--shots", "20000", "--seed", "903"
    )
    assert code == 4
    _, rows = parse_csv(out)
    failing = {row[0] for row in rows if row[3] == "FAIL"}
    assert "round-trip-consistency" in failing
