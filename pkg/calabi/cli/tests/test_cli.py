import json

import numpy as np
import pytest
from click.testing import CliRunner
from pydantic import ValidationError

from calabi.cli import cli
from calabi.cli.defaults import VerifierConfig
from calabi.cli.main import resolve_tolerance
from calabi.cli.reports import CheckResult, PointRecord, VerificationReport
from calabi.consts import TOLERANCE_ENV_VAR
from calabi.errors import InvalidParametersError


@pytest.fixture
def runner(monkeypatch):
    monkeypatch.delenv(TOLERANCE_ENV_VAR, raising=False)
    return CliRunner()


def run_json(runner, *args):
    result = runner.invoke(cli, list(args))
    assert result.exit_code == 0, result.stderr
    return json.loads(result.stdout)


def test_paraboloid_invariants(runner):
    report = run_json(runner, "invariants", "paraboloid:2", "--random", "5", "--seed", "1")

    assert report["surface"] == "paraboloid:2"
    assert len(report["records"]) == 5
    for record in report["records"]:
        assert record["J"] == 0.0 and record["R"] == 0.0 and record["tchebychev_norm_sq"] == 0.0
        assert record["case_label"] == "C0"
    assert report["summary"]["flat"] and report["summary"]["parallel"] and report["summary"]["extremal"]


def test_log_cone_invariants(runner):
    report = run_json(runner, "invariants", "logcone:1", "--random", "10", "--seed", "1")

    assert len(report["records"]) == 10
    for record in report["records"]:
        assert record["R"] == pytest.approx(-2.0, abs=1e-8)
        assert record["case_label"] == "C2"
    assert not report["summary"]["flat"]


def test_q_invariants(runner):
    report = run_json(runner, "invariants", "q:1,1:2", "--random", "10", "--seed", "1")

    for record in report["records"]:
        assert record["J"] == pytest.approx(1.0, abs=1e-8)
        assert record["case_label"] == "C1"


def test_reports_are_byte_stable(runner):
    args = ["invariants", "q:2,3:3", "--random", "4", "--seed", "7"]
    first = runner.invoke(cli, args).stdout
    second = runner.invoke(cli, args).stdout
    threaded = runner.invoke(cli, args + ["--workers", "3"]).stdout

    assert first == second == threaded


def test_dsl_function_with_point_file(runner, tmp_path):
    points = tmp_path / "points.json"
    points.write_text(json.dumps([[1.0, 0.5], [-1.0, 0.0], [2.0, 2.0]]))

    report = run_json(runner, "invariants", "-ln(x1)+0.5*x2^2", "--points", str(points))

    assert report["seed"] is None
    assert [r["point"] for r in report["records"]] == [[1.0, 0.5], [2.0, 2.0]]
    assert report["rejected"][0]["point"] == [-1.0, 0.0]
    assert report["records"][0]["J"] == pytest.approx(0.5)


def test_syntax_error_exits_2(runner):
    result = runner.invoke(cli, ["invariants", "ln(", "--random", "1"])

    assert result.exit_code == 2
    assert "offset 3" in result.stderr
    assert result.stdout == ""


def test_classify(runner):
    report = run_json(runner, "classify", "logcone:2", "--random", "3", "--seed", "2")

    for record in report["records"]:
        assert record["case_label"] == "C2"
        assert record["spectrum"][0] == pytest.approx(2.0 * np.sqrt(2.0), rel=1e-6)


def test_verify_single_surfaces(runner):
    report = run_json(runner, "verify-catalog", "paraboloid:2", "q:1:2", "--samples", "5")

    assert report["passed"]
    names = {check["name"] for check in report["checks"]}
    assert {"pick", "parallel", "extremal", "case_label", "reconstruction", "affine_invariance"} <= names


def test_verify_log_cone_reports_parametrization(runner):
    report = run_json(runner, "verify-catalog", "logcone:1", "--samples", "5")

    line = next(check for check in report["checks"] if check["name"] == "parametrization")
    assert line["value"] < 1e-10
    assert report["passed"]


def test_verify_invalid_id(runner):
    result = runner.invoke(cli, ["verify-catalog", "q:-1:2"])

    assert result.exit_code == 2
    assert "InvalidParametersError" in result.stderr


def test_verify_needs_a_target(runner):
    assert runner.invoke(cli, ["verify-catalog"]).exit_code == 2


def test_verify_fails_with_impossible_tolerance(runner):
    result = runner.invoke(cli, ["verify-catalog", "logcone:1", "--samples", "3", "--tol", "1e-30"])

    assert result.exit_code == 1
    assert "FAILED" in result.stderr
    assert not json.loads(result.stdout)["passed"]


@pytest.mark.parametrize(
    "a, n, c, surface",
    [("1", "2", [1.0], "q:1:2"), ("", "3", [], "paraboloid:3"), ("2,1", "3", [0.25, 1.0], "q:0.25,1:3")],
)
def test_reconstruct(runner, a, n, c, surface):
    report = run_json(runner, "reconstruct", "--a", a, "--n", n)

    assert report["c"] == c
    assert report["surface"] == surface
    assert report["integration_residual"] < 1e-9
    assert report["round_trip_residual"] < 1e-7
    assert report["passed"]


def test_reconstruct_rejects_unsorted_values(runner):
    assert runner.invoke(cli, ["reconstruct", "--a", "1,2", "--n", "2"]).exit_code == 2


def test_diag(runner, tmp_path):
    Q = np.array([[0.6, 0.8], [-0.8, 0.6]])
    family = [Q @ np.diag(d) @ Q.T for d in ([1.0, 3.0], [2.0, -1.0])]
    path = tmp_path / "family.json"
    path.write_text(json.dumps({"matrices": [m.tolist() for m in family], "tol": 1e-8}))

    report = run_json(runner, "diag", str(path))

    P = np.array(report["P"])
    for M in family:
        rotated = P @ M @ P.T
        assert np.abs(rotated - np.diag(np.diag(rotated))).max() < 1e-12
    assert report["orthogonality_defect"] < 1e-12


def test_diag_rejects_non_commuting(runner, tmp_path):
    path = tmp_path / "family.json"
    path.write_text(json.dumps([[[1.0, 0.0], [0.0, 2.0]], [[0.0, 1.0], [1.0, 0.0]]]))

    result = runner.invoke(cli, ["diag", str(path)])

    assert result.exit_code == 2
    assert "CommutatorViolationError" in result.stderr


def test_config_file_sets_tolerance(runner, tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"runtime_modules": {"calabi.cli": {"tolerance": 1e-3}}}))

    report = run_json(runner, "--config", str(path), "invariants", "paraboloid:2", "--random", "1")

    assert report["tolerance"] == 1e-3


def test_missing_config_file(runner, tmp_path):
    result = runner.invoke(cli, ["--config", str(tmp_path / "nope.json"), "invariants", "paraboloid:2"])

    assert result.exit_code == 2


def test_tolerance_precedence(monkeypatch):
    config = VerifierConfig(tolerance=1e-5)
    monkeypatch.delenv(TOLERANCE_ENV_VAR, raising=False)
    assert resolve_tolerance(None, config) == 1e-5

    monkeypatch.setenv(TOLERANCE_ENV_VAR, "1e-6")
    assert resolve_tolerance(None, config) == 1e-6
    assert resolve_tolerance(1e-7, config) == 1e-7

    monkeypatch.setenv(TOLERANCE_ENV_VAR, "tight")
    with pytest.raises(InvalidParametersError):
        resolve_tolerance(None, config)
    with pytest.raises(InvalidParametersError):
        resolve_tolerance(-1.0, config)


def test_reports_reject_non_finite_numbers():
    with pytest.raises(ValidationError):
        PointRecord(
            point=[1.0], R=float("nan"), tchebychev_norm_sq=0.0, cov_a_norm=0.0, riem_norm=0.0, extremal=0.0
        )


def test_verdicts_follow_values():
    good = CheckResult(surface="s", name="a", value=1e-9, limit=1e-8)
    bad = CheckResult(surface="s", name="b", value=1e-6, limit=1e-8)

    assert good.passed and not bad.passed
    report = VerificationReport(seed=1, tolerance=1e-8, checks=[good, bad])
    assert not report.passed
    assert report.worst() == bad
