import json

import pytest
from click.testing import CliRunner

from qhl.cli import cli, parse_ref
from qhl.scenarios import fixture_path
from qhl.subspace import spin_projector


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, [str(a) for a in args], catch_exceptions=False)

    return invoke


def test_demo_spin_boxes(run):
    result = run("demo", "spin-boxes")
    assert result.exit_code == 0
    assert "[meaningless] argument bare-disjunction" in result.output
    assert "[valid] argument labeled-disjunction" in result.output


def test_strict_fails_on_meaningless(run):
    assert run("--strict", "demo", "spin-boxes").exit_code == 1
    assert run("--strict", "check", fixture_path("two_time_history")).exit_code == 1


def test_demo_ghz_json(run):
    result = run("--format", "json", "demo", "ghz")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["scenario"] == "ghz"
    outcomes = {r["name"]: r["outcome"] for r in data["results"]}
    assert outcomes["value-assignments"] == "impossible"


def test_json_is_deterministic(run):
    assert run("--format", "json", "demo", "ghz").output == run("--format", "json", "demo", "ghz").output


def test_check(run):
    result = run("check", fixture_path("spin_boxes"))
    assert result.exit_code == 0
    assert "[consistent] histories sz-measurement" in result.output


def test_check_bad_file(run, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x", "projectors": {"P": {"identity": "two"}}}')
    result = run("check", bad)
    assert result.exit_code == 2
    assert "/projectors/P" in result.output
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert run("check", empty).exit_code == 2
    assert run("check", tmp_path / "missing.json").exit_code == 2


def test_tolerance_option(run):
    result = run("--tolerance", "1e-6", "--format", "json", "demo", "ghz")
    assert json.loads(result.output)["tolerance"] == 1e-6
    assert run("--tolerance", "-1", "demo", "ghz").exit_code == 2


def test_prove(run):
    result = run("prove", "A | B |- A", "--bind", "A=z+*I", "--bind", "B=I*z+")
    assert result.exit_code == 0
    assert "[invalid]" in result.output
    result = run("--strict", "prove", "A |- B", "--bind", "A=x+", "--bind", "B=z+")
    assert result.exit_code == 1
    assert "meaningless" in result.output
    assert run("prove", "A |- A", "--bind", "A=z+").exit_code == 0


def test_prove_from_scenario(run):
    result = run("prove", "A; B |- A & B", "--bind", "A=X1", "--bind", "B=X2",
                 "--from", fixture_path("ghz"))
    assert result.exit_code == 0
    assert "[valid]" in result.output


def test_prove_input_errors(run):
    assert run("prove", "A & | B |- A", "--bind", "A=z+").exit_code == 2
    assert run("prove", "A |- B", "--bind", "A=z+").exit_code == 2
    assert run("prove", "A |- A", "--bind", "A=q+").exit_code == 2
    assert run("prove", "A |- A", "--bind", "noequals").exit_code == 2


def test_parse_error_message(run):
    result = run("truth-table", "A & | B")
    assert result.exit_code == 2
    assert "offset 4" in result.output


def test_truth_table(run):
    result = run("truth-table", "A & !B")
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert len(lines) == 6
    assert lines[2].split(" | ")[-1].strip() == "F"
    assert lines[4].split(" | ")[-1].strip() == "T"
    data = json.loads(run("--format", "json", "truth-table", "A | B").output)
    assert data["results"][0]["data"]["rows"][0] == [False, False, False]


def test_audit(run):
    result = run("--format", "json", "audit", "--dim", "2", "--trials", "20", "--seed", "3")
    assert result.exit_code == 0
    assert json.loads(result.output)["results"][0]["data"]["violations"] == 0
    assert run("audit", "--dim", "9", "--trials", "5").exit_code == 2


def test_label_options(run):
    assert run("--label-dim", "1", "demo", "spin-boxes").exit_code == 2
    result = run("--label-dim", "3", "demo", "spin-boxes", "--label-overlap", "0.5")
    assert result.exit_code == 0
    assert "overlapping" in result.output


def test_parse_ref():
    p = parse_ref("z+ ⊗ I3")
    assert p.dim == 6 and p.rank == 3
    assert parse_ref("x-").allclose(spin_projector("x", -1))
    assert parse_ref("0").is_zero()
