"""Command-line interface: verbs, exit codes, formats, determinism."""

from __future__ import annotations

import json

import pytest

from rootfold.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILURE, main
from rootfold.verify import RunConfig, run_suite


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_emits_valid_json(capsys):
    code, out, _ = run_cli(capsys, "build", "D5")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["label"] == "D5"
    assert len(data["positive"]) == 20


def test_build_rejects_bad_labels(capsys):
    code, _, err = run_cli(capsys, "build", "A0")
    assert code == EXIT_USAGE
    assert "A0" in err
    code, _, _ = run_cli(capsys, "build", "H4")
    assert code == EXIT_USAGE


def test_fold_report(capsys):
    code, out, _ = run_cli(capsys, "fold", "E7", "7")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["folded_label"] == "F4"
    assert data["m"] == [1, 2, 3, 2, 1]


def test_fold_empty_case(capsys):
    code, out, _ = run_cli(capsys, "fold", "A6", "2")
    assert code == EXIT_OK
    assert json.loads(out)["folded_label"] == "Empty"


def test_fold_rejects_invalid_index_naming_the_valid_ones(capsys):
    code, _, err = run_cli(capsys, "fold", "B4", "2")
    assert code == EXIT_USAGE
    assert "[1]" in err


def test_tables_exit_code_reflects_row_status(capsys):
    code, out, _ = run_cli(
        capsys, "tables", "Omega_f", "--max-rank", "4", "--filter", "A,G", "--format", "tsv"
    )
    assert code == EXIT_OK
    assert "True" in out and "False" not in out


def test_tables_rejects_unknown_table_id(capsys):
    code, _, err = run_cli(capsys, "tables", "NoSuchTable")
    assert code == EXIT_USAGE
    assert "NoSuchTable" in err


def test_verify_small_run(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--max-rank", "3", "--filter", "A",
        "--checks", "multiplicities,type_round_trip", "--format", "json",
    )
    assert code == EXIT_OK
    rows = json.loads(out)
    assert rows and all(r["ok"] for r in rows)


def test_verify_rejects_unknown_check(capsys):
    code, _, err = run_cli(capsys, "verify", "--checks", "nonsense")
    assert code == EXIT_USAGE
    assert "nonsense" in err


def test_diagram_formats(capsys):
    code, out, _ = run_cli(capsys, "diagram", "B2", "--format", "ascii")
    assert code == EXIT_OK
    assert "=2" in out
    code, out, _ = run_cli(capsys, "diagram", "F4", "--extended", "--format", "dot")
    assert code == EXIT_OK
    assert out.startswith("graph diagram {")


def test_diagram_fold_validates_index(capsys):
    code, _, err = run_cli(capsys, "diagram", "G2", "--fold", "1")
    assert code == EXIT_USAGE
    assert "valid j: []" in err


def test_out_flag_writes_a_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "build", "G2", "--out", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert json.loads(target.read_text())["label"] == "G2"


def test_family_filter_rejects_unknown_families(capsys):
    code, _, err = run_cli(capsys, "tables", "Omega_f", "--filter", "Q")
    assert code == EXIT_USAGE
    assert "Q" in err


def test_suite_output_is_independent_of_worker_count():
    cfg1 = RunConfig(max_rank=3, families=frozenset("A"), jobs=1)
    cfg4 = RunConfig(max_rank=3, families=frozenset("A"), jobs=4)
    checks = ["multiplicities", "stabilizer_action", "type_round_trip"]
    assert run_suite(cfg1, checks) == run_suite(cfg4, checks)
