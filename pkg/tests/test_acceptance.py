"""Acceptance gate: every structural claim re-derived by brute force, exact arithmetic only.

Each test covers one criterion and prints a single PASS line on success; any
mismatch fails the test with the offending rows.  Criteria 1 and 4 also assert
their runtime budgets, so this module must run with a cold cache (it sorts
first in the default test order).
"""

from __future__ import annotations

import time

from rootfold.cache import get_context, get_fold, get_system
from rootfold.root_systems import TypeLabel, iter_labels, verify_axioms
from rootfold.tables import run_table
from rootfold.verify import (
    RunConfig,
    check_diagram_fold_agreement,
    check_folded_basis,
    check_lifted_reflections,
    check_multiplicities,
    check_norms_and_coroots,
    check_stabilizer_action,
    corrupted_mark_fault,
    removed_root_fault,
)

CONFIG = RunConfig(max_rank=12)


def _assert_rows(rows, key="pass"):
    bad = [r for r in rows if not r[key]]
    assert not bad, f"{len(bad)} of {len(rows)} rows failed; first: {bad[0]}"
    return len(rows)


def test_criterion_01_stabilizer_group_and_index_table():
    start = time.monotonic()
    n = _assert_rows(run_table("Omega_f", max_rank=12))
    elapsed = time.monotonic() - start
    assert elapsed < 30, f"stabilizer table took {elapsed:.1f}s (budget 30s)"
    print(f"criterion 1 PASS: stabilizer order/structure/index, {n} rows, {elapsed:.1f}s")


def test_criterion_02_diagram_permutation_table():
    n = _assert_rows(run_table("sigma_j", max_rank=12))
    print(f"criterion 2 PASS: diagram permutations incl. D-even product relation, {n} rows")


def test_criterion_03_stabilizer_action_consistency():
    rows = check_stabilizer_action(CONFIG)
    n = _assert_rows(rows, key="ok")
    print(f"criterion 3 PASS: sigma(0)=j, mark invariance, affine/diagram agreement, {n} rows")


def test_criterion_04_folded_sets_are_root_systems():
    start = time.monotonic()
    cases = 0
    for label in iter_labels(10):
        rs = get_system(label)
        for j in rs.minuscule_indices:
            if j == 0:
                continue
            folded = get_fold(label, j)
            verdict = verify_axioms(folded.roots)
            assert verdict.ok, f"{label} j={j}: {verdict.failures}"
            cases += 1
    elapsed = time.monotonic() - start
    assert elapsed < 60, f"folded-axiom sweep took {elapsed:.1f}s (budget 60s)"
    print(f"criterion 4 PASS: folded axioms by enumeration, {cases} folds, {elapsed:.1f}s")


def test_criterion_05_folded_basis_and_duality():
    rows = check_folded_basis(RunConfig(max_rank=10))
    n = _assert_rows(rows, key="ok")
    print(f"criterion 5 PASS: integral sign-uniform coefficients and dual basis, {n} folds")


def test_criterion_06_integral_positive_multiplicities():
    rows = check_multiplicities(CONFIG)
    n = _assert_rows(rows, key="ok")
    print(f"criterion 6 PASS: every folded mark a positive integer, {n} folds")


def test_criterion_07_folded_type_table():
    n = _assert_rows(run_table("Table_P", max_rank=10))
    print(f"criterion 7 PASS: folded type identification, {n} rows")


def test_criterion_08_disappearing_sets():
    n = _assert_rows(run_table("disap_sets", max_rank=10))
    print(f"criterion 8 PASS: vanishing positive roots equal the closed-form sets, {n} rows")


def test_criterion_09_extra_root_profiles():
    n = _assert_rows(run_table("Table_E", max_rank=9))
    print(f"criterion 9 PASS: preimage profiles by length class and P(0), {n} rows")


def test_criterion_10_lifted_reflections():
    rows = check_lifted_reflections(RunConfig(max_rank=8))
    n = _assert_rows(rows, key="ok")
    print(f"criterion 10 PASS: lifted reflections commute and restrict correctly, {n} folds")


def test_criterion_11_norm_and_coroot_formulas():
    rows = check_norms_and_coroots(RunConfig(max_rank=8))
    n = _assert_rows(rows, key="ok")
    print(f"criterion 11 PASS: orbit norm and coroot formulas, {n} folds")


def test_criterion_12_diagram_fold_agreement():
    rows = check_diagram_fold_agreement(RunConfig(max_rank=10))
    n = _assert_rows(rows, key="ok")
    print(f"criterion 12 PASS: combinatorial vs metric folded diagrams, {n} folds")


def test_criterion_13_exceptional_coefficient_matrices():
    rows = run_table("E6_CX") + run_table("E7_CX")
    _assert_rows(rows)
    e6_pairs = rows[0]["computed"]
    e7_pairs = rows[1]["computed"]
    assert len(e6_pairs) == 36
    assert len(e7_pairs) == 63
    print("criterion 13 PASS: (C, X) pair multisets match, 36 + 63 pairs")


def test_criterion_14_negative_controls():
    removed = removed_root_fault(TypeLabel("D", 5))
    assert removed["detected"], "removing a root must trigger a closure violation"
    assert removed["witnesses"], "closure violation must carry a witness"
    assert any("not in set" in msg for _, msg in removed["witnesses"])
    corrupted = corrupted_mark_fault(TypeLabel("E", 6), 1)
    assert corrupted["detected"], "a corrupted mark must trigger a consistency error"
    assert corrupted["witnesses"]
    print("criterion 14 PASS: injected faults detected with witnesses")
