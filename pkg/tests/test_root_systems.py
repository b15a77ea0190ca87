"""Root system construction: counts, marks, axioms, labels, serialization."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootfold.cache import get_system
from rootfold.errors import DomainError
from rootfold.geometry import dot, coroot, reflect, vneg
from rootfold.root_systems import (
    TypeLabel,
    alcove_vertices,
    build,
    coefficients,
    height,
    index_of_connection,
    is_reduced,
    iter_labels,
    to_json,
    verify_axioms,
)


def positive_count(label: TypeLabel) -> int:
    fam, l = label.family, label.rank
    return {
        "A": l * (l + 1) // 2,
        "B": l * l,
        "C": l * l,
        "D": l * (l - 1),
        "BC": l * l + l,
    }.get(fam) or {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}[
        (fam, l)
    ]


@pytest.mark.parametrize("label", list(iter_labels(8, include_bc=True)), ids=str)
def test_positive_root_counts(label):
    rs = get_system(label)
    assert len(rs.positive) == positive_count(label)
    assert len(rs.roots) == 2 * positive_count(label)


@pytest.mark.parametrize("label", list(iter_labels(6, include_bc=True)), ids=str)
def test_axioms_hold_for_every_built_system(label):
    assert verify_axioms(get_system(label).roots).ok


def test_reducedness():
    assert is_reduced(get_system(TypeLabel("B", 3)).roots)
    assert not is_reduced(get_system(TypeLabel("BC", 2)).roots)


def test_highest_root_has_maximal_height():
    rs = get_system(TypeLabel("E", 6))
    heights = [height(rs, b) for b in rs.positive]
    assert height(rs, rs.highest) == max(heights) == 11


def test_marks_start_with_one_and_sum_to_coxeter_number():
    rs = get_system(TypeLabel("F", 4))
    assert rs.marks == (1, 2, 3, 4, 2)
    assert sum(rs.marks) == 12  # Coxeter number of F4
    rs = get_system(TypeLabel("E", 8))
    assert rs.marks[0] == 1
    assert sum(rs.marks) == 30


def test_index_of_connection_values():
    expect = {
        TypeLabel("A", 5): 6,
        TypeLabel("B", 4): 2,
        TypeLabel("C", 3): 2,
        TypeLabel("D", 6): 4,
        TypeLabel("E", 6): 3,
        TypeLabel("E", 7): 2,
        TypeLabel("E", 8): 1,
        TypeLabel("F", 4): 1,
        TypeLabel("G", 2): 1,
    }
    for label, f in expect.items():
        assert index_of_connection(get_system(label)) == f, label


def test_minuscule_indices_match_unit_marks():
    for label in iter_labels(8):
        rs = get_system(label)
        assert rs.minuscule_indices == tuple(
            i for i in range(rs.rank + 1) if rs.marks[i] == 1
        )
        assert 0 in rs.minuscule_indices


def test_coefficients_are_sign_uniform_integers():
    rs = get_system(TypeLabel("D", 5))
    for b in rs.roots:
        c = coefficients(rs, b)
        assert all(isinstance(v, int) for v in c)
        nonzero = [v for v in c if v != 0]
        assert all(v > 0 for v in nonzero) or all(v < 0 for v in nonzero)
        assert coefficients(rs, vneg(b)) == tuple(-v for v in c)


def test_coweights_are_dual_to_simple_roots():
    rs = get_system(TypeLabel("C", 4))
    for i in range(1, rs.rank + 1):
        for k in range(1, rs.rank + 1):
            assert dot(rs.simple[k - 1], rs.coweight(i)) == (1 if i == k else 0)


def test_alcove_vertices_lie_on_the_walls():
    rs = get_system(TypeLabel("G", 2))
    vertices = alcove_vertices(rs)
    assert len(vertices) == rs.rank + 1
    for v in vertices[1:]:
        # each nonzero closed-alcove vertex sits on the affine wall (highest root, x) = 1
        assert dot(rs.highest, v) == 1
        assert all(dot(a, v) >= 0 for a in rs.simple)


def test_label_parsing_and_validation():
    assert TypeLabel.parse("D10") == TypeLabel("D", 10)
    assert TypeLabel.parse("BC3") == TypeLabel("BC", 3)
    assert str(TypeLabel("A", 1)) == "A1"
    with pytest.raises(DomainError):
        TypeLabel.parse("H4")
    with pytest.raises(DomainError):
        TypeLabel.parse("A0")
    with pytest.raises(DomainError):
        TypeLabel("E", 9)
    with pytest.raises(DomainError):
        build(TypeLabel("C", 2))


def test_build_rejects_rank_above_cap():
    with pytest.raises(DomainError):
        build(TypeLabel("A", 13), max_rank=12)


def test_json_serialization_shape():
    data = to_json(get_system(TypeLabel("B", 2)))
    assert data["label"] == "B2"
    assert len(data["positive"]) == 4
    assert all(isinstance(c, str) for root in data["simple"] for c in root)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_random_root_pairs_satisfy_closure_and_integrality(data):
    label = data.draw(st.sampled_from([TypeLabel("D", 4), TypeLabel("F", 4), TypeLabel("BC", 3)]))
    rs = get_system(label)
    roots = sorted(rs.roots)
    a = data.draw(st.sampled_from(roots))
    b = data.draw(st.sampled_from(roots))
    assert reflect(a, b) in rs.roots
    assert dot(coroot(a), b).denominator == 1
