"""Weyl group elements, longest elements, and the alcove stabilizer."""

from __future__ import annotations

import pytest

from rootfold.cache import get_stabilizer, get_system
from rootfold.errors import DomainError
from rootfold.geometry import vneg
from rootfold.root_systems import TypeLabel, iter_labels
from rootfold.weyl import (
    cycle_notation,
    group_structure,
    longest_element,
    parabolic_longest,
    sigma_hat_of,
    sigma_of,
)


@pytest.mark.parametrize(
    "label", [TypeLabel("A", 4), TypeLabel("D", 5), TypeLabel("G", 2)], ids=str
)
def test_longest_element_is_an_involution_sending_positives_to_negatives(label):
    rs = get_system(label)
    w0 = longest_element(rs)
    assert w0.compose(w0).is_identity()
    for b in rs.positive:
        assert w0.apply(b) in rs.roots
        assert w0.apply(b) not in set(rs.positive)


def test_longest_element_negates_everything_when_minus_one_is_in_the_group():
    # B, C, D-even, E7, E8, F4, G2 have w0 = -id
    for label in (TypeLabel("B", 3), TypeLabel("D", 4), TypeLabel("F", 4)):
        rs = get_system(label)
        w0 = longest_element(rs)
        assert all(w0.apply(a) == vneg(a) for a in rs.simple)


def test_parabolic_longest_rejects_invalid_indices():
    rs = get_system(TypeLabel("B", 4))
    with pytest.raises(DomainError):
        parabolic_longest(rs, 0)
    with pytest.raises(DomainError):
        parabolic_longest(rs, 3)  # mark 2, not minuscule


def test_stabilizer_orders_and_structures():
    cases = {
        TypeLabel("A", 4): (5, "Z/5Z"),
        TypeLabel("B", 5): (2, "Z/2Z"),
        TypeLabel("C", 6): (2, "Z/2Z"),
        TypeLabel("D", 6): (4, "Z/2Z x Z/2Z"),
        TypeLabel("D", 7): (4, "Z/4Z"),
        TypeLabel("E", 6): (3, "Z/3Z"),
        TypeLabel("E", 7): (2, "Z/2Z"),
        TypeLabel("E", 8): (1, "trivial"),
        TypeLabel("F", 4): (1, "trivial"),
        TypeLabel("G", 2): (1, "trivial"),
    }
    for label, (order, structure) in cases.items():
        elems = get_stabilizer(label)
        assert len(elems) == order, label
        assert group_structure(elems) == structure, label


def test_identity_element_is_always_present():
    for label in iter_labels(6):
        elems = {e.j: e for e in get_stabilizer(label)}
        assert 0 in elems
        assert elems[0].omega.is_identity()
        assert elems[0].order == 1


def test_sigma_and_affine_sigma_agree_and_fix_nothing_but_orbits():
    for label in (TypeLabel("A", 3), TypeLabel("D", 5), TypeLabel("E", 6)):
        for elem in get_stabilizer(label):
            assert sigma_of(elem) == sigma_hat_of(elem)
            assert elem.sigma[0] == elem.j


def test_element_orders_divide_the_group_order():
    for label in (TypeLabel("A", 5), TypeLabel("D", 6), TypeLabel("D", 7)):
        elems = get_stabilizer(label)
        for e in elems:
            assert len(elems) % e.order == 0


def test_cycle_notation():
    assert cycle_notation((0, 1, 2)) == "()"
    assert cycle_notation((1, 0, 2)) == "(0 1)"
    assert cycle_notation((1, 6, 3, 5, 4, 2, 0)) == "(0 1 6)(2 3 5)"


def test_omega_maps_the_extended_basis_by_sigma():
    rs = get_system(TypeLabel("E", 6))
    for elem in get_stabilizer(rs.label):
        for i in range(rs.rank + 1):
            assert elem.omega.apply(rs.extended[i]) == rs.extended[elem.sigma[i]]
