"""Diagram construction, folding, type identification, and rendering."""

from __future__ import annotations

import pytest

from rootfold.cache import get_context, get_system
from rootfold.diagrams import (
    build_diagram,
    fold_diagram,
    identify_type,
    permutation_orbits,
    render,
    walk_order,
)
from rootfold.errors import ClassificationError, DomainError, RootfoldError
from rootfold.geometry import vec
from rootfold.root_systems import TypeLabel, iter_labels


def _extended_diagram(label: TypeLabel):
    rs = get_system(label)
    return build_diagram(
        list(rs.extended), marks=list(rs.marks), names=[f"a{i}" for i in range(rs.rank + 1)]
    )


def test_g2_diagram_has_one_triple_edge_toward_the_short_root():
    rs = get_system(TypeLabel("G", 2))
    diagram = build_diagram(list(rs.simple))
    assert len(diagram.edges) == 1
    (_, _, mult, orient) = diagram.edges[0]
    assert mult == 3
    assert orient != 0


def test_extended_a1_is_a_doubled_bond():
    diagram = _extended_diagram(TypeLabel("A", 1))
    assert len(diagram.edges) == 1
    assert diagram.edges[0][2:] == (2, 0)


def test_extended_d4_has_a_degree_four_center():
    diagram = _extended_diagram(TypeLabel("D", 4))
    degrees = sorted(diagram.degree(i) for i in range(5))
    assert degrees == [1, 1, 1, 1, 4]


def test_build_diagram_rejects_same_direction_parallel_vertices():
    with pytest.raises(DomainError):
        build_diagram([vec(1, 0), vec(2, 0)])


def test_build_diagram_is_input_order_invariant_up_to_canonical_form():
    rs = get_system(TypeLabel("F", 4))
    d1 = build_diagram(list(rs.simple))
    d2 = build_diagram(list(reversed(rs.simple)))
    assert d1.canonical() == d2.canonical()


@pytest.mark.parametrize("label", list(iter_labels(12, include_bc=True)), ids=str)
def test_identify_type_round_trip(label):
    assert identify_type(get_system(label).roots) == label


def test_identify_type_rejects_unclassifiable_sets():
    # not a root system: reflection closure fails and no classified shape matches
    with pytest.raises(RootfoldError):
        identify_type({vec(1, 0), vec(-1, 0), vec(0, 1), vec(0, -1), vec(1, 1), vec(-1, -1)})


def test_fold_diagram_with_identity_keeps_the_shape():
    diagram = _extended_diagram(TypeLabel("D", 5))
    folded = fold_diagram(diagram, tuple(range(6)))
    assert folded.canonical() == diagram.canonical()


def test_fold_diagram_collapses_a_full_orbit_to_nothing():
    ctx = get_context(TypeLabel("A", 4), 1)
    diagram = _extended_diagram(TypeLabel("A", 4))
    folded = fold_diagram(diagram, ctx.element.sigma)
    assert folded.nodes == ()


def test_fold_diagram_e6_gives_the_extended_g2_shape():
    ctx = get_context(TypeLabel("E", 6), 1)
    diagram = _extended_diagram(TypeLabel("E", 6))
    folded = fold_diagram(diagram, ctx.element.sigma)
    assert len(folded.nodes) == 3
    mults = sorted(e[2] for e in folded.edges)
    assert mults == [1, 3]
    assert tuple(n.mark for n in folded.nodes) == (1, 2, 1)


def test_fold_diagram_rejects_non_automorphisms():
    diagram = _extended_diagram(TypeLabel("B", 3))
    with pytest.raises(DomainError):
        fold_diagram(diagram, (0, 1, 3, 2))  # swaps vertices of unequal length


def test_permutation_orbits_and_walk_order():
    sigma = (1, 6, 3, 5, 4, 2, 0)  # order-3 action with orbits {0,1,6},{2,3,5},{4}
    orbits = permutation_orbits(sigma)
    assert sorted(orbits) == [(0, 1, 6), (2, 3, 5), (4,)]
    ordered = walk_order(orbits, lambda a, b: True)
    assert ordered[0] == (0, 1, 6)


def test_render_dot_and_ascii_are_deterministic():
    diagram = _extended_diagram(TypeLabel("C", 3))
    dot_text = render(diagram, "dot")
    assert dot_text == render(diagram, "dot")
    assert dot_text.startswith("graph diagram {")
    ascii_text = render(diagram, "ascii")
    assert "a0(1)" in ascii_text
    with pytest.raises(DomainError):
        render(diagram, "png")


def test_render_empty_diagram():
    from rootfold.diagrams import Diagram

    assert render(Diagram(nodes=(), edges=()), "ascii") == "(empty diagram)\n"
