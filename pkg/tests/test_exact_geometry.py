"""Exact rational linear algebra: vectors, reflections, solvers, serialization."""

from __future__ import annotations

from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rootfold.errors import SolverError
from rootfold.geometry import (
    coordinates_in_basis,
    coroot,
    determinant,
    dot,
    matrix_rank,
    norm2,
    proportional,
    reflect,
    scalar_from_str,
    scalar_to_str,
    solve_in_span,
    vadd,
    vec,
    vector_from_json,
    vector_to_json,
    vneg,
    vscale,
    vsub,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)
vectors3 = st.tuples(rationals, rationals, rationals)
nonzero_vectors3 = vectors3.filter(lambda v: any(c != 0 for c in v))


def test_vector_arithmetic_is_exact():
    x = vec(Q(1, 3), Q(-1, 2))
    y = vec(Q(2, 3), Q(1, 2))
    assert vadd(x, y) == vec(1, 0)
    assert vsub(x, y) == vec(Q(-1, 3), -1)
    assert vneg(x) == vec(Q(-1, 3), Q(1, 2))
    assert vscale(Q(3), x) == vec(1, Q(-3, 2))
    assert dot(x, y) == Q(2, 9) - Q(1, 4)
    assert norm2(x) == Q(1, 9) + Q(1, 4)


def test_coroot_scales_inversely_with_norm():
    a = vec(2, 0)
    assert coroot(a) == vec(1, 0)
    b = vec(1, 1)
    assert coroot(b) == vec(1, 1)


@given(nonzero_vectors3, vectors3)
def test_reflection_is_an_involutive_isometry(a, x):
    once = reflect(a, x)
    assert reflect(a, once) == x
    assert norm2(once) == norm2(x)


@given(nonzero_vectors3)
def test_reflection_negates_its_own_axis(a):
    assert reflect(a, a) == vneg(a)


@given(nonzero_vectors3, vectors3, vectors3)
def test_reflection_is_linear(a, x, y):
    assert reflect(a, vadd(x, y)) == vadd(reflect(a, x), reflect(a, y))


def test_proportional_detects_scalar_multiples():
    assert proportional(vec(2, -4), vec(-1, 2))
    assert not proportional(vec(1, 0), vec(0, 1))
    assert not proportional(vec(1, 1), vec(1, 2))


def test_matrix_rank_counts_independent_vectors():
    assert matrix_rank([vec(1, 0, 0), vec(0, 1, 0), vec(1, 1, 0)]) == 2
    assert matrix_rank([]) == 0


def test_solve_in_span_returns_the_unique_solution():
    basis = [vec(1, 0, 0), vec(0, 1, 0)]
    constraints = [(vec(1, 0, 0), Q(2)), (vec(0, 1, 0), Q(-1))]
    assert solve_in_span(basis, constraints) == vec(2, -1, 0)


def test_solve_in_span_rejects_inconsistent_systems():
    basis = [vec(1, 0)]
    constraints = [(vec(1, 0), Q(1)), (vec(1, 0), Q(2))]
    with pytest.raises(SolverError):
        solve_in_span(basis, constraints)


def test_coordinates_in_basis_round_trip():
    basis = [vec(1, 1, 0), vec(0, 1, 1)]
    x = vadd(vscale(Q(2, 3), basis[0]), vscale(Q(-1, 2), basis[1]))
    assert coordinates_in_basis(basis, x) == (Q(2, 3), Q(-1, 2))


def test_determinant_exact():
    assert determinant([[Q(2), Q(1)], [Q(1), Q(2)]]) == 3
    assert determinant([[Q(1, 2), Q(0)], [Q(7), Q(4)]]) == 2


@given(rationals)
def test_scalar_string_round_trip(q):
    assert scalar_from_str(scalar_to_str(q)) == q


@given(vectors3)
def test_vector_json_round_trip(v):
    assert vector_from_json(vector_to_json(v)) == v
