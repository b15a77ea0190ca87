"""Exact rational vectors: inner products, reflections, small linear solves."""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Iterable, List, Sequence, Tuple

Vector = Tuple[Q, ...]

from .errors import DimensionError, DomainError, SolverError


def vec(*coords) -> Vector:
    """Build an exact vector from ints/Fractions/strings."""
    return tuple(Q(c) for c in coords)


def zero(dim: int) -> Vector:
    return (Q(0),) * dim


def vadd(x: Vector, y: Vector) -> Vector:
    if len(x) != len(y):
        raise DimensionError("dimension mismatch")
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Vector, y: Vector) -> Vector:
    if len(x) != len(y):
        raise DimensionError("dimension mismatch")
    return tuple(a - b for a, b in zip(x, y))


def vneg(x: Vector) -> Vector:
    return tuple(-a for a in x)


def vscale(c, x: Vector) -> Vector:
    c = Q(c)
    return tuple(c * a for a in x)


def vsum(vectors: Iterable[Vector], dim: int) -> Vector:
    total = zero(dim)
    for v in vectors:
        total = vadd(total, v)
    return total


def is_zero(x: Vector) -> bool:
    return all(a == 0 for a in x)


def dot(x: Vector, y: Vector) -> Q:
    """Exact Euclidean inner product."""
    if len(x) != len(y):
        raise DimensionError("dimension mismatch")
    return sum((a * b for a, b in zip(x, y)), Q(0))


def norm2(x: Vector) -> Q:
    return dot(x, x)


def coroot(alpha: Vector) -> Vector:
    """Return 2*alpha/(alpha,alpha)."""
    if is_zero(alpha):
        raise DomainError("coroot of the zero vector")
    return vscale(Q(2) / norm2(alpha), alpha)


def reflect(alpha: Vector, x: Vector) -> Vector:
    """Reflect x in the hyperplane orthogonal to alpha."""
    if is_zero(alpha):
        raise DomainError("reflection through the zero vector")
    return vsub(x, vscale(dot(coroot(alpha), x), alpha))


def proportional(x: Vector, y: Vector) -> bool:
    """True iff x and y span the same line (both nonzero)."""
    if is_zero(x) or is_zero(y):
        return False
    # x = t*y with t = x_i / y_i at the first nonzero coordinate of y
    for a, b in zip(x, y):
        if b != 0:
            t = a / b
            break
        if a != 0:
            return False
    return x == vscale(t, y)


def _eliminate(rows: List[List[Q]]) -> Tuple[List[List[Q]], List[int]]:
    """Row-reduce in place; return (rows, pivot column indices)."""
    pivots: List[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Q(1) / rows[r][c]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def matrix_rank(vectors: Sequence[Vector]) -> int:
    rows = [list(v) for v in vectors if not is_zero(v)]
    if not rows:
        return 0
    _, pivots = _eliminate(rows)
    return len(pivots)


def solve_in_span(
    basis: Sequence[Vector], constraints: Sequence[Tuple[Vector, Q]]
) -> Vector:
    """Unique x in span(basis) with dot(v, x) = c for every constraint (v, c)."""
    if not basis:
        if constraints:
            dim = len(constraints[0][0])
            if any(c != 0 for _, c in constraints):
                raise SolverError("inconsistent constraints on the empty span")
            return zero(dim)
        raise SolverError("ambient dimension unknown for empty basis and constraints")
    dim = len(basis[0])
    m = len(basis)
    # x = sum t_a basis[a]; each constraint gives a linear equation in t.
    rows = [[dot(v, b) for b in basis] + [Q(c)] for v, c in constraints]
    if not rows:
        raise SolverError("underdetermined: no constraints")
    reduced, pivots = _eliminate(rows)
    if m in pivots:
        raise SolverError("inconsistent constraint system")
    if len(pivots) < m:
        raise SolverError("underdetermined constraint system on span")
    t = [Q(0)] * m
    for row, c in zip(reduced, pivots):
        t[c] = row[m]
    x = zero(dim)
    for coeff, b in zip(t, basis):
        x = vadd(x, vscale(coeff, b))
    return x


def coordinates_in_basis(basis: Sequence[Vector], x: Vector) -> Tuple[Q, ...]:
    """Coordinates of x over a linearly independent basis; error if x is outside the span."""
    m = len(basis)
    if m == 0:
        if is_zero(x):
            return ()
        raise SolverError("nonzero vector has no coordinates over the empty basis")
    dim = len(basis[0])
    rows = [[basis[a][i] for a in range(m)] + [x[i]] for i in range(dim)]
    reduced, pivots = _eliminate(rows)
    if m in pivots:
        raise SolverError("vector outside the span of the basis")
    if len(pivots) < m:
        raise SolverError("basis is linearly dependent")
    t = [Q(0)] * m
    for row, c in zip(reduced, pivots):
        t[c] = row[m]
    return tuple(t)


def determinant(rows: Sequence[Sequence[Q]]) -> Q:
    """Exact determinant by fraction-free-enough Gaussian elimination."""
    n = len(rows)
    a = [list(map(Q, r)) for r in rows]
    det = Q(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return Q(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        inv = Q(1) / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                factor = a[i][c] * inv
                a[i] = [x - factor * y for x, y in zip(a[i], a[c])]
    return det


# --- canonical "p/q" serialization -------------------------------------------


def scalar_to_str(q: Q) -> str:
    q = Q(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def scalar_from_str(s: str) -> Q:
    return Q(s)


def vector_to_json(v: Vector) -> List[str]:
    return [scalar_to_str(a) for a in v]


def vector_from_json(items: Sequence[str]) -> Vector:
    return tuple(Q(s) for s in items)
