"""Exact Weyl-group elements, longest elements, and the alcove stabilizer."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ClassificationError, ConsistencyError, DomainError
from .geometry import (
    Vector,
    dot,
    reflect,
    scalar_to_str,
    vadd,
    vneg,
    vscale,
    zero,
)
from .root_systems import RootSystem


@dataclass(frozen=True)
class IsometryMap:
    """Exact linear map stored as the images of the standard basis vectors."""

    columns: Tuple[Vector, ...]
    word: Optional[Tuple[int, ...]] = None

    @property
    def dim(self) -> int:
        return len(self.columns)

    def apply(self, x: Vector) -> Vector:
        out = zero(self.dim)
        for xi, col in zip(x, self.columns):
            if xi != 0:
                out = vadd(out, vscale(xi, col))
        return out

    def compose(self, other: "IsometryMap") -> "IsometryMap":
        """self after other (apply other first)."""
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return IsometryMap(tuple(self.apply(c) for c in other.columns), word)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IsometryMap) and self.columns == other.columns

    def __hash__(self) -> int:
        return hash(self.columns)

    def is_identity(self) -> bool:
        return self.columns == identity(self.dim).columns

    def to_json(self) -> List[List[str]]:
        return [[scalar_to_str(a) for a in col] for col in self.columns]


def identity(dim: int) -> IsometryMap:
    cols = []
    for i in range(dim):
        col = [Q(0)] * dim
        col[i] = Q(1)
        cols.append(tuple(col))
    return IsometryMap(tuple(cols), word=())


def reflection_map(alpha: Vector, word: Optional[Tuple[int, ...]] = None) -> IsometryMap:
    dim = len(alpha)
    return IsometryMap(
        tuple(reflect(alpha, identity(dim).columns[i]) for i in range(dim)), word
    )


@dataclass(frozen=True)
class AffineMap:
    """x maps to linear(x) + translation."""

    linear: IsometryMap
    translation: Vector

    def apply(self, x: Vector) -> Vector:
        return vadd(self.linear.apply(x), self.translation)


def _descent_walk(
    rs: RootSystem, active: Sequence[int], probe: Vector
) -> IsometryMap:
    """Walk probe to the dominant chamber of the sub-system, collecting reflections."""
    refls = {i: reflection_map(rs.simple[i - 1], word=(i,)) for i in active}
    v = probe
    w = identity(rs.ambient_dim)
    while True:
        i = next((i for i in active if dot(rs.simple[i - 1], v) < 0), None)
        if i is None:
            return w
        v = reflect(rs.simple[i - 1], v)
        w = refls[i].compose(w)


def longest_element(rs: RootSystem) -> IsometryMap:
    """The unique element sending Delta to -Delta."""
    active = list(range(1, rs.rank + 1))
    probe = zero(rs.ambient_dim)
    for i in active:
        probe = vadd(probe, rs.coweight(i))
    return _descent_walk(rs, active, vneg(probe))


def parabolic_longest(rs: RootSystem, j: int) -> IsometryMap:
    """Longest element of the parabolic on Delta minus alpha_j."""
    if j not in rs.minuscule_indices or j == 0:
        raise DomainError(f"j={j} is not a nonzero minuscule index of {rs.label}")
    active = [i for i in range(1, rs.rank + 1) if i != j]
    probe = zero(rs.ambient_dim)
    for i in active:
        probe = vadd(probe, rs.coweight(i))
    return _descent_walk(rs, active, vneg(probe))


@dataclass(frozen=True)
class StabilizerElement:
    """One alcove-stabilizer element: its linear part, affine part, and diagram action."""

    system: RootSystem
    j: int
    omega: IsometryMap
    omega_hat: AffineMap
    sigma: Tuple[int, ...]
    order: int


def _element_order(m: IsometryMap, limit: int = 64) -> int:
    power = m
    for k in range(1, limit + 1):
        if power.is_identity():
            return k
        power = m.compose(power)
    raise ConsistencyError("element order exceeds the expected bound")


def _sigma_from_action(rs: RootSystem, omega: IsometryMap) -> Tuple[int, ...]:
    lookup = {a: i for i, a in enumerate(rs.extended)}
    sigma = []
    for i, a in enumerate(rs.extended):
        image = omega.apply(a)
        if image not in lookup:
            raise ConsistencyError(
                f"omega does not permute the extended basis: image of index {i} not found"
            )
        sigma.append(lookup[image])
    return tuple(sigma)


def build_stabilizer(rs: RootSystem) -> Tuple[StabilizerElement, ...]:
    """One element per minuscule index j, including the identity for j = 0."""
    elems: List[StabilizerElement] = []
    w0 = longest_element(rs)
    for j in rs.minuscule_indices:
        if j == 0:
            omega = identity(rs.ambient_dim)
        else:
            omega = parabolic_longest(rs, j).compose(w0)
        sigma = _sigma_from_action(rs, omega)
        if sigma[0] != j:
            raise ConsistencyError(f"sigma(0) = {sigma[0]} differs from j = {j}")
        for i, n in enumerate(rs.marks):
            if rs.marks[sigma[i]] != n:
                raise ConsistencyError(f"marks not sigma-invariant at index {i}")
        elem = StabilizerElement(
            system=rs,
            j=j,
            omega=omega,
            omega_hat=AffineMap(omega, rs.coweight(j)),
            sigma=sigma,
            order=_element_order(omega),
        )
        if sigma_hat_of(elem) != sigma:
            raise ConsistencyError(f"affine vertex action disagrees with sigma for j={j}")
        elems.append(elem)
    return tuple(elems)


def sigma_of(elem: StabilizerElement) -> Tuple[int, ...]:
    """Permutation of {0..l} recording the action on the extended basis."""
    return _sigma_from_action(elem.system, elem.omega)


def sigma_hat_of(elem: StabilizerElement) -> Tuple[int, ...]:
    """The same permutation recovered from the affine action on alcove vertices."""
    rs = elem.system
    vertices = [
        vscale(Q(1, rs.marks[i]), rs.coweight(i)) for i in range(rs.rank + 1)
    ]
    lookup = {v: i for i, v in enumerate(vertices)}
    sigma = []
    for i, v in enumerate(vertices):
        image = elem.omega_hat.apply(v)
        if image not in lookup:
            raise ConsistencyError(f"alcove vertex image is not a vertex (index {i})")
        sigma.append(lookup[image])
    return tuple(sigma)


def group_structure(elements: Sequence[StabilizerElement]) -> str:
    """Isomorphism class of the linear-part group: trivial, Z/nZ, or Z/2Z x Z/2Z."""
    maps = {e.omega for e in elements}
    if len(maps) != len(elements):
        raise ConsistencyError("duplicate stabilizer elements")
    for a in maps:
        for b in maps:
            if a.compose(b) not in maps:
                raise ConsistencyError("stabilizer set is not closed under composition")
    n = len(maps)
    orders = sorted(_element_order(m) for m in maps)
    if n == 1:
        return "trivial"
    if n in orders:
        return f"Z/{n}Z"
    if n == 4 and all(o <= 2 for o in orders):
        return "Z/2Z x Z/2Z"
    raise ClassificationError(f"unrecognized group structure with orders {orders}")


def cycle_notation(sigma: Sequence[int]) -> str:
    """Permutation in cycle notation, fixed points omitted; identity renders as '()'."""
    seen = [False] * len(sigma)
    parts = []
    for start in range(len(sigma)):
        if seen[start] or sigma[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = sigma[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = sigma[nxt]
        parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) if parts else "()"
