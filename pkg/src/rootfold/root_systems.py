"""Irreducible root systems in standard coordinates: Delta, positives, marks, coweights."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .errors import DomainError
from .geometry import (
    Vector,
    coordinates_in_basis,
    coroot,
    determinant,
    dot,
    is_zero,
    matrix_rank,
    reflect,
    scalar_to_str,
    solve_in_span,
    vadd,
    vec,
    vector_to_json,
    vneg,
    vscale,
    vsub,
    zero,
)

DEFAULT_MAX_RANK = 12

FAMILIES = ("A", "B", "C", "D", "E", "F", "G", "BC", "Empty")

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4, "BC": 1}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


@dataclass(frozen=True, order=True)
class TypeLabel:
    """A point of the classification: family letter plus rank."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if self.family == "Empty":
            if self.rank != 0:
                raise DomainError("Empty has rank 0")
        elif self.family in _FIXED_RANKS:
            if self.rank not in _FIXED_RANKS[self.family]:
                raise DomainError(f"{self.family}{self.rank} is not in the classification")
        elif self.rank < _MIN_RANK[self.family]:
            raise DomainError(
                f"{self.family}{self.rank} below minimum rank {_MIN_RANK[self.family]}"
            )

    def __str__(self) -> str:
        if self.family == "Empty":
            return "Empty"
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "TypeLabel":
        s = text.strip().replace("_", "")
        if s in ("Empty", "empty", "0"):
            return cls("Empty", 0)
        for fam in ("BC", "A", "B", "C", "D", "E", "F", "G"):
            if s.upper().startswith(fam):
                tail = s[len(fam):]
                if not tail.isdigit():
                    break
                return cls(fam, int(tail))
        raise DomainError(f"cannot parse type label {text!r}")


@dataclass(frozen=True)
class RootSystem:
    """An irreducible root system with its standard combinatorial attachments."""

    label: TypeLabel
    ambient_dim: int
    roots: FrozenSet[Vector]
    simple: Tuple[Vector, ...]
    positive: Tuple[Vector, ...]
    highest: Vector
    marks: Tuple[int, ...]  # (n_0=1, n_1..n_l)
    extended: Tuple[Vector, ...]  # (alpha_0=-highest, alpha_1..alpha_l)
    coweights: Tuple[Vector, ...]  # (pi_1..pi_l); pi_0 is the zero vector
    _coeff_cache: Dict[Vector, Tuple[int, ...]] = field(
        default_factory=dict, repr=False, compare=False, hash=False
    )

    @property
    def rank(self) -> int:
        return len(self.simple)

    @property
    def minuscule_indices(self) -> Tuple[int, ...]:
        """J = indices i in {0..l} with mark 1 (0 always included)."""
        return tuple(i for i, n in enumerate(self.marks) if n == 1)

    def coweight(self, i: int) -> Vector:
        """Fundamental coweight for index i in {0..l}; index 0 gives the origin."""
        if i == 0:
            return zero(self.ambient_dim)
        return self.coweights[i - 1]


def _unit(dim: int, i: int, value=1) -> Vector:
    v = [Q(0)] * dim
    v[i] = Q(value)
    return tuple(v)


def _classical_roots(family: str, rank: int) -> Tuple[Set[Vector], List[Vector]]:
    l = rank
    e = lambda i: _unit(l, i - 1)  # noqa: E731 - 1-based standard basis
    roots: Set[Vector] = set()
    for p, q in itertools.combinations(range(1, l + 1), 2):
        for s in (1, -1):
            roots.add(vadd(e(p), vscale(s, e(q))))
            roots.add(vneg(vadd(e(p), vscale(s, e(q)))))
    simple = [vsub(e(i), e(i + 1)) for i in range(1, l)]
    if family == "B" or family == "BC":
        roots.update(v for i in range(1, l + 1) for v in (e(i), vneg(e(i))))
    if family == "C" or family == "BC":
        roots.update(
            v for i in range(1, l + 1) for v in (vscale(2, e(i)), vscale(-2, e(i)))
        )
    if family in ("B", "BC"):
        simple.append(e(l))
    elif family == "C":
        simple.append(vscale(2, e(l)))
    elif family == "D":
        simple.append(vadd(e(l - 1), e(l)))
    return roots, simple


def _half_vectors(dim: int, signs_len: int, fixed: Sequence[Q], parity: int):
    """Vectors (1/2)(sum nu_i e_i + fixed tail) with prod(nu) = parity."""
    out = []
    for signs in itertools.product((1, -1), repeat=signs_len):
        prod = 1
        for s in signs:
            prod *= s
        if prod != parity:
            continue
        coords = [Q(s, 2) for s in signs] + [c / 2 for c in fixed]
        out.append(tuple(coords))
    return out


def _exceptional_roots(label: TypeLabel) -> Tuple[Set[Vector], List[Vector]]:
    fam, rank = label.family, label.rank
    if fam == "G":
        e = lambda i: _unit(3, i - 1)  # noqa: E731
        pos = [
            vsub(e(1), e(2)),
            vec(-2, 1, 1),
            vsub(e(3), e(1)),
            vsub(e(3), e(2)),
            vec(1, -2, 1),
            vec(-1, -1, 2),
        ]
        roots = set(pos) | {vneg(v) for v in pos}
        return roots, [vsub(e(1), e(2)), vec(-2, 1, 1)]
    if fam == "F":
        e = lambda i: _unit(4, i - 1)  # noqa: E731
        roots: Set[Vector] = set()
        for i in range(1, 5):
            roots.update((e(i), vneg(e(i))))
        for p, q in itertools.combinations(range(1, 5), 2):
            for sp in (1, -1):
                for sq in (1, -1):
                    roots.add(vadd(vscale(sp, e(p)), vscale(sq, e(q))))
        for signs in itertools.product((1, -1), repeat=4):
            roots.add(tuple(Q(s, 2) for s in signs))
        simple = [
            vsub(e(2), e(3)),
            vsub(e(3), e(4)),
            e(4),
            vec(Q(1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2)),
        ]
        return roots, simple
    # E family in R^8
    e = lambda i: _unit(8, i - 1)  # noqa: E731
    a1 = tuple(Q(s, 2) for s in (1, -1, -1, -1, -1, -1, -1, 1))
    chain = [vadd(e(1), e(2)), vsub(e(2), e(1)), vsub(e(3), e(2)), vsub(e(4), e(3)), vsub(e(5), e(4))]
    if rank == 6:
        pos: List[Vector] = []
        for q, p in itertools.combinations(range(1, 6), 2):  # q < p
            pos.append(vadd(e(p), e(q)))
            pos.append(vsub(e(p), e(q)))
        pos += _half_vectors(8, 5, [Q(-1), Q(-1), Q(1)], parity=1)
        simple = [a1] + chain
    elif rank == 7:
        pos = []
        for q, p in itertools.combinations(range(1, 7), 2):
            pos.append(vadd(e(p), e(q)))
            pos.append(vsub(e(p), e(q)))
        pos.append(vsub(e(8), e(7)))
        pos += _half_vectors(8, 6, [Q(-1), Q(1)], parity=-1)
        simple = [a1] + chain + [vsub(e(6), e(5))]
    else:
        pos = []
        for q, p in itertools.combinations(range(1, 9), 2):
            pos.append(vadd(e(p), e(q)))
            pos.append(vsub(e(p), e(q)))
        for signs in itertools.product((1, -1), repeat=7):
            prod = 1
            for s in signs:
                prod *= s
            if prod == 1:
                pos.append(tuple([Q(s, 2) for s in signs] + [Q(1, 2)]))
        simple = [a1] + chain + [vsub(e(6), e(5)), vsub(e(7), e(6))]
    roots = set(pos) | {vneg(v) for v in pos}
    return roots, simple


def build(label: TypeLabel, max_rank: int = DEFAULT_MAX_RANK) -> RootSystem:
    """Construct the root system for a type label in its standard realization."""
    if label.family == "Empty":
        return RootSystem(
            label=label,
            ambient_dim=0,
            roots=frozenset(),
            simple=(),
            positive=(),
            highest=(),
            marks=(1,),
            extended=((),),
            coweights=(),
        )
    if label.rank > max_rank:
        raise DomainError(f"rank {label.rank} exceeds the configured maximum {max_rank}")
    if label.family in ("A", "B", "C", "D", "BC"):
        if label.family == "A":
            l = label.rank
            e = lambda i: _unit(l + 1, i - 1)  # noqa: E731
            roots = set()
            for p, q in itertools.combinations(range(1, l + 2), 2):
                roots.add(vsub(e(p), e(q)))
                roots.add(vsub(e(q), e(p)))
            simple = [vsub(e(i), e(i + 1)) for i in range(1, l + 1)]
        else:
            roots, simple = _classical_roots(label.family, label.rank)
    else:
        roots, simple = _exceptional_roots(label)
    return _assemble(label, roots, tuple(simple))


def _assemble(label: TypeLabel, roots: Set[Vector], simple: Tuple[Vector, ...]) -> RootSystem:
    dim = len(simple[0])
    coweights = tuple(
        solve_in_span(list(simple), [(a, Q(1 if i == j else 0)) for j, a in enumerate(simple)])
        for i in range(len(simple))
    )
    cache: Dict[Vector, Tuple[int, ...]] = {}

    def coeffs(beta: Vector) -> Tuple[int, ...]:
        got = cache.get(beta)
        if got is None:
            cs = [dot(beta, w) for w in coweights]
            got = tuple(int(c) for c in cs)
            cache[beta] = got
        return got

    positive = sorted(
        (b for b in roots if all(c >= 0 for c in coeffs(b))),
        key=lambda b: (sum(coeffs(b)), coeffs(b)),
    )
    heights = [sum(coeffs(b)) for b in positive]
    top = max(heights)
    highs = [b for b, h in zip(positive, heights) if h == top]
    if len(highs) != 1:
        raise DomainError(f"highest root not unique for {label}")
    highest = highs[0]
    marks = (1,) + coeffs(highest)
    extended = (vneg(highest),) + simple
    return RootSystem(
        label=label,
        ambient_dim=dim,
        roots=frozenset(roots),
        simple=simple,
        positive=tuple(positive),
        highest=highest,
        marks=marks,
        extended=extended,
        coweights=coweights,
        _coeff_cache=cache,
    )


def coefficients(rs: RootSystem, beta: Vector) -> Tuple[int, ...]:
    """Integer coefficients of a root over Delta; sign-uniform by the basis axioms."""
    got = rs._coeff_cache.get(beta)
    if got is not None:
        return got
    cs = [dot(beta, w) for w in rs.coweights]
    if any(c.denominator != 1 for c in cs):
        raise DomainError(f"non-integral coefficients for {beta}")
    recon = zero(rs.ambient_dim)
    for c, a in zip(cs, rs.simple):
        recon = vadd(recon, vscale(c, a))
    if recon != beta:
        raise DomainError(f"{beta} is not in the span of the simple roots")
    signs = {1 if c > 0 else -1 for c in cs if c != 0}
    if len(signs) > 1:
        raise DomainError(f"sign-mixed coefficients for {beta}")
    got = tuple(int(c) for c in cs)
    rs._coeff_cache[beta] = got
    return got


def height(rs: RootSystem, beta: Vector) -> int:
    """Sum of the coefficients of beta over Delta."""
    return sum(coefficients(rs, beta))


def highest_root(rs: RootSystem) -> Vector:
    return rs.highest


@dataclass(frozen=True)
class Verdict:
    """Result of an axiom check: ok, or a list of violation records."""

    ok: bool
    failures: Tuple[Tuple[str, str], ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_axioms(roots: Sequence[Vector] | FrozenSet[Vector]) -> Verdict:
    """Check the root-system axioms by full enumeration; report first violations with witnesses."""
    rset = set(roots)
    failures: List[Tuple[str, str]] = []
    if not rset:
        return Verdict(True)
    for b in rset:
        if is_zero(b):
            failures.append(("R1", "the zero vector is in the set"))
            return Verdict(False, tuple(failures))
    # R1 span condition is relative to the set's own span, so it holds by construction;
    # record the rank for completeness.
    for a in sorted(rset):
        ca = coroot(a)
        for b in sorted(rset):
            pairing = dot(ca, b)
            image = vsub(b, vscale(pairing, a))
            if image not in rset:
                failures.append(
                    ("R2", f"s_alpha(beta) not in set for alpha={a}, beta={b}: {image}")
                )
                return Verdict(False, tuple(failures))
            if pairing.denominator != 1:
                failures.append(
                    ("R3", f"(alpha^vee, beta) = {scalar_to_str(pairing)} for alpha={a}, beta={b}")
                )
                return Verdict(False, tuple(failures))
    return Verdict(True)


def is_reduced(roots: Sequence[Vector] | FrozenSet[Vector]) -> bool:
    """True iff no root's half is also a root."""
    rset = set(roots)
    return not any(vscale(Q(1, 2), b) in rset for b in rset)


def index_of_connection(rs: RootSystem) -> int:
    """Index of the coroot lattice inside the coweight lattice."""
    rows = [[dot(a, coroot(b)) for b in rs.simple] for a in rs.simple]
    det = determinant(rows)
    if det.denominator != 1:
        raise DomainError("non-integral pairing determinant")
    return abs(int(det))


def alcove_vertices(rs: RootSystem) -> Tuple[Vector, ...]:
    """Closed-alcove vertices: the origin plus coweight/mark quotients."""
    verts = [zero(rs.ambient_dim)]
    for i in range(1, rs.rank + 1):
        verts.append(vscale(Q(1, rs.marks[i]), rs.coweight(i)))
    return tuple(verts)


def iter_labels(max_rank: int = DEFAULT_MAX_RANK, include_bc: bool = False):
    """All classification labels with rank at most max_rank, in deterministic order."""
    for l in range(1, max_rank + 1):
        yield TypeLabel("A", l)
    for l in range(2, max_rank + 1):
        yield TypeLabel("B", l)
    for l in range(3, max_rank + 1):
        yield TypeLabel("C", l)
    for l in range(4, max_rank + 1):
        yield TypeLabel("D", l)
    for l in (6, 7, 8):
        if l <= max_rank:
            yield TypeLabel("E", l)
    if 4 <= max_rank:
        yield TypeLabel("F", 4)
    if 2 <= max_rank:
        yield TypeLabel("G", 2)
    if include_bc:
        for l in range(1, max_rank + 1):
            yield TypeLabel("BC", l)


def to_json(rs: RootSystem) -> dict:
    """Stable JSON form of a root system."""
    return {
        "label": str(rs.label),
        "ambient_dim": rs.ambient_dim,
        "simple": [vector_to_json(a) for a in rs.simple],
        "positive": [vector_to_json(b) for b in rs.positive],
        "marks": list(rs.marks),
        "coweights": [vector_to_json(w) for w in rs.coweights],
    }
