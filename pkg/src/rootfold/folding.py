"""Orbit-average folding: fixed space, folded root system, lifted reflections, profiles."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .diagrams import identify_type, permutation_orbits, walk_order
from .errors import ConsistencyError, DomainError, TheoremViolationError
from .geometry import (
    Vector,
    coroot,
    dot,
    is_zero,
    matrix_rank,
    reflect,
    vadd,
    vneg,
    vscale,
    vsub,
    vsum,
    vector_to_json,
    zero,
)
from .root_systems import RootSystem, TypeLabel, coefficients, verify_axioms
from .weyl import IsometryMap, StabilizerElement, build_stabilizer, identity


@dataclass(frozen=True)
class FoldingContext:
    """All orbit data attached to one stabilizer element."""

    system: RootSystem
    j: int
    element: StabilizerElement
    order: int
    orbits: Tuple[Tuple[int, ...], ...]  # S_0..S_r, each ascending
    orbit_marks: Tuple[int, ...]  # common mark on each orbit
    mults: Tuple[int, ...]  # m_0..m_r
    pi: Tuple[Vector, ...]  # pi_0..pi_r
    pi_bar: Tuple[Vector, ...]  # pi_bar_1..pi_bar_r
    alpha_bar: Tuple[Vector, ...]  # folded extended basis, index 0..r
    powers: Tuple[IsometryMap, ...]  # omega^1..omega^order (last = identity)
    _fold_cache: Dict[Vector, Vector] = field(
        default_factory=dict, repr=False, compare=False, hash=False
    )

    @property
    def r(self) -> int:
        return len(self.orbits) - 1


def _order_orbits(rs: RootSystem, raw: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    """S_0 first, then walk outward along the folded diagram, smallest-min neighbor first."""

    def adjacent(o1: Tuple[int, ...], o2: Tuple[int, ...]) -> bool:
        return any(
            dot(rs.extended[s1], rs.extended[s2]) != 0 for s1 in o1 for s2 in o2
        )

    return walk_order(raw, adjacent)


def make_context(rs: RootSystem, j: int, element: Optional[StabilizerElement] = None) -> FoldingContext:
    """Assemble and verify the folding data for a minuscule index j."""
    if j not in rs.minuscule_indices:
        raise DomainError(f"j={j} not in J={rs.minuscule_indices} for {rs.label}")
    if element is None:
        element = next(e for e in build_stabilizer(rs) if e.j == j)
    sigma = element.sigma
    orbits = _order_orbits(rs, permutation_orbits(sigma))
    if element.order != len(orbits[0]):
        raise ConsistencyError("order of omega differs from the size of S_0")
    orbit_marks: List[int] = []
    for orb in orbits:
        marks = {rs.marks[s] for s in orb}
        if len(marks) != 1:
            raise ConsistencyError(f"marks not constant on orbit {orb}")
        orbit_marks.append(marks.pop())
    mults: List[int] = []
    for orb, nbar in zip(orbits, orbit_marks):
        m = Q(len(orb) * nbar, len(orbits[0]))
        if m.denominator != 1 or m <= 0:
            raise TheoremViolationError(f"non-integral multiplicity {m} for orbit {orb}")
        mults.append(int(m))
    if mults[0] != 1:
        raise TheoremViolationError("m_0 differs from 1")
    dim = rs.ambient_dim
    pi = tuple(vsum((rs.coweight(s) for s in orb), dim) for orb in orbits)
    pi_bar = tuple(vsub(pi[k], vscale(mults[k], pi[0])) for k in range(1, len(orbits)))
    alpha_bar = tuple(
        vscale(Q(1, len(orb)), vsum((rs.extended[s] for s in orb), dim))
        for orb in orbits
    )
    powers: List[IsometryMap] = []
    power = element.omega
    for _ in range(element.order):
        powers.append(power)
        power = element.omega.compose(power)
    if not powers[-1].is_identity():
        raise ConsistencyError("omega powers do not close at the stated order")
    ctx = FoldingContext(
        system=rs,
        j=j,
        element=element,
        order=element.order,
        orbits=tuple(orbits),
        orbit_marks=tuple(orbit_marks),
        mults=tuple(mults),
        pi=pi,
        pi_bar=pi_bar,
        alpha_bar=alpha_bar,
        powers=tuple(powers),
    )
    for v in pi_bar:
        if ctx.powers[0].apply(v) != v:
            raise ConsistencyError("pi_bar vector is not omega-fixed")
    if matrix_rank(pi_bar) != ctx.r:
        raise ConsistencyError("pi_bar vectors are linearly dependent")
    return ctx


def fold_vector(ctx: FoldingContext, x: Vector) -> Vector:
    """Average of x over the powers of omega."""
    cached = ctx._fold_cache.get(x)
    if cached is not None:
        return cached
    total = zero(ctx.system.ambient_dim)
    for p in ctx.powers:
        total = vadd(total, p.apply(x))
    out = vscale(Q(1, ctx.order), total)
    ctx._fold_cache[x] = out
    return out


def fixed_space_basis(ctx: FoldingContext) -> Tuple[Vector, ...]:
    """Basis of the omega-fixed subspace of span(Delta); dimension cross-checked."""
    rs = ctx.system
    moved = [vsub(ctx.powers[0].apply(a), a) for a in rs.simple]
    fixed_dim = rs.rank - matrix_rank(moved)
    if fixed_dim != ctx.r:
        raise TheoremViolationError(
            f"fixed-space dimension {fixed_dim} differs from orbit count r={ctx.r}"
        )
    return ctx.pi_bar


@dataclass(frozen=True)
class OrbitData:
    """The omega-orbit of a root and its non-orthogonal, non-antipodal members."""

    representative: Vector
    orbit: Tuple[Vector, ...]
    neighbors: Tuple[Vector, ...]


def orbit_data(ctx: FoldingContext, beta: Vector) -> OrbitData:
    if beta not in ctx.system.roots:
        raise DomainError("orbit_data expects a root of the source system")
    orbit: List[Vector] = [beta]
    current = ctx.powers[0].apply(beta)
    while current != beta:
        orbit.append(current)
        current = ctx.powers[0].apply(current)
    neighbors = tuple(
        g for g in sorted(orbit)
        if g != beta and g != vneg(beta) and dot(beta, g) != 0
    )
    if len(neighbors) > 2:
        raise TheoremViolationError(f"more than two orbit neighbors for {beta}")
    for g in orbit:
        if g != beta and dot(beta, g) > 0:
            raise TheoremViolationError(f"positive inner product inside the orbit of {beta}")
    return OrbitData(representative=beta, orbit=tuple(orbit), neighbors=neighbors)


def is_vanishing(ctx: FoldingContext, beta: Vector) -> bool:
    """True iff the folded image of beta is zero; two routes compared."""
    data = orbit_data(ctx, beta)
    criterion = (vneg(beta) in data.orbit) or len(data.neighbors) >= 2
    direct = is_zero(fold_vector(ctx, beta))
    if criterion != direct:
        raise TheoremViolationError(
            f"vanishing criterion disagrees with the direct average for {beta}"
        )
    return direct


def fold_coefficients(ctx: FoldingContext, beta: Vector) -> Tuple[int, ...]:
    """Integer coefficients of the folded image over the folded basis."""
    rs = ctx.system
    c = (0,) + coefficients(rs, beta)  # c_0 = 0 convention
    cbar = [sum(c[s] for s in orb) for orb in ctx.orbits]
    out = tuple(cbar[k] - ctx.mults[k] * cbar[0] for k in range(1, len(ctx.orbits)))
    signs = {1 if v > 0 else -1 for v in out if v != 0}
    if len(signs) > 1:
        raise TheoremViolationError(f"sign-mixed folded coefficients {out} for {beta}")
    recon = zero(rs.ambient_dim)
    for v, ab in zip(out, ctx.alpha_bar[1:]):
        recon = vadd(recon, vscale(v, ab))
    if recon != fold_vector(ctx, beta):
        raise TheoremViolationError(f"folded coefficients fail to reconstruct {beta}^omega")
    return out


def folded_coroot(ctx: FoldingContext, beta: Vector) -> Vector:
    """Coroot of the folded image, by the orbit-sum formula, cross-checked directly."""
    folded = fold_vector(ctx, beta)
    if is_zero(folded):
        raise DomainError("folded image is zero; no coroot")
    data = orbit_data(ctx, beta)
    n = len(data.neighbors)
    total = zero(ctx.system.ambient_dim)
    for g in data.orbit:
        total = vadd(total, coroot(g))
    formula = vscale(Q(2, 2 - n), total)
    direct = coroot(folded)
    if formula != direct:
        raise TheoremViolationError(f"folded coroot formula disagrees for {beta}")
    return direct


def lift_reflection(ctx: FoldingContext, beta: Vector) -> IsometryMap:
    """Weyl-group element acting on the fixed space as the folded reflection."""
    folded = fold_vector(ctx, beta)
    if is_zero(folded):
        raise DomainError("cannot lift the reflection of a vanishing root")
    data = orbit_data(ctx, beta)
    dim = ctx.system.ambient_dim
    w = identity(dim)
    if not data.neighbors:
        for g in sorted(data.orbit):
            w = w.compose(_reflection(g, dim))
    else:
        paired: Set[Vector] = set()
        for g in sorted(data.orbit):
            if g in paired:
                continue
            mates = [
                h for h in data.orbit
                if h != g and h != vneg(g) and dot(g, h) != 0
            ]
            if len(mates) != 1:
                raise TheoremViolationError(f"orbit of {beta} does not pair up")
            ghat = mates[0]
            paired.update((g, ghat))
            s_g = _reflection(g, dim)
            w = w.compose(s_g.compose(_reflection(ghat, dim)).compose(s_g))
    omega = ctx.powers[0]
    if w.compose(omega) != omega.compose(w):
        raise TheoremViolationError(f"lifted reflection does not commute with omega ({beta})")
    for v in ctx.pi_bar:
        if w.apply(v) != reflect(folded, v):
            raise TheoremViolationError(
                f"lifted reflection differs from the folded reflection on the fixed space ({beta})"
            )
    return w


def _reflection(alpha: Vector, dim: int) -> IsometryMap:
    cols = []
    for i in range(dim):
        e = [Q(0)] * dim
        e[i] = Q(1)
        cols.append(reflect(alpha, tuple(e)))
    return IsometryMap(tuple(cols))


def disappearing_roots(ctx: FoldingContext) -> FrozenSet[Vector]:
    """Positive roots whose folded image is zero."""
    return frozenset(b for b in ctx.system.positive if is_vanishing(ctx, b))


def extra_root_profile(ctx: FoldingContext, target: Vector) -> FrozenSet[int]:
    """All pairings (gamma, pi_0) over preimages gamma of the target folded vector."""
    rs = ctx.system
    values: Set[int] = set()
    for g in rs.roots:
        if fold_vector(ctx, g) == target:
            p = dot(g, ctx.pi[0])
            if p.denominator != 1:
                raise ConsistencyError("non-integral profile pairing")
            values.add(int(p))
    bound = ctx.order - 1
    if any(abs(p) > bound for p in values):
        raise TheoremViolationError(f"profile value out of range for target {target}")
    if not is_zero(target) and 0 not in values:
        raise TheoremViolationError(f"profile of a folded root misses 0 for {target}")
    return frozenset(values)


@dataclass(frozen=True)
class FoldedRootSystem:
    """The folded system, its basis, identified type, vanish set, and profiles."""

    context: FoldingContext
    roots: FrozenSet[Vector]
    simple: Tuple[Vector, ...]
    extended_simple: Tuple[Vector, ...]
    label: TypeLabel
    vanish: FrozenSet[Vector]
    profiles: Tuple[Tuple[Vector, FrozenSet[int]], ...]

    @property
    def positive(self) -> Tuple[Vector, ...]:
        ctx = self.context
        out = []
        for b in self.roots:
            coeffs = _coeffs_over(self.simple, b)
            if all(c >= 0 for c in coeffs):
                out.append((sum(coeffs), coeffs, b))
        return tuple(b for _, _, b in sorted(out))


def _coeffs_over(basis: Sequence[Vector], x: Vector) -> Tuple[Q, ...]:
    from .geometry import coordinates_in_basis

    return coordinates_in_basis(list(basis), x)


def fold_root_system(ctx: FoldingContext) -> FoldedRootSystem:
    """Fold every root, certify the axioms, identify the type, and collect profiles."""
    rs = ctx.system
    images: Set[Vector] = set()
    for b in rs.roots:
        fb = fold_vector(ctx, b)
        if not is_zero(fb):
            images.add(fb)
    verdict = verify_axioms(images)
    if not verdict.ok:
        raise TheoremViolationError(f"folded set fails axioms: {verdict.failures}")
    if not images:
        label = TypeLabel("Empty", 0)
        simple: Tuple[Vector, ...] = ()
        extended: Tuple[Vector, ...] = ()
    else:
        label = identify_type(images)
        simple = ctx.alpha_bar[1:]
        extended = ctx.alpha_bar
        if not set(extended) <= images:
            raise TheoremViolationError("folded extended basis not inside the folded system")
    vanish = disappearing_roots(ctx)
    zero_vec = zero(rs.ambient_dim)
    profile_targets: List[Vector] = [zero_vec]
    folded = FoldedRootSystem(
        context=ctx,
        roots=frozenset(images),
        simple=simple,
        extended_simple=extended,
        label=label,
        vanish=vanish,
        profiles=(),
    )
    profile_targets.extend(folded.positive)
    profiles = tuple((t, extra_root_profile(ctx, t)) for t in profile_targets)
    return FoldedRootSystem(
        context=ctx,
        roots=folded.roots,
        simple=simple,
        extended_simple=extended,
        label=label,
        vanish=vanish,
        profiles=profiles,
    )


def to_json(folded: FoldedRootSystem) -> dict:
    """Stable JSON form of a fold report."""
    ctx = folded.context
    rs = ctx.system
    from .root_systems import coefficients as rs_coefficients

    vanish_sorted = sorted(
        folded.vanish,
        key=lambda b: (sum(rs_coefficients(rs, b)), rs_coefficients(rs, b)),
    )
    return {
        "source_label": str(rs.label),
        "j": ctx.j,
        "order": ctx.order,
        "orbits": [list(orb) for orb in ctx.orbits],
        "m": list(ctx.mults),
        "folded_label": str(folded.label),
        "folded_simple": [vector_to_json(a) for a in folded.simple],
        "vanish": [vector_to_json(b) for b in vanish_sorted],
        "profiles": [
            {"root": vector_to_json(t), "P": sorted(p)} for t, p in folded.profiles
        ],
    }
