"""Invariant suite: re-derives every structural property by brute force and reports per check.

Each check is a pure function from a run configuration to a list of result rows
{check, subject, ok, detail}.  The suite is deterministic: work items are fixed
by the configuration, and the merged report is sorted, so the output does not
depend on the worker count.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from .cache import get_context, get_fold, get_stabilizer, get_system
from .diagrams import assert_fold_consistent, build_diagram, identify_type
from .errors import ConsistencyError, DomainError, RootfoldError
from .folding import (
    fold_coefficients,
    fold_vector,
    folded_coroot,
    lift_reflection,
    make_context,
    orbit_data,
)
from .geometry import coroot, dot, is_zero, norm2, reflect, vneg
from .root_systems import (
    RootSystem,
    TypeLabel,
    coefficients,
    is_reduced,
    iter_labels,
    verify_axioms,
)

OUTPUT_FORMATS = ("json", "tsv", "dot", "ascii")


@dataclass(frozen=True)
class RunConfig:
    """Options shared by the verification suite and the command line."""

    max_rank: int = 12
    families: Optional[FrozenSet[str]] = None
    output_format: str = "json"
    jobs: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_rank < 1:
            raise DomainError("max_rank must be at least 1")
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError(
                f"unknown output format {self.output_format!r}; choose from {OUTPUT_FORMATS}"
            )
        if self.jobs < 1:
            raise DomainError("jobs must be at least 1")


def _result(check: str, subject: str, ok: bool, detail: str = "") -> dict:
    return {"check": check, "subject": subject, "ok": ok, "detail": detail}


def _labels(config: RunConfig, cap: int, include_bc: bool = False) -> List[TypeLabel]:
    out = []
    for label in iter_labels(min(config.max_rank, cap), include_bc=include_bc):
        if config.families and label.family not in config.families:
            continue
        out.append(label)
    return out


def _fold_cases(config: RunConfig, cap: int) -> List[Tuple[TypeLabel, int]]:
    cases = []
    for label in _labels(config, cap):
        rs = get_system(label)
        for j in rs.minuscule_indices:
            if j != 0:
                cases.append((label, j))
    return cases


# --- per-check implementations ------------------------------------------------


def check_source_axioms(config: RunConfig) -> List[dict]:
    """Every built system (including the non-reduced reference family) satisfies the axioms."""
    rows = []
    for label in _labels(config, 8, include_bc=True):
        verdict = verify_axioms(get_system(label).roots)
        rows.append(
            _result("source_axioms", str(label), verdict.ok, "; ".join(
                f"{tag}: {msg}" for tag, msg in verdict.failures
            ))
        )
    return rows


def check_type_round_trip(config: RunConfig) -> List[dict]:
    """identify_type recovers the label of every built system."""
    rows = []
    for label in _labels(config, 12, include_bc=True):
        got = identify_type(get_system(label).roots)
        rows.append(
            _result("type_round_trip", str(label), got == label, f"identified {got}")
        )
    return rows


def check_stabilizer_action(config: RunConfig) -> List[dict]:
    """sigma_j(0) = j, marks are sigma_j-invariant, and the affine action gives the same permutation."""
    rows = []
    for label in _labels(config, 12):
        rs = get_system(label)
        for elem in get_stabilizer(label):
            probs = []
            if elem.sigma[0] != elem.j:
                probs.append(f"sigma(0) = {elem.sigma[0]} != j")
            bad_marks = [
                i for i in range(rs.rank + 1) if rs.marks[i] != rs.marks[elem.sigma[i]]
            ]
            if bad_marks:
                probs.append(f"marks not invariant at {bad_marks}")
            from .weyl import sigma_hat_of

            if sigma_hat_of(elem) != elem.sigma:
                probs.append("affine vertex action disagrees with the diagram action")
            rows.append(
                _result(
                    "stabilizer_action", f"{label} j={elem.j}", not probs, "; ".join(probs)
                )
            )
    return rows


def check_folded_axioms(config: RunConfig) -> List[dict]:
    """The folded root set satisfies the axioms by full enumeration."""
    rows = []
    for label, j in _fold_cases(config, 10):
        folded = get_fold(label, j)
        verdict = verify_axioms(folded.roots) if folded.roots else verify_axioms(set())
        rows.append(
            _result("folded_axioms", f"{label} j={j}", verdict.ok, "; ".join(
                f"{tag}: {msg}" for tag, msg in verdict.failures
            ))
        )
    return rows


def check_folded_basis(config: RunConfig) -> List[dict]:
    """Folded coefficients are integral and sign-uniform; the folded basis and coweight vectors are dual."""
    rows = []
    for label, j in _fold_cases(config, 10):
        ctx = get_context(label, j)
        probs = []
        try:
            for b in ctx.system.positive:
                fold_coefficients(ctx, b)
        except RootfoldError as exc:
            probs.append(str(exc))
        for k1 in range(1, ctx.r + 1):
            for k2 in range(1, ctx.r + 1):
                want = Q(1 if k1 == k2 else 0)
                got = dot(ctx.alpha_bar[k1], ctx.pi_bar[k2 - 1])
                if got != want:
                    probs.append(f"pairing ({k1},{k2}) = {got}")
        folded = get_fold(label, j)
        for b in sorted(folded.roots):
            for v in ctx.pi_bar:
                if dot(coroot(b), v).denominator != 1:
                    probs.append(f"coweight vector pairs non-integrally with {b}")
        rows.append(_result("folded_basis", f"{label} j={j}", not probs, "; ".join(probs)))
    return rows


def check_multiplicities(config: RunConfig) -> List[dict]:
    """Every folded mark m_k is a positive integer with m_0 = 1."""
    rows = []
    for label, j in _fold_cases(config, 12):
        ctx = get_context(label, j)
        ok = ctx.mults[0] == 1 and all(m >= 1 for m in ctx.mults)
        rows.append(
            _result("multiplicities", f"{label} j={j}", ok, f"m = {list(ctx.mults)}")
        )
    return rows


def check_lifted_reflections(config: RunConfig) -> List[dict]:
    """Each folded reflection lifts to a product of source reflections commuting with omega."""
    rows = []
    for label, j in _fold_cases(config, 8):
        ctx = get_context(label, j)
        probs = []
        try:
            for b in ctx.system.positive:
                if not is_zero(fold_vector(ctx, b)):
                    lift_reflection(ctx, b)
        except RootfoldError as exc:
            probs.append(str(exc))
        rows.append(
            _result("lifted_reflections", f"{label} j={j}", not probs, "; ".join(probs))
        )
    return rows


def check_norms_and_coroots(config: RunConfig) -> List[dict]:
    """Orbit-average norm formula and orbit-sum coroot formula hold for every root."""
    rows = []
    for label, j in _fold_cases(config, 8):
        ctx = get_context(label, j)
        probs = []
        try:
            for b in ctx.system.positive:
                folded = fold_vector(ctx, b)
                data = orbit_data(ctx, b)
                if vneg(b) not in data.orbit:
                    expected = (
                        Q(2 - len(data.neighbors)) * norm2(b) / (2 * len(data.orbit))
                    )
                    if norm2(folded) != expected:
                        probs.append(f"norm formula fails for {b}")
                        break
                if not is_zero(folded):
                    folded_coroot(ctx, b)
        except RootfoldError as exc:
            probs.append(str(exc))
        rows.append(
            _result("norms_and_coroots", f"{label} j={j}", not probs, "; ".join(probs))
        )
    return rows


def check_averaged_inner_product(config: RunConfig) -> List[dict]:
    """(b1^omega, b2^omega) equals the average of (b1, gamma) over the orbit of b2."""
    rows = []
    for label, j in _fold_cases(config, 6):
        ctx = get_context(label, j)
        probs = []
        roots = sorted(ctx.system.roots)
        orbit_of = {b: orbit_data(ctx, b).orbit for b in roots}
        for b1 in roots:
            f1 = fold_vector(ctx, b1)
            for b2 in roots:
                orbit = orbit_of[b2]
                avg = sum((dot(b1, g) for g in orbit), Q(0)) / len(orbit)
                if dot(f1, fold_vector(ctx, b2)) != avg:
                    probs.append(f"averaged product fails for ({b1}, {b2})")
                    break
            if probs:
                break
        rows.append(
            _result("averaged_inner_product", f"{label} j={j}", not probs, "; ".join(probs))
        )
    return rows


def check_sign_rule(config: RunConfig) -> List[dict]:
    """omega^t keeps a positive root positive exactly when c_{sigma^{-t}(0)} vanishes."""
    rows = []
    for label, j in _fold_cases(config, 8):
        ctx = get_context(label, j)
        rs = ctx.system
        sigma = ctx.element.sigma
        inverse = [0] * len(sigma)
        for i, v in enumerate(sigma):
            inverse[v] = i
        positives = set(rs.positive)
        probs = []
        for b in rs.positive:
            c = (0,) + coefficients(rs, b)
            index = 0
            for t in range(ctx.order):
                image = b if t == 0 else ctx.powers[t - 1].apply(b)
                stays_positive = image in positives
                if stays_positive != (c[index] == 0):
                    probs.append(f"sign rule fails for {b} at power {t}")
                    break
                index = inverse[index]
            if probs:
                break
        rows.append(_result("sign_rule", f"{label} j={j}", not probs, "; ".join(probs)))
    return rows


def check_folded_closure(config: RunConfig) -> List[dict]:
    """The folded set is closed under its own reflections with integral pairings."""
    rows = []
    for label, j in _fold_cases(config, 8):
        folded = get_fold(label, j)
        probs = []
        roots = sorted(folded.roots)
        for x in roots:
            cx = coroot(x)
            for y in roots:
                if reflect(x, y) not in folded.roots:
                    probs.append(f"reflection of {y} in {x} leaves the folded set")
                    break
                if dot(cx, y).denominator != 1:
                    probs.append(f"non-integral folded pairing ({x}, {y})")
                    break
            if probs:
                break
        rows.append(
            _result("folded_closure", f"{label} j={j}", not probs, "; ".join(probs))
        )
    return rows


def check_nonreduced_criterion(config: RunConfig) -> List[dict]:
    """The folded system is non-reduced exactly when some simple root has one orbit neighbor."""
    rows = []
    for label, j in _fold_cases(config, 10):
        ctx = get_context(label, j)
        folded = get_fold(label, j)
        if not folded.roots:
            rows.append(_result("nonreduced_criterion", f"{label} j={j}", True, "empty fold"))
            continue
        non_reduced = not is_reduced(folded.roots)
        witness = any(
            len(orbit_data(ctx, a).neighbors) == 1 for a in ctx.system.simple
        )
        rows.append(
            _result(
                "nonreduced_criterion",
                f"{label} j={j}",
                non_reduced == witness,
                f"non_reduced={non_reduced}, simple-root witness={witness}",
            )
        )
    return rows


def check_folded_connectivity(config: RunConfig) -> List[dict]:
    """The folded Dynkin diagram is connected, and edges appear exactly where orbits interact."""
    rows = []
    for label, j in _fold_cases(config, 10):
        ctx = get_context(label, j)
        folded = get_fold(label, j)
        probs = []
        if folded.roots:
            diagram = build_diagram(list(folded.simple))
            seen = {0}
            frontier = [0]
            while frontier:
                nxt = []
                for u in frontier:
                    for v in diagram.neighbors(u):
                        if v not in seen:
                            seen.add(v)
                            nxt.append(v)
                frontier = nxt
            if len(seen) != len(diagram.nodes):
                probs.append("folded diagram is disconnected")
        rs = ctx.system
        for k1 in range(ctx.r + 1):
            for k2 in range(k1 + 1, ctx.r + 1):
                metric = dot(ctx.alpha_bar[k1], ctx.alpha_bar[k2]) != 0
                combinatorial = any(
                    dot(rs.extended[s1], rs.extended[s2]) != 0
                    for s1 in ctx.orbits[k1]
                    for s2 in ctx.orbits[k2]
                )
                if metric != combinatorial:
                    probs.append(f"edge criterion fails between orbits {k1} and {k2}")
        rows.append(
            _result("folded_connectivity", f"{label} j={j}", not probs, "; ".join(probs))
        )
    return rows


def check_diagram_fold_agreement(config: RunConfig) -> List[dict]:
    """Combinatorial diagram folding equals the metric diagram of the folded basis."""
    rows = []
    for label, j in _fold_cases(config, 10):
        ctx = get_context(label, j)
        rs = ctx.system
        probs = []
        try:
            extended = build_diagram(
                list(rs.extended),
                marks=list(rs.marks),
                names=[f"a{i}" for i in range(rs.rank + 1)],
            )
            folded_vertices = [] if ctx.r == 0 else list(ctx.alpha_bar)
            folded_marks = None if ctx.r == 0 else list(ctx.mults)
            assert_fold_consistent(extended, ctx.element.sigma, folded_vertices, folded_marks)
        except RootfoldError as exc:
            probs.append(str(exc))
        rows.append(
            _result("diagram_fold_agreement", f"{label} j={j}", not probs, "; ".join(probs))
        )
    return rows


CHECKS: Dict[str, Callable[[RunConfig], List[dict]]] = {
    "source_axioms": check_source_axioms,
    "type_round_trip": check_type_round_trip,
    "stabilizer_action": check_stabilizer_action,
    "folded_axioms": check_folded_axioms,
    "folded_basis": check_folded_basis,
    "multiplicities": check_multiplicities,
    "lifted_reflections": check_lifted_reflections,
    "norms_and_coroots": check_norms_and_coroots,
    "averaged_inner_product": check_averaged_inner_product,
    "sign_rule": check_sign_rule,
    "folded_closure": check_folded_closure,
    "nonreduced_criterion": check_nonreduced_criterion,
    "folded_connectivity": check_folded_connectivity,
    "diagram_fold_agreement": check_diagram_fold_agreement,
}


def run_suite(config: RunConfig, checks: Optional[Iterable[str]] = None) -> List[dict]:
    """Run the selected checks and merge their rows into one sorted, deterministic report."""
    names = sorted(checks) if checks else sorted(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise DomainError(f"unknown checks {unknown}; choose from {sorted(CHECKS)}")
    if config.jobs == 1:
        groups = [CHECKS[n](config) for n in names]
    else:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            groups = list(pool.map(lambda n: CHECKS[n](config), names))
    merged = [row for group in groups for row in group]
    merged.sort(key=lambda r: (r["check"], r["subject"]))
    return merged


# --- negative controls --------------------------------------------------------


def removed_root_fault(label: TypeLabel) -> dict:
    """Drop one root and report the resulting closure violation with its witness."""
    rs = get_system(label)
    dropped = max(rs.positive, key=lambda b: sum(coefficients(rs, b)))
    verdict = verify_axioms(rs.roots - {dropped})
    failed = [tag for tag, _ in verdict.failures]
    return {
        "fault": "removed_root",
        "subject": str(label),
        "dropped": dropped,
        "detected": not verdict.ok and "R2" in failed,
        "witnesses": verdict.failures,
    }


def corrupted_mark_fault(label: TypeLabel, j: int) -> dict:
    """Corrupt one mark on a nontrivial orbit and report the consistency error."""
    rs = get_system(label)
    ctx = get_context(label, j)
    target = next(orb for orb in ctx.orbits if len(orb) > 1)
    index = max(target)
    bad_marks = tuple(
        m + 1 if i == index else m for i, m in enumerate(rs.marks)
    )
    corrupted = dataclasses.replace(rs, marks=bad_marks, _coeff_cache=dict(rs._coeff_cache))
    try:
        make_context(corrupted, j, ctx.element)
    except ConsistencyError as exc:
        return {
            "fault": "corrupted_mark",
            "subject": f"{label} j={j}",
            "index": index,
            "detected": True,
            "witnesses": (str(exc),),
        }
    return {
        "fault": "corrupted_mark",
        "subject": f"{label} j={j}",
        "index": index,
        "detected": False,
        "witnesses": (),
    }
