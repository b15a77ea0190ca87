"""Expected structural data (closed-form and fixture files) and comparison harnesses."""

from __future__ import annotations

import json
import math
from importlib import resources
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .errors import DomainError
from .geometry import Vector, norm2, vadd, vscale, vsum, zero
from .cache import get_context, get_fold, get_stabilizer, get_system
from .folding import FoldedRootSystem, FoldingContext
from .root_systems import (
    RootSystem,
    TypeLabel,
    coefficients,
    index_of_connection,
    iter_labels,
)
from .weyl import cycle_notation, group_structure

TABLE_IDS = ("Omega_f", "sigma_j", "Table_P", "Table_E", "disap_sets", "E6_CX", "E7_CX")


# --- closed-form expected values ---------------------------------------------


def expected_omega_structure(label: TypeLabel) -> Tuple[int, str]:
    """(|Omega|, group structure) for a reduced irreducible type."""
    fam, l = label.family, label.rank
    if fam == "A":
        n = l + 1
        return n, f"Z/{n}Z"
    if fam in ("B", "C"):
        return 2, "Z/2Z"
    if fam == "D":
        return (4, "Z/2Z x Z/2Z") if l % 2 == 0 else (4, "Z/4Z")
    if fam == "E":
        return {6: (3, "Z/3Z"), 7: (2, "Z/2Z"), 8: (1, "trivial")}[l]
    if fam in ("F", "G"):
        return 1, "trivial"
    raise DomainError(f"no stabilizer table entry for {label}")


def expected_minuscule(label: TypeLabel) -> Tuple[int, ...]:
    fam, l = label.family, label.rank
    if fam == "A":
        return tuple(range(l + 1))
    if fam == "B":
        return (0, 1)
    if fam == "C":
        return (0, l)
    if fam == "D":
        return (0, 1, l - 1, l)
    if fam == "E":
        return {6: (0, 1, 6), 7: (0, 7), 8: (0,)}[l]
    return (0,)


def expected_sigma(label: TypeLabel, j: int) -> Tuple[int, ...]:
    """The diagram permutation from the closed-form table."""
    fam, l = label.family, label.rank
    n = l + 1
    if j == 0:
        return tuple(range(n))
    if fam == "A":
        return tuple((i + j) % n for i in range(n))
    if fam == "B":
        if j == 1:
            p = list(range(n))
            p[0], p[1] = 1, 0
            return tuple(p)
    if fam == "C":
        if j == l:
            return tuple(l - i for i in range(n))
    if fam == "D":
        p = list(range(n))
        if j == 1:
            p[0], p[1] = 1, 0
            p[l - 1], p[l] = l, l - 1
            return tuple(p)
        for i in range(2, l - 1):
            p[i] = l - i
        if l % 2 == 0:
            if j == l - 1:
                p[0], p[l - 1], p[1], p[l] = l - 1, 0, l, 1
                return tuple(p)
            if j == l:
                p[0], p[l], p[1], p[l - 1] = l, 0, l - 1, 1
                return tuple(p)
        else:
            if j == l - 1:
                p[0], p[l - 1], p[1], p[l] = l - 1, 1, l, 0
                return tuple(p)
            if j == l:
                p[0], p[l], p[1], p[l - 1] = l, 1, l - 1, 0
                return tuple(p)
    if fam == "E" and l == 6:
        cyc = {0: 1, 1: 6, 6: 0, 2: 3, 3: 5, 5: 2, 4: 4}
        if j == 1:
            return tuple(cyc[i] for i in range(7))
        if j == 6:
            inv = {v: k for k, v in cyc.items()}
            return tuple(inv[i] for i in range(7))
    if fam == "E" and l == 7 and j == 7:
        p = list(range(8))
        for a, b in ((0, 7), (1, 6), (3, 5)):
            p[a], p[b] = b, a
        return tuple(p)
    raise DomainError(f"no sigma table entry for {label}, j={j}")


def expected_fold_label(label: TypeLabel, j: int) -> TypeLabel:
    """Type of the folded system; rank-2 C outcomes canonicalized to B."""
    fam, l = label.family, label.rank
    if j == 0:
        return label
    if fam == "A":
        g = math.gcd(l + 1, j)
        return TypeLabel("Empty", 0) if g == 1 else TypeLabel("A", g - 1)
    if fam == "B" and j == 1:
        return TypeLabel("A", 1) if l == 2 else TypeLabel("B", l - 1)
    if fam == "C" and j == l:
        if l % 2 == 1:
            return TypeLabel("BC", (l - 1) // 2)
        half = l // 2
        return TypeLabel("C", half) if half >= 3 else TypeLabel("B", 2)
    if fam == "D":
        if j == 1:
            return TypeLabel("B", l - 2)
        if j in (l - 1, l):
            if l % 2 == 0:
                half = l // 2
                return TypeLabel("C", half) if half >= 3 else TypeLabel("B", 2)
            return TypeLabel("BC", (l - 3) // 2)
    if fam == "E" and l == 6 and j in (1, 6):
        return TypeLabel("G", 2)
    if fam == "E" and l == 7 and j == 7:
        return TypeLabel("F", 4)
    raise DomainError(f"no folded-type table entry for {label}, j={j}")


def expected_disappearing(rs: RootSystem, j: int) -> FrozenSet[Vector]:
    """The explicit vanishing sets, built from the standard coordinates."""
    fam, l = rs.label.family, rs.label.rank
    dim = rs.ambient_dim

    def e(i: int) -> Vector:
        v = [0] * dim
        v[i - 1] = 1
        return vscale(1, tuple(map(lambda x: x, v)))  # plain ints promote via vscale

    def simple_sum(cs: Sequence[int]) -> Vector:
        return vsum((vscale(c, a) for c, a in zip(cs, rs.simple)), dim)

    if fam == "A":
        g = math.gcd(l + 1, j)
        return frozenset(
            simple_sum([1 if i1 <= t <= i2 else 0 for t in range(1, l + 1)])
            for i1 in range(1, l + 1)
            for i2 in range(i1, l + 1)
            if (i2 - i1 + 1) % g == 0
        )
    if fam == "B" and j == 1:
        return frozenset({e(1)})
    if fam == "C" and j == l:
        return frozenset(
            vadd(e(p), e(l - p + 1)) for p in range(1, (l + 1) // 2 + 1)
        )
    if fam == "D":
        if j == 1:
            return frozenset({vadd(e(1), vscale(-1, e(l))), vadd(e(1), e(l))})
        if l % 2 == 0 and j == l:
            return frozenset(vadd(e(i), e(l - i + 1)) for i in range(1, l // 2 + 1))
        if l % 2 == 0 and j == l - 1:
            out = {vadd(e(1), vscale(-1, e(l)))}
            out |= {vadd(e(i), e(l - i + 1)) for i in range(2, l // 2 + 1)}
            return frozenset(out)
        if l % 2 == 1 and j in (l - 1, l):
            m = (l + 1) // 2
            out = set()
            for a, b in ((1, m), (m, l), (1, l)):
                out.add(vadd(e(a), e(b)))
                out.add(vadd(e(a), vscale(-1, e(b))))
            out |= {vadd(e(i), e(l - i + 1)) for i in range(2, (l - 1) // 2 + 1)}
            return frozenset(out)
    if fam == "E" and l == 6 and j in (1, 6):
        combos = [
            (1, 1, 1, 1, 0, 0),
            (1, 0, 1, 1, 1, 0),
            (0, 1, 0, 1, 1, 1),
            (0, 0, 1, 1, 1, 1),
            (1, 1, 2, 2, 1, 1),
            (1, 1, 1, 2, 2, 1),
        ]
        return frozenset(simple_sum(cs) for cs in combos)
    if fam == "E" and l == 7 and j == 7:
        combos = [
            (0, 1, 1, 2, 2, 2, 1),
            (1, 1, 2, 2, 1, 1, 1),
            (1, 1, 1, 2, 2, 1, 1),
        ]
        return frozenset(simple_sum(cs) for cs in combos)
    raise DomainError(f"no disappearing-set fixture for {rs.label}, j={j}")


def expected_profile_patterns(
    label: TypeLabel, j: int, order: int
) -> Dict[str, FrozenSet[int]]:
    """Expected P(beta^omega) keyed by folded length class ('all' for one length)."""
    fam, l = label.family, label.rank
    full = frozenset(range(-(order - 1), order)) | {0}
    zero_one = frozenset({-1, 0, 1})
    only_zero = frozenset({0})
    if fam == "A":
        return {"all": full}
    if fam == "B" and j == 1:
        if l == 2:
            return {"all": zero_one}
        return {"short": zero_one, "long": only_zero}
    if fam == "C" and j == l:
        if l % 2 == 1:
            return {"short": zero_one, "middle": zero_one, "long": zero_one}
        return {"short": zero_one, "long": zero_one}
    if fam == "D":
        if j == 1 or (l % 2 == 0 and j in (l - 1, l)):
            return {"short": zero_one, "long": only_zero}
        if l % 2 == 1 and j in (l - 1, l):
            # The long (divisible) roots of the folded BC system are their own
            # unique preimage, so their profile is {0}; only the middle-length
            # roots pick up the extra +/-2 preimages.
            big = frozenset({-3, -2, -1, 0, 1, 2, 3})
            return {"short": big, "middle": frozenset({-2, 0, 2}), "long": only_zero}
    if fam == "E" and l == 6 and j in (1, 6):
        return {"short": frozenset({-2, -1, 0, 1, 2}), "long": only_zero}
    if fam == "E" and l == 7 and j == 7:
        return {"short": zero_one, "long": only_zero}
    raise DomainError(f"no profile pattern for {label}, j={j}")


def length_class_names(count: int) -> Tuple[str, ...]:
    if count == 1:
        return ("all",)
    if count == 2:
        return ("short", "long")
    if count == 3:
        return ("short", "middle", "long")
    raise DomainError(f"unexpected number of root lengths: {count}")


def classify_lengths(folded: FoldedRootSystem) -> Dict[Vector, str]:
    norms = sorted({norm2(b) for b in folded.roots})
    names = length_class_names(len(norms))
    lookup = dict(zip(norms, names))
    return {b: lookup[norm2(b)] for b in folded.roots}


# --- fixture files -----------------------------------------------------------


def load_fixture(name: str) -> dict:
    with resources.files("rootfold.fixtures").joinpath(name).open() as fh:
        return json.load(fh)


# --- comparison harness ------------------------------------------------------


def _row(table: str, subject: str, expected, computed) -> dict:
    return {
        "table": table,
        "subject": subject,
        "expected": expected,
        "computed": computed,
        "pass": expected == computed,
    }


def _active_j(rs: RootSystem) -> Tuple[int, ...]:
    return tuple(j for j in rs.minuscule_indices if j != 0)


def table_omega_f(max_rank: int = 12, families: Optional[Set[str]] = None) -> List[dict]:
    rows = []
    for label in iter_labels(max_rank):
        if families and label.family not in families:
            continue
        rs = get_system(label)
        elems = get_stabilizer(label)
        expected_n, expected_struct = expected_omega_structure(label)
        computed = (len(elems), group_structure(elems), index_of_connection(rs))
        rows.append(_row("Omega_f", str(label), (expected_n, expected_struct, expected_n), computed))
    return rows


def table_sigma(max_rank: int = 12, families: Optional[Set[str]] = None) -> List[dict]:
    rows = []
    for label in iter_labels(max_rank):
        if families and label.family not in families:
            continue
        rs = get_system(label)
        elems = {e.j: e for e in get_stabilizer(label)}
        rows.append(
            _row(
                "sigma_j",
                f"{label} J",
                tuple(expected_minuscule(label)),
                tuple(sorted(elems)),
            )
        )
        for j, elem in sorted(elems.items()):
            rows.append(
                _row(
                    "sigma_j",
                    f"{label} j={j}",
                    cycle_notation(expected_sigma(label, j)),
                    cycle_notation(elem.sigma),
                )
            )
        if label.family == "D" and label.rank % 2 == 0:
            l = label.rank
            product = tuple(
                elems[1].sigma[elems[l - 1].sigma[i]] for i in range(l + 1)
            )
            rows.append(
                _row(
                    "sigma_j",
                    f"{label} sigma_{l}=sigma_1*sigma_{l-1}",
                    cycle_notation(elems[l].sigma),
                    cycle_notation(product),
                )
            )
    return rows


def table_fold_types(max_rank: int = 10, families: Optional[Set[str]] = None) -> List[dict]:
    rows = []
    for label in iter_labels(max_rank):
        if families and label.family not in families:
            continue
        rs = get_system(label)
        for j in _active_j(rs):
            folded = get_fold(label, j)
            rows.append(
                _row(
                    "Table_P",
                    f"{label} j={j}",
                    str(expected_fold_label(label, j)),
                    str(folded.label),
                )
            )
    return rows


def table_disappearing(max_rank: int = 10, families: Optional[Set[str]] = None) -> List[dict]:
    rows = []
    for label in iter_labels(max_rank):
        if families and label.family not in families:
            continue
        rs = get_system(label)
        for j in _active_j(rs):
            ctx = get_context(label, j)
            folded = get_fold(label, j)
            expected = expected_disappearing(rs, j)
            rows.append(
                _row(
                    "disap_sets",
                    f"{label} j={j}",
                    sorted(map(str, expected)),
                    sorted(map(str, folded.vanish)),
                )
            )
    return rows


def table_profiles(max_rank: int = 9, families: Optional[Set[str]] = None) -> List[dict]:
    rows = []
    for label in iter_labels(max_rank):
        if families and label.family not in families:
            continue
        rs = get_system(label)
        for j in _active_j(rs):
            ctx = get_context(label, j)
            folded = get_fold(label, j)
            profile_map = dict(folded.profiles)
            zero_vec = zero(rs.ambient_dim)
            expected_zero = frozenset(
                p for p in range(-(ctx.order - 1), ctx.order) if p != 0
            )
            rows.append(
                _row(
                    "Table_E",
                    f"{label} j={j} P(0)",
                    sorted(expected_zero),
                    sorted(profile_map[zero_vec]),
                )
            )
            if not folded.roots:
                continue
            patterns = expected_profile_patterns(label, j, ctx.order)
            classes = classify_lengths(folded)
            for b in folded.positive:
                rows.append(
                    _row(
                        "Table_E",
                        f"{label} j={j} {classes[b]} root {b}",
                        sorted(patterns[classes[b]]),
                        sorted(profile_map[b]),
                    )
                )
    return rows


def table_e6_cx() -> List[dict]:
    return _table_cx("E6_CX", "e6_cx.json", TypeLabel("E", 6), 1)


def table_e7_cx() -> List[dict]:
    return _table_cx("E7_CX", "e7_cx.json", TypeLabel("E", 7), 7)


def _table_cx(table_id: str, fixture: str, label: TypeLabel, j: int) -> List[dict]:
    from .folding import fold_coefficients

    data = load_fixture(fixture)
    expected_pairs = sorted(
        (tuple(p["c"]), tuple(p["x"])) for p in data["pairs"]
    )
    rs = get_system(label)
    ctx = get_context(label, j)
    computed_pairs = sorted(
        (coefficients(rs, b), fold_coefficients(ctx, b)) for b in rs.positive
    )
    return [_row(table_id, f"{label} (C,X) pair multiset", expected_pairs, computed_pairs)]


def run_table(table_id: str, max_rank: int = 12, families: Optional[Set[str]] = None) -> List[dict]:
    if table_id == "Omega_f":
        return table_omega_f(min(max_rank, 12), families)
    if table_id == "sigma_j":
        return table_sigma(min(max_rank, 12), families)
    if table_id == "Table_P":
        return table_fold_types(min(max_rank, 10), families)
    if table_id == "Table_E":
        return table_profiles(min(max_rank, 9), families)
    if table_id == "disap_sets":
        return table_disappearing(min(max_rank, 10), families)
    if table_id == "E6_CX":
        return table_e6_cx() if (not families or "E" in families) else []
    if table_id == "E7_CX":
        return table_e7_cx() if (not families or "E" in families) else []
    raise DomainError(f"unknown table id {table_id!r}; choose from {TABLE_IDS}")
