"""Dynkin-style multigraphs: building, folding by a vertex permutation, classification."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from .errors import ClassificationError, DomainError, TheoremViolationError
from .geometry import (
    Vector,
    dot,
    is_zero,
    matrix_rank,
    norm2,
    proportional,
    vadd,
    vneg,
    vscale,
    vsub,
)
from .root_systems import TypeLabel, is_reduced

# orientation: 0 = none, +1 = toward the second (higher-index) vertex, -1 = toward the first
Edge = Tuple[int, int, int, int]  # (u, v, multiplicity, orientation)


@dataclass(frozen=True)
class DiagramNode:
    index: int
    name: str
    mark: Optional[int]
    length2: Q


@dataclass(frozen=True)
class Diagram:
    nodes: Tuple[DiagramNode, ...]
    edges: Tuple[Edge, ...]

    def degree(self, i: int) -> int:
        return sum(1 for u, v, _, _ in self.edges if i in (u, v))

    def neighbors(self, i: int) -> List[int]:
        out = []
        for u, v, _, _ in self.edges:
            if u == i:
                out.append(v)
            elif v == i:
                out.append(u)
        return sorted(out)

    def canonical(self) -> tuple:
        """Vertex-order-invariant comparable form via iterated color refinement.

        Node colors start from (mark, normalized length) and are refined with
        the sorted multiset of incident (multiplicity, relative orientation,
        neighbor color) triples until stable; the certificate is the sorted
        multiset of final colors together with the sorted edge color pairs.
        """
        n = len(self.nodes)
        if n == 0:
            return ()
        base = min(node.length2 for node in self.nodes)
        colors: List[tuple] = [
            (node.mark, node.length2 / base) for node in self.nodes
        ]
        incident: List[List[Tuple[int, int, int]]] = [[] for _ in range(n)]
        for u, v, mult, orient in self.edges:
            # orientation +1 points toward v; flip the sign seen from v
            incident[u].append((mult, orient, v))
            incident[v].append((mult, -orient, u))
        rounds: List[tuple] = []
        for _ in range(n):
            refined = [
                (colors[i], tuple(sorted((m, o, colors[w]) for m, o, w in incident[i])))
                for i in range(n)
            ]
            # record the full multiset before compressing colors to ranks; equal
            # certificates then imply the per-round rank maps agree, which keeps
            # the compressed colors comparable across diagrams
            rounds.append(tuple(sorted(refined)))
            ranking = {c: rank for rank, c in enumerate(sorted(set(refined)))}
            colors = [(ranking[c],) for c in refined]
        edge_colors = tuple(
            sorted(
                (mult, *sorted((colors[u], colors[v])))
                for u, v, mult, _ in self.edges
            )
        )
        return (tuple(rounds), edge_colors)


def _edge_between(u: int, v: int, lu: Q, lv: Q, antiparallel: bool) -> Edge:
    ratio = max(lu, lv) / min(lu, lv)
    if antiparallel and lu == lv:
        return (u, v, 2, 0)
    if ratio.denominator != 1:
        raise DomainError(f"non-integral length ratio {ratio} between vertices {u},{v}")
    mult = int(ratio)
    if mult == 1:
        return (u, v, 1, 0)
    orientation = 1 if lv < lu else -1
    return (u, v, mult, orientation)


def build_diagram(
    vertex_roots: Sequence[Vector],
    marks: Optional[Sequence[int]] = None,
    names: Optional[Sequence[str]] = None,
) -> Diagram:
    """Diagram of a vector list: parallel-edge count from length ratios, arrows toward shorter."""
    n = len(vertex_roots)
    for v in vertex_roots:
        if is_zero(v):
            raise DomainError("diagram vertex is the zero vector")
    nodes = tuple(
        DiagramNode(
            index=i,
            name=names[i] if names else f"v{i}",
            mark=marks[i] if marks else None,
            length2=norm2(vertex_roots[i]),
        )
        for i in range(n)
    )
    edges: List[Edge] = []
    for u in range(n):
        for v in range(u + 1, n):
            a, b = vertex_roots[u], vertex_roots[v]
            if proportional(a, b) and dot(a, b) > 0:
                raise DomainError("parallel (same-direction) diagram vertices")
            if dot(a, b) != 0:
                edges.append(
                    _edge_between(u, v, norm2(a), norm2(b), proportional(a, b))
                )
    return Diagram(nodes=nodes, edges=tuple(edges))


def permutation_orbits(sigma: Sequence[int]) -> List[Tuple[int, ...]]:
    seen = [False] * len(sigma)
    orbits = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        nxt = sigma[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = sigma[nxt]
        orbits.append(tuple(sorted(cyc)))
    return orbits


def walk_order(
    orbits: Sequence[Tuple[int, ...]],
    adjacent: Callable[[Tuple[int, ...], Tuple[int, ...]], bool],
) -> List[Tuple[int, ...]]:
    """Orbit containing 0 first, then walk outward, smallest-min neighbor first."""
    start = next(o for o in orbits if 0 in o)
    ordered = [start]
    remaining = {o for o in orbits if o is not start}
    current = start
    while remaining:
        nbrs = sorted((o for o in remaining if adjacent(current, o)), key=min)
        if not nbrs:
            nbrs = sorted(
                (o for o in remaining if any(adjacent(v, o) for v in ordered)), key=min
            )
            if not nbrs:
                nbrs = sorted(remaining, key=min)
        chosen = nbrs[0]
        ordered.append(chosen)
        remaining.discard(chosen)
        current = chosen
    return ordered


def fold_diagram(extended: Diagram, sigma: Sequence[int]) -> Diagram:
    """Collapse orbits of a diagram automorphism and recompute edges combinatorially."""
    n = len(extended.nodes)
    if sorted(sigma) != list(range(n)):
        raise DomainError("sigma is not a permutation of the vertex set")
    adj = {(u, v) for u, v, _, _ in extended.edges}
    adj |= {(v, u) for u, v in adj}
    for u, v, mult, orient in extended.edges:
        su, sv = sigma[u], sigma[v]
        pair = (min(su, sv), max(su, sv))
        if pair not in adj:
            raise DomainError("sigma is not a diagram automorphism")
    for i in range(n):
        if extended.nodes[sigma[i]].length2 != extended.nodes[i].length2:
            raise DomainError("sigma does not preserve vertex lengths")

    raw = permutation_orbits(sigma)

    def orbits_adjacent(o1: Tuple[int, ...], o2: Tuple[int, ...]) -> bool:
        return any((a, b) in adj for a in o1 for b in o2)

    orbits = walk_order(raw, orbits_adjacent)
    if len(orbits) == 1:
        return Diagram(nodes=(), edges=())

    lengths: List[Q] = []
    marks: List[Optional[int]] = []
    s0 = len(orbits[0])
    for orb in orbits:
        nmates = {sum(1 for t in orb if t != s and (s, t) in adj) for s in orb}
        if len(nmates) != 1:
            raise TheoremViolationError("orbit members have unequal in-orbit adjacency")
        nn = nmates.pop()
        if nn >= 2:
            raise TheoremViolationError("orbit with two in-orbit neighbors cannot fold")
        node_lengths = {extended.nodes[s].length2 for s in orb}
        if len(node_lengths) != 1:
            raise TheoremViolationError("lengths not constant on an orbit")
        lengths.append(Q(2 - nn, 2 * len(orb)) * node_lengths.pop())
        node_marks = {extended.nodes[s].mark for s in orb}
        if len(node_marks) != 1:
            raise TheoremViolationError("marks not constant on an orbit")
        mark = node_marks.pop()
        if mark is None:
            marks.append(None)
        else:
            m = Q(len(orb) * mark, s0)
            if m.denominator != 1:
                raise TheoremViolationError("non-integral folded mark")
            marks.append(int(m))

    r = len(orbits) - 1
    nodes = tuple(
        DiagramNode(index=k, name=f"w{k}", mark=marks[k], length2=lengths[k])
        for k in range(r + 1)
    )
    edges: List[Edge] = []
    for k1 in range(r + 1):
        for k2 in range(k1 + 1, r + 1):
            if orbits_adjacent(orbits[k1], orbits[k2]):
                # exactly two folded vertices means the pair is antipodal up to scale
                antiparallel = r == 1
                edges.append(
                    _edge_between(k1, k2, lengths[k1], lengths[k2], antiparallel)
                )
    return Diagram(nodes=nodes, edges=tuple(edges))


def assert_fold_consistent(
    extended: Diagram, sigma: Sequence[int], folded_vertices: Sequence[Vector],
    folded_marks: Optional[Sequence[int]] = None,
) -> Diagram:
    """Compare combinatorial folding with the metric diagram of the folded vertex set."""
    combinatorial = fold_diagram(extended, sigma)
    metric = build_diagram(list(folded_vertices), marks=folded_marks)
    if combinatorial.canonical() != metric.canonical():
        raise TheoremViolationError(
            "combinatorial and metric folded diagrams disagree: "
            f"{combinatorial.canonical()} vs {metric.canonical()}"
        )
    return combinatorial


# --- classification ----------------------------------------------------------


def _find_basis(roots: Set[Vector]) -> List[Vector]:
    dim = len(next(iter(roots)))
    t = 1
    while True:
        probe = tuple(Q(t) ** k for k in range(dim))
        if all(dot(b, probe) != 0 for b in roots):
            break
        t += 1
        if t > 10 * len(roots) + 10:
            raise ClassificationError("no regular probe functional found")
    positives = {b for b in roots if dot(b, probe) > 0}
    basis = [
        b
        for b in positives
        if not any(g != b and vsub(b, g) in positives for g in positives)
    ]
    return sorted(basis)


def identify_type(roots) -> TypeLabel:
    """Classify a root set by the shape of the diagram of its indecomposable positives."""
    rset = set(roots)
    if not rset:
        return TypeLabel("Empty", 0)
    basis = _find_basis(rset)
    rank = len(basis)
    if rank != matrix_rank(sorted(rset)):
        raise ClassificationError("basis size differs from the rank of the span")
    reduced = is_reduced(rset)
    if rank == 1:
        return TypeLabel("BC", 1) if not reduced else TypeLabel("A", 1)
    diagram = build_diagram(basis)
    # connectivity
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for k in diagram.neighbors(i):
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    if len(seen) != rank:
        raise ClassificationError("diagram is disconnected (reducible system)")
    if len(diagram.edges) != rank - 1:
        raise ClassificationError("diagram of a basis must be a tree")

    mults = sorted((m for _, _, m, _ in diagram.edges), reverse=True)
    if mults and mults[0] == 3:
        if rank == 2 and reduced and mults == [3]:
            return TypeLabel("G", 2)
        raise ClassificationError("triple edge outside rank 2")
    if mults and mults[0] == 2:
        doubles = [e for e in diagram.edges if e[2] == 2]
        if len(doubles) != 1:
            raise ClassificationError("more than one double edge")
        if any(diagram.degree(i) > 2 for i in range(rank)):
            raise ClassificationError("branch node combined with a double edge")
        u, v, _, orient = doubles[0]
        if rank == 2:
            return TypeLabel("BC", 2) if not reduced else TypeLabel("B", 2)
        du, dv = diagram.degree(u), diagram.degree(v)
        if du >= 2 and dv >= 2:
            if rank == 4 and reduced:
                return TypeLabel("F", 4)
            raise ClassificationError("interior double edge outside rank 4")
        shorter = v if orient == 1 else u
        terminal = u if du == 1 else v
        if shorter == terminal:
            return TypeLabel("BC", rank) if not reduced else TypeLabel("B", rank)
        if not reduced:
            raise ClassificationError("non-reduced system with a long terminal short arrow")
        return TypeLabel("C", rank)
    # simply laced
    if not reduced:
        raise ClassificationError("non-reduced simply-laced set")
    branch_nodes = [i for i in range(rank) if diagram.degree(i) >= 3]
    if not branch_nodes:
        return TypeLabel("A", rank)
    if len(branch_nodes) > 1 or diagram.degree(branch_nodes[0]) != 3:
        raise ClassificationError("unclassifiable branch structure")
    center = branch_nodes[0]
    arms = []
    for start in diagram.neighbors(center):
        length = 1
        prev, cur = center, start
        while diagram.degree(cur) == 2:
            nxt = next(k for k in diagram.neighbors(cur) if k != prev)
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return TypeLabel("D", rank)
    if arms == [1, 2, 2]:
        return TypeLabel("E", 6)
    if arms == [1, 2, 3]:
        return TypeLabel("E", 7)
    if arms == [1, 2, 4]:
        return TypeLabel("E", 8)
    raise ClassificationError(f"unclassifiable arm lengths {arms}")


# --- rendering ---------------------------------------------------------------


def _edge_token(mult: int, orient: int) -> str:
    if mult == 1:
        return "---"
    if orient == 0:
        return f"={mult}="
    return f"={mult}>" if orient == 1 else f"<{mult}="


def render(diagram: Diagram, fmt: str = "ascii") -> str:
    """Deterministic DOT or ASCII text for a diagram."""
    if fmt == "dot":
        lines = ["graph diagram {"]
        for node in diagram.nodes:
            mark = "" if node.mark is None else f" ({node.mark})"
            lines.append(f'  n{node.index} [label="{node.name}{mark}"];')
        for u, v, mult, orient in sorted(diagram.edges):
            for _ in range(mult):
                if orient == 0:
                    attr = ' [arrowhead=none]'
                elif orient == 1:
                    attr = ' [arrowhead=normal]'
                else:
                    attr = ' [arrowhead=none, arrowtail=normal, dir=back]'
                lines.append(f"  n{u} -- n{v}{attr};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt != "ascii":
        raise DomainError(f"unknown render format {fmt!r}")
    if not diagram.nodes:
        return "(empty diagram)\n"

    def tag(i: int) -> str:
        node = diagram.nodes[i]
        mark = "" if node.mark is None else f"({node.mark})"
        return f"{node.name}{mark}"

    header = "nodes: " + " ".join(tag(n.index) for n in diagram.nodes)
    lines = [header]
    for u, v, mult, orient in sorted(diagram.edges):
        lines.append(f"{tag(u)} {_edge_token(mult, orient)} {tag(v)}")
    return "\n".join(lines) + "\n"
