"""Chordless cycles, inner and outer arrows, and counting formulas built on them.

The formulas here are proven for quivers of representation-finite
cluster-tilted algebras. Elsewhere the arithmetic still runs, but the numbers
carry no guarantee.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import networkx as nx

from .quiver import Element, PathWord, Quiver, QuiverError
from .rewriting import Presentation, complete_rewriting


class UnknownPoint(QuiverError):
    pass


class FormulaMismatch(RuntimeError):
    pass


@dataclass(frozen=True)
class ChordlessCycle:
    points: tuple[str, ...]  # cyclic order, least point first
    arrows: tuple[str, ...]  # arrows between consecutive points, same order
    oriented: bool

    def __len__(self) -> int:
        return len(self.points)


def _as_quiver(q) -> Quiver:
    return q.quiver if isinstance(q, Presentation) else q


def _edge_arrows(q: Quiver) -> dict[frozenset, list]:
    edges: dict[frozenset, list] = {}
    for a in q.arrows:
        if a.source != a.target:
            edges.setdefault(frozenset((a.source, a.target)), []).append(a)
    return edges


def _make_cycle(q: Quiver, pts: list[str], edges) -> ChordlessCycle | None:
    arrs = []
    forward = backward = True
    for u, v in zip(pts, pts[1:] + pts[:1]):
        (a,) = edges[frozenset((u, v))]
        arrs.append(a.name)
        forward &= a.source == u
        backward &= a.source == v
    return ChordlessCycle(tuple(pts), tuple(arrs), forward or backward)


def chordless_cycles(q: Quiver | Presentation) -> list[ChordlessCycle]:
    """All induced cycles of the underlying graph, with loops ignored.

    A pair of points joined by exactly two opposite arrows counts as a cycle
    of length two; consecutive points of longer cycles must be joined by a
    single arrow.
    """
    q = _as_quiver(q)
    order = {x: i for i, x in enumerate(q.points)}
    edges = _edge_arrows(q)
    nbrs: dict[str, set] = {x: set() for x in q.points}
    for e in edges:
        u, v = tuple(e)
        nbrs[u].add(v)
        nbrs[v].add(u)
    found: dict[tuple, ChordlessCycle] = {}
    for e, arrs in edges.items():
        if len(arrs) == 2 and arrs[0].source == arrs[1].target:
            u, v = sorted(e, key=order.get)
            a, b = (arrs if arrs[0].source == u else arrs[::-1])
            found[(u, v)] = ChordlessCycle((u, v), (a.name, b.name), True)

    def simple(u, v):
        return len(edges[frozenset((u, v))]) == 1

    for start in q.points:
        lo = order[start]
        # depth-first growth of induced paths whose points all exceed ``start``
        stack = [[start, v] for v in nbrs[start] if order[v] > lo and simple(start, v)]
        while stack:
            path = stack.pop()
            last = path[-1]
            inner = set(path[1:-1])
            for w in nbrs[last]:
                if order[w] <= lo or w in path or not simple(last, w):
                    continue
                if nbrs[w] & inner:
                    continue
                if start in nbrs[w]:
                    if simple(w, start):
                        cyc = path + [w]
                        if order[cyc[1]] > order[cyc[-1]]:
                            cyc = [cyc[0]] + cyc[1:][::-1]
                        key = tuple(cyc)
                        if key not in found:
                            found[key] = _make_cycle(q, cyc, edges)
                    continue
                stack.append(path + [w])
    return sorted(found.values(), key=lambda c: (len(c), [order[x] for x in c.points]))


def has_two_cycles(q: Quiver | Presentation) -> bool:
    return any(len(c) == 2 for c in chordless_cycles(q))


def classify_arrows(q: Quiver | Presentation) -> tuple[set[str], set[str]]:
    """(inner, outer): inner arrows lie on at least two chordless cycles."""
    q = _as_quiver(q)
    count = Counter(a for c in chordless_cycles(q) for a in c.arrows)
    inner = {a for a, n in count.items() if n >= 2}
    outer = {a.name for a in q.arrows} - inner
    return inner, outer


def n_B_theorem(q: Quiver | Presentation) -> int:
    inner, _ = classify_arrows(q)
    return len(chordless_cycles(q)) - len(inner)


def connected_components(q: Quiver | Presentation) -> int:
    q = _as_quiver(q)
    g = nx.Graph()
    g.add_nodes_from(q.points)
    g.add_edges_from(q.underlying_edges())
    return nx.number_connected_components(g)


def n_B_euler(q: Quiver | Presentation) -> int:
    q = _as_quiver(q)
    _, outer = classify_arrows(q)
    return connected_components(q) + len(outer) - len(q.points)


def delete_point(B: Presentation, x: str) -> Presentation:
    """Presentation of ``B / B e_x B``: drop ``x``, its arrows and every relation term through it."""
    q = B.quiver
    if x not in q.points:
        raise UnknownPoint(f"unknown point {x!r}")
    gone = {a.name for a in q.arrows if x in (a.source, a.target)}
    quiver = Quiver(tuple(p for p in q.points if p != x),
                    tuple(a for a in q.arrows if a.name not in gone), q.name)
    rels = []
    for rho in B.relations:
        kept = Element({w: c for w, c in rho if not gone & set(w.arrows)})
        if kept:
            rels.append(kept)
    return complete_rewriting(rels, quiver, max_rules=B.max_rules, max_path_len=B.max_path_len)


def delete_point_quiver(q: Quiver, x: str) -> Quiver:
    if x not in q.points:
        raise UnknownPoint(f"unknown point {x!r}")
    return Quiver(tuple(p for p in q.points if p != x),
                  tuple(a for a in q.arrows if x not in (a.source, a.target)), q.name)


def local_degree(q: Quiver | Presentation, x: str) -> int:
    """Cycles through ``x`` minus inner arrows lying on those cycles."""
    q = _as_quiver(q)
    inner, _ = classify_arrows(q)
    through = [c for c in chordless_cycles(q) if x in c.points]
    on_them = {a for c in through for a in c.arrows} & inner
    return len(through) - len(on_them)


def hochschild_degree(B: Quiver | Presentation, x: str) -> int:
    """Degree of ``x`` by deletion and by the local count; they must agree."""
    q = _as_quiver(B)
    by_deletion = n_B_theorem(q) - n_B_theorem(delete_point_quiver(q, x))
    by_count = local_degree(q, x)
    if by_deletion != by_count:
        raise FormulaMismatch(f"point {x}: deletion gives {by_deletion}, local count gives {by_count}")
    return by_count


@dataclass
class CycleReport:
    cycles: list[ChordlessCycle]
    inner: set[str]
    outer: set[str]
    n_theorem: int
    n_euler: int
    incidence: dict[str, int] = field(default_factory=dict)
    degrees: dict[str, int | None] = field(default_factory=dict)

    @classmethod
    def of(cls, q: Quiver | Presentation) -> "CycleReport":
        q = _as_quiver(q)
        cycles = chordless_cycles(q)
        inner, outer = classify_arrows(q)
        incidence = {x: sum(x in c.points for c in cycles) for x in q.points}
        degrees: dict[str, int | None] = {}
        for x in q.points:
            try:
                degrees[x] = hochschild_degree(q, x)
            except FormulaMismatch:
                degrees[x] = None
        return cls(cycles, inner, outer, n_B_theorem(q), n_B_euler(q), incidence, degrees)
