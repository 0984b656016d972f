"""Equivalence classes of new arrows and the relation invariant.

Two new arrows are linked when they occur in the same strongly minimal
relation of the extended algebra; the invariant counts the classes of the
transitive closure of that link.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from networkx.utils import UnionFind

from .quiver import Element, PathWord, Quiver
from .relations import FamilyTooLarge, ParallelFamily, circuits
from .rewriting import Presentation

DEFAULT_WORD_CAP = 4096


class Lemma31Violation(ValueError):
    """A strongly minimal relation has a term without exactly one new arrow."""


def nonzero_paths(p: Presentation):
    """Nonzero paths of length >= 2 grouped by endpoints, plus the minimal zero paths."""
    q = p.quiver
    bound = p.nilpotency_index
    out: dict[str, list] = {x: q.arrows_from(x) for x in q.points}
    groups: dict[tuple[str, str], list[PathWord]] = {}
    zeros: list[PathWord] = []
    stack = [PathWord(a.source, a.target, (a.name,)) for a in q.arrows]
    while stack:
        w = stack.pop()
        for a in out[w.target]:
            wa = PathWord(w.source, a.target, w.arrows + (a.name,))
            if not p.normal_form(wa):
                tail = PathWord(q.arrow(wa.arrows[1]).source, wa.target, wa.arrows[1:])
                if p.normal_form(tail):
                    zeros.append(wa)
                continue
            groups.setdefault((wa.source, wa.target), []).append(wa)
            if len(wa) + 1 < bound:
                stack.append(wa)
    for ws in groups.values():
        ws.sort(key=p.key)
    zeros.sort(key=p.key)
    return groups, zeros


def strongly_minimal_relations(B: Presentation, word_cap: int = DEFAULT_WORD_CAP) -> list[Element]:
    """Monomial zero relations followed by one witness per circuit of each parallel family.

    Every strongly minimal relation of the algebra has, up to scalar, the
    support of one of the returned elements.
    """
    groups, zeros = nonzero_paths(B)
    rels = [Element.path(w) for w in zeros]
    for ends in sorted(groups, key=lambda e: (B.quiver.points.index(e[0]), B.quiver.points.index(e[1]))):
        words = groups[ends]
        if len(words) < 2:
            continue
        if len(words) > word_cap:
            raise FamilyTooLarge(f"{len(words)} parallel paths from {ends[0]} to {ends[1]}")
        fam = ParallelFamily.build(B, words)
        rels.extend(c.element(fam) for c in circuits(fam))
    return rels


def new_arrows_in(q: Quiver, w: PathWord) -> list[str]:
    return [a for a in w.arrows if q.arrow(a).is_new]


@dataclass(frozen=True)
class ArrowPartition:
    classes: tuple[frozenset[str], ...]
    witnesses: tuple[Element, ...] = ()  # relations that performed merges

    def __len__(self) -> int:
        return len(self.classes)

    def representative(self, arrow: str) -> str:
        for c in self.classes:
            if arrow in c:
                return min(c)
        raise KeyError(arrow)

    def as_lists(self) -> list[list[str]]:
        return [sorted(c) for c in self.classes]


def arrow_equivalence_classes(B: Presentation, relations: Sequence[Element] | None = None) -> ArrowPartition:
    q = B.quiver
    if relations is None:
        relations = strongly_minimal_relations(B)
    uf = UnionFind(a.name for a in q.new_arrows)
    witnesses = []
    for rho in relations:
        if len(rho) < 2:
            continue
        found = [new_arrows_in(q, w) for w in rho.words]
        if not any(found):
            continue  # a relation of the old algebra
        if any(len(f) != 1 for f in found):
            raise Lemma31Violation(f"term of {rho} does not contain exactly one new arrow")
        arrows = [f[0] for f in found]
        if len({uf[a] for a in arrows}) > 1:
            witnesses.append(rho)
        uf.union(*arrows)
    classes = sorted((frozenset(s) for s in uf.to_sets()), key=min)
    return ArrowPartition(tuple(classes), tuple(witnesses))


def relation_invariant(B: Presentation) -> int:
    return len(arrow_equivalence_classes(B))
