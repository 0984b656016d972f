"""First Hochschild cohomology by brute-force linear algebra.

A normalized derivation is fixed by its values on arrows, each value lying in
the span of basis paths parallel to the arrow. Requiring the Leibniz
extension to kill every defining relation cuts out the derivation space;
inner derivations come from elements ``c`` commuting with the idempotents.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .equivalence import relation_invariant
from .quiver import Element, PathWord
from .rewriting import Presentation


class NotADerivation(ValueError):
    pass


@dataclass(frozen=True)
class Derivation:
    """Values on arrows; idempotents are sent to zero."""

    values: Mapping[str, Element]

    def value(self, arrow: str) -> Element:
        return self.values.get(arrow, Element())

    def on_word(self, p: Presentation, w: PathWord) -> Element:
        out = Element()
        arrs = w.arrows
        q = p.quiver
        for i, a in enumerate(arrs):
            d = self.value(a)
            if not d:
                continue
            left = PathWord(w.source, q.arrow(a).source, arrs[:i])
            right = PathWord(q.arrow(a).target, w.target, arrs[i + 1:])
            out = out + Element.path(left) * d * Element.path(right)
        return p.normal_form(out)

    def apply(self, p: Presentation, e: Element | PathWord) -> Element:
        if isinstance(e, PathWord):
            return self.on_word(p, e)
        out = Element()
        for w, c in e:
            out = out + self.on_word(p, w).scale(c)
        return p.normal_form(out)

    def is_derivation(self, p: Presentation) -> bool:
        for a, v in self.values.items():
            arr = p.quiver.arrow(a)
            if any((w.source, w.target) != (arr.source, arr.target) for w in v.words):
                return False
        return all(not self.apply(p, r) for r in p.relations)

    def coordinates(self, p: Presentation) -> list[Fraction]:
        return _derivation_coords(p, _unknowns(p), self)

    def __bool__(self) -> bool:
        return any(self.values.values())


def _unknowns(p: Presentation) -> list[tuple[str, PathWord]]:
    out = []
    for a in p.quiver.arrows:
        if a.source == a.target:
            warnings.warn(f"loop {a.name}: its value may include the idempotent at {a.source}")
        out.extend((a.name, w) for w in p.parallel_basis(a.source, a.target))
    return out


def _derivation_coords(p: Presentation, unknowns, d: Derivation) -> list[Fraction]:
    nf = {a.name: p.normal_form(d.value(a.name)) for a in p.quiver.arrows}
    return [nf[a].coefficient(w) for a, w in unknowns]


def _from_vector(p: Presentation, unknowns, vec: Sequence[Fraction]) -> Derivation:
    vals: dict[str, dict] = {a.name: {} for a in p.quiver.arrows}
    for (a, w), c in zip(unknowns, vec):
        if c:
            vals[a][w] = c
    return Derivation({a: Element(v) for a, v in vals.items()})


def der0_basis(p: Presentation) -> list[Derivation]:
    unknowns = _unknowns(p)
    if not unknowns:
        return []
    # column k: Leibniz images of every relation when only unknown k is switched on
    cols: list[dict[tuple[int, int], Fraction]] = []
    for a, w in unknowns:
        col: dict[tuple[int, int], Fraction] = {}
        single = Derivation({a: Element.path(w)})
        for r_idx, r in enumerate(p.relations):
            if not any(a in t.arrows for t in r.words):
                continue
            for b, c in single.apply(p, r):
                col[(r_idx, p.basis_index(b))] = c
        cols.append(col)
    keys = sorted({k for col in cols for k in col})
    rows = [[col.get(k, Fraction(0)) for col in cols] for k in keys]
    sol = linalg.nullspace(rows, len(unknowns))
    return [_from_vector(p, unknowns, v) for v in sol]


def inner_derivation(p: Presentation, c: Element) -> Derivation:
    vals = {}
    for a in p.quiver.arrows:
        w = PathWord(a.source, a.target, (a.name,))
        vals[a.name] = p.normal_form(c * w - Element.path(w) * c)
    return Derivation(vals)


def diagonal_basis(p: Presentation) -> list[PathWord]:
    """Basis paths that start and end at the same point (idempotents included)."""
    return [w for w in p.basis if w.source == w.target]


def int0_basis(p: Presentation) -> list[Derivation]:
    unknowns = _unknowns(p)
    if not unknowns:
        return []
    vecs = [_derivation_coords(p, unknowns, inner_derivation(p, Element.path(c)))
            for c in diagonal_basis(p)]
    vecs = [v for v in vecs if any(v)]
    if not vecs:
        return []
    red, _ = linalg.rref(vecs, len(unknowns))
    return [_from_vector(p, unknowns, v) for v in red]


@dataclass(frozen=True)
class DerivationSpace:
    der0: tuple[Derivation, ...]
    int0: tuple[Derivation, ...]

    @property
    def dims(self) -> tuple[int, int, int]:
        return len(self.der0), len(self.int0), len(self.der0) - len(self.int0)


def derivation_space(p: Presentation) -> DerivationSpace:
    return DerivationSpace(tuple(der0_basis(p)), tuple(int0_basis(p)))


def hh1_dimension(p: Presentation) -> int:
    return len(der0_basis(p)) - len(int0_basis(p))


def project_derivation(B: Presentation, C: Presentation, d: Derivation) -> Derivation:
    """Restrict to old arrows, discard paths through new arrows, and reduce in ``C``."""
    qb = B.quiver
    vals = {}
    for a in C.quiver.arrows:
        v = B.normal_form(d.value(a.name))
        kept = Element({w: c for w, c in v if not any(qb.arrow(x).is_new for x in w.arrows)})
        vals[a.name] = C.normal_form(kept)
    out = Derivation(vals)
    if not out.is_derivation(C):
        raise NotADerivation("projected map violates a relation of the smaller algebra")
    return out


def is_constrained(C: Presentation, R: Sequence[Element]) -> bool:
    """Every relation is monomial or joins points with one-dimensional ``e_x C e_y``."""
    for rho in R:
        if rho.is_monomial:
            continue
        x, y = rho.endpoints
        if len(C.parallel_basis(x, y)) != 1:
            return False
    return True


@dataclass(frozen=True)
class ExactSequenceReport:
    hh1_big: int
    hh1_small: int
    invariant: int
    consistent: bool

    def as_tuple(self) -> tuple[int, int, int, bool]:
        return self.hh1_big, self.hh1_small, self.invariant, self.consistent


def check_exact_sequence(B: Presentation, C: Presentation) -> ExactSequenceReport:
    hb, hc, n = hh1_dimension(B), hh1_dimension(C), relation_invariant(B)
    return ExactSequenceReport(hb, hc, n, hb == hc + n)
