"""Minimal and strongly minimal relations.

A relation ``sum a_i w_i`` is strongly minimal when its support is a circuit
of the normal-form vectors of its paths: the only way to kill it inside the
ideal is with every coefficient nonzero. Circuits are the minimal supports of
kernel vectors ("elementary vectors") of the family's coordinate matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from . import linalg
from .quiver import Element, PathWord
from .rewriting import Presentation, complete_rewriting


class NotARelation(ValueError):
    pass


class NotAGeneratingSet(ValueError):
    pass


class FamilyTooLarge(RuntimeError):
    pass


MAX_ELEMENTARY_SUBSETS = 2_000_000


@dataclass(frozen=True)
class ParallelFamily:
    source: str
    target: str
    words: tuple[PathWord, ...]
    columns: tuple[PathWord, ...]
    matrix: tuple[tuple[Fraction, ...], ...]  # one row per word, over ``columns``

    @classmethod
    def build(cls, p: Presentation, words: Sequence[PathWord]) -> "ParallelFamily":
        words = tuple(words)
        if len(set(words)) != len(words):
            raise ValueError("family words must be distinct")
        ends = {(w.source, w.target) for w in words}
        if len(ends) > 1:
            raise ValueError("family words must be parallel")
        nfs = [p.normal_form(w) for w in words]
        for w, nf in zip(words, nfs):
            if len(w) < 2:
                raise ValueError(f"family word {w} has length < 2")
            if not nf:
                raise ValueError(f"family word {w} lies in the ideal")
        cols = sorted({x for nf in nfs for x in nf.words}, key=p.key)
        idx = {x: i for i, x in enumerate(cols)}
        rows = []
        for nf in nfs:
            row = [Fraction(0)] * len(cols)
            for x, c in nf:
                row[idx[x]] = c
            rows.append(tuple(row))
        s, t = ends.pop() if ends else ("", "")
        return cls(s, t, words, tuple(cols), tuple(rows))

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class Circuit:
    support: tuple[int, ...]
    witness: tuple[Fraction, ...]  # aligned with ``support``

    def element(self, family: ParallelFamily) -> Element:
        return Element({family.words[i]: c for i, c in zip(self.support, self.witness)})


def _kernel(family: ParallelFamily) -> list[list[Fraction]]:
    """Basis of ``{x : sum_i x_i row_i = 0}``."""
    m = len(family.words)
    if m == 0:
        return []
    ncols = len(family.columns)
    # equations: one per column, unknowns = word coefficients
    eqs = [[family.matrix[i][j] for i in range(m)] for j in range(ncols)]
    return linalg.nullspace(eqs, m)


def circuits(family: ParallelFamily) -> list[Circuit]:
    """All circuits of the family, each with a witness normalized to leading coefficient 1.

    A kernel vector with minimal support is pinned down (up to scale) by
    vanishing on ``dim K - 1`` well-chosen coordinates, so every circuit shows
    up while scanning those coordinate subsets.
    """
    kernel = _kernel(family)
    d = len(kernel)
    m = len(family.words)
    if d == 0:
        return []
    if comb(m, d - 1) > MAX_ELEMENTARY_SUBSETS:
        raise FamilyTooLarge(f"family of {m} words with {d}-dimensional kernel")
    found: dict[tuple[int, ...], Circuit] = {}
    for zeros in combinations(range(m), d - 1):
        # combinations lambda of kernel rows with (lambda K)_z = 0 for z in zeros
        eqs = [[kernel[r][z] for r in range(d)] for z in zeros]
        sol = linalg.nullspace(eqs, d)
        if len(sol) != 1:
            continue
        lam = sol[0]
        vec = [sum((lam[r] * kernel[r][i] for r in range(d)), Fraction(0)) for i in range(m)]
        support = tuple(i for i, c in enumerate(vec) if c)
        if not support or support in found:
            continue
        lead = vec[support[0]]
        found[support] = Circuit(support, tuple(vec[i] / lead for i in support))
    return [found[s] for s in sorted(found, key=lambda s: (len(s), s))]


def ordered_terms(p: Presentation, rho: Element) -> list[tuple[PathWord, Fraction]]:
    """Terms of ``rho`` from the largest path down (the leading path comes first)."""
    return sorted(rho, key=lambda t: p.key(t[0]), reverse=True)


def _require_relation(p: Presentation, rho: Element) -> None:
    if not rho or p.normal_form(rho):
        raise NotARelation(f"{rho} is not in the ideal")


def is_minimal(p: Presentation, rho: Element) -> bool:
    _require_relation(p, rho)
    terms = ordered_terms(p, rho)
    m = len(terms)
    for k in range(1, m):
        for sub in combinations(terms, k):
            if not p.normal_form(Element(sub)):
                return False
    return True


def is_strongly_minimal(p: Presentation, rho: Element) -> bool:
    _require_relation(p, rho)
    terms = ordered_terms(p, rho)
    if len(terms) == 1:
        return True
    words = [w for w, _ in terms]
    if any(not p.normal_form(w) for w in words):
        return False
    family = ParallelFamily.build(p, words)
    full = tuple(range(len(words)))
    return any(c.support == full for c in circuits(family))


def _proper_circuit(p: Presentation, words: list[PathWord]) -> tuple[tuple[int, ...], list[Fraction]]:
    """A strongly minimal relation supported on a proper subset of ``words``."""
    for i, w in enumerate(words):
        if not p.normal_form(w):
            return (i,), [Fraction(1)]
    family = ParallelFamily.build(p, words)
    cs = [c for c in circuits(family) if len(c.support) < len(words)]
    if not cs:
        raise AssertionError("relation is not strongly minimal but no proper circuit exists")
    # prefer a circuit through the first word, then the smallest support
    cs.sort(key=lambda c: (0 not in c.support, c.support))
    c = cs[0]
    return c.support, list(c.witness)


def strengthen_relation(p: Presentation, rho: Element) -> Element:
    """A strongly minimal relation on a subset of ``rho``'s support keeping its leading coefficient."""
    _require_relation(p, rho)
    if is_strongly_minimal(p, rho):
        return rho
    terms = ordered_terms(p, rho)
    words = [w for w, _ in terms]
    coeffs = [c for _, c in terms]
    support, beta = _proper_circuit(p, words)
    if 0 in support:
        scale = coeffs[0] / beta[support.index(0)]
        return Element({words[i]: scale * b for i, b in zip(support, beta)})
    s = support[0]
    rho1 = Element({words[i]: b for i, b in zip(support, beta)})
    reduced = rho - rho1.scale(coeffs[s] / beta[0])
    return strengthen_relation(p, reduced)


def strengthen_system(p: Presentation, relations: Sequence[Element]) -> list[Element]:
    """Replace a system of relations by strongly minimal ones generating the same ideal."""
    relations = list(relations)
    for rho in relations:
        _require_relation(p, rho)
    out = _strengthen(p, list(enumerate(relations)))
    result = [rho for _, rho in sorted(out, key=lambda t: t[0])]
    check = complete_rewriting(result, p.quiver, max_rules=p.max_rules,
                               max_path_len=p.max_path_len, require_finite=False)
    if any(check.normal_form(rho) for rho in relations) or any(p.normal_form(r) for r in result):
        raise NotAGeneratingSet("strengthened system generates a different ideal")
    if not all(is_strongly_minimal(p, r) for r in result):
        raise NotAGeneratingSet("input is not a minimal generating system")
    return result


def _strengthen(p: Presentation, indexed: list[tuple[int, Element]]) -> list[tuple[int, Element]]:
    if not indexed:
        return []
    if len(indexed) == 1:
        i, rho = indexed[0]
        return [(i, strengthen_relation(p, rho))]
    # pivot on a path of maximal length (ties: largest in the term order)
    words = {w for _, rho in indexed for w in rho.words}
    w1 = max(words, key=p.key)
    k = next(j for j, (_, rho) in enumerate(indexed) if rho.coefficient(w1))
    i1, rho1 = indexed[k]
    lam11 = rho1.coefficient(w1)
    rest = []
    for j, (i, rho) in enumerate(indexed):
        if j == k:
            continue
        tilde = rho - rho1.scale(rho.coefficient(w1) / lam11)
        if not tilde:
            raise NotAGeneratingSet("a relation is a multiple of another")
        rest.append((i, tilde))
    first = strengthen_relation(p, rho1)
    sub = complete_rewriting([r for _, r in rest], p.quiver, max_rules=p.max_rules,
                             max_path_len=p.max_path_len, require_finite=False)
    return [(i1, first)] + _strengthen(sub, rest)
