"""Rewriting systems for admissible ideals of path algebras.

``complete_rewriting`` runs a Buchberger-style completion over the path
algebra with the length-then-lexicographic term order (arrow rank = input
order). The result is a :class:`Presentation` whose rules rewrite a leading
path into a combination of smaller paths; a path is a basis word of the
quotient iff no rule's leading path occurs in it.
"""

from __future__ import annotations

import logging
from collections import deque
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .quiver import Element, PathWord, Quiver, QuiverError, compose

log = logging.getLogger(__name__)

DEFAULT_MAX_RULES = 10_000
DEFAULT_MAX_PATH_LEN = 64
DEFAULT_MAX_BASIS = 50_000


class CompletionOverflow(RuntimeError):
    """The rule count exceeded the configured cap."""


class NotFiniteDimensional(RuntimeError):
    """Nonzero paths keep appearing beyond the path-length cap."""


class NotAdmissible(QuiverError):
    """A relation has a term of length < 2, foreign arrows, or non-parallel terms."""


def validate_relation(quiver: Quiver, rho: Element) -> None:
    if not rho:
        raise NotAdmissible("zero relation")
    if not rho.is_parallel:
        raise NotAdmissible(f"relation {rho} has terms with different endpoints")
    for w in rho.words:
        if len(w) < 2:
            raise NotAdmissible(f"relation term {w} has length < 2")
        quiver.path(*w.arrows)


class Presentation:
    """A completed bound quiver ``kQ/I``.

    Instances are treated as immutable; the only mutable state is an internal
    memo of word normal forms, which never changes observable results.
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Element], rules: dict,
                 *, max_rules: int, max_path_len: int, require_finite: bool = True):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.max_rules = max_rules
        self.max_path_len = max_path_len
        self._rank = {a.name: i for i, a in enumerate(quiver.arrows)}
        self._rules: dict[tuple[str, ...], Element] = rules
        self._lead_lengths = sorted({len(k) for k in rules})
        self._nf_cache: dict[PathWord, Element] = {}
        self._basis: tuple[PathWord, ...] | None = None
        self._nilpotency: int | None = None
        if require_finite:
            self._enumerate_basis()

    # -- ordering and reduction -------------------------------------------------

    def key(self, w: PathWord):
        return (len(w), tuple(self._rank[a] for a in w.arrows))

    @property
    def rules(self) -> dict[PathWord, Element]:
        out = {}
        for lead, tail in self._rules.items():
            a0, a1 = self.quiver.arrow(lead[0]), self.quiver.arrow(lead[-1])
            out[PathWord(a0.source, a1.target, lead)] = tail
        return out

    def _find_lead(self, arrows: tuple[str, ...]):
        n = len(arrows)
        for i in range(n):
            for L in self._lead_lengths:
                if i + L > n:
                    break
                sub = arrows[i:i + L]
                if sub in self._rules:
                    return i, sub
        return None

    def is_irreducible(self, w: PathWord) -> bool:
        return self._find_lead(w.arrows) is None

    def _nf_word(self, w: PathWord) -> Element:
        hit = self._nf_cache.get(w)
        if hit is not None:
            return hit
        found = self._find_lead(w.arrows)
        if found is None:
            res = Element.path(w)
        else:
            i, lead = found
            u, v = w.arrows[:i], w.arrows[i + len(lead):]
            acc: dict[PathWord, Fraction] = {}
            for t, c in self._rules[lead]:
                tw = PathWord(w.source, w.target, u + t.arrows + v)
                for x, d in self._nf_word(tw):
                    acc[x] = acc.get(x, 0) + c * d
            res = Element(acc)
        self._nf_cache[w] = res
        return res

    def normal_form(self, e: Element | PathWord) -> Element:
        if isinstance(e, PathWord):
            return self._nf_word(e)
        acc: dict[PathWord, Fraction] = {}
        for w, c in e:
            for x, d in self._nf_word(w):
                acc[x] = acc.get(x, 0) + c * d
        return Element(acc)

    def in_ideal(self, e: Element) -> bool:
        return not self.normal_form(e)

    def multiply(self, a: Element | PathWord, b: Element | PathWord) -> Element:
        if isinstance(a, PathWord):
            a = Element.path(a)
        return self.normal_form(a * b)

    # -- basis ---------------------------------------------------------------------

    def _enumerate_basis(self) -> None:
        q = self.quiver
        out_arrows = {p: q.arrows_from(p) for p in q.points}
        level = [q.idempotent(p) for p in q.points]
        basis = list(level)
        length = 0
        while level:
            length += 1
            if length > self.max_path_len:
                raise NotFiniteDimensional(
                    f"irreducible paths of length > {self.max_path_len}; quotient is not finite dimensional")
            nxt = []
            for w in level:
                for a in out_arrows[w.target]:
                    wa = compose(w, PathWord(a.source, a.target, (a.name,)))
                    if self._suffix_irreducible(wa.arrows):
                        nxt.append(wa)
            basis.extend(nxt)
            if len(basis) > DEFAULT_MAX_BASIS:
                raise NotFiniteDimensional(
                    f"more than {DEFAULT_MAX_BASIS} irreducible paths; quotient is too large or infinite")
            level = nxt
        self._basis = tuple(basis)
        self._index = {w: i for i, w in enumerate(self._basis)}
        self._nilpotency = self._compute_nilpotency()

    def _suffix_irreducible(self, arrows: tuple[str, ...]) -> bool:
        n = len(arrows)
        for L in self._lead_lengths:
            if L > n:
                break
            if arrows[n - L:] in self._rules:
                return False
        return True

    def _compute_nilpotency(self) -> int:
        arrows = [PathWord(a.source, a.target, (a.name,)) for a in self.quiver.arrows]
        if not arrows:
            return 1
        n = len(self._basis)
        current = [self.normal_form(a) for a in arrows]
        current = self._independent(current, n)
        length = 1
        while current:
            length += 1
            if length > self.max_path_len + 1:
                raise NotFiniteDimensional("radical is not nilpotent within the path-length cap")
            nxt = []
            for e in current:
                tgt = {w.target for w in e.words}
                for a in arrows:
                    if a.source in tgt:
                        nxt.append(self.multiply(e, a))
            current = self._independent(nxt, n)
        return length

    def _independent(self, elems: list[Element], n: int) -> list[Element]:
        elems = [e for e in elems if e]
        if not elems:
            return []
        rows = [self.coordinates(e) for e in elems]
        red, _ = linalg.rref(rows, n)
        return [self.from_coordinates(r) for r in red]

    @property
    def basis(self) -> tuple[PathWord, ...]:
        if self._basis is None:
            self._enumerate_basis()
        return self._basis

    @property
    def nilpotency_index(self) -> int:
        self.basis
        return self._nilpotency

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def basis_index(self, w: PathWord) -> int:
        self.basis
        return self._index[w]

    def parallel_basis(self, x: str, y: str) -> list[PathWord]:
        return [w for w in self.basis if w.source == x and w.target == y]

    def coordinates(self, e: Element) -> list[Fraction]:
        """Dense coordinates of ``NF(e)`` in :attr:`basis`."""
        vec = [Fraction(0)] * len(self.basis)
        for w, c in self.normal_form(e):
            vec[self._index[w]] = c
        return vec

    def from_coordinates(self, vec: Sequence) -> Element:
        return Element({self._basis[i]: c for i, c in enumerate(vec) if c})

    def __repr__(self) -> str:
        return (f"Presentation({len(self.quiver.points)} points, {len(self.quiver.arrows)} arrows, "
                f"{len(self.relations)} relations, {len(self._rules)} rules)")


def _monic(p: Element, key) -> tuple[PathWord, Element]:
    lead = max(p.words, key=key)
    c = p.coefficient(lead)
    tail = Element({w: -v / c for w, v in p if w != lead})
    return lead, tail


def _contains(big: tuple, small: tuple) -> bool:
    n, m = len(big), len(small)
    return any(big[i:i + m] == small for i in range(n - m + 1))


def _overlaps(f: tuple, g: tuple):
    """Yield ``(u, v)`` with ``f = u s``, ``g = s v`` and ``u``, ``s``, ``v`` nonempty."""
    for k in range(1, min(len(f), len(g))):
        if f[len(f) - k:] == g[:k]:
            yield f[:len(f) - k], g[k:]


def _word(quiver: Quiver, arrows: tuple[str, ...]) -> PathWord:
    return PathWord(quiver.arrow(arrows[0]).source, quiver.arrow(arrows[-1]).target, arrows)


def complete_rewriting(relations: Iterable[Element], quiver: Quiver, *,
                       max_rules: int = DEFAULT_MAX_RULES,
                       max_path_len: int = DEFAULT_MAX_PATH_LEN,
                       require_finite: bool = True) -> Presentation:
    """Complete ``relations`` into a confluent rewriting system on ``quiver``.

    Raises :class:`CompletionOverflow` past ``max_rules`` rule insertions and
    :class:`NotFiniteDimensional` (when ``require_finite``) if irreducible paths
    longer than ``max_path_len`` exist.
    """
    relations = list(relations)
    for rho in relations:
        validate_relation(quiver, rho)
    rank = {a.name: i for i, a in enumerate(quiver.arrows)}

    def key(w: PathWord):
        return (len(w), tuple(rank[a] for a in w.arrows))

    rules: dict[tuple[str, ...], Element] = {}
    lengths: list[int] = []

    def reduce(p: Element) -> Element:
        acc = dict(p.terms)
        done: dict[PathWord, Fraction] = {}
        while acc:
            w = max(acc, key=key)
            c = acc.pop(w)
            hit = None
            arr = w.arrows
            for i in range(len(arr)):
                for L in lengths:
                    if i + L > len(arr):
                        break
                    if arr[i:i + L] in rules:
                        hit = (i, arr[i:i + L])
                        break
                if hit:
                    break
            if hit is None:
                done[w] = c
                continue
            i, lead = hit
            u, v = arr[:i], arr[i + len(lead):]
            for t, d in rules[lead]:
                tw = PathWord(w.source, w.target, u + t.arrows + v)
                nc = acc.get(tw, 0) + c * d
                if nc:
                    acc[tw] = nc
                else:
                    acc.pop(tw, None)
        return Element(done)

    queue = deque(relations)
    inserted = 0
    while queue:
        p = reduce(queue.popleft())
        if not p:
            continue
        lead, tail = _monic(p, key)
        inserted += 1
        if inserted > max_rules:
            raise CompletionOverflow(f"more than {max_rules} rewriting rules")
        if len(lead) > max_path_len:
            raise NotFiniteDimensional(f"rule with leading path longer than {max_path_len}")
        la = lead.arrows
        for old in [k for k in rules if _contains(k, la)]:
            queue.append(Element.path(_word(quiver, old)) - rules.pop(old))
        rules[la] = tail
        lengths[:] = sorted({len(k) for k in rules})
        for other, otail in list(rules.items()):
            pairs = [(la, tail, other, otail)]
            if other != la:
                pairs.append((other, otail, la, tail))
            for f, ft, g, gt in pairs:
                for u, v in _overlaps(f, g):
                    uw, vw = _word(quiver, u), _word(quiver, v)
                    # f = u s -> ft, g = s v -> gt; the S-element is u*gt - ft*v
                    queue.append(Element.path(uw) * gt - ft * vw)

    for k in list(rules):
        rules[k] = reduce(rules[k])
    log.debug("completion: %d rules after %d insertions", len(rules), inserted)
    return Presentation(quiver, relations, rules, max_rules=max_rules,
                        max_path_len=max_path_len, require_finite=require_finite)


def normal_form(p: Presentation, e: Element) -> Element:
    return p.normal_form(e)


def dimension(p: Presentation) -> int:
    return p.dimension


def centre_dimension(p: Presentation) -> int:
    """Dimension of the centre, by solving ``z g = g z`` over arrows and idempotents."""
    basis = p.basis
    n = len(basis)
    q = p.quiver
    gens = [q.idempotent(x) for x in q.points] + [PathWord(a.source, a.target, (a.name,)) for a in q.arrows]
    # column j = image of basis[j] under z -> (z g - g z)_g
    cols = []
    for b in basis:
        col = []
        for g in gens:
            col.extend(p.coordinates(p.multiply(b, g) - p.multiply(g, b)))
        cols.append(col)
    if not cols:
        return 0
    rows = [list(r) for r in zip(*cols)]
    return n - linalg.rank(rows, n)
