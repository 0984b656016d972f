"""Relation extensions: the cluster-tilted bound quiver built from ``(Q, I, R)``.

For each relation ``rho`` from ``x`` to ``y`` a new arrow ``y -> x`` is added;
the potential is the sum of the cycles ``rho * new_arrow`` and the relations of
the extension are the nonzero cyclic derivatives of the potential.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .quiver import NEW, OLD, Arrow, Element, PathWord, Quiver, QuiverError
from .relations import is_strongly_minimal
from .rewriting import Presentation, complete_rewriting


class UnknownArrow(QuiverError):
    pass


class NotStronglyMinimal(ValueError):
    pass


def canonical_rotation(word: Sequence[str]) -> tuple[str, ...]:
    word = tuple(word)
    if not word:
        raise ValueError("empty cyclic word")
    return min(word[i:] + word[:i] for i in range(len(word)))


def _check_cycle(quiver: Quiver, word: Sequence[str]) -> None:
    arrs = [quiver.arrow(a) for a in word]
    for a, b in zip(arrs, arrs[1:] + arrs[:1]):
        if a.target != b.source:
            raise QuiverError(f"{' '.join(word)} is not an oriented cycle")


def cyclic_derivative(quiver: Quiver, word: Sequence[str], beta: str) -> Element:
    """Sum over occurrences of ``beta`` of the rotated complement of ``word``."""
    if not quiver.has_arrow(beta):
        raise UnknownArrow(f"unknown arrow {beta!r}")
    word = tuple(word)
    _check_cycle(quiver, word)
    b = quiver.arrow(beta)
    acc: dict[PathWord, Fraction] = {}
    for i, a in enumerate(word):
        if a != beta:
            continue
        rest = word[i + 1:] + word[:i]
        w = PathWord(b.target, b.source, rest)
        acc[w] = acc.get(w, 0) + 1
    return Element(acc)


@dataclass(frozen=True)
class Potential:
    """Formal sum of cyclic words, each stored in its least rotation."""

    terms: Mapping[tuple[str, ...], Fraction] = field(default_factory=dict)

    @classmethod
    def from_cycles(cls, quiver: Quiver, cycles: Iterable[tuple[Sequence[str], object]]) -> "Potential":
        acc: dict[tuple[str, ...], Fraction] = {}
        for word, c in cycles:
            _check_cycle(quiver, word)
            key = canonical_rotation(word)
            acc[key] = acc.get(key, 0) + Fraction(c)
        return cls({k: v for k, v in acc.items() if v})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def derivative(self, quiver: Quiver, beta: str) -> Element:
        out = Element()
        for word, c in self.terms.items():
            out = out + cyclic_derivative(quiver, word, beta).scale(c)
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word, c in sorted(self.terms.items()):
            parts.append(("" if c == 1 else f"{c}*") + ".".join(word))
        return " + ".join(parts)


@dataclass(frozen=True)
class ExtensionResult:
    presentation: Presentation
    potential: Potential
    ledger: Mapping[str, Element]  # new arrow -> the relation it was added for
    base: Presentation | None = None

    @property
    def quiver(self) -> Quiver:
        return self.presentation.quiver


def _fresh_names(taken: set[str], count: int) -> list[str]:
    out, i = [], 1
    while len(out) < count:
        name = f"x{i}"
        if name not in taken:
            out.append(name)
            taken.add(name)
        i += 1
    return out


def relation_extension(C: Presentation, R: Sequence[Element],
                       new_names: Sequence[str] | None = None, *,
                       check_minimal: bool = True) -> ExtensionResult:
    """Build the relation extension of ``C`` for the strongly minimal system ``R``."""
    q = C.quiver
    R = list(R)
    if check_minimal:
        for rho in R:
            if not is_strongly_minimal(C, rho):
                raise NotStronglyMinimal(f"{rho} is not strongly minimal; strengthen the system first")
    taken = set(q.points) | {a.name for a in q.arrows}
    if new_names is None:
        new_names = _fresh_names(taken, len(R))
    elif len(new_names) != len(R) or taken & set(new_names) or len(set(new_names)) != len(R):
        raise QuiverError("new arrow names must be fresh and one per relation")
    arrows = [Arrow(a.name, a.source, a.target, OLD) for a in q.arrows]
    ledger: dict[str, Element] = {}
    cycles = []
    for name, rho in zip(new_names, R):
        x, y = rho.endpoints
        arrows.append(Arrow(name, y, x, NEW))
        ledger[name] = rho
        cycles.extend((w.arrows + (name,), c) for w, c in rho)
    qt = Quiver(q.points, tuple(arrows), q.name)
    W = Potential.from_cycles(qt, cycles)
    rels = [d for d in (W.derivative(qt, a.name) for a in qt.arrows) if d]
    B = complete_rewriting(rels, qt, max_rules=C.max_rules, max_path_len=C.max_path_len)
    return ExtensionResult(B, W, ledger, C)


@dataclass(frozen=True)
class WalkCheck:
    ok: bool
    witness: tuple[tuple[str, str], ...] | None = None  # (arrow, "+"/"-") steps

    def __bool__(self) -> bool:
        return self.ok


def check_no_forbidden_walk(e: ExtensionResult) -> WalkCheck:
    """Search for a walk ``alpha w' beta`` with ``alpha``, ``beta`` new and ``w'`` old.

    ``w'`` runs from the source of ``alpha`` (the end of its relation) to the
    target of ``beta`` (the start of its relation). It may not contain a
    directed subpath antiparallel to a new arrow, nor reuse an arrow of the
    relations attached to ``alpha`` and ``beta``.
    """
    q = e.quiver
    new = q.new_arrows
    anti = {(a.target, a.source) for a in new}  # (u, v): a path u ~> v is antiparallel
    for alpha in new:
        for beta in new:
            banned = set()
            for n in (alpha.name, beta.name):
                rho = e.ledger.get(n)
                if rho is not None:
                    banned.update(a for w in rho.words for a in w.arrows)
            old = [a for a in q.old_arrows if a.name not in banned]
            walk = _search(q, old, anti, alpha.source, beta.target)
            if walk is not None:
                steps = ((alpha.name, "-"),) + walk + ((beta.name, "-"),)
                return WalkCheck(False, steps)
    return WalkCheck(True)


def _search(q: Quiver, old: list[Arrow], anti: set, start: str, goal: str):
    """BFS over reduced walks tracking the current same-direction run."""
    if start == goal:
        return ()
    limit = len(q.points) + 1
    init = (start, "", (start,), None)
    seen = {init}
    queue = deque([(init, ())])
    while queue:
        (v, direction, run, last), steps = queue.popleft()
        for a in old:
            for d, here, there in (("+", a.source, a.target), ("-", a.target, a.source)):
                if here != v or a.name == last:
                    continue
                new_run = run + (there,) if d == direction else (v, there)
                if len(new_run) > limit:
                    continue
                # the directed subpaths ending at ``there``
                if d == "+":
                    bad = any((u, there) in anti for u in new_run[:-1])
                else:
                    bad = any((there, u) in anti for u in new_run[:-1])
                if bad:
                    continue
                state = (there, d, new_run, a.name)
                if state in seen:
                    continue
                seen.add(state)
                nsteps = steps + ((a.name, d),)
                if there == goal:
                    return nsteps
                queue.append((state, nsteps))
    return None
