"""Quivers, paths and exact-coefficient elements of a path algebra.

Paths compose left to right: in ``a.b`` the arrow ``a`` is traversed first,
so ``a.b`` is defined when ``target(a) == source(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

OLD = "old"
NEW = "new"


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    provenance: str = OLD

    @property
    def is_new(self) -> bool:
        return self.provenance == NEW


@dataclass(frozen=True)
class Quiver:
    points: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    name: str | None = field(default=None, compare=False)
    _by_name: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise QuiverError("duplicate point identifier")
        pts = set(self.points)
        by_name = {}
        for a in self.arrows:
            if a.name in by_name:
                raise QuiverError(f"duplicate arrow id {a.name!r}")
            if a.name in pts:
                raise QuiverError(f"arrow id {a.name!r} clashes with a point")
            if a.source not in pts or a.target not in pts:
                raise QuiverError(f"arrow {a.name!r} has an endpoint outside the point set")
            if a.provenance not in (OLD, NEW):
                raise QuiverError(f"bad provenance {a.provenance!r}")
            by_name[a.name] = a
        object.__setattr__(self, "_by_name", by_name)

    @classmethod
    def build(cls, points: Iterable, arrows: Iterable, name: str | None = None) -> "Quiver":
        """Convenience constructor; arrows are ``(id, src, tgt)`` or ``(id, src, tgt, provenance)``."""
        arrs = []
        for spec in arrows:
            if isinstance(spec, Arrow):
                arrs.append(spec)
            else:
                arrs.append(Arrow(*(str(s) for s in spec)))
        return cls(tuple(str(p) for p in points), tuple(arrs), name)

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    @property
    def new_arrows(self) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.is_new)

    @property
    def old_arrows(self) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if not a.is_new)

    def arrows_from(self, point: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == point]

    def idempotent(self, point: str) -> "PathWord":
        if point not in self.points:
            raise QuiverError(f"unknown point {point!r}")
        return PathWord(point, point, ())

    def path(self, *names: str) -> "PathWord":
        """The path traversing ``names`` in order; raises if not composable."""
        if not names:
            raise QuiverError("use idempotent() for stationary paths")
        arrs = [self.arrow(n) for n in names]
        for a, b in zip(arrs, arrs[1:]):
            if a.target != b.source:
                raise QuiverError(f"{a.name}.{b.name} is not composable")
        return PathWord(arrs[0].source, arrs[-1].target, tuple(names))

    def with_provenance(self, new: Iterable[str]) -> "Quiver":
        new = set(new)
        arrs = tuple(Arrow(a.name, a.source, a.target, NEW if a.name in new else OLD)
                     for a in self.arrows)
        return Quiver(self.points, arrs, self.name)

    def underlying_edges(self) -> list[tuple[str, str]]:
        return [(a.source, a.target) for a in self.arrows]


@dataclass(frozen=True, order=False)
class PathWord:
    """A path; length-0 words are the stationary paths ``e_x``."""

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.arrows and self.source != self.target:
            raise QuiverError("a stationary path has a single base point")

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_stationary(self) -> bool:
        return not self.arrows

    def __str__(self) -> str:
        return ".".join(self.arrows) if self.arrows else f"e_{self.source}"

    __repr__ = __str__


def compose(p: PathWord, q: PathWord) -> PathWord | None:
    """Concatenate ``p`` then ``q``; ``None`` when ``target(p) != source(q)``."""
    if p.target != q.source:
        return None
    if not p.arrows:
        return q
    if not q.arrows:
        return p
    return PathWord(p.source, q.target, p.arrows + q.arrows)


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Element:
    """A finite linear combination of paths with rational coefficients.

    Zero coefficients are dropped on construction, so two elements are equal
    exactly when their term dictionaries are equal.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PathWord, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[PathWord, Fraction] = {}
        for w, c in items:
            c = _frac(c)
            if c:
                acc[w] = acc.get(w, 0) + c
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def path(cls, w: PathWord, coeff=1) -> "Element":
        return cls({w: coeff})

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[PathWord, Fraction]]:
        return iter(self.terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return Element(out)

    def __neg__(self) -> "Element":
        return Element({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        c = _frac(c)
        if not c:
            return Element()
        return Element({w: c * v for w, v in self.terms.items()})

    def __rmul__(self, c) -> "Element":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other) -> "Element":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, PathWord):
            other = Element.path(other)
        out: dict[PathWord, Fraction] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                uv = compose(u, v)
                if uv is not None:
                    out[uv] = out.get(uv, 0) + a * b
        return Element(out)

    @property
    def words(self) -> list[PathWord]:
        return list(self.terms)

    def coefficient(self, w: PathWord) -> Fraction:
        return self.terms.get(w, Fraction(0))

    @property
    def is_parallel(self) -> bool:
        ends = {(w.source, w.target) for w in self.terms}
        return len(ends) <= 1

    @property
    def endpoints(self) -> tuple[str, str] | None:
        """Common ``(source, target)`` of a nonzero parallel element."""
        ends = {(w.source, w.target) for w in self.terms}
        if len(ends) != 1:
            return None
        return next(iter(ends))

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return format_terms(sorted(self.terms.items(), key=lambda t: (-len(t[0]), t[0].arrows)))

    __repr__ = __str__


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(items: Iterable[tuple[PathWord, Fraction]]) -> str:
    parts = []
    for i, (w, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        body = str(w) if mag == 1 else f"{format_coeff(mag)}*{w}"
        if i == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def element(quiver: Quiver, *terms) -> Element:
    """Build an element from ``(coeff, "a.b.c")`` pairs or bare path strings."""
    out = []
    for t in terms:
        if isinstance(t, str):
            c, s = 1, t
        else:
            c, s = t
        out.append((quiver.path(*s.split(".")), c))
    return Element(out)
