"""Line-oriented text format for bound quivers.

::

    # linear A3 with one zero relation
    point 1
    point 2
    point 3
    arrow a 1 2
    arrow b 2 3
    rel a.b

``arrow ID SRC TGT new`` marks an arrow added by a relation extension.
A relation line lists terms ``[COEFF*]a.b.c`` joined by ``+`` or ``-``;
coefficients are integers or fractions ``p/q``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .quiver import NEW, OLD, Arrow, Element, PathWord, Quiver, QuiverError, format_coeff


class ParseError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col, self.msg = line, col, msg


class SemanticError(ValueError):
    def __init__(self, line: int | None, msg: str):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line, self.msg = line, msg


NAME = re.compile(r"[^\s.*+\-/#]+")
COEFF = re.compile(r"(-?\d+)(?:/(\d+))?\s*\*")
WS = re.compile(r"\s*")


@dataclass(frozen=True)
class QuiverFile:
    quiver: Quiver
    relations: tuple[Element, ...]

    def __iter__(self):
        return iter((self.quiver, list(self.relations)))


def _parse_terms(body: str, lineno: int, offset: int) -> list[tuple[Fraction, list[str], int]]:
    terms = []
    pos = 0
    sign = 1
    while True:
        pos = WS.match(body, pos).end()
        col = offset + pos + 1
        coeff = Fraction(1)
        m = COEFF.match(body, pos)
        if m:
            if m.group(2) is not None and int(m.group(2)) == 0:
                raise ParseError(lineno, col, "zero denominator")
            coeff = Fraction(int(m.group(1)), int(m.group(2) or 1))
            pos = WS.match(body, m.end()).end()
        names = []
        while True:
            m = NAME.match(body, pos)
            if not m:
                raise ParseError(lineno, offset + pos + 1, "expected an arrow name")
            names.append(m.group())
            pos = m.end()
            if pos < len(body) and body[pos] == ".":
                pos += 1
                continue
            break
        terms.append((sign * coeff, names, col))
        pos = WS.match(body, pos).end()
        if pos == len(body):
            return terms
        if body[pos] not in "+-":
            raise ParseError(lineno, offset + pos + 1, f"expected '+' or '-', found {body[pos]!r}")
        sign = 1 if body[pos] == "+" else -1
        pos += 1


def parse_quiver_file(text: str, name: str | None = None) -> QuiverFile:
    points: list[tuple[str, int]] = []
    arrows: list[tuple[str, str, str, str, int]] = []
    rels: list[tuple[list, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        stripped = line.lstrip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(line) - len(stripped)
        head, _, rest = stripped.partition(" ")
        if head == "point":
            fields = rest.split()
            if len(fields) != 1 or not NAME.fullmatch(fields[0]):
                raise ParseError(lineno, indent + 7, "expected: point NAME")
            points.append((fields[0], lineno))
        elif head == "arrow":
            fields = rest.split()
            if len(fields) not in (3, 4) or (len(fields) == 4 and fields[3] != "new"):
                raise ParseError(lineno, indent + 7, "expected: arrow NAME SRC TGT [new]")
            for f in fields[:3]:
                if not NAME.fullmatch(f):
                    raise ParseError(lineno, indent + 7 + rest.index(f), f"bad identifier {f!r}")
            prov = NEW if len(fields) == 4 else OLD
            arrows.append((fields[0], fields[1], fields[2], prov, lineno))
        elif head == "rel":
            if not rest.strip():
                raise ParseError(lineno, indent + 4, "empty relation")
            rels.append((_parse_terms(rest, lineno, indent + 4), lineno))
        else:
            raise ParseError(lineno, indent + 1, f"unknown directive {head!r}")
    return _build(points, arrows, rels, name)


def _build(points, arrows, rels, name) -> QuiverFile:
    seen: dict[str, int] = {}
    for p, ln in points:
        if p in seen:
            raise SemanticError(ln, f"duplicate point {p!r}")
        seen[p] = ln
    arrs = []
    for aid, s, t, prov, ln in arrows:
        for x in (s, t):
            if x not in seen:
                raise SemanticError(ln, f"arrow {aid!r} references unknown point {x!r}")
        arrs.append((Arrow(aid, s, t, prov), ln))
    try:
        q = Quiver(tuple(p for p, _ in points), tuple(a for a, _ in arrs), name)
    except QuiverError as exc:
        raise SemanticError(None, str(exc)) from None
    relations = []
    for terms, ln in rels:
        acc: dict[PathWord, Fraction] = {}
        for coeff, names, col in terms:
            if len(names) < 2:
                raise SemanticError(ln, f"relation term {'.'.join(names)!r} has length < 2")
            try:
                w = q.path(*names)
            except QuiverError as exc:
                raise SemanticError(ln, str(exc)) from None
            acc[w] = acc.get(w, 0) + coeff
        rho = Element(acc)
        if not rho:
            raise SemanticError(ln, "relation is zero")
        if not rho.is_parallel:
            raise SemanticError(ln, "relation terms are not parallel")
        relations.append(rho)
    return QuiverFile(q, tuple(relations))


def format_relation(rho: Element) -> str:
    parts = []
    for i, (w, c) in enumerate(rho):
        word = ".".join(w.arrows)
        if i == 0:
            parts.append(word if c == 1 else f"{format_coeff(c)}*{word}")
        else:
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {word}" if mag == 1 else f"{sign} {format_coeff(mag)}*{word}")
    return " ".join(parts)


def print_quiver_file(quiver: Quiver, relations, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += [f"point {p}" for p in quiver.points]
    for a in quiver.arrows:
        lines.append(f"arrow {a.name} {a.source} {a.target}" + (" new" if a.is_new else ""))
    lines += [f"rel {format_relation(r)}" for r in relations]
    return "\n".join(lines) + "\n"


def canonical(text: str) -> str:
    qf = parse_quiver_file(text)
    return print_quiver_file(qf.quiver, qf.relations)


def read_quiver_file(path) -> QuiverFile:
    with open(path, encoding="utf-8") as fh:
        return parse_quiver_file(fh.read(), name=str(path))
