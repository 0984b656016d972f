"""Exact linear algebra over the rationals.

Thin wrappers around sympy's ``DomainMatrix`` over ``QQ``; vectors come in and
go out as lists (or sparse dicts) of :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = Sequence[Fraction]
SparseVector = Mapping[int, Fraction]


def _to_qq(c) -> object:
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def _from_qq(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def to_domain(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    data = [[_to_qq(c) for c in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), QQ)


def dense(rows: Sequence[SparseVector], ncols: int) -> list[list[Fraction]]:
    out = []
    for r in rows:
        row = [Fraction(0)] * ncols
        for j, c in r.items():
            row[j] = Fraction(c)
        out.append(row)
    return out


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    if ncols == 0:
        return 0
    return to_domain(rows, ncols).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}`` for the matrix with the given rows."""
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = to_domain(rows, ncols).nullspace()
    return [[_from_qq(q) for q in row] for row in ns.to_list()]


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], tuple[int, ...]]:
    """Nonzero rows of the reduced row echelon form, and the pivot columns."""
    if not rows or ncols == 0:
        return [], ()
    m, pivots = to_domain(rows, ncols).rref()
    out = [[_from_qq(q) for q in row] for row in m.to_list()[: len(pivots)]]
    return out, tuple(pivots)


def in_span(basis: Sequence[Sequence], v: Sequence, ncols: int) -> bool:
    return rank(list(basis) + [v], ncols) == rank(basis, ncols) if basis else not any(v)
