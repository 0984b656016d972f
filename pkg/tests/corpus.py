"""Fixture builders shared by the test modules."""

from __future__ import annotations

import itertools
import random
from itertools import combinations
from fractions import Fraction
from pathlib import Path

import networkx as nx

from quiverhh import (Element, PathWord, Quiver, chordless_cycles, complete_rewriting, element, relation_extension,
                      strengthen_system)
from quiverhh.fileformat import read_quiver_file

DATA = Path(__file__).parent / "data"


def load(name: str):
    qf = read_quiver_file(DATA / name)
    return qf.quiver, list(qf.relations)


def load_presentation(name: str):
    q, rels = load(name)
    return complete_rewriting(rels, q)


def build(points, arrows, rels):
    """Quiver and relations from compact specs; a relation is a path string or a tuple of terms."""
    q = Quiver.build(points, arrows)
    out = []
    for r in rels:
        terms = (r,) if isinstance(r, str) else r
        out.append(element(q, *terms))
    return q, out


# tilted algebras ``C`` with a system of relations: (name, points, arrows, relations)
TILTED = [
    ("linear A3", "123", [("a", "1", "2"), ("b", "2", "3")], ["a.b"]),
    ("A~(2,2) with two zero relations", "1234",
     [("alpha", "4", "2"), ("beta", "2", "1"), ("gamma", "4", "3"), ("delta", "3", "1")],
     ["alpha.beta", "gamma.delta"]),
    ("E8 cut", "12345678",
     [("a", "1", "2"), ("b", "1", "4"), ("c", "2", "3"), ("d", "2", "5"), ("f", "3", "6"),
      ("g", "4", "5"), ("i", "5", "8"), ("k", "7", "4")],
     [("a.d", (-1, "b.g")), "c.f", "k.g.i"]),
    ("commutative square", "1234", [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
     [("a.b", (-1, "c.d"))]),
    ("A4 with a long zero relation", "1234", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")], ["a.b.c"]),
    ("A4 with one short zero relation", "1234", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")], ["a.b"]),
    ("D4 star with a zero relation", "1234", [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4")], ["a.b"]),
    ("shape (i)", "1234", [("be", "4", "2"), ("ga", "2", "1"), ("de", "2", "1")], ["be.ga"]),
    ("shape (ii)", "12345",
     [("d1", "3", "2"), ("d2", "2", "1"), ("ga", "3", "1"), ("be", "4", "3"), ("l1", "5", "2")],
     ["be.ga", "l1.d2"]),
    ("hereditary A3", "123", [("a", "1", "2"), ("b", "3", "2")], []),
    ("hereditary A~(2,2)", "1234", [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")], []),
    ("Kronecker", "12", [("a", "1", "2"), ("b", "1", "2")], []),
]

# the ones whose extension is representation-finite (Dynkin type)
REP_FINITE = ["linear A3", "E8 cut", "commutative square", "A4 with a long zero relation",
              "A4 with one short zero relation", "D4 star with a zero relation", "hereditary A3"]


def tilted(name: str):
    for n, pts, arrs, rels in TILTED:
        if n == name:
            q, R = build(pts, arrs, rels)
            return complete_rewriting(R, q), R
    raise KeyError(name)


def extended(name: str, new_names=None):
    C, R = tilted(name)
    R = strengthen_system(C, R) if R else []
    return C, R, relation_extension(C, R, new_names)


# --- Dynkin cluster-tilted quivers by mutation ------------------------------------------------

def dynkin_edges(kind: str, n: int):
    if kind == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if kind == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if kind == "E":
        return [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    raise ValueError(kind)


def mutate(b, k):
    n = len(b)
    out = [row[:] for row in b]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -b[i][j]
            else:
                out[i][j] = b[i][j] + (abs(b[i][k]) * b[k][j] + b[i][k] * abs(b[k][j])) // 2
    return out


def quiver_from_matrix(b) -> Quiver:
    n = len(b)
    arrows = []
    for i in range(n):
        for j in range(n):
            for m in range(max(b[i][j], 0)):
                arrows.append((f"a{i + 1}_{j + 1}" + (f"_{m}" if m else ""), str(i + 1), str(j + 1)))
    return Quiver.build([str(i + 1) for i in range(n)], arrows)


def random_dynkin(kind: str, n: int, steps: int, rng: random.Random) -> Quiver:
    b = [[0] * n for _ in range(n)]
    for i, j in dynkin_edges(kind, n):
        b[i][j], b[j][i] = 1, -1
    for _ in range(steps):
        b = mutate(b, rng.randrange(n))
    return quiver_from_matrix(b)


def cycle_relations(q: Quiver) -> list[Element]:
    """Relations of a Dynkin cluster-tilted quiver read off its chordless cycles.

    An arrow on one chordless cycle gives the zero relation formed by the rest
    of that cycle; an arrow on two gives the difference of the two rests.
    """
    cycles = chordless_cycles(q)
    rels = []
    for a in q.arrows:
        rests = []
        for c in cycles:
            if a.name not in c.arrows:
                continue
            seq, cur, names = [], a, set(c.arrows) - {a.name}
            while names:
                nxt = next(x for x in names if q.arrow(x).source == cur.target)
                seq.append(nxt)
                names.remove(nxt)
                cur = q.arrow(nxt)
            rests.append(q.path(*seq))
        if len(rests) == 1:
            rels.append(Element.path(rests[0]))
        elif len(rests) == 2:
            rels.append(Element({rests[0]: 1, rests[1]: -1}))
    return rels


def dynkin_corpus(seed: int = 7, per_type: int = 4):
    rng = random.Random(seed)
    out = []
    for kind, n in [("A", 4), ("A", 6), ("D", 4), ("D", 5), ("D", 6), ("E", 6), ("E", 7), ("E", 8)]:
        for t in range(per_type):
            q = random_dynkin(kind, n, rng.randrange(1, 15), rng)
            out.append((f"{kind}{n}-{t}", q, cycle_relations(q)))
    return out


# --- trees ---------------------------------------------------------------------------------

def oriented_trees(max_points: int):
    """Every tree quiver on up to ``max_points`` points, up to isomorphism."""
    for n in range(1, max_points + 1):
        seen: dict[str, list] = {}
        for t in nx.nonisomorphic_trees(n) if n > 1 else [nx.empty_graph(1)]:
            edges = list(t.edges())
            for flips in itertools.product((False, True), repeat=len(edges)):
                g = nx.DiGraph()
                g.add_nodes_from(t.nodes())
                g.add_edges_from((v, u) if f else (u, v) for (u, v), f in zip(edges, flips))
                h = nx.weisfeiler_lehman_graph_hash(g)
                if any(nx.is_isomorphic(g, o) for o in seen.get(h, [])):
                    continue
                seen.setdefault(h, []).append(g)
                arrows = [(f"t{k}", str(u + 1), str(v + 1)) for k, (u, v) in enumerate(g.edges())]
                yield Quiver.build([str(i + 1) for i in range(n)], arrows)


# --- independent exact linear algebra for oracles --------------------------------------------

def fraction_rank(rows) -> int:
    """Plain Gaussian elimination over Fractions."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] / m[rank][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


# --- oracles ---------------------------------------------------------------------------------

def brute_force_circuits(family):
    rows = family.matrix
    m = len(rows)
    out = set()
    for k in range(1, m + 1):
        for S in combinations(range(m), k):
            sub = [rows[i] for i in S]
            if fraction_rank(sub) == k:
                continue
            if all(fraction_rank([rows[i] for i in S if i != j]) == k - 1 for j in S):
                out.add(S)
    return out


def random_reduce(p, e, rng):
    """Rewrite with randomly chosen rule occurrences until nothing applies."""
    rules = {w.arrows: t for w, t in p.rules.items()}
    e = Element(e.terms)
    while True:
        candidates = []
        for w in e.words:
            for i in range(len(w)):
                for lead in rules:
                    if w.arrows[i:i + len(lead)] == lead:
                        candidates.append((w, i, lead))
        if not candidates:
            return e
        w, i, lead = rng.choice(candidates)
        c = e.coefficient(w)
        u, v = w.arrows[:i], w.arrows[i + len(lead):]
        repl = Element({PathWord(w.source, w.target, u + t.arrows + v): c * d for t, d in rules[lead]})
        e = e - Element.path(w, c) + repl


def random_element(p, rng, terms=4):
    q = p.quiver
    words = []
    for _ in range(terms):
        x = rng.choice(q.points)
        w = q.idempotent(x)
        for _ in range(rng.randrange(0, p.nilpotency_index + 2)):
            outs = q.arrows_from(w.target)
            if not outs:
                break
            a = rng.choice(outs)
            w = PathWord(w.source, a.target, w.arrows + (a.name,))
        words.append(w)
    return Element({w: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for w in words})
