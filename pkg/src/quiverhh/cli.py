"""Command line front end: ``quiverhh COMMAND FILE [options]``.

Exit status is 0 on success, 1 when ``check`` finds an inconsistency and 2 on
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import networkx as nx

from .cycles import (CycleReport, FormulaMismatch, UnknownPoint, delete_point, hochschild_degree,
                     n_B_euler, n_B_theorem)
from .equivalence import Lemma31Violation, arrow_equivalence_classes
from .extension import (ExtensionResult, NotStronglyMinimal, Potential, check_no_forbidden_walk,
                        relation_extension)
from .fileformat import ParseError, QuiverFile, SemanticError, format_relation, parse_quiver_file, print_quiver_file
from .hochschild import check_exact_sequence, derivation_space, hh1_dimension
from .quiver import Element, Quiver, QuiverError
from .relations import FamilyTooLarge, NotAGeneratingSet, NotARelation, strengthen_system
from .rewriting import (DEFAULT_MAX_PATH_LEN, DEFAULT_MAX_RULES, CompletionOverflow, NotFiniteDimensional,
                        Presentation, complete_rewriting)

SCOPE_CAVEAT = "formula outside proven scope"
INPUT_ERRORS = (ParseError, SemanticError, QuiverError, NotFiniteDimensional, CompletionOverflow,
                NotStronglyMinimal, NotARelation, NotAGeneratingSet, FamilyTooLarge, Lemma31Violation,
                UnknownPoint, OSError)


class InputError(Exception):
    pass


def _load(args) -> QuiverFile:
    if args.file == "-":
        return parse_quiver_file(sys.stdin.read(), name="<stdin>")
    with open(args.file, encoding="utf-8") as fh:
        return parse_quiver_file(fh.read(), name=args.file)


def _complete(qf_quiver: Quiver, relations, args) -> Presentation:
    return complete_rewriting(relations, qf_quiver, max_rules=args.max_rules, max_path_len=args.max_path_len)


@dataclass
class Pair:
    """The extended algebra together with the algebra it extends."""

    big: Presentation
    small: Presentation
    system: list[Element]
    extension: ExtensionResult
    tagged_input: bool


def _pair(qf: QuiverFile, args) -> Pair:
    q = qf.quiver
    if q.new_arrows:
        B = _complete(q, qf.relations, args)
        old_q = Quiver(q.points, q.old_arrows, q.name)
        old_names = {a.name for a in q.old_arrows}
        R = [r for r in qf.relations if all(set(w.arrows) <= old_names for w in r.words)]
        C = _complete(old_q, R, args)
        ledger: dict[str, Element] = {}
        unused = list(R)
        for a in q.new_arrows:
            for rho in unused:
                if rho.endpoints == (a.target, a.source):
                    ledger[a.name] = rho
                    unused.remove(rho)
                    break
        cycles = [(w.arrows + (a,), c) for a, rho in ledger.items() for w, c in rho]
        e = ExtensionResult(B, Potential.from_cycles(q, cycles), ledger, C)
        return Pair(B, C, R, e, True)
    C = _complete(q, qf.relations, args)
    R = strengthen_system(C, list(qf.relations)) if qf.relations else []
    e = relation_extension(C, R)
    return Pair(e.presentation, C, R, e, False)


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text.rstrip("\n"))


def _cycle_data(rep: CycleReport) -> dict:
    return {
        "cycles": [{"points": list(c.points), "arrows": list(c.arrows), "oriented": c.oriented}
                   for c in rep.cycles],
        "inner": sorted(rep.inner),
        "outer": sorted(rep.outer),
        "n_B_theorem": rep.n_theorem,
        "n_B_euler": rep.n_euler,
        "degrees": rep.degrees,
    }


def cmd_analyze(args) -> int:
    qf = _load(args)
    q = qf.quiver
    if args.point is not None and args.point not in q.points:
        raise UnknownPoint(f"unknown point {args.point!r}")
    rep = CycleReport.of(q)
    data = _cycle_data(rep)
    warn = []
    if any(len(c) == 2 for c in rep.cycles):
        warn.append("quiver has a 2-cycle; cluster-tilted quivers have none")
    if not q.new_arrows:
        warn.append(SCOPE_CAVEAT)
    if args.point is not None:
        data["degrees"] = {args.point: rep.degrees[args.point]}
    data["warnings"] = warn
    lines = [f"chordless cycles: {len(rep.cycles)}"]
    for c in rep.cycles:
        lines.append(f"  {' '.join(c.points)} [{', '.join(c.arrows)}]" + (" oriented" if c.oriented else ""))
    lines.append(f"inner arrows: {len(rep.inner)} {sorted(rep.inner)}")
    lines.append(f"outer arrows: {len(rep.outer)}")
    lines.append(f"n_B (cycles - inner): {rep.n_theorem}")
    lines.append(f"n_B (components + outer - points): {rep.n_euler}")
    for x, d in data["degrees"].items():
        lines.append(f"degree {x}: {'mismatch' if d is None else d}")
    lines += [f"warning: {w}" for w in warn]
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_extend(args) -> int:
    qf = _load(args)
    if qf.quiver.new_arrows:
        raise InputError("input already carries new arrows")
    pair = _pair(qf, args)
    e = pair.extension
    comments = [f"{a} added for {format_relation(rho)}" for a, rho in e.ledger.items()]
    text = print_quiver_file(e.quiver, e.presentation.relations, comments)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    data = {
        "points": list(e.quiver.points),
        "arrows": [[a.name, a.source, a.target, a.provenance] for a in e.quiver.arrows],
        "relations": [format_relation(r) for r in e.presentation.relations],
        "potential": str(e.potential),
        "ledger": {a: format_relation(r) for a, r in e.ledger.items()},
        "dimension": e.presentation.dimension,
    }
    _emit(args, data, text)
    return 0


def cmd_equiv(args) -> int:
    pair = _pair(_load(args), args)
    part = arrow_equivalence_classes(pair.big)
    data = {"classes": part.as_lists(), "n_BC": len(part),
            "witnesses": [format_relation(r) for r in part.witnesses]}
    lines = [f"classes: {len(part)}"] + [f"  {{{', '.join(c)}}}" for c in part.as_lists()]
    lines.append(f"n_B,C = {len(part)}")
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_hh1(args) -> int:
    qf = _load(args)
    p = _complete(qf.quiver, qf.relations, args)
    der, inn, hh = derivation_space(p).dims
    data = {"dimension": p.dimension, "der0": der, "int0": inn, "hh1": hh}
    _emit(args, data, f"dim B = {p.dimension}\ndim Der0 = {der}\ndim Int0 = {inn}\ndim HH1 = {hh}")
    return 0


def cmd_delete(args) -> int:
    qf = _load(args)
    if args.point is None:
        raise InputError("delete needs --point")
    p = _complete(qf.quiver, qf.relations, args)
    d = delete_point(p, args.point)
    text = print_quiver_file(d.quiver, d.relations)
    data = {"points": list(d.quiver.points),
            "arrows": [[a.name, a.source, a.target, a.provenance] for a in d.quiver.arrows],
            "relations": [format_relation(r) for r in d.relations], "dimension": d.dimension}
    _emit(args, data, text)
    return 0


def _is_forest(q: Quiver) -> bool:
    g = nx.MultiGraph()
    g.add_nodes_from(q.points)
    g.add_edges_from(q.underlying_edges())
    return nx.is_forest(g) if q.points else True


def cmd_check(args) -> int:
    pair = _pair(_load(args), args)
    B, C, R = pair.big, pair.small, pair.system
    qb = B.quiver
    results: list[dict] = []

    def record(name, ok, detail, counted=True):
        results.append({"check": name, "status": ("PASS" if ok else "FAIL") if counted else "INFO",
                        "detail": detail})

    seq = check_exact_sequence(B, C)
    record("exact sequence", seq.consistent,
           f"HH1(B) = {seq.hh1_big}, HH1(C) = {seq.hh1_small}, n_B,C = {seq.invariant}")
    hh_b = seq.hh1_big
    hereditary_forest = not B.relations and _is_forest(qb)
    record("HH1 vanishing", (hh_b == 0) == hereditary_forest,
           f"HH1(B) = {hh_b}, hereditary with forest quiver: {hereditary_forest}")
    walk = check_no_forbidden_walk(pair.extension)
    record("forbidden walks", walk.ok,
           "none found" if walk.ok else "witness " + " ".join(f"{a}{d}" for a, d in walk.witness))

    counted = args.assume_rep_finite
    scope = "" if counted else f" ({SCOPE_CAVEAT})"
    n_thm, n_eul = n_B_theorem(qb), n_B_euler(qb)
    record("cycle formulas", n_thm == n_eul == hh_b == seq.invariant,
           f"cycles - inner = {n_thm}, Euler = {n_eul}, HH1 = {hh_b}, n_B,C = {seq.invariant}{scope}", counted)
    bad = []
    for x in qb.points:
        try:
            hochschild_degree(qb, x)
        except FormulaMismatch:
            bad.append(x)
    record("hochschild degrees", not bad, (f"mismatch at {bad}" if bad else "deletion and local counts agree")
           + scope, counted)
    if all(len(r) <= 2 for r in R):
        rep = CycleReport.of(qb)
        zero = sum(1 for r in R if len(r) == 1)
        comm = sum(1 for r in R if len(r) == 2)
        new_inner = sum(1 for a in rep.inner if qb.arrow(a).is_new)
        old_inner = len(rep.inner) - new_inner
        new_comm = sum(1 for r in B.relations
                       if len(r) == 2 and all(any(qb.arrow(a).is_new for a in w.arrows) for w in r.words))
        record("cycle count", len(rep.cycles) == zero + 2 * comm,
               f"cycles = {len(rep.cycles)}, zero relations = {zero}, commutativity relations = {comm}{scope}",
               counted)
        record("new inner arrows", new_inner == comm,
               f"new inner = {new_inner}, commutativity relations = {comm}{scope}", counted)
        record("old inner arrows", old_inner == new_comm,
               f"old inner = {old_inner}, new commutativity relations = {new_comm}{scope}", counted)

    failed = any(r["status"] == "FAIL" for r in results)
    text = "\n".join(f"{r['status']} {r['check']}: {r['detail']}" for r in results)
    _emit(args, {"checks": results, "consistent": not failed}, text)
    return 1 if failed else 0


COMMANDS = {
    "analyze": (cmd_analyze, "chordless cycles, inner/outer arrows, n_B and point degrees"),
    "extend": (cmd_extend, "write the relation extension of a bound quiver"),
    "equiv": (cmd_equiv, "equivalence classes of new arrows and their number"),
    "hh1": (cmd_hh1, "dimensions of Der0, Int0 and HH1"),
    "check": (cmd_check, "run every applicable identity"),
    "delete": (cmd_delete, "quotient by the idempotent of one point"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiverhh", description="First Hochschild cohomology of bound quivers")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (func, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", help="quiver file, or - for stdin")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--max-rules", type=int, default=DEFAULT_MAX_RULES)
        sp.add_argument("--max-path-len", type=int, default=DEFAULT_MAX_PATH_LEN)
        sp.add_argument("--point", default=None, help="point for delete, or a single degree in analyze")
        if name == "extend":
            sp.add_argument("-o", "--output", default=None, help="also write the extension here")
        if name == "check":
            sp.add_argument("--assume-rep-finite", action="store_true",
                            help="treat the cycle formulas as applicable and count their checks")
        sp.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, *INPUT_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
