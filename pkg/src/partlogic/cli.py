"""Command-line front end: ``partlogic <group> <verb> [options]``.

Every JSON argument accepts a file path, ``-`` for standard input, or the
JSON text itself. Results go to stdout as JSON (default), a plain table or
DOT. Errors print one line ``error: <Kind>: <message>`` to stderr and exit
with 2 (bad input), 3 (wrong kind of state) or 4 (size cap).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import entropy as ent
from . import occupancy as occ
from . import partition as part
from . import qmsets as qs
from . import quantum as qm
from .errors import InputError, PartLogicError
from .schemas import validate

FORMATS = ("json", "table", "dot")


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would print usage over several lines
        raise UsageError(message)


class _Stdin:
    """Standard input is read at most once per invocation."""

    text: str | None = None

    @classmethod
    def read(cls) -> str:
        if cls.text is None:
            cls.text = sys.stdin.read()
        return cls.text


def load_json(arg: str, schema: str | None = None):
    if arg == "-":
        text = _Stdin.read()
    elif os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = arg
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse JSON from {arg[:40]!r}: {exc.msg}") from None
    if schema is not None:
        validate(doc, schema)
    return doc


def rational_out(q: Fraction, digits: int = 12) -> dict:
    dec = f"{float(q):.{digits}g}"
    return {"value": str(q), "decimal": dec}


def _labels(arg: str) -> part.Universe:
    """A JSON list of labels, or a bare string whose characters are the labels."""
    if arg.lstrip().startswith("[") or arg == "-" or os.path.isfile(arg):
        return part.Universe(load_json(arg, "subset"))
    return part.Universe(list(arg))


def _load_universe(args) -> part.Universe:
    if args.universe is not None:
        return _labels(args.universe)
    if args.n is None:
        raise UsageError("give --n or --universe")
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    return part.Universe.letters(args.n)


def _partition(arg: str) -> part.Partition:
    return part.partition_from_json(load_json(arg, "partition"))


def _dist(arg: str | None, universe: part.Universe | None) -> ent.ProbDist:
    if arg is None:
        if universe is None:
            raise UsageError("a distribution (--p) is required")
        return ent.ProbDist.uniform(universe)
    doc = load_json(arg, "distribution")
    if isinstance(doc, list) and universe is not None:
        return ent.ProbDist(universe, tuple(doc))
    return ent.dist_from_json(doc)


# output ------------------------------------------------------------------


def _emit(out, args, doc, table: Callable[[], str] | None = None, dot: Callable[[], str] | None = None):
    if args.format == "json":
        text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    elif args.format == "table":
        text = table() if table else _flat_table(doc)
    elif dot is not None:
        text = dot()
    else:
        raise UsageError("--format dot is only available for lattice, box and double-slit output")
    out.write(text)


def _flat_table(doc) -> str:
    if isinstance(doc, dict):
        width = max((len(k) for k in doc), default=0)
        lines = []
        for k, v in doc.items():
            shown = v if isinstance(v, str) else json.dumps(v, ensure_ascii=False)
            lines.append(f"{k.ljust(width)}  {shown}")
        return "\n".join(lines) + "\n"
    return json.dumps(doc, ensure_ascii=False) + "\n"


def _matrix_table(rho: qm.DensityMatrix, precision: int) -> str:
    labs = rho.universe.labels
    cells = [[""] + list(labs)]
    for i, lab in enumerate(labs):
        row = [lab]
        for z in rho.entries[i]:
            re, im = round(z.real, precision) + 0.0, round(z.imag, precision) + 0.0
            row.append(f"{re:.{precision}f}" if im == 0 else f"{re:.{precision}f}{im:+.{precision}f}j")
        cells.append(row)
    width = [max(len(r[j]) for r in cells) for j in range(len(cells[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, width)) for r in cells) + "\n"


# partition ---------------------------------------------------------------


def cmd_partition(args, out) -> None:
    verb = args.verb
    if verb == "lattice":
        graph = part.lattice_graph(_load_universe(args), cap=args.cap)

        def table() -> str:
            lines = [f"{i:>3}  {p.notation():<24} h={h}" for i, (p, h) in enumerate(zip(graph.nodes, graph.entropy))]
            return "\n".join(lines) + "\n"

        _emit(out, args, graph.to_json(), table, lambda: graph.to_dot())
        return
    pi = _partition(args.pi)
    if verb == "dits":
        rel = part.dit_set(pi)
        doc = {"universe": list(pi.universe.labels), "dits": [list(x) for x in rel.pairs()], "count": len(rel)}
        _emit(out, args, doc, lambda: "".join(f"({u},{v})\n" for u, v in rel.pairs()))
        return
    if args.sigma is None:
        raise UsageError(f"partition {verb} needs --sigma")
    sigma = _partition(args.sigma)
    if verb == "refines":
        doc = {"refines": part.refines(sigma, pi)}
        _emit(out, args, doc, lambda: f"{str(doc['refines']).lower()}\n")
        return
    if verb == "join":
        res = part.join(pi, sigma)
    elif verb == "meet":
        res = part.meet(pi, sigma)
    else:
        res = part.implies(sigma, pi)
    _emit(out, args, res.to_json(), lambda: res.notation() + "\n")


# entropy -----------------------------------------------------------------


def cmd_entropy(args, out) -> None:
    verb = args.verb
    pi = _partition(args.pi) if args.pi is not None else None
    if verb == "dist":
        p = _dist(args.p, None)
        _emit(out, args, rational_out(ent.logical_entropy_dist(p)), lambda: f"{ent.logical_entropy_dist(p)}\n")
        return
    if verb == "box":
        p = _dist(args.p, pi.universe if pi else None)
        box = ent.box_diagram(p, pi)
        _emit(out, args, box.to_json(), lambda: _box_table(box), lambda: _box_dot(box))
        return
    if pi is None:
        raise UsageError(f"entropy {verb} needs --pi")
    p = _dist(args.p, pi.universe)
    if verb == "partition":
        value = ent.logical_entropy_partition(pi, p)
    else:
        if args.sigma is None:
            raise UsageError(f"entropy {verb} needs --sigma")
        value = ent.compound_entropy(verb, pi, _partition(args.sigma), p)
    _emit(out, args, rational_out(value), lambda: f"{value}\n")


def _box_table(box: ent.BoxDiagram) -> str:
    n = len(box.universe)
    grid = [["" for _ in range(n)] for _ in range(n)]
    for c in box.cells:
        grid[c.row][c.col] = str(c.value) + ("" if c.on_block else "*")
    labs = list(box.universe.labels)
    cells = [[""] + labs] + [[labs[i]] + grid[i] for i in range(n)]
    width = [max(len(r[j]) for r in cells) for j in range(n + 1)]
    body = "\n".join("  ".join(c.rjust(w) for c, w in zip(r, width)) for r in cells)
    return body + f"\n* off-block, total {box.off_block_total}\n"


def _box_dot(box: ent.BoxDiagram) -> str:
    n = len(box.universe)
    labs = box.universe.labels
    rows = ["<tr><td></td>" + "".join(f"<td><b>{lab}</b></td>" for lab in labs) + "</tr>"]
    for i in range(n):
        tds = []
        for c in box.cells[i * n:(i + 1) * n]:
            colour = "white" if c.on_block else "lightblue"
            tds.append(f'<td bgcolor="{colour}">{c.value}</td>')
        rows.append(f"<tr><td><b>{labs[i]}</b></td>" + "".join(tds) + "</tr>")
    table = '<table border="0" cellborder="1" cellspacing="0">' + "".join(rows) + "</table>"
    return (
        "digraph box {\n  node [shape=plaintext];\n"
        f"  box [label=<{table}>];\n"
        f'  total [label="off-block total = {box.off_block_total}"];\n'
        "  box -> total [style=invis];\n}\n"
    )


# quantum -----------------------------------------------------------------


def _state(args) -> qm.DensityMatrix:
    tol = args.tolerance
    given = [x is not None for x in (args.rho, args.subset, args.pi)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --rho, --subset or --pi")
    if args.rho is not None:
        return qm.density_from_json(load_json(args.rho, "density"), tol)
    if args.subset is not None:
        subset = load_json(args.subset, "subset")
        universe = _labels(args.universe_labels) if args.universe_labels else None
        p = _dist(args.p, universe)
        return qm.density_superposition(subset, p, tol)
    pi = _partition(args.pi)
    return qm.density_mixture(pi, _dist(args.p, pi.universe), tol)


def cmd_quantum(args, out) -> None:
    rho = _state(args)
    prec = args.precision
    verb = args.verb
    if verb == "density":
        doc = rho.to_json(prec)
        doc["purity"] = round(rho.purity(), prec)
        doc["pure"] = rho.is_pure()
        _emit(out, args, doc, lambda: _matrix_table(rho, prec))
    elif verb == "entropy":
        doc = {"value": round(qm.quantum_logical_entropy(rho), prec)}
        if rho.has_exact_form:
            doc["exact"] = str(qm.quantum_logical_entropy_exact(rho))
        _emit(out, args, doc)
    elif verb == "amplitudes":
        amp = qm.extract_amplitudes(rho)
        doc = amp.to_json(prec)
        doc["probabilities"] = [round(float(v), prec) for v in amp.probabilities()]
        _emit(out, args, doc)
    else:
        if args.f is None:
            raise UsageError("quantum measure needs --f")
        f = qm.eigenfunction_from_json(rho.universe, load_json(args.f, "eigenfunction"))
        result = qm.lueders_measure(rho, f)
        increase, zeroed = qm.measurement_entropy_increase(rho, f)
        doc = {
            "state": result.state.to_json(prec),
            "outcomes": [
                {
                    "eigenvalue": o.eigenvalue,
                    "block": list(o.block),
                    "probability": round(o.probability, prec),
                    **({"exact_probability": str(o.exact_probability)} if o.exact_probability is not None else {}),
                }
                for o in result.outcomes
            ],
            "entropy_increase": round(increase, prec),
            "zeroed_sum": round(zeroed, prec),
        }

        def table() -> str:
            lines = [_matrix_table(result.state, prec).rstrip("\n"), ""]
            lines += [f"r={o.eigenvalue:g}  {{{','.join(o.block)}}}  p={o.probability:.{prec}f}" for o in result.outcomes]
            lines.append(f"entropy increase {increase:.{prec}f}  zeroed sum {zeroed:.{prec}f}")
            return "\n".join(lines) + "\n"

        _emit(out, args, doc, table)


# qmsets ------------------------------------------------------------------


def _evolution(arg: str | None) -> qs.BasisTable:
    if arg is None:
        return qs.primed_basis()
    return qs.BasisTable.from_mapping(qs.SLIT_UNIVERSE, load_json(arg, "evolution"), "U'", "'")


def cmd_qmsets(args, out) -> None:
    verb = args.verb
    if verb == "double-slit":
        if args.scenario is not None:
            scenario = qs.scenario_from_json(load_json(args.scenario, "scenario"))
            if args.detect is not None:
                scenario = qs.SlitScenario(detection=args.detect, evolution=scenario.evolution)
        else:
            detect = True if args.detect is None else args.detect
            scenario = qs.SlitScenario(detection=detect, evolution=_evolution(args.evolution))
        dist = qs.run_double_slit(scenario)
        events = qs.trace_lattice_path(scenario)
        doc = dist.to_json()
        if args.trace:
            doc["trace"] = [ev.to_json() for ev in events]
        _emit(out, args, doc, lambda: _flat_table(doc["outcomes"]), lambda: qs.trace_to_dot(events))
    elif verb == "ket-table":
        U = qs.SLIT_UNIVERSE
        bases = [qs.BasisTable.standard(U)]
        if args.evolution is not None:
            bases.append(_evolution(args.evolution))
        else:
            bases += [qs.primed_basis(), qs.double_primed_basis()]
        table = qs.ket_table(bases)
        _emit(out, args, table.to_json(), table.to_text)
    else:
        if args.vector is None:
            raise UsageError("qmsets evolve needs --vector")
        labels = load_json(args.vector, "subset")
        v = qs.SubsetVector.of(qs.SLIT_UNIVERSE, labels)
        basis = _evolution(args.evolution)
        steps = [v]
        for _ in range(args.steps):
            steps.append(qs.apply_evolution(steps[-1], basis))
        doc = {"vector": list(steps[-1].members), "notation": steps[-1].notation()}
        if args.steps > 1:
            doc["path"] = [s.notation() for s in steps]
        _emit(out, args, doc, lambda: " -> ".join(s.notation() for s in steps) + "\n")


# stats -------------------------------------------------------------------


def _count_doc(count: int) -> dict:
    return {"count": str(count), "probability_each": str(Fraction(1, count)) if count else None}


def cmd_stats(args, out) -> None:
    req = {}
    if args.request is not None:
        req = load_json(args.request, "stats_request")
    k = args.k if args.k is not None else req.get("k")
    n = args.n if args.n is not None else req.get("n")
    if k is None or n is None:
        raise UsageError("give --k and --n (or --request)")
    verb = args.verb
    if verb == "mb":
        theta = args.theta if args.theta is not None else req.get("theta")
        if isinstance(theta, str):
            theta = load_json(theta)
        if args.all:
            occ.OccupancyProfile(k, n)
            rows = [(t, occ.mb_probability(occ.OccupancyProfile(k, n, t))) for t in occ.occupancy_profiles(k, n)]
            doc = {"profiles": [{"theta": list(t), "probability": str(q)} for t, q in rows],
                   "total": str(sum((q for _, q in rows), Fraction(0)))}
            _emit(out, args, doc, lambda: "".join(f"{list(t)}  {q}\n" for t, q in rows))
            return
        q = occ.mb_probability(occ.OccupancyProfile(k, n, tuple(theta) if theta is not None else None))
        _emit(out, args, rational_out(q), lambda: f"{q}\n")
        return
    if verb == "fd":
        count = occ.fd_count(k, n)
        doc = _count_doc(count)
        if count == 0:
            doc["exclusion_violated"] = True
    elif verb == "be":
        doc = _count_doc(occ.be_count(k, n))
    else:
        regime = occ.RegimeSpec(
            args.balls or req.get("balls", "distinguishable"),
            args.boxes or req.get("boxes", "distinguishable"),
            args.map or req.get("map", "arbitrary"),
        )
        doc = _count_doc(occ.twelvefold_count(k, n, regime, oracle=args.oracle))
        doc["regime"] = {"balls": regime.balls, "boxes": regime.boxes, "map": regime.map_kind}
    _emit(out, args, doc)


# parser ------------------------------------------------------------------


def _globals(p: argparse.ArgumentParser, top: bool) -> None:
    default = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--tolerance", type=float, default=default(qm.DEFAULT_TOL), help="numerical tolerance")
    p.add_argument("--format", choices=FORMATS, default=default("json"), help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="partlogic", description="Partition logic, logical entropy and friends.")
    _globals(parser, top=True)
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(sub, name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        _globals(p, top=False)
        return p

    g = groups.add_parser("partition", help="partition lattice operations")
    verbs = g.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in ("join", "meet", "implies", "refines", "dits"):
        p = leaf(verbs, verb, f"{verb} of partitions")
        p.add_argument("--pi", required=True, help="partition JSON")
        if verb != "dits":
            p.add_argument("--sigma", required=True, help="partition JSON")
    p = leaf(verbs, "lattice", "full partition lattice")
    p.add_argument("--n", type=int)
    p.add_argument("--universe", help="labels as JSON list or a string of letters")
    p.add_argument("--cap", type=int, default=part.DEFAULT_CAP)

    g = groups.add_parser("entropy", help="classical logical entropy")
    verbs = g.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in ("partition", "dist", "joint", "mutual", "difference", "box"):
        p = leaf(verbs, verb, f"{verb} entropy")
        p.add_argument("--p", required=verb == "dist", help="distribution JSON (uniform if omitted)")
        if verb != "dist":
            p.add_argument("--pi", required=verb != "box", help="partition JSON")
        else:
            p.set_defaults(pi=None)
        if verb in ("joint", "mutual", "difference"):
            p.add_argument("--sigma", required=True, help="partition JSON")
        else:
            p.set_defaults(sigma=None)

    g = groups.add_parser("quantum", help="density matrices and measurement")
    verbs = g.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in ("density", "measure", "entropy", "amplitudes"):
        p = leaf(verbs, verb, f"quantum {verb}")
        p.add_argument("--rho", help="density-matrix JSON")
        p.add_argument("--subset", help="superposition support as a JSON list")
        p.add_argument("--pi", help="partition JSON for a mixture")
        p.add_argument("--p", help="distribution JSON")
        p.add_argument("--universe", dest="universe_labels", help="labels for a bare --p list")
        p.add_argument("--precision", type=int, default=12)
        if verb == "measure":
            p.add_argument("--f", help="eigenvalue-function JSON")
        else:
            p.set_defaults(f=None)

    g = groups.add_parser("qmsets", help="quantum mechanics over sets")
    verbs = g.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    p = leaf(verbs, "double-slit", "two-slit experiment")
    p.add_argument("--detect", dest="detect", action="store_true", default=None)
    p.add_argument("--no-detect", dest="detect", action="store_false")
    p.add_argument("--scenario", help="scenario JSON")
    p.add_argument("--evolution", help="evolution table JSON")
    p.add_argument("--trace", action="store_true")
    p = leaf(verbs, "ket-table", "every vector in several bases")
    p.add_argument("--evolution", help="evolution table JSON")
    p = leaf(verbs, "evolve", "apply the evolution to a subset")
    p.add_argument("--vector", required=True, help="subset as JSON list")
    p.add_argument("--evolution", help="evolution table JSON")
    p.add_argument("--steps", type=int, default=1)

    g = groups.add_parser("stats", help="occupancy statistics")
    verbs = g.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in ("mb", "fd", "be", "twelvefold"):
        p = leaf(verbs, verb, f"{verb} statistics")
        p.add_argument("--k", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--request", help="request JSON")
        if verb == "mb":
            p.add_argument("--theta", help="occupation numbers as JSON list")
            p.add_argument("--all", action="store_true", help="list every profile")
        if verb == "twelvefold":
            p.add_argument("--balls")
            p.add_argument("--boxes")
            p.add_argument("--map")
            p.add_argument("--oracle", action="store_true", help="count by enumeration")
    return parser


COMMANDS = {
    "partition": cmd_partition,
    "entropy": cmd_entropy,
    "quantum": cmd_quantum,
    "qmsets": cmd_qmsets,
    "stats": cmd_stats,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    """Execute one command; returns the exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    _Stdin.text = None
    try:
        args = build_parser().parse_args(argv)
        if args.tolerance <= 0:
            raise UsageError("--tolerance must be positive")
        COMMANDS[args.group](args, out)
    except PartLogicError as exc:
        msg = " ".join(str(exc).split())
        err.write(f"error: {type(exc).__name__}: {msg}\n")
        return exc.exit_code
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
