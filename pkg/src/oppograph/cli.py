"""Command-line front end: recognize, orient, aux, oracle, and sweep.

Exit codes: 0 member, 1 non-member, 2 undecided, 3 sweep disagreement,
10 parse error, 11 usage error.  The flip cap defaults to the
OPPO_FLIP_CAP environment variable when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .constraints import ConstraintGraph, OddWalkCertificate, bipartition_or_odd_walk
from .generate import random_distance_hereditary, random_ptolemaic, random_tree
from .graphs import Graph, GraphError, emit_dot, encode_graph6, parse_edge_list, parse_graph6
from .oracle import OracleCapError, oracle_coalition, oracle_generalized_opposition, oracle_opposition
from .p4 import COALITION, GENERALIZED_OPPOSITION, OPPOSITION
from .recognize import (
    DEFAULT_FLIP_CAP,
    MEMBER,
    NON_MEMBER,
    UNDECIDED,
    PtolemaicOrientationError,
    ptolemaic_opposition_orient,
    recognize_coalition,
    recognize_generalized_opposition,
    recognize_opposition,
    verdict_payload,
)

EXIT_MEMBER = 0
EXIT_NON_MEMBER = 1
EXIT_UNDECIDED = 2
EXIT_DISAGREEMENT = 3
EXIT_PARSE = 10
EXIT_USAGE = 11

_DECISION_EXIT = {MEMBER: EXIT_MEMBER, NON_MEMBER: EXIT_NON_MEMBER, UNDECIDED: EXIT_UNDECIDED}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(f"{self.prog}: error: {message}", EXIT_USAGE)


def _flip_cap_default() -> int:
    value = os.environ.get("OPPO_FLIP_CAP")
    if value is None:
        return DEFAULT_FLIP_CAP
    try:
        cap = int(value)
    except ValueError as exc:
        raise CliError(f"OPPO_FLIP_CAP is not an integer: {value!r}", EXIT_USAGE) from exc
    if cap < 1:
        raise CliError("OPPO_FLIP_CAP must be at least 1", EXIT_USAGE)
    return cap


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from exc


def _looks_like_graph6(line: str) -> bool:
    if not line or " " in line or "\t" in line:
        return False
    try:
        parse_graph6(line)
        return True
    except GraphError:
        return False


def load_graph(path: str, fmt: str) -> Graph:
    """Read one graph; format auto-detection falls back to edge list."""
    text = _read_text(path)
    if fmt == "auto":
        if path.endswith(".g6"):
            fmt = "graph6"
        else:
            first = next((ln for ln in text.splitlines() if ln.strip()), "")
            fmt = "graph6" if _looks_like_graph6(first.strip()) else "edgelist"
    try:
        if fmt == "graph6":
            first = next((ln for ln in text.splitlines() if ln.strip()), "")
            return parse_graph6(first.strip())
        return parse_edge_list(text)
    except GraphError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc


def _recognizer(graph_class: str):
    return {
        OPPOSITION: recognize_opposition,
        GENERALIZED_OPPOSITION: recognize_generalized_opposition,
        COALITION: recognize_coalition,
    }[graph_class]


def _oracle(graph_class: str):
    return {
        OPPOSITION: oracle_opposition,
        GENERALIZED_OPPOSITION: oracle_generalized_opposition,
        COALITION: oracle_coalition,
    }[graph_class]


def _run_recognizer(g: Graph, graph_class: str, flip_cap: int, want_witness: bool):
    if graph_class == OPPOSITION:
        return recognize_opposition(g, flip_cap=flip_cap, want_witness=want_witness)
    if graph_class == COALITION:
        return recognize_coalition(g, flip_cap=flip_cap, want_witness=want_witness)
    return recognize_generalized_opposition(g)


def _print_human(out, g: Graph, verdict, show_witness: bool) -> None:
    payload = verdict_payload(verdict, g)
    out.write(f"class: {payload['class']}\n")
    out.write(f"decision: {payload['decision']}\n")
    out.write(f"method: {payload['method']}\n")
    cert = payload["certificate"]
    out.write(f"certificate: {cert['kind']}\n")
    if cert["kind"] == "orientation":
        arcs = " ".join(f"{t}->{h}" for t, h in cert["arcs"])
        out.write(f"  arcs: {arcs}\n")
    elif cert["kind"] == "odd-closed-walk":
        walk = " ".join(f"({x},{y})" for x, y in cert["walk"])
        out.write(f"  walk[{len(cert['walk']) - 1}]: {walk}\n")
    elif cert["kind"] == "flip-exhaustion":
        out.write(f"  flips exhausted: {len(cert['entries'])}\n")
        for entry in cert["entries"]:
            flips = "".join(str(b) for b in entry["flips"])
            out.write(f"  flips {flips or '-'}: cycle {'->'.join(entry['cycle'])}\n")
    elif cert["kind"] == "pattern-embedding":
        pairs = " ".join(f"{k}:{v}" for k, v in sorted(cert["map"].items(), key=lambda kv: int(kv[0])))
        out.write(f"  pattern {cert['pattern']}: {pairs}\n")
    if show_witness and "witness" in payload:
        wit = payload["witness"]
        pairs = " ".join(f"{k}:{v}" for k, v in sorted(wit["map"].items(), key=lambda kv: int(kv[0])))
        out.write(f"witness: {wit['pattern']} at {pairs}\n")
    stats = payload["stats"]
    shown = {k: v for k, v in stats.items() if v is not None}
    if shown:
        out.write("stats: " + " ".join(f"{k}={v}" for k, v in sorted(shown.items())) + "\n")


def cmd_recognize(args, out) -> int:
    g = load_graph(args.input, args.format)
    verdict = _run_recognizer(g, args.graph_class, args.flip_cap, args.witness)
    if args.output == "json":
        payload = verdict_payload(verdict, g)
        payload["input"] = args.input
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif args.output == "dot":
        if verdict.is_member:
            out.write(emit_dot(g, verdict.certificate))
        else:
            marked = verdict.witness.mapping if verdict.witness is not None else None
            out.write(emit_dot(g, highlight=marked))
    else:
        _print_human(out, g, verdict, args.witness)
    if args.oracle:
        try:
            res = _oracle(args.graph_class)(g)
        except OracleCapError as exc:
            raise CliError(str(exc), EXIT_USAGE) from exc
        out.write(f"oracle: {res.decision}\n")
        if (res.decision == MEMBER) != verdict.is_member and verdict.decision != UNDECIDED:
            out.write("oracle disagreement\n")
            return EXIT_DISAGREEMENT
    return _DECISION_EXIT[verdict.decision]


def cmd_orient(args, out) -> int:
    g = load_graph(args.input, args.format)
    if args.method == "ptolemaic":
        try:
            orientation = ptolemaic_opposition_orient(g, flip_cap=args.flip_cap)
        except (ValueError, PtolemaicOrientationError) as exc:
            # non-members still deserve their certificate and exit code
            verdict = _run_recognizer(g, OPPOSITION, args.flip_cap, want_witness=True)
            if verdict.decision == NON_MEMBER:
                _print_human(out, g, verdict, show_witness=True)
                return EXIT_NON_MEMBER
            raise CliError(f"ptolemaic constructor: {exc}", EXIT_USAGE) from exc
        verdict = None
    else:
        verdict = _run_recognizer(g, args.graph_class, args.flip_cap, want_witness=True)
        if verdict.decision == UNDECIDED:
            out.write("undecided: flip cap hit\n")
            return EXIT_UNDECIDED
        if not verdict.is_member:
            _print_human(out, g, verdict, show_witness=True)
            return EXIT_NON_MEMBER
        orientation = verdict.certificate
    if args.output == "dot":
        out.write(emit_dot(g, orientation))
    else:
        for t, h in orientation.arcs():
            out.write(f"{g.label(t)} {g.label(h)}\n")
    return EXIT_MEMBER


def cmd_aux(args, out) -> int:
    g = load_graph(args.input, args.format)
    kind = OPPOSITION if args.kind == "opposition" else COALITION
    cg = ConstraintGraph(kind, g)
    if not args.check_bipartite:
        out.write(cg.to_dot())
        return EXIT_MEMBER
    res = bipartition_or_odd_walk(cg)
    if isinstance(res, OddWalkCertificate):
        walk = " ".join(f"({g.label(x)},{g.label(y)})" for x, y in res.walk)
        out.write(f"non-bipartite: odd walk of length {res.length()}: {walk}\n")
        return EXIT_NON_MEMBER
    lines = ["graph {"]
    for i in range(cg.var_count):
        color = "lightblue" if res.side[i] == 0 else "lightyellow"
        lines.append(
            f'  "{cg.var_label(i)}" [style=filled, fillcolor={color}, '
            f'comment="component {res.component[i]}"];'
        )
    for i in range(cg.var_count):
        for j in cg.adj[i]:
            if i < j:
                lines.append(f'  "{cg.var_label(i)}" -- "{cg.var_label(j)}";')
    lines.append("}")
    out.write("\n".join(lines) + "\n")
    out.write(f"// bipartite, {res.component_count} component(s)\n")
    return EXIT_MEMBER


def cmd_oracle(args, out) -> int:
    g = load_graph(args.input, args.format)
    try:
        res = _oracle(args.graph_class)(g)
    except OracleCapError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    if args.output == "json":
        payload = {
            "schema": "oppograph.oracle/1",
            "class": res.graph_class,
            "decision": res.decision,
            "witness_order": list(res.witness_order) if res.witness_order else None,
        }
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(f"class: {res.graph_class}\ndecision: {res.decision}\n")
        if res.witness_order:
            out.write("order: " + " ".join(g.label(v) for v in res.witness_order) + "\n")
    return _DECISION_EXIT[res.decision]


def _sweep_graphs(args):
    if args.generator == "stdin":
        for lineno, line in enumerate(sys.stdin, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield f"line {lineno}", parse_graph6(line)
            except GraphError as exc:
                raise CliError(f"stdin line {lineno}: {exc}", EXIT_PARSE) from exc
    else:
        make = {
            "tree": random_tree,
            "dh": random_distance_hereditary,
            "ptolemaic": random_ptolemaic,
        }[args.generator]
        for i in range(args.count):
            n = 1 + ((args.seed + i) * 2654435761 + i) % args.max_n
            yield f"{args.generator}#{i}", make(n, args.seed + i)


def cmd_sweep(args, out) -> int:
    classes = [args.graph_class] if args.graph_class else list((OPPOSITION, GENERALIZED_OPPOSITION, COALITION))
    counts = {c: {"graphs": 0, MEMBER: 0, NON_MEMBER: 0, UNDECIDED: 0, "oracle": 0} for c in classes}
    bad: list[str] = []
    for name, g in _sweep_graphs(args):
        for graph_class in classes:
            verdict = _run_recognizer(g, graph_class, args.flip_cap, want_witness=False)
            tally = counts[graph_class]
            tally["graphs"] += 1
            tally[verdict.decision] += 1
            if verdict.decision == UNDECIDED:
                continue
            try:
                res = _oracle(graph_class)(g)
            except OracleCapError:
                continue
            tally["oracle"] += 1
            if res.is_member != verdict.is_member:
                bad.append(f"{name} {graph_class} recognizer={verdict.decision} oracle={res.decision} {encode_graph6(g)}")
    for graph_class in classes:
        tally = counts[graph_class]
        out.write(
            f"{graph_class}: graphs={tally['graphs']} member={tally[MEMBER]} "
            f"non-member={tally[NON_MEMBER]} undecided={tally[UNDECIDED]} "
            f"oracle-checked={tally['oracle']}\n"
        )
    out.write(f"disagreements: {len(bad)}\n")
    for line in bad:
        out.write(f"  {line}\n")
    return EXIT_DISAGREEMENT if bad else EXIT_MEMBER


def build_parser() -> _Parser:
    parser = _Parser(prog="oppograph", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_class=True):
        if with_class:
            p.add_argument(
                "--class",
                dest="graph_class",
                choices=[OPPOSITION, GENERALIZED_OPPOSITION, COALITION],
                required=True,
            )
        p.add_argument("--format", choices=["auto", "edgelist", "graph6"], default="auto")
        p.add_argument("--flip-cap", type=int, default=None)
        p.add_argument("input", help="input file, or - for stdin")

    p = sub.add_parser("recognize", help="decide membership with a certificate")
    common(p)
    p.add_argument("--output", choices=["human", "json", "dot"], default="human")
    p.add_argument("--witness", action="store_true", help="also locate a forbidden pattern on rejection")
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("orient", help="emit a verified orientation of a member")
    common(p)
    p.add_argument("--output", choices=["arcs", "dot"], default="dot")
    p.add_argument("--method", choices=["auto", "ptolemaic"], default="auto")
    p.set_defaults(func=cmd_orient)

    p = sub.add_parser("aux", help="emit the auxiliary constraint graph as DOT")
    common(p, with_class=False)
    p.add_argument("--kind", choices=["opposition", "coalition"], required=True)
    p.add_argument("--check-bipartite", action="store_true")
    p.set_defaults(func=cmd_aux)

    p = sub.add_parser("oracle", help="brute-force membership on small graphs")
    common(p)
    p.add_argument("--output", choices=["human", "json"], default="human")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="recognizer-vs-oracle agreement over a corpus")
    p.add_argument(
        "--class",
        dest="graph_class",
        choices=[OPPOSITION, GENERALIZED_OPPOSITION, COALITION],
        default=None,
        help="sweep a single class (default: all three)",
    )
    p.add_argument("--generator", choices=["stdin", "tree", "dh", "ptolemaic"], default="stdin")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-n", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--flip-cap", type=int, default=None)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "flip_cap", None) is None:
            args.flip_cap = _flip_cap_default()
        elif args.flip_cap < 1:
            raise CliError("--flip-cap must be at least 1", EXIT_USAGE)
        return args.func(args, out)
    except CliError as exc:
        print(exc, file=sys.stderr)
        return exc.code


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
