"""Command-line front end.

Subcommands: group (construct and describe), cca (single-graph or
exhaustive group verdict), triple validate / triple search, reproduce
(the acceptance matrix).  Reports are plain dicts rendered as text or
JSON; exit codes: 0 success, 1 criterion failure, 2 usage or parse error,
3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import groupzoo as gz
from . import reproduce as rp
from . import triples as tr
from .cayley import ConnectionSet, InvalidConnectionSet, build
from .colourauts import is_cca_graph, is_cca_group_exhaustive
from .fgroup import DEFAULT_ENUM_LIMIT, DEFAULT_GRAPH_LIMIT, LimitExceeded

EXIT_OK = 0
EXIT_CRITERION = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


class CLIError(ValueError):
    """Bad user input (maps to exit code 2)."""


def _parse_elements(G, text: str) -> list:
    """Comma-separated element list in the group's own notation."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            out.append(G.elem_parse(part))
        except Exception as ex:
            raise CLIError(f"cannot parse element {part!r}: {ex}") from ex
    return out


def _parse_subgroup(G, spec: str):
    """Subgroup specs: point:K | pointwise:PTS | setwise:PTS |
    dihedral:M | gens:ELEMS.  Points are 1-based, matching cycle notation.
    """
    kind, _, arg = spec.partition(":")
    try:
        if kind == "point":
            return G.point_stabilizer(int(arg) - 1)
        if kind == "pointwise":
            pts = [int(p) - 1 for p in arg.split(",")]
            return gz.pointwise_stabilizer(G, pts)
        if kind == "setwise":
            pts = [int(p) - 1 for p in arg.split(",")]
            return gz.setwise_stabilizer(G, pts)
        if kind == "dihedral":
            cyc = gz.cyclic_subgroups_of_order(G, int(arg))
            if not cyc:
                raise CLIError(f"no cyclic subgroup of order {arg}")
            return gz.normalizer_bruteforce(G, cyc[0])
        if kind == "gens":
            return G.generated_subgroup(_parse_elements(G, arg))
    except (ValueError, AttributeError) as ex:
        if isinstance(ex, CLIError):
            raise
        raise CLIError(f"bad subgroup spec {spec!r}: {ex}") from ex
    raise CLIError(f"unknown subgroup spec kind {kind!r}")


def _construct(expr: str):
    try:
        return gz.construct(expr)
    except LimitExceeded:
        raise
    except Exception as ex:
        raise CLIError(f"cannot construct group {expr!r}: {ex}") from ex


def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.json or not args.out:
        print(text if args.json else _render_text(report))


def _render_text(report: dict, indent: str = "") -> str:
    lines = []

    def walk(obj, pad):
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}{k}:")
                    walk(v, pad + "  ")
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(v, pad + "  ")
                else:
                    lines.append(f"{pad}- {v}")

    walk(report, indent)
    return "\n".join(lines)


def _base_report(args, command: str) -> dict:
    return {
        "schema_version": rp.SCHEMA_VERSION,
        "command": command,
        "config": {
            "seed": args.seed,
            "threads": args.threads,
            "budget": args.budget,
            "graph_limit": args.limit_graph,
            "enum_limit": args.limit_enum,
        },
    }


def cmd_group(args) -> int:
    G = _construct(args.expr)
    report = _base_report(args, "group")
    degree = getattr(G, "degree", None)
    report["results"] = {
        "expr": args.expr,
        "order": G.order(),
        "degree": degree,
        "has_element_of_order4": gz.has_element_of_order4(G, args.limit_enum),
        "involution_count": len(G.involutions(args.limit_enum)),
    }
    _emit(report, args)
    return EXIT_OK


def cmd_cca(args) -> int:
    G = _construct(args.expr)
    report = _base_report(args, "cca")
    if args.exhaustive:
        verdict = is_cca_group_exhaustive(G, args.budget)
        report["results"] = verdict.to_json_dict(G)
    else:
        if not args.set:
            raise CLIError("cca requires --set or --exhaustive")
        elems = _parse_elements(G, args.set)
        conn = ConnectionSet.from_elements(G, elems, close_inverses=True)
        graph = build(G, conn, args.limit_graph)
        if not graph.is_connected():
            report["results"] = {
                "group_order": G.order(),
                "S": [G.elem_str(s) for s in conn.elements],
                "connected": False,
            }
        else:
            verdict = is_cca_graph(graph)
            report["results"] = verdict.to_json_dict(graph)
    _emit(report, args)
    return EXIT_OK


def cmd_triple(args) -> int:
    G = _construct(args.expr)
    report = _base_report(args, f"triple {args.action}")
    if args.action == "validate":
        if args.tau is None:
            raise CLIError("triple validate requires --tau")
        S = _parse_elements(G, args.S or "")
        T = _parse_elements(G, args.T or "")
        tau = _parse_elements(G, args.tau)
        if len(tau) != 1:
            raise CLIError("--tau must be a single element")
        try:
            trip = tr.validate_triple(G, S, T, tau[0], args.limit_enum)
        except ValueError as ex:
            raise CLIError(str(ex)) from ex
        report["results"] = trip.to_json_dict()
        if trip.valid and args.crosscheck:
            if G.order() > args.limit_graph:
                report["results"]["crosscheck"] = "skipped: over graph limit"
            else:
                rep = tr.crosscheck_prop22(G, trip, args.limit_graph)
                report["results"]["crosscheck"] = rep.to_json_dict()
    else:
        if not args.subgroup:
            raise CLIError("triple search requires --subgroup")
        H = _parse_subgroup(G, args.subgroup)
        trip = tr.search_triple_subgroup_strategy(G, H, limit=args.limit_enum)
        if trip is None:
            report["results"] = {"found": False,
                                 "subgroup_order": H.order()}
        else:
            report["results"] = {"found": True,
                                 "subgroup_order": H.order()}
            report["results"].update(trip.to_json_dict())
            if G.order() <= args.limit_graph:
                rep = tr.crosscheck_prop22(G, trip, args.limit_graph)
                report["results"]["crosscheck"] = rep.to_json_dict()
    _emit(report, args)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    only = None
    if args.only:
        names = []
        for part in args.only.split(","):
            part = part.strip()
            if part.isdigit():
                part = f"criterion_{part}"
            if part not in rp.CRITERIA:
                raise CLIError(f"unknown criterion {part!r}")
            names.append(part)
        only = names
    report = rp.run_suite(only=only, threads=args.threads, seed=args.seed,
                          budget=args.budget, with_timing=args.timing)
    _emit(report, args)
    if not report["passed"]:
        failed = [k for k, v in report["results"].items()
                  if not v.get("pass", False)]
        print(f"FAILED criteria: {', '.join(failed)}", file=sys.stderr)
        return EXIT_CRITERION
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true",
                   help="emit the full JSON report on stdout")
    p.add_argument("--out", metavar="FILE", help="write JSON report to FILE")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="thread budget (results are thread-count invariant)")
    p.add_argument("--budget", type=int, default=2**20,
                   help="connection-set budget for exhaustive verdicts")
    p.add_argument("--limit-graph", type=int, default=DEFAULT_GRAPH_LIMIT,
                   help="max vertex count for graph construction")
    p.add_argument("--limit-enum", type=int, default=DEFAULT_ENUM_LIMIT,
                   help="max element count for enumeration")
    p.add_argument("--seed", type=int, default=12345,
                   help="seed for the randomized property suites")
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock timing in the report")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ccakit",
        description="CCA verdicts and non-CCA certificates for coloured "
                    "Cayley graphs of finite groups")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("group", help="construct a group and describe it")
    p.add_argument("expr", help="group expression, e.g. 'S5', 'PSL2(17)', "
                   "'C2 x D4', 'higman:n=6,seed=1'")
    _add_common(p)
    p.set_defaults(fn=cmd_group)

    p = sub.add_parser("cca", help="CCA verdict for a graph or a group")
    p.add_argument("expr")
    p.add_argument("--set", metavar="ELEMS",
                   help="comma-separated connection set (inverses added)")
    p.add_argument("--exhaustive", action="store_true",
                   help="check every connected Cayley graph of the group")
    _add_common(p)
    p.set_defaults(fn=cmd_cca)

    p = sub.add_parser("triple", help="validate or search non-CCA triples")
    p.add_argument("action", choices=["validate", "search"])
    p.add_argument("expr")
    p.add_argument("--S", metavar="ELEMS", help="elements of S")
    p.add_argument("--T", metavar="ELEMS", help="elements of T")
    p.add_argument("--tau", metavar="ELEM", help="the involution tau")
    p.add_argument("--subgroup", metavar="SPEC",
                   help="point:K | pointwise:PTS | setwise:PTS | "
                        "dihedral:M | gens:ELEMS (points 1-based)")
    p.add_argument("--crosscheck", action="store_true",
                   help="also verify the graph is connected and non-CCA")
    _add_common(p)
    p.set_defaults(fn=cmd_triple)

    p = sub.add_parser("reproduce", help="run the acceptance matrix")
    p.add_argument("--suite", default="paper", choices=["paper"])
    p.add_argument("--only", metavar="LIST",
                   help="comma-separated criteria, e.g. 'criterion_3' or '3,4'")
    _add_common(p)
    p.set_defaults(fn=cmd_reproduce)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return EXIT_USAGE if ex.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except (CLIError, InvalidConnectionSet) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    except LimitExceeded as ex:
        print(f"limit exceeded: {ex}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
