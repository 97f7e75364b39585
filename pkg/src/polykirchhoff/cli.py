"""Command-line front end.

Exit codes: 0 success, 1 computation error, 2 theorem verification failed,
64 usage error (bad flags or unparsable spec).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .chains import build_chain, format_spec, parse_spec, recognize_chain
from .errors import (
    DisconnectedNetworkError,
    EnumerationCapExceeded,
    NoValidCut,
    NumericalFailure,
    RuleNotApplicable,
    SpecError,
    SpecParseError,
)
from .extremal import DEFAULT_CAP, enumerate_chains, find_extremal, verify_theorems
from .isomer import flip_chain
from .reduction import fan_reduce
from .resistance import LaplacianFactor, read_network, wiener_index

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFY_FAILED = 2
EXIT_USAGE = 64


def fmt(x) -> str:
    return format(float(x), ".12g")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def parse_range(text: str) -> list[int]:
    """``"5..8"`` -> [5, 6, 7, 8]; also accepts ``"5"`` and ``"5,7"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}; use A..B, A or A,B,...") from None


def _spec_arg(text: str):
    try:
        return parse_spec(text)
    except SpecParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("tolerance must be > 0")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("value must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polykirchhoff", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=1e-9)
    common.add_argument("--workers", type=_positive_int, default=1)
    common.add_argument("--cap", type=_positive_int, default=DEFAULT_CAP)

    p = sub.add_parser("compute", parents=[common], help="indices of one chain or graph export")
    p.add_argument("--spec", type=_spec_arg, required=True)
    p.add_argument("--index", choices=["kf", "wiener", "all"], default="all")
    p.add_argument("--export", choices=["json", "edges"], help="print the graph instead of indices")

    p = sub.add_parser("resistance", parents=[common], help="resistance distances")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec", type=_spec_arg)
    src.add_argument("--graph", type=Path, help="JSON or 'u v [resistance]' edge list")
    p.add_argument("--pair", type=int, nargs=2, metavar=("U", "V"))
    p.add_argument("--vertex", type=int, help="print the resistance sum at one vertex")
    p.add_argument("--format", choices=["json", "csv", "edges"], default="json")

    p = sub.add_parser("enumerate", parents=[common], help="list chain encodings")
    p.add_argument("--spec-family", required=True, metavar="K:H")
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--count", action="store_true")

    p = sub.add_parser("extremal", parents=[common], help="exhaustive search for Kf extremes")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--table", type=Path, help="write spec,kf,wiener CSV here")
    p.add_argument("--exact", action="store_true", help="re-decide near ties with rationals")

    p = sub.add_parser("verify", parents=[common], help="check extremal chains over a grid")
    p.add_argument("--k", type=parse_range, required=True)
    p.add_argument("--h", type=parse_range, required=True)
    p.add_argument("--json", action="store_true", help="print the JSON report")

    p = sub.add_parser("reduce", parents=[common], help="sweep a chain down to its last polygon")
    p.add_argument("--spec", type=_spec_arg, required=True)
    p.add_argument("--z", type=int, help="source vertex on the first polygon's free arc")
    p.add_argument("--trace", action="store_true", help="emit one JSON line per rewrite step")

    p = sub.add_parser("flip", parents=[common], help="S/T flip at an interior polygon")
    p.add_argument("--spec", type=_spec_arg, required=True)
    p.add_argument("--polygon", type=int, required=True)
    p.add_argument("--t", type=int, help="new top count for the polygon (default: keep)")
    p.add_argument("--show-cut", action="store_true")
    return parser


def _compute(args, out):
    g = build_chain(args.spec)
    if args.export == "json":
        out.write(g.to_json() + "\n")
        return EXIT_OK
    if args.export == "edges":
        out.write(g.to_edge_lines())
        return EXIT_OK
    if args.index == "kf":
        out.write(fmt(LaplacianFactor(g.to_network()).kirchhoff()) + "\n")
    elif args.index == "wiener":
        out.write(f"{wiener_index(g)}\n")
    else:
        kf = LaplacianFactor(g.to_network()).kirchhoff()
        record = {"spec": format_spec(args.spec), "n": g.n, "m": len(g.edges), "kf": float(fmt(kf)), "wiener": wiener_index(g)}
        out.write(json.dumps(record) + "\n")
    return EXIT_OK


def _resistance(args, out):
    net = build_chain(args.spec).to_network() if args.spec else read_network(args.graph.read_text())
    factor = LaplacianFactor(net)
    if args.pair:
        u, v = args.pair
        for x in (u, v):
            if x not in net.index:
                raise UsageError(f"vertex {x} is not in the network")
        out.write(fmt(factor.resistance(u, v)) + "\n")
        return EXIT_OK
    if args.vertex is not None:
        if args.vertex not in net.index:
            raise UsageError(f"vertex {args.vertex} is not in the network")
        out.write(fmt(factor.vertex_sum(args.vertex)) + "\n")
        return EXIT_OK
    verts = net.vertices
    omega = factor.matrix
    if args.format == "json":
        record = {
            "vertices": list(verts),
            "kf": float(fmt(factor.kirchhoff())),
            "matrix": [[float(fmt(x)) for x in row] for row in omega],
        }
        out.write(json.dumps(record) + "\n")
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["u", "v", "omega"])
        for i, u in enumerate(verts):
            for j in range(i + 1, len(verts)):
                writer.writerow([u, verts[j], fmt(omega[i, j])])
    else:
        for i, u in enumerate(verts):
            for j in range(i + 1, len(verts)):
                out.write(f"{u} {verts[j]} {fmt(omega[i, j])}\n")
    return EXIT_OK


def _enumerate(args, out):
    try:
        k_text, h_text = args.spec_family.split(":")
        k, h = int(k_text), int(h_text)
    except ValueError:
        raise UsageError(f"--spec-family expects K:H, got {args.spec_family!r}") from None
    stream = enumerate_chains(k, h, canonical=args.canonical, cap=args.cap)
    if args.count:
        out.write(f"{sum(1 for _ in stream)}\n")
    else:
        for spec in stream:
            out.write(format_spec(spec) + "\n")
    return EXIT_OK


def _extremal(args, out):
    report = find_extremal(
        args.k, args.h, cap=args.cap, tol=args.tol, exact=args.exact, workers=args.workers, table=bool(args.table)
    )
    if args.table:
        args.table.write_text(report.to_csv())
    out.write(report.to_json() + "\n")
    return EXIT_OK


def _verify(args, out):
    report = verify_theorems(args.k, args.h, tol=args.tol, cap=args.cap, workers=args.workers)
    if args.json:
        out.write(report.to_json() + "\n")
    else:
        for cell in report.cells:
            out.write(cell.line() + "\n")
    if not report.passed:
        for cell in report.cells:
            if not cell.passed:
                sys.stderr.write(f"failed: k={cell.k} h={cell.h} w={format_spec(cell.min_spec)} / {format_spec(cell.max_spec)}\n")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def _reduce(args, out):
    params, trace = fan_reduce(args.spec, z=args.z)
    if args.trace:
        out.write(trace.to_json_lines())
    summary = {
        "theta1": float(fmt(params.theta1)),
        "theta2": float(fmt(params.theta2)),
        "prefix_resistance": float(fmt(params.prefix_resistance)),
        "source": params.source,
        "center": params.center,
        "resistances": {str(x): float(fmt(r)) for x, r in params.resistances().items()},
    }
    out.write(json.dumps({"summary": summary}) + "\n")
    return EXIT_OK


def _flip(args, out):
    image, flipped, cut = flip_chain(args.spec, args.polygon, args.t)
    if args.show_cut:
        (u, v), (x, y) = cut.component1_terminals, cut.component2_terminals
        out.write(f"# cut u={u} v={v} x={x} y={y}: remove {u}-{x}, {v}-{y}; add {u}-{y}, {v}-{x}\n")
    decoded = recognize_chain(flipped.n, [e[:2] for e in flipped.edges])
    if decoded is not None:
        out.write(format_spec(decoded) + "\n")
    else:
        for a, b in sorted(flipped.edge_set()):
            out.write(f"{a} {b}\n")
    return EXIT_OK


_HANDLERS = {
    "compute": _compute,
    "resistance": _resistance,
    "enumerate": _enumerate,
    "extremal": _extremal,
    "verify": _verify,
    "reduce": _reduce,
    "flip": _flip,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return _HANDLERS[args.command](args, out)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (
        SpecError,
        EnumerationCapExceeded,
        NoValidCut,
        RuleNotApplicable,
        DisconnectedNetworkError,
        NumericalFailure,
        ValueError,
        OSError,
    ) as exc:
        sys.stderr.write(f"polykirchhoff: {exc}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
