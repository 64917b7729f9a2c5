"""Command-line front end: ``obslab <subcommand> ...``.

Exit codes: 0 ok, 1 negative verdict (characterisation fails), 2 usage,
3 unknown graph name, 4 malformed input file, 5 cap exceeded, 6 drawing
validation failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from obslab import __version__, gf2
from obslab.complex import (
    build_deleted_product,
    euler_characteristic,
    find_surface_graphs,
    star_condition_violations,
    surface_status,
    symmetric_quotient,
)
from obslab.drawing import DrawingError, crossing_report, parse_drawing
from obslab.graph import CrossingSet, Graph, GraphCapError, GraphError, parse_graph_name
from obslab.realisability import (
    max_realisable_bound,
    obstruction_model,
    realisable_spectrum,
    realisation_witness,
    verify_condition_characterisation,
)
from obslab.symmetry import SymmetryError, burnside_table, orbit_representatives

EXIT_USAGE = 2
EXIT_UNKNOWN_GRAPH = 3
EXIT_MALFORMED = 4
EXIT_CAP = 5
EXIT_INVALID = 6


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def cache_dir() -> Path:
    env = os.environ.get("OBSLAB_CACHE_DIR")
    return Path(env) if env else Path.home() / ".cache" / "obslab"


def input_hash(command: str, g: Graph) -> str:
    h = hashlib.sha256()
    h.update(g.canonical_bytes())
    h.update(f"|{command}|{__version__}".encode())
    return h.hexdigest()


def load_graph(args) -> Graph:
    if getattr(args, "file", None):
        try:
            return Graph.from_json(json.loads(Path(args.file).read_text()))
        except GraphCapError as exc:
            raise CliError(EXIT_CAP, str(exc)) from exc
        except (OSError, json.JSONDecodeError, GraphError) as exc:
            raise CliError(EXIT_MALFORMED, f"cannot read graph file: {exc}") from exc
    if not getattr(args, "graph", None):
        raise CliError(EXIT_USAGE, "either --graph or --file is required")
    try:
        return parse_graph_name(args.graph)
    except GraphCapError as exc:
        raise CliError(EXIT_CAP, str(exc)) from exc
    except GraphError as exc:
        raise CliError(EXIT_UNKNOWN_GRAPH, str(exc)) from exc


def load_set(spec: str, g: Graph, reference: CrossingSet) -> CrossingSet:
    if spec == "empty":
        return CrossingSet(g, 0)
    if spec == "all":
        return CrossingSet(g, (1 << len(g.pairs)) - 1)
    if spec == "reference":
        return reference
    try:
        obj = json.loads(Path(spec).read_text())
        if isinstance(obj, dict):
            obj = obj["set"]
        return CrossingSet.from_edge_pairs(g, obj)
    except (OSError, json.JSONDecodeError, KeyError, GraphError) as exc:
        raise CliError(EXIT_MALFORMED, f"cannot read crossing set: {exc}") from exc


# --- subcommands ------------------------------------------------------------


def cmd_graph_info(args) -> dict:
    g = load_graph(args)
    return {
        "vertices": g.n,
        "edges": g.m,
        "independent_pairs": len(g.pairs),
        "graph": g.to_json(),
    }


def cmd_complex(args) -> dict:
    g = load_graph(args)
    ordered = build_deleted_product(g)
    quotient = symmetric_quotient(ordered)
    closed, reason = surface_status(g)
    v, e, f = quotient.counts
    ov, oe, of = ordered.counts
    return {
        "cells": {"v": v, "e": e, "f": f},
        "ordered_cells": {"v": ov, "e": oe, "f": of},
        "closed_surface": closed,
        "surface_reason": reason,
        "euler": euler_characteristic(quotient),
        "ordered_euler": euler_characteristic(ordered),
        "violations": [
            {"edge": list(g.edges[i]), "vertex": v, "count": c}
            for i, v, c in star_condition_violations(g)
        ],
    }


def cmd_surface_scan(args) -> dict:
    try:
        graphs = find_surface_graphs(args.max_n)
    except ValueError as exc:
        raise CliError(EXIT_CAP, str(exc)) from exc
    return {"max_n": args.max_n, "graphs": [g.to_json() for g in graphs]}


def cmd_spectrum(args) -> dict:
    g = load_graph(args)
    key = input_hash("spectrum", g)
    path = cache_dir() / f"spectrum-{key}.json"
    if not args.no_cache and path.exists():
        return json.loads(path.read_text())
    model = obstruction_model(g)
    try:
        hist = realisable_spectrum(model, args.workers)
    except gf2.CapExceeded as exc:
        raise CliError(EXIT_CAP, str(exc)) from exc
    result = gf2.histogram_to_json(hist, model.dim, len(g.pairs))
    result["graph"] = g.to_json()
    result["support"] = [min(hist), max(hist)]
    result["total"] = sum(hist.values())
    if not args.no_cache:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(result, sort_keys=True))
    return result


def cmd_check(args) -> dict:
    g = load_graph(args)
    model = obstruction_model(g)
    a = load_set(args.set, g, model.reference)
    witness = realisation_witness(model, a)
    es = g.edges
    return {
        "realisable": witness is not None,
        "cardinality": len(a),
        "witness": None
        if witness is None
        else [{"vertex": v, "edge": list(es[e])} for v, e in witness],
    }


def cmd_characterise(args) -> dict:
    report = verify_condition_characterisation(load_graph(args))
    if not report["holds"]:
        raise _Verdict(report)
    return report


def cmd_orbits(args) -> dict:
    g = load_graph(args)
    try:
        orbits = orbit_representatives(g, args.card)
        table = burnside_table(g, [args.card])
    except SymmetryError as exc:
        raise CliError(EXIT_CAP, str(exc)) from exc
    return {
        "card": args.card,
        "orbit_count": len(orbits),
        "orbits": [{"set": o.representative.to_json(), "size": o.size} for o in orbits],
        "burnside": table,
    }


def cmd_bound(args) -> dict:
    try:
        return {"n": args.n, "bound": max_realisable_bound(args.n)}
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc


def cmd_verify_drawing(args) -> dict:
    try:
        d = parse_drawing(args.drawing)
        return crossing_report(d).to_json()
    except DrawingError as exc:
        code = EXIT_MALFORMED if exc.code == "MALFORMED" else EXIT_INVALID
        raise _Verdict({"valid": False, "code": exc.code, "error": str(exc)}, code) from exc


class _Verdict(Exception):
    """A report that is still printed but exits nonzero."""

    def __init__(self, report: dict, code: int = 1):
        super().__init__("negative verdict")
        self.report = report
        self.code = code


# --- output -----------------------------------------------------------------


def render(result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, sort_keys=True, indent=2) + "\n"
    lines = []

    def walk(obj, prefix):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(obj[k], f"{prefix}.{k}" if prefix else str(k))
        elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
            for i, item in enumerate(obj):
                walk(item, f"{prefix}[{i}]")
        else:
            lines.append(f"{prefix}: {json.dumps(obj)}")

    walk(result, "")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="obslab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True):
        if graph:
            sp.add_argument("--graph", help="named graph: K5, K3,3, M_4, C_5, P_3, ...")
            sp.add_argument("--file", help='graph JSON {"n": ..., "edges": [[u, v], ...]}')
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--no-cache", action="store_true")

    common(sub.add_parser("graph-info", help="edge and independent-pair counts"))
    common(sub.add_parser("complex", help="deleted product cell counts and surface test"))
    sp = sub.add_parser("surface-scan", help="graphs whose deleted product is a closed surface")
    common(sp, graph=False)
    sp.add_argument("--max-n", "--n", dest="max_n", type=int, default=6)
    common(sub.add_parser("spectrum", help="cardinality histogram of realisable sets"))
    sp = sub.add_parser("check", help="is a crossing set realisable?")
    common(sp)
    sp.add_argument("--set", required=True, help="JSON file, or empty / all / reference")
    common(sub.add_parser("characterise", help="parity-constraint characterisation"))
    sp = sub.add_parser("orbits", help="orbit representatives of k-subsets of pairs")
    common(sp)
    sp.add_argument("--card", type=int, required=True)
    sp = sub.add_parser("bound", help="upper bound on realisable cardinality for K_n")
    common(sp, graph=False)
    sp.add_argument("--n", type=int, required=True)
    sp = sub.add_parser("verify-drawing", help="exact crossing report of a drawing file")
    common(sp, graph=False)
    sp.add_argument("drawing")
    return p


COMMANDS = {
    "graph-info": cmd_graph_info,
    "complex": cmd_complex,
    "surface-scan": cmd_surface_scan,
    "spectrum": cmd_spectrum,
    "check": cmd_check,
    "characterise": cmd_characterise,
    "orbits": cmd_orbits,
    "bound": cmd_bound,
    "verify-drawing": cmd_verify_drawing,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    code = 0
    try:
        result = COMMANDS[args.command](args)
    except _Verdict as v:
        result, code = v.report, v.code
    except CliError as exc:
        print(f"obslab: error: {exc}", file=sys.stderr)
        return exc.code
    text = render(result, args.format)
    if args.out:
        Path(args.out).write_text(text)
        manifest = {
            "command": args.command,
            "input_hash": _manifest_hash(args),
            "version": __version__,
            "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3),
            "workers": args.workers,
            "output": str(args.out),
            "kernel": gf2.KERNEL,
        }
        Path(str(args.out) + ".manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    else:
        sys.stdout.write(text)
    return code


def _manifest_hash(args) -> str:
    h = hashlib.sha256()
    for k, v in sorted(vars(args).items()):
        if k in ("out", "workers", "no_cache", "format"):
            continue
        if k in ("file", "drawing", "set") and v and Path(v).is_file():
            v = hashlib.sha256(Path(v).read_bytes()).hexdigest()
        h.update(f"{k}={v};".encode())
    h.update(__version__.encode())
    return h.hexdigest()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
