"""Command line interface.

Exit codes: 0 success/verified, 1 verification failure, 2 usage error,
3 input validation error.
"""

from __future__ import annotations

import argparse
import json
import logging
import platform
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (absolute_in_triangles, diameter, is_c4_free, matching_violations,
                       parsons_partition, independence_bound, triangle_hypergraph, triangles)
from .certificate import Certificate, CertificateError, DescriptorMismatch, verify_certificate
from .gf import FieldError
from .graphio import GraphFormatError, load_artifact, to_adjacency_text, to_dimacs, write_artifact
from .plane import PlaneError, load_plane
from .polarity import (PolarityError, build_graph, er_graph, load_polarity, unitary_graph)
from .search import SearchConfig, SearchError, run_search
from .spectral import ConvergenceError, adjacency_spectrum, spectral_gap_check

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _graph_from_args(args):
    if getattr(args, "graph", None):
        return load_artifact(args.graph)
    kind = args.kind
    if kind == "custom" or args.plane or args.polarity:
        if not (args.plane and args.polarity):
            raise UsageError("custom graphs need --plane FILE and --polarity FILE")
        plane = load_plane(Path(args.plane).read_text())
        theta = load_polarity(Path(args.polarity).read_text())
        return build_graph(plane, theta)
    if args.q is None:
        raise UsageError("--q is required (or --graph DIR / --plane + --polarity)")
    if kind == "ER":
        return er_graph(args.q)
    if kind == "U":
        try:
            return unitary_graph(args.q)
        except (PolarityError, FieldError) as exc:
            raise UsageError(f"q must be an even prime power ({exc})") from None
    raise UsageError(f"unknown kind {kind!r}")


def _dump(obj, out_dir: Path | None, name: str) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / name).write_text(text)
    sys.stdout.write(text)


def _manifest(args, graph, outputs: dict, started: float) -> dict:
    return {"command": sys.argv[:] if sys.argv else [],
            "config": {k: v for k, v in vars(args).items() if k != "func"},
            "graph": graph.descriptor.as_dict(),
            "outputs": {k: str(v) for k, v in outputs.items()},
            "versions": {"polargraph": __version__, "python": platform.python_version(),
                         "numpy": np.__version__},
            "started": datetime.fromtimestamp(started, timezone.utc).isoformat(),
            "elapsed_sec": round(time.time() - started, 3)}


def cmd_build(args) -> int:
    g = _graph_from_args(args)
    out = Path(args.out or f"build-{g.descriptor.construction}-{g.q}")
    paths = write_artifact(g, out)
    info = json.loads(paths["summary"].read_text())
    info.pop("absolute_vertices")
    sys.stdout.write(json.dumps(info, indent=2) + "\n")
    return EXIT_OK


def analyze_report(g) -> dict:
    tris = triangles(g)
    hyper = triangle_hypergraph(g)
    a, s, e = parsons_partition(g)
    c4, witness = is_c4_free(g)
    try:
        diam = diameter(g)
    except ValueError:
        diam = None
    bound = independence_bound(g.q)
    s_free = not any(set(t) <= set(s) for t in tris)
    e_free = not any(set(t) <= set(e) for t in tris)
    return {**g.descriptor.as_dict(), "n": g.n, "edges": g.edge_count(),
            "c4_free": c4, "c4_witness": witness, "diameter": diam,
            "triangles": len(tris),
            "absolute_in_no_triangle": not absolute_in_triangles(g, tris),
            "neighbourhood_matching": not matching_violations(g),
            "parsons": {"A": len(a), "S": len(s), "E": len(e),
                        "S_triangle_free": s_free, "E_triangle_free": e_free},
            "hypergraph": {"vertices": len(hyper.vertices), "edges": len(hyper.edges),
                           "max_degree": hyper.max_degree(),
                           "max_codegree": hyper.max_codegree()},
            "bound": {"value": bound.value, "floor": bound.floor}}


def cmd_analyze(args) -> int:
    g = _graph_from_args(args)
    _dump(analyze_report(g), Path(args.out) if args.out else None, "analysis.json")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    g = _graph_from_args(args)
    view = g.looped()
    spec = adjacency_spectrum(view)
    verdict = spectral_gap_check(view, g.q, spec)
    _dump({"n": g.n, "lambda1": spec.lambda1, "lambda_rest_max": spec.lambda_max_rest,
           "sqrt_q": g.q ** 0.5, "pass": verdict.passed},
          Path(args.out) if args.out else None, "spectrum.json")
    return EXIT_OK if verdict.passed else EXIT_REJECT


def cmd_bound(args) -> int:
    if args.q is None or args.q < 2:
        raise UsageError("--q >= 2 is required")
    b = independence_bound(args.q)
    _dump({"q": args.q, "value": b.value, "floor": b.floor}, None, "bound.json")
    return EXIT_OK


def cmd_search(args) -> int:
    g = _graph_from_args(args)
    started = time.time()
    out = Path(args.out or f"search-{g.descriptor.construction}-{g.q}-{args.strategy}")
    out.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(out / "search.log", mode="w")
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger = logging.getLogger("polargraph.search")
    logger.addHandler(handler)
    logger.setLevel(logging.INFO)
    try:
        initial = Certificate.load(args.initial) if args.initial else None
        cfg = SearchConfig(strategy=args.strategy, seed=args.seed, restarts=args.restarts,
                           budget_sec=args.budget_sec, max_moves=args.max_moves,
                           workers=args.workers, initial=initial)
        result = run_search(g, cfg)
    finally:
        logger.removeHandler(handler)
        handler.close()
    cert = result.certificate
    cert.manifest = "manifest.json"
    if args.strategy == "exact":
        cert.extra["optimal"] = result.optimal
    cert.save(out / "certificate.json")
    outputs = {"certificate": out / "certificate.json", "log": out / "search.log"}
    manifest = _manifest(args, g, outputs, started)
    manifest["result"] = {"size": cert.size, "optimal": result.optimal,
                          "restarts_run": result.restarts_run}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    verdict = verify_certificate(g, cert)
    sys.stdout.write(json.dumps({"size": cert.size, "verified": verdict.accepted,
                                 "optimal": result.optimal,
                                 "certificate": str(out / "certificate.json")}) + "\n")
    return EXIT_OK if verdict else EXIT_REJECT


def cmd_verify(args) -> int:
    if not args.cert:
        raise UsageError("--cert FILE is required")
    g = _graph_from_args(args)
    cert = Certificate.load(args.cert)
    verdict = verify_certificate(g, cert)
    sys.stdout.write(json.dumps({"size": cert.size, **verdict.to_dict()}) + "\n")
    return EXIT_OK if verdict else EXIT_REJECT


def cmd_export(args) -> int:
    g = _graph_from_args(args)
    if args.format == "dimacs":
        text = to_dimacs(g)
    elif args.format == "adj":
        text = to_adjacency_text(g)
    else:
        from .graphio import summary
        text = json.dumps({**summary(g), "adjacency": [list(a) for a in g.adjacency]},
                          indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polargraph",
                                     description="Polarity graphs and their triangle-free subsets")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_opts(p):
        p.add_argument("--kind", choices=["ER", "U", "custom"], default="ER")
        p.add_argument("--q", type=int)
        p.add_argument("--plane", metavar="FILE")
        p.add_argument("--polarity", metavar="FILE")
        p.add_argument("--graph", metavar="DIR", help="directory written by 'build'")
        p.add_argument("--out", metavar="PATH")

    for name, func, helptext in [
            ("build", cmd_build, "construct a polarity graph and write exports"),
            ("analyze", cmd_analyze, "structural report"),
            ("spectrum", cmd_spectrum, "spectrum of the looped graph"),
            ("search", cmd_search, "search for a large triangle-free set"),
            ("verify", cmd_verify, "check a certificate"),
            ("export", cmd_export, "print the graph in a text format")]:
        p = sub.add_parser(name, help=helptext)
        graph_opts(p)
        p.set_defaults(func=func)
        if name == "search":
            p.add_argument("--strategy", choices=["exact", "parsons", "seeded", "local", "greedy"],
                           default="seeded")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--restarts", type=int, default=1)
            p.add_argument("--budget-sec", type=float, default=None)
            p.add_argument("--max-moves", type=int, default=20000)
            p.add_argument("--workers", type=int, default=1)
            p.add_argument("--initial", metavar="CERT")
        if name == "verify":
            p.add_argument("--cert", metavar="FILE")
        if name == "export":
            p.add_argument("--format", choices=["dimacs", "adj", "json"], default="adj")
    p = sub.add_parser("bound", help="upper bound on triangle-free sets for order q")
    p.add_argument("--q", type=int)
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except DescriptorMismatch as exc:
        sys.stderr.write(f"descriptor mismatch: {exc}\n")
        return EXIT_INPUT
    except (PlaneError, PolarityError, FieldError, GraphFormatError, CertificateError,
            SearchError, ConvergenceError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
