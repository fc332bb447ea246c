"""Command-line entry point: ``hamsquare <subcommand> [flags]``.

Exit status: 0 success, 1 a verification failed, 2 usage or input error.
Errors are printed to stderr as ``error: <CODE>: <detail>``.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import bounds_rows, f_bound, tiling_profile
from .constants import (
    NTable,
    compat_report,
    compute_constants,
    square_directed_path,
    square_path_threshold,
)
from .discrepancy import verify_square_hamilton
from .errors import BoundError, HamsquareError
from .graph import OrientedGraph, min_total_degree, read_graphs, serialize_json_line, write_matrix_lines
from .parallel import default_jobs
from .search.connect import connect_edges
from .search.generate import GENERATOR_VERSION, PRNG, random_min_degree_graph
from .search.hamilton import max_discrepancy_square_hamilton
from .search.tiling import find_mixed_tiling, verify_tiling
from .tournaments import Tournament, enumerate_tournaments

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

# flags that never change report contents
_VOLATILE = {"jobs", "out", "func", "command"}


class UsageError(HamsquareError):
    pass


def _manifest(args: argparse.Namespace, inputs: dict[str, bytes] | None = None) -> dict:
    params = {k: (str(v) if isinstance(v, Fraction) else v)
              for k, v in sorted(vars(args).items()) if k not in _VOLATILE}
    return {
        "tool": "hamsquare",
        "tool_version": __version__,
        "subcommand": args.command,
        "parameters": params,
        "seed": getattr(args, "seed", None),
        "input_digests": {name: hashlib.sha256(data).hexdigest() for name, data in sorted((inputs or {}).items())},
    }


def _manifest_comment(manifest: dict) -> str:
    return "# manifest " + json.dumps(manifest, sort_keys=True, separators=(",", ":")) + "\n"


def _dump_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _emit(args: argparse.Namespace, text: str, sidecar: dict | None = None) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="")
        if sidecar is not None:
            Path(str(args.out) + ".manifest.json").write_text(_dump_json(sidecar), encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_input(args: argparse.Namespace) -> tuple[list[OrientedGraph], dict[str, bytes]]:
    path = Path(args.input)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise UsageError("UNREADABLE_INPUT", f"{path}: {exc.strerror}") from None
    graphs = read_graphs(data.decode("utf-8"))
    if args.index is not None:
        if not 0 <= args.index < len(graphs):
            raise UsageError("BAD_INDEX", f"--index {args.index} but {path} holds {len(graphs)} graphs")
        graphs = [graphs[args.index]]
    return graphs, {path.name: data}


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'u,v', got {text!r}") from None
    return a, b


def _vertex_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertices, got {text!r}") from None


# -- subcommands ------------------------------------------------------------

def cmd_enumerate(args: argparse.Namespace) -> int:
    ts = enumerate_tournaments(args.n, compat=args.compat, method=args.method, jobs=args.jobs,
                               allow_large=args.allow_large)
    body = write_matrix_lines(t.graph for t in ts)
    manifest = _manifest(args)
    if args.compat:
        _emit(args, body, sidecar=manifest)
    else:
        _emit(args, _manifest_comment(manifest) + body)
    if args.out:
        print(f"{len(ts)} tournaments on {args.n} vertices -> {args.out}")
    return EXIT_OK


def cmd_constants(args: argparse.Namespace) -> int:
    method = args.method
    if method == "auto":
        method = "both" if args.n <= 7 else "reduced"
    ts = enumerate_tournaments(args.n, compat=args.compat, jobs=args.jobs, allow_large=args.allow_large)
    kw = dict(jobs=args.jobs, allow_large=args.allow_large, tournaments=ts)
    primary = compute_constants(args.n, method="unreduced" if method == "unreduced" else "reduced", **kw)
    agree = None
    if method == "both":
        check = compute_constants(args.n, method="unreduced", **kw)
        agree = [(r.best, r.deficit) for r in primary.rows] == [(r.best, r.deficit) for r in check.rows]
    if args.compat:
        _emit(args, compat_report(primary), sidecar=_manifest(args))
    else:
        worst = primary.worst_class
        report = {
            "manifest": _manifest(args),
            "n": args.n,
            "N": primary.N,
            "M": primary.M,
            "classes": len(primary.rows),
            "method": method,
            "routes_agree": agree,
            "worst_class": worst.tournament.key_bits(),
            "rows": [{"key": r.tournament.key_bits(), "best": r.best, "deficit": r.deficit} for r in primary.rows],
        }
        _emit(args, _dump_json(report))
    if args.out:
        print(f"n={args.n}: N={primary.N} M={primary.M}" + ("" if agree is None else f" routes_agree={agree}"))
    if agree is False:
        print("error: ROUTES_DISAGREE: reduced and unreduced coupling values differ", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_verify_appendix(args: argparse.Namespace) -> int:
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    ts = enumerate_tournaments(5, compat=True, jobs=args.jobs)
    (out / "T5").write_text(write_matrix_lines(t.graph for t in ts), encoding="utf-8", newline="")
    # the second stage reads the file back, as the original pipeline does
    reread = read_graphs((out / "T5").read_text(encoding="utf-8"))
    tours = [Tournament.from_graph(g) for g in reread]
    result = compute_constants(5, tournaments=tours, jobs=args.jobs)
    report = compat_report(result)
    (out / "tournament_results.txt").write_text(report, encoding="utf-8", newline="")
    check = compute_constants(5, method="unreduced", tournaments=tours)
    checks = [
        ("CLASS_COUNT", len(ts) == 12, f"{len(ts)} classes"),
        ("M5_VALUE", result.M == 3 and report.endswith("m=3"), f"m={result.M}"),
        ("N5_VALUE", result.N == 7, f"N={result.N}"),
        ("ROUTES_AGREE", [r.deficit for r in result.rows] == [r.deficit for r in check.rows], "reduced vs unreduced"),
    ]
    ok = True
    for code, passed, detail in checks:
        print(f"{'PASS' if passed else 'FAIL'} {code} {detail}")
        ok &= passed
    (out / "verify-appendix.manifest.json").write_text(_dump_json(_manifest(args)), encoding="utf-8")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_bounds(args: argparse.Namespace) -> int:
    deltas = args.delta or list(range(math.ceil(2 * args.n / 3), args.n))
    rows = bounds_rows(args.n, deltas, args.alpha, args.xi, NTable.default(), args.d_slack)
    buf = io.StringIO()
    fields = ["n", "delta", "r", "A_r", "Abar_r", "g", "f", "regime", "N_min", "f_adjusted"]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row[k] is None else str(row[k]) for k in fields})
    _emit(args, _manifest_comment(_manifest(args)) + buf.getvalue())
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    graphs, inputs = _read_input(args)
    results = []
    status = EXIT_OK
    for i, g in enumerate(graphs):
        res = max_discrepancy_square_hamilton(g, max_nodes=args.budget_nodes, max_seconds=args.budget_seconds,
                                              jobs=args.jobs)
        row = {"graph": i, "n": g.n, "delta": min_total_degree(g), **res.to_json()}
        if res.ordering is not None:
            checked = verify_square_hamilton(g, res.ordering)
            if (checked.sigma_plus, checked.sigma_minus) != (res.sigma_plus, res.sigma_minus):
                status = EXIT_FAILED
                print(f"error: CERTIFICATE_MISMATCH: graph {i}", file=sys.stderr)
        if 3 * row["delta"] >= 2 * g.n:
            try:
                b = f_bound(g.n, row["delta"], args.alpha, NTable.default(), args.xi)
                row["f"] = b.f_value
                row["regime"] = b.regime
                row["reference"] = str(b.guaranteed)
            except BoundError as exc:
                row["reference_error"] = exc.code
        results.append(row)
    _emit(args, _dump_json({"manifest": _manifest(args, inputs), "results": results}))
    return status


def cmd_tiling(args: argparse.Namespace) -> int:
    graphs, inputs = _read_input(args)
    results = []
    status = EXIT_OK
    for i, g in enumerate(graphs):
        if args.r is None:
            p = tiling_profile(g.n, min_total_degree(g))
            r, a, a_bar = p.r, p.a_r, p.a_bar_r
        else:
            if args.a is None or args.a_bar is None:
                raise UsageError("MISSING_FLAG", "--r needs --a and --a-bar")
            r, a, a_bar = args.r, args.a, args.a_bar
        cert = find_mixed_tiling(g, r, a, a_bar)
        row = {"graph": i, "r": r, "a": a, "a_bar": a_bar, "tiles": None, "verified": None}
        if cert is not None:
            verdict = verify_tiling(g, cert, r, a, a_bar)
            row.update(cert.to_json())
            row["verified"] = verdict.reason
            if not verdict:
                status = EXIT_FAILED
                print(f"error: {verdict.reason}: graph {i}", file=sys.stderr)
        results.append(row)
    _emit(args, _dump_json({"manifest": _manifest(args, inputs), "results": results}))
    return status


def cmd_connect(args: argparse.Namespace) -> int:
    if not args.edge or len(args.edge) != 2:
        raise UsageError("MISSING_FLAG", "connect needs exactly two --edge u,v flags")
    graphs, inputs = _read_input(args)
    results = []
    for i, g in enumerate(graphs):
        path = connect_edges(g, args.edge[0], args.edge[1], args.forbid or [], both_orders=args.both_orders)
        results.append({"graph": i, "path": list(path) if path else None,
                        "internal": len(path) - 4 if path else None})
    _emit(args, _dump_json({"manifest": _manifest(args, inputs), "results": results}))
    return EXIT_OK


def cmd_square_path(args: argparse.Namespace) -> int:
    inputs: dict[str, bytes] = {}
    if args.input:
        graphs, inputs = _read_input(args)
    elif args.n is not None:
        graphs = [t.graph for t in enumerate_tournaments(args.n, jobs=args.jobs, allow_large=args.allow_large)]
    else:
        raise UsageError("MISSING_FLAG", "square-path needs --n or --input")
    results = []
    status = EXIT_OK
    for i, g in enumerate(graphs):
        path = square_directed_path(g)
        length = max(len(path) - 1, 0)
        row = {"graph": i, "n": g.n, "length": length, "witness": list(path)}
        if g.is_tournament():
            row["threshold"] = square_path_threshold(g.n)
            row["meets_threshold"] = length >= row["threshold"]
            if not row["meets_threshold"]:
                status = EXIT_FAILED
        results.append(row)
    summary = {}
    tight = [r for r in results if r.get("threshold") is not None and r["length"] == r["threshold"]]
    if tight:
        summary["tight_witness"] = tight[0]["graph"]
    _emit(args, _dump_json({"manifest": _manifest(args, inputs), "results": results, **summary}))
    return status


def cmd_random(args: argparse.Namespace) -> int:
    if args.seed is None:
        raise UsageError("MISSING_FLAG", "random needs --seed")
    if args.n is None or args.delta is None or len(args.delta) != 1:
        raise UsageError("MISSING_FLAG", "random needs --n and one --delta")
    graphs = [random_min_degree_graph(args.n, args.delta[0], args.seed + k) for k in range(args.count)]
    manifest = _manifest(args)
    manifest["prng"] = PRNG
    manifest["generator_version"] = GENERATOR_VERSION
    if args.format == "json":
        body = "".join(serialize_json_line(g) + "\n" for g in graphs)
    else:
        body = write_matrix_lines(graphs)
    _emit(args, _manifest_comment(manifest) + body)
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hamsquare", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hamsquare {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--out", help="output file (directory for verify-appendix); default stdout")
        p.add_argument("--jobs", type=int, default=default_jobs(), help="worker processes")
        return p

    def add_input(p: argparse.ArgumentParser, required: bool = True) -> None:
        p.add_argument("--input", required=required, help="matrix-line or JSON-lines graph file")
        p.add_argument("--index", type=int, help="only the graph on this (0-based) line")

    def add_bound_params(p: argparse.ArgumentParser) -> None:
        p.add_argument("--alpha", type=Fraction, default=Fraction(1, 100))
        p.add_argument("--xi", type=Fraction, default=Fraction(0))

    p = add("enumerate", cmd_enumerate, "isomorph-free tournaments as matrix lines")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--compat", action="store_true", help="reference-script discovery order, no header")
    p.add_argument("--method", choices=["extend", "scan"], default="extend")
    p.add_argument("--allow-large", action="store_true", help="permit n = 8")

    p = add("constants", cmd_constants, "N_n and M_n over all tournament classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--compat", action="store_true", help="reference-script report layout and class order")
    p.add_argument("--method", choices=["auto", "reduced", "unreduced", "both"], default="auto")
    p.add_argument("--allow-large", action="store_true", help="permit n = 8")

    add("verify-appendix", cmd_verify_appendix, "regenerate and check the n = 5 reference files")

    p = add("bounds", cmd_bounds, "tiling profile and bound table as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, action="append", help="repeatable; default every delta >= 2n/3")
    add_bound_params(p)
    p.add_argument("--d-slack", type=Fraction, default=Fraction(0), help="coefficient of the O(d)n slack")

    p = add("search", cmd_search, "maximum-discrepancy square Hamilton cycle")
    add_input(p)
    p.add_argument("--budget-nodes", type=int)
    p.add_argument("--budget-seconds", type=float)
    add_bound_params(p)

    p = add("tiling", cmd_tiling, "mixed clique tiling certificate")
    add_input(p)
    p.add_argument("--r", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--a-bar", type=int)

    p = add("connect", cmd_connect, "shortest connecting 2-path between two edges")
    add_input(p)
    p.add_argument("--edge", type=_pair, action="append", help="u,v; give exactly twice")
    p.add_argument("--forbid", type=_vertex_list, help="comma-separated forbidden vertices")
    p.add_argument("--both-orders", action="store_true")

    p = add("square-path", cmd_square_path, "longest square of a directed path")
    add_input(p, required=False)
    p.add_argument("--n", type=int, help="run over all tournament classes on n vertices")
    p.add_argument("--allow-large", action="store_true")

    p = add("random", cmd_random, "seeded random graphs with a minimum-degree floor")
    p.add_argument("--n", type=int)
    p.add_argument("--delta", type=int, action="append")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--format", choices=["matrix", "json"], default="matrix")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HamsquareError as exc:
        print(f"error: {exc.code}: {exc.detail}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
