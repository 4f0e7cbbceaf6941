"""Command-line interface.

Exit codes: 0 success / bound holds, 1 bound violated or density refuted,
2 usage or input error, 3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import report
from .density import (
    DEFAULT_EXHAUSTIVE_LIMIT,
    DEFAULT_MINIMIZER_LIMIT,
    DensityParams,
    DensityStatus,
    check_density_exact,
    check_density_heuristic,
    lemma_f_verify,
    min_density_ratio,
    weighted_min_exact,
)
from .graph import (
    FAMILIES,
    FamilySpec,
    Graph,
    gen_family,
    parse_rational,
    read_graph,
    to_edge_list,
)
from .homcount import ResourceLimitError, blakley_roy_check, count_cycle_homs, count_path_homs
from .verify import ScanSpec, audit_proof_chain, scan_family, verify_main_theorem

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _d_arg(text: str):
    return "auto" if text == "auto" else _rational(text)


def _parts(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad part sizes {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oddcycles", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=True):
        if graph:
            p.add_argument("--graph", help="edge-list file (or base graph for --family blow-up)")
            p.add_argument("--family", choices=FAMILIES)
            p.add_argument("--n", type=int)
            p.add_argument("--k", type=int)
            p.add_argument("--s", type=int)
            p.add_argument("--t", type=int)
            p.add_argument("--parts", type=_parts)
            p.add_argument("--p", type=_rational)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--limit-exhaustive", type=int, default=DEFAULT_EXHAUSTIVE_LIMIT)
        p.add_argument("--out")
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    common(sub.add_parser("gen", help="generate a graph and write it as an edge list"))
    p = sub.add_parser("count", help="C_r(G), closed walks of length r")
    common(p)
    p.add_argument("--r", type=int, required=True)
    p = sub.add_parser("count-paths", help="path homomorphisms and the d^k n^(k+1) bound")
    common(p)
    p.add_argument("--k-path", type=int, required=True)
    p = sub.add_parser("check-density", help="certify or refute (eps, d)-density")
    common(p)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--d", type=_d_arg, required=True)
    p.add_argument("--method", choices=("exhaustive", "heuristic"), default="exhaustive")
    p.add_argument("--iters", type=int, default=10_000)
    p = sub.add_parser("min-weighted", help="exact minimum of the weighted density objective")
    common(p)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--d", type=_d_arg, required=True)
    p.add_argument("--limit-minimizer", type=int, default=DEFAULT_MINIMIZER_LIMIT)
    p = sub.add_parser("lemma-f", help="weighted density inequality on random weights")
    common(p)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--d", type=_d_arg, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--limit-minimizer", type=int, default=DEFAULT_MINIMIZER_LIMIT)
    p = sub.add_parser("verify", help="check C_r >= (d^r - eps) n^r")
    common(p)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--d", type=_d_arg, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--density-status", choices=[s.value for s in DensityStatus],
                   help="recorded status when n exceeds the exhaustive limit")
    p = sub.add_parser("audit-chain", help="evaluate every step of the counting argument")
    common(p)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--d", type=_d_arg, required=True)
    p.add_argument("--r", type=int, required=True)
    p = sub.add_parser("scan", help="verify over a parameter grid, CSV output")
    common(p, graph=False)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", help="comma list")
    p.add_argument("--k", help="comma list")
    p.add_argument("--s", help="comma list")
    p.add_argument("--t", help="comma list")
    p.add_argument("--parts", help="semicolon-separated part lists, e.g. '2,2;3,3'")
    p.add_argument("--p", help="comma list of rationals")
    p.add_argument("--seeds", help="comma list of seeds (random family)")
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--d", type=_d_arg, default="auto")
    p.add_argument("--r", default="3", help="comma list of odd cycle lengths")
    p.add_argument("--workers", type=int, default=1)
    return parser


def _load_graph(args) -> Graph:
    if args.family is None:
        if args.graph is None:
            raise UsageError("need --graph or --family")
        return read_graph(args.graph)
    base = read_graph(args.graph) if args.family == "blow-up" and args.graph else None
    spec = FamilySpec(args.family, n=args.n, parts=args.parts, k=args.k, s=args.s, t=args.t,
                      base=base, p=args.p, seed=args.seed)
    return gen_family(spec)


def _params(args, g: Graph) -> DensityParams:
    d = args.d
    if d == "auto":
        d = min_density_ratio(g, args.eps, args.limit_exhaustive)
    return DensityParams(args.eps, d)


def _render(obj, fmt: str) -> str:
    if fmt == "json":
        return report.to_json(obj)
    if fmt == "csv":
        rec = report.to_record(obj)
        keys = list(rec)
        vals = [report._text_value(rec[k]) for k in keys]
        return ",".join(keys) + "\n" + ",".join(v.replace(",", ";") for v in vals) + "\n"
    return report.to_text(obj)


def _ints(text: str | None) -> list[int] | None:
    return None if text is None else [int(tok) for tok in text.split(",") if tok]


def _scan_spec(args) -> ScanSpec:
    grid: dict[str, list] = {}
    for name in ("n", "k", "s", "t"):
        vals = _ints(getattr(args, name))
        if vals is not None:
            grid[name] = vals
    if args.parts is not None:
        grid["parts"] = [_parts(chunk) for chunk in args.parts.split(";") if chunk]
    if args.p is not None:
        grid["p"] = [parse_rational(tok) for tok in args.p.split(",") if tok]
    if args.seeds is not None:
        grid["seed"] = _ints(args.seeds)
    if args.family == "blow-up":
        raise UsageError("scan does not support the blow-up family (it needs a base graph file)")
    return ScanSpec(args.family, grid, args.eps, args.d, tuple(_ints(args.r)),
                    args.limit_exhaustive)


def _execute(args) -> tuple[str, int]:
    cmd = args.command
    if cmd == "scan":
        result = scan_family(_scan_spec(args), workers=args.workers)
        if args.format == "json":
            text = json.dumps(result.rows, indent=2) + "\n"
        else:
            text = result.to_csv()
        return text, EXIT_FAIL if result.violations else EXIT_OK

    g = _load_graph(args)
    if cmd == "gen":
        return to_edge_list(g), EXIT_OK
    if cmd == "count":
        c = count_cycle_homs(g, args.r)
        if args.format == "json":
            return json.dumps({"r": args.r, "c_r": c}) + "\n", EXIT_OK
        return f"{c}\n", EXIT_OK
    if cmd == "count-paths":
        if args.k_path == 0 or g.n == 0:
            return f"{count_path_homs(g, args.k_path)}\n", EXIT_OK
        rep = blakley_roy_check(g, args.k_path)
        return _render(rep, args.format), EXIT_OK if rep.holds else EXIT_FAIL

    p = _params(args, g)
    if cmd == "check-density":
        if args.method == "exhaustive":
            cert = check_density_exact(g, p, args.limit_exhaustive)
        else:
            cert = check_density_heuristic(g, p, args.iters, args.seed)
        return _render(cert, args.format), EXIT_FAIL if cert.status is DensityStatus.REFUTED else EXIT_OK
    if cmd == "min-weighted":
        return _render(weighted_min_exact(g, p, args.limit_minimizer), args.format), EXIT_OK
    if cmd == "lemma-f":
        cert = check_density_exact(g, p, args.limit_exhaustive)
        rep = lemma_f_verify(g, p, cert, args.trials, args.seed, args.limit_minimizer)
        return _render(rep, args.format), EXIT_OK if rep.holds else EXIT_FAIL
    if cmd == "verify":
        rep = verify_main_theorem(g, p, args.r, args.density_status, args.limit_exhaustive)
        return _render(rep, args.format), EXIT_OK if rep.holds else EXIT_FAIL
    if cmd == "audit-chain":
        rep = audit_proof_chain(g, p, args.r, args.limit_exhaustive)
        return _render(rep, args.format), EXIT_OK if rep.sound else EXIT_FAIL
    raise UsageError(f"unknown command {cmd!r}")


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        text, code = _execute(args)
    except ResourceLimitError as exc:
        print(f"oddcycles: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError) as exc:
        print(f"oddcycles: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
