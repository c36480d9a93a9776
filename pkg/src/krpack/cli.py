"""krpack command line: generate, solve, classify, reduce, verify.

Exit codes: 0 success, 1 property violation, 2 usage or parse error,
3 exact-search guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks
from .cliques import MODES
from .dimacs import ParseError, format_graph, read_cnf, read_graph
from .graph import GraphError, gen_bounded_degree, gen_triangle_free_cubic, max_degree
from .packing import (
    DEFAULT_MAX_CLIQUES,
    InstanceTooLarge,
    classify_regime,
    exact_max_packing,
    greedy_maximal_packing,
    local_improvement_packing,
)
from .reductions import ReductionError, reduce_max2sat3_to_edk4, reduce_max2sat3_to_edk5, reduce_mis_to_vdkr
from .reductions.bundle import write_bundle
from .sat import FormulaError, VariableGuardExceeded

SCHEMA = 1
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _config(args: argparse.Namespace) -> dict:
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(args).items()) if k != "func"}


def _emit(report: dict, args: argparse.Namespace, text_lines: list[str]) -> None:
    if args.format == "json":
        out = json.dumps(report, indent=1, sort_keys=True) + "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    if getattr(args, "report", None):
        Path(args.report).write_text(out)
    else:
        sys.stdout.write(out)


def _write(path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_USAGE) from None


def _read_graph(path):
    try:
        return read_graph(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    except (ParseError, GraphError) as exc:
        raise CliError(f"{path}: {exc}") from None


def cmd_generate(args) -> int:
    if args.n < 1:
        raise CliError("-n must be positive")
    if args.kind == "cubic-tf":
        g = gen_triangle_free_cubic(args.n, args.seed)
    else:
        if args.dmax is None:
            raise CliError("generate bounded needs --dmax")
        g = gen_bounded_degree(args.n, args.dmax, args.seed, args.p)
    text = format_graph(g, comments=(f"krpack generate {args.kind} n={args.n} dmax={args.dmax} seed={args.seed}",))
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    delta = max_degree(g)
    stats: dict = {}
    if args.method == "greedy":
        packing = greedy_maximal_packing(g, args.r, args.mode)
    elif args.method == "exact":
        packing = exact_max_packing(g, args.r, args.mode, max_cliques=args.max_cliques, stats=stats)
    else:
        packing = local_improvement_packing(g, args.r, args.mode, swap_size=args.swap_size)
    report = {"schema": SCHEMA, "config": _config(args), "delta": delta, "packing": packing.to_dict(),
              "size": packing.size, "bound_trace": stats}
    lines = [f"method={args.method} mode={args.mode} r={args.r} delta={delta} size={packing.size}"]
    if args.r >= 3:
        regime = classify_regime(args.r, delta, args.mode)
        report["regime"] = {"tag": regime.tag.value, "note": regime.threshold_note}
        lines.append(f"regime={regime.tag.value} ({regime.threshold_note})")
    lines.extend("k " + " ".join(str(v + 1) for v in c) for c in packing.cliques)
    if args.out:
        _write(args.out, json.dumps(packing.to_dict()) + "\n")
    _emit(report, args, lines)
    return EXIT_OK


def cmd_classify(args) -> int:
    rows = []
    for mode in ([args.mode] if args.mode else list(MODES)):
        regime = classify_regime(args.r, args.delta, mode)
        rows.append({"mode": mode, "tag": regime.tag.value, "note": regime.threshold_note})
    _emit({"schema": SCHEMA, "config": _config(args), "regimes": rows}, args,
          [f"{row['mode']}: {row['tag']} ({row['note']})" for row in rows])
    return EXIT_OK


def cmd_reduce(args) -> int:
    try:
        if args.kind == "vdkr":
            if args.r is None:
                raise CliError("reduce vdkr needs --r")
            red = reduce_mis_to_vdkr(_read_graph(args.input), args.r)
        else:
            phi = read_cnf(args.input)
            red = reduce_max2sat3_to_edk4(phi) if args.kind == "edk4" else reduce_max2sat3_to_edk5(phi)
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc.strerror}") from None
    except (ParseError, FormulaError, ReductionError) as exc:
        raise CliError(f"{args.input}: {exc}") from None
    try:
        graph_path, meta_path = write_bundle(red, args.out, source=Path(args.input).name)
    except OSError as exc:
        raise CliError(f"cannot write bundle {args.out}: {exc.strerror}") from None
    g = red.target
    audit = {"vertices": g.vertex_count, "edges": g.edge_count, "delta": max_degree(g), "r": red.r}
    if args.kind == "vdkr":
        audit["cliques"] = len(red.clique_of_vertex)
        audit["shared_sets"] = len(red.shared_sets)
    else:
        audit["even"] = [len(f) for f in red.even]
        audit["odd"] = [len(f) for f in red.odd]
        audit["clause_cliques"] = len(red.clause_cliques)
    report = {"schema": SCHEMA, "config": _config(args), "audit": audit,
              "files": [str(graph_path), str(meta_path)]}
    _emit(report, args, [f"{args.kind}: " + " ".join(f"{k}={v}" for k, v in audit.items()),
                         f"wrote {graph_path} and {meta_path}"])
    return EXIT_OK


def cmd_verify(args) -> int:
    suite = args.suite
    trials = args.trials
    if trials is None:
        trials = (0 if args.exhaustive_2var else 25) if suite == "lreduction" else 100
    if suite == "lreduction":
        if args.kind is None:
            raise CliError("verify lreduction needs --kind")
        result = checks.run_lreduction(args.kind, trials, args.seed, r=args.r,
                                       exhaustive_2var=args.exhaustive_2var, variables=args.variables)
    else:
        if args.r is None or args.dmax is None:
            raise CliError(f"verify {suite} needs --r and --dmax")
        runner = getattr(checks, f"run_{suite}")
        result = runner(args.r, args.dmax, trials, args.seed, n=args.n)
    report = {"schema": SCHEMA, "config": _config(args), **result}
    lines = [f"{suite}: {result['trials']} instances, {len(result['violations'])} violations"]
    for key in ("max_alpha_ratio", "max_beta_ratio", "optimum_gaps", "smallest_overlap", "modes"):
        if key in result:
            lines.append(f"  {key} = {result[key]}")
    lines.extend(f"  violation: {json.dumps(v)}" for v in result["violations"][:20])
    _emit(report, args, lines)
    return EXIT_OK if result["ok"] else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="krpack", description="K_r packing in bounded-degree graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--report", help="write the report here instead of stdout")

    p = sub.add_parser("generate", help="write a random graph in DIMACS format")
    p.add_argument("kind", choices=("cubic-tf", "bounded"))
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--dmax", type=int)
    p.add_argument("--p", type=float, default=0.5, help="edge acceptance probability (bounded only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="pack K_r's in a DIMACS graph")
    p.add_argument("graph")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="vertex")
    p.add_argument("--method", choices=("greedy", "exact", "local"), default="exact")
    p.add_argument("--swap-size", type=int, default=1)
    p.add_argument("--max-cliques", type=int, default=DEFAULT_MAX_CLIQUES)
    p.add_argument("-o", "--out", help="write the packing JSON here")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="complexity regime for (r, max degree)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--mode", choices=MODES)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", help="build a hardness-reduction bundle")
    p.add_argument("kind", choices=("vdkr", "edk4", "edk5"))
    p.add_argument("input", help="DIMACS graph (vdkr) or DIMACS CNF (edk4/edk5)")
    p.add_argument("--r", type=int)
    p.add_argument("-o", "--out", required=True, help="output prefix; writes PREFIX.dimacs and PREFIX.json")
    common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="run a randomised property suite")
    p.add_argument("suite", choices=checks.SUITES)
    p.add_argument("--r", type=int)
    p.add_argument("--dmax", type=int)
    p.add_argument("--n", type=int, default=12, help="largest graph size drawn")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=("vdkr", "edk4", "edk5"))
    p.add_argument("--exhaustive-2var", action="store_true")
    p.add_argument("--variables", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"krpack: {exc}", file=sys.stderr)
        return exc.code
    except checks.UsageError as exc:
        print(f"krpack: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InstanceTooLarge, VariableGuardExceeded) as exc:
        print(f"krpack: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"krpack: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
