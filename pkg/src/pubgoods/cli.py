"""Command-line interface: ``pubgoods <subcommand> ...``.

Exit status is 0 on success, 1 on invalid input and 2 when a kernel search
ran out of budget (partial results are still printed and flagged).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .digraph import (
    Digraph,
    GraphFormatError,
    cycle_parity,
    is_acyclic,
    parse_digraph,
    parse_json_digraph,
    symmetrize,
)
from .dynamics import StabilityConfig, probe_stability
from .elimination import eliminate
from .game import GameParams, contributors, is_nash, payoffs
from .kernels import DEFAULT_BUDGET, enumerate_kernels, kernel_order
from .montecarlo import ExperimentConfig, run_existence_experiment
from .reciprocity import persistence_matrix

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2


class InputError(Exception):
    pass


def read_graph(path: str, fmt: str) -> Digraph:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parse_json_digraph(text) if fmt == "json" else parse_digraph(text)
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(text: str, dest: str | None) -> None:
    if dest is None:
        return
    if dest == "-":
        sys.stdout.write(text)
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_json(doc, dest: str | None) -> None:
    _emit(json.dumps(doc, indent=2) + "\n", dest)


def _say(args, *lines: str) -> None:
    # human output yields stdout to machine output written there
    if getattr(args, "json", None) == "-" or getattr(args, "csv", None) == "-":
        return
    for line in lines:
        print(line)


def _stability_cfg(args) -> StabilityConfig:
    return StabilityConfig(rho=args.rho, samples=args.samples, max_iters=args.max_iters,
                           tol=args.tol, seed=args.seed)


def _fmt_set(nodes) -> str:
    return "{" + ", ".join(str(v) for v in nodes) + "}"


def cmd_analyze(args) -> int:
    g = read_graph(args.graph, args.format)
    params = GameParams()
    parity = cycle_parity(g, exhaustive_limit=args.cycle_limit)
    report = enumerate_kernels(g, budget=args.budget)
    trace = eliminate(g)
    cfg = _stability_cfg(args)
    equilibria = []
    for k in report.kernels:
        e = np.zeros(g.n)
        e[list(k)] = params.e_star
        verdict = probe_stability(g, params, e, cfg)
        equilibria.append({
            "contributors": list(k),
            "profile": e.tolist(),
            "payoffs": payoffs(g, params, e).tolist(),
            "kernel_order": kernel_order(g, k),
            "stability": verdict.to_dict(trace=args.trace),
        })
    doc = {
        "n": g.n,
        "arcs": g.num_arcs(),
        "acyclic": is_acyclic(g),
        "cycle_parity": {
            "is_acyclic": parity.is_acyclic,
            "has_odd_cycle": parity.has_odd_cycle,
            "has_even_cycle": parity.has_even_cycle,
            "enumerated": parity.enumerated,
        },
        "kernels": report.to_dict(),
        "budget_exhausted": not report.exhaustive,
        "equilibria": equilibria,
        "elimination": trace.to_dict(),
    }
    _emit_json(doc, args.json)
    _emit(g.to_dot(highlight=report.kernels[0] if report.kernels else ()), args.dot)

    even = {True: "yes", False: "no", None: "undecided"}[parity.has_even_cycle]
    _say(args, f"nodes: {g.n}  arcs: {g.num_arcs()}  acyclic: {'yes' if doc['acyclic'] else 'no'}",
         f"odd cycle: {'yes' if parity.has_odd_cycle else 'no'}  even cycle: {even}")
    if not report.kernels:
        _say(args, "kernels: none" + ("" if report.exhaustive else " found (search incomplete)"),
             "no specialized equilibrium" if report.exhaustive else "")
    for eq in equilibria:
        st = eq["stability"]
        _say(args, f"equilibrium {_fmt_set(eq['contributors'])}  order {eq['kernel_order']}  "
                   f"stability: {st['analytic']} / {st['empirical']}")
    _say(args, f"elimination: {len(trace.rounds)} round(s), residual {_fmt_set(trace.residual_labels)}")
    if not report.exhaustive:
        _say(args, f"WARNING: kernel search exhausted its budget of {args.budget} expansions")
        return EXIT_BUDGET
    return EXIT_OK


def cmd_kernels(args) -> int:
    g = read_graph(args.graph, args.format)
    report = enumerate_kernels(g, budget=args.budget, limit=args.limit)
    _emit_json(report.to_dict(), args.json)
    _emit(g.to_dot(highlight=report.kernels[0] if report.kernels else ()), args.dot)
    _say(args, f"{report.count} kernel(s){'' if report.exhaustive else ' (search incomplete)'}")
    for k in report.kernels:
        _say(args, "  " + _fmt_set(k))
    exhausted = not report.exhaustive and (args.limit is None or report.count < args.limit)
    return EXIT_BUDGET if exhausted else EXIT_OK


def cmd_eliminate(args) -> int:
    g = read_graph(args.graph, args.format)
    trace = eliminate(g)
    _emit_json(trace.to_dict(), args.json)
    _emit(trace.residual.to_dot(name="residual"), args.dot)
    for t, r in enumerate(trace.rounds, start=1):
        _say(args, f"iteration {t}: I={_fmt_set(r.I)} I'={_fmt_set(r.I_prime)} I''={_fmt_set(r.I_dprime)}")
    _say(args, f"residual nodes (original labels): {_fmt_set(trace.residual_labels)}",
         "residual edge list:", trace.residual.to_edgelist().rstrip("\n"))
    return EXIT_OK


def _parse_profile(text: str, n: int, params: GameParams) -> np.ndarray:
    try:
        values = [float(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"bad profile {text!r}") from None
    if len(values) != n:
        raise InputError(f"profile has {len(values)} entries, graph has {n} nodes")
    return np.array(values) * params.e_star


def cmd_stability(args) -> int:
    g = read_graph(args.graph, args.format)
    params = GameParams()
    cfg = _stability_cfg(args)
    if args.profile is not None:
        profiles = [_parse_profile(args.profile, g.n, params)]
        if not is_nash(g, params, profiles[0]):
            raise InputError("profile is not a Nash equilibrium")
        status = EXIT_OK
    else:
        report = enumerate_kernels(g, budget=args.budget)
        profiles = []
        for k in report.kernels:
            e = np.zeros(g.n)
            e[list(k)] = params.e_star
            profiles.append(e)
        status = EXIT_OK if report.exhaustive else EXIT_BUDGET
    results = []
    for e in profiles:
        verdict = probe_stability(g, params, e, cfg)
        results.append({"profile": e.tolist(), **verdict.to_dict(trace=args.trace)})
        line = f"{_fmt_set(contributors(params, e))}: {verdict.analytic.value} / {verdict.empirical}"
        if verdict.witness is not None:
            w = verdict.witness
            line += f" (witness {w.kind}, perturbation {np.round(w.perturbation, 6).tolist()})"
        _say(args, line)
    if not profiles:
        _say(args, "no specialized equilibrium to probe")
    _emit_json({"config": {"rho": cfg.rho, "samples": cfg.samples, "max_iters": cfg.max_iters,
                           "tol": cfg.tol, "seed": cfg.seed}, "verdicts": results}, args.json)
    return status


def cmd_reciprocity(args) -> int:
    g = read_graph(args.graph, args.format)
    params = GameParams()
    if args.full_symmetrization or args.other is None:
        others = [symmetrize(g)]
        names = ["s(G)"]
    else:
        others = [read_graph(args.other, args.format)]
        names = [args.other]
    try:
        kernels, table = persistence_matrix(g, others, params, budget=args.budget)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    counts = [enumerate_kernels(h, budget=args.budget).count for h in others]
    doc = {
        "graphs": names,
        "kernel_count_G": len(kernels),
        "kernel_counts": counts,
        "equilibria": [list(k) for k in kernels],
        "preserved": table.tolist(),
    }
    _emit_json(doc, args.json)
    _say(args, f"k(G) = {len(kernels)}; " + ", ".join(f"k({nm}) = {c}" for nm, c in zip(names, counts)))
    for k, row in zip(kernels, table):
        _say(args, f"  {_fmt_set(k)}: " + ", ".join(f"{nm}:{'kept' if ok else 'lost'}" for nm, ok in zip(names, row)))
    return EXIT_OK


def cmd_random_experiment(args) -> int:
    try:
        n_values = tuple(int(x) for x in args.n.split(","))
    except ValueError:
        raise InputError(f"bad --n list {args.n!r}") from None
    try:
        cfg = ExperimentConfig(n_values, p=args.p, trials=args.trials, seed=args.seed,
                               search_budget=args.budget)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    result = run_existence_experiment(cfg)
    csv_text = result.to_csv()
    _emit(csv_text, args.csv)
    _emit_json({
        "p": cfg.p, "trials": cfg.trials, "seed": cfg.seed,
        "records": [{"n": r.n, "exists": r.exists_count, "undecided": r.undecided_count,
                     "frequency": r.frequency, "ci": list(r.wilson_interval)} for r in result.records],
    }, args.json)
    if args.csv is None and args.json is None:
        sys.stdout.write(csv_text)
    undecided = any(r.undecided_count for r in result.records)
    return EXIT_BUDGET if undecided else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("edgelist", "json"), default="edgelist",
                        help="graph file format (default: edgelist)")
    common.add_argument("--json", nargs="?", const="-", metavar="PATH",
                        help="write machine-readable JSON to PATH (stdout if omitted)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="kernel search budget in node expansions")
    common.add_argument("--dot", nargs="?", const="-", metavar="PATH",
                        help="write a DOT rendering of the graph")

    dyn = argparse.ArgumentParser(add_help=False)
    dyn.add_argument("--rho", type=float, default=0.1, help="perturbation radius, fraction of e*")
    dyn.add_argument("--samples", type=int, default=200)
    dyn.add_argument("--max-iters", type=int, default=None)
    dyn.add_argument("--tol", type=float, default=1e-8)
    dyn.add_argument("--trace", action="store_true", help="include full witness trajectories")

    parser = argparse.ArgumentParser(prog="pubgoods", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common, dyn], help="full report for one graph")
    p.add_argument("graph")
    p.add_argument("--cycle-limit", type=int, default=100_000)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("kernels", parents=[common], help="enumerate kernels")
    p.add_argument("graph")
    p.add_argument("--limit", type=int, default=None, help="stop after this many kernels")
    p.set_defaults(func=cmd_kernels)

    p = sub.add_parser("eliminate", parents=[common], help="iterative node elimination")
    p.add_argument("graph")
    p.set_defaults(func=cmd_eliminate)

    p = sub.add_parser("stability", parents=[common, dyn], help="stability of equilibria")
    p.add_argument("graph")
    p.add_argument("--profile", help="comma-separated efforts in units of e* (default: all specialized equilibria)")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("reciprocity", parents=[common], help="persistence under added reciprocity")
    p.add_argument("graph")
    p.add_argument("other", nargs="?", help="a partial symmetrization of GRAPH")
    p.add_argument("--full-symmetrization", action="store_true")
    p.set_defaults(func=cmd_reciprocity)

    p = sub.add_parser("random-experiment", parents=[common], help="kernel existence in G(n, p)")
    p.add_argument("--n", required=True, help="comma-separated node counts, ascending")
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--csv", nargs="?", const="-", metavar="PATH")
    p.set_defaults(func=cmd_random_experiment, budget=200_000)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; 2 is reserved for budget exhaustion here
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"pubgoods: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
