"""Command-line front end: ``python -m oscopt {solve,oracle,compare,gen} ...``.

Exit status is 0 on success, 2 for invalid input or arguments, 3 when an
exact oracle refuses an instance above its size budget and 1 for I/O
failures.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import io as fio
from . import oracle
from .dynamics import RunConfig, Schedule
from .graph import GraphError, complement, mobius_ladder, random_graph
from .problems import (GP_SCHEDULE, approximate_max_clique, approximate_mis, chromatic_search,
                       solve_graph_partition, solve_hamiltonian, solve_max_k_cut, solve_tsp)

PROBLEMS = ("maxcut", "maxkcut", "tsp", "hc", "gp", "coloring", "mis", "clique")
EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _add_solver_flags(p):
    p.add_argument("--k", type=int, default=None, help="partition count for maxkcut (default 3)")
    p.add_argument("--sigma", type=float, default=None, help="bump width in radians")
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--cycles", type=float, default=100.0, help="horizon T")
    p.add_argument("--c1-start", type=float, default=None, help="initial coupling C1")
    p.add_argument("--anneal-a", type=float, default=None, help="final coupling A of the linear ramp")
    p.add_argument("--csync", type=float, default=1.0, help="injection strength")
    p.add_argument("--c2", type=float, default=None, help="cut weight for graph partitioning")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0, help="first seed; restarts use seed, seed+1, ...")
    p.add_argument("--weighted", action="store_true", help="keep edge-weight magnitudes")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="oscopt", description="Oscillator-network heuristics for graph problems.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="run the oscillator solver")
    s.add_argument("problem", choices=PROBLEMS)
    s.add_argument("instance", help="edge-list file (CSV distance matrix for tsp)")
    _add_solver_flags(s)
    s.add_argument("--trace", metavar="PATH", help="write the best run's trajectory as CSV")
    s.add_argument("--trace-phases", action="store_true", help="keep phase columns even for n > 100")
    s.add_argument("--out", metavar="PATH", help="write the result document as JSON")

    o = sub.add_parser("oracle", help="solve exactly within the size budget")
    o.add_argument("problem", choices=PROBLEMS)
    o.add_argument("instance")
    o.add_argument("--k", type=int, default=None)
    o.add_argument("--weighted", action="store_true")

    c = sub.add_parser("compare", help="run the solver and the oracle, print the ratio")
    c.add_argument("problem", choices=PROBLEMS)
    c.add_argument("instance")
    _add_solver_flags(c)

    g = sub.add_parser("gen", help="write a generated graph as an edge list")
    gs = g.add_subparsers(dest="family", required=True, parser_class=_Parser)
    gm = gs.add_parser("mobius")
    gm.add_argument("n", type=int)
    gm.add_argument("--out")
    gr = gs.add_parser("random")
    gr.add_argument("n", type=int)
    gr.add_argument("p", type=float)
    gr.add_argument("--seed", type=int, default=0)
    gr.add_argument("--out")
    return ap


def _k(args) -> int:
    if args.problem == "maxcut":
        if args.k not in (None, 2):
            raise ValueError("maxcut always uses K = 2; use maxkcut for other K")
        return 2
    k = 3 if args.k is None else args.k
    if k < 2:
        raise ValueError(f"K must be >= 2, got {k}")
    return k


def config_from_args(args) -> RunConfig:
    gp = args.problem == "gp"
    c1 = args.c1_start if args.c1_start is not None else (GP_SCHEDULE.c1_start if gp else 1.0)
    a = args.anneal_a if args.anneal_a is not None else (c1 if gp else 10.0)
    c2 = args.c2 if args.c2 is not None else (GP_SCHEDULE.c2 if gp else 1.0)
    sched = Schedule(c1_start=c1, anneal_a=a, cycles=args.cycles, c_sync=args.csync, c2=c2)
    return RunConfig(schedule=sched, dt=args.dt, seed=args.seed, restarts=args.restarts,
                     record_phases=bool(getattr(args, "trace", None)))


def _params(args, cfg: RunConfig) -> dict:
    s = cfg.schedule
    return {
        "K": _k(args) if args.problem in ("maxcut", "maxkcut") else None,
        "sigma": args.sigma, "dt": cfg.dt, "T": s.cycles, "c1_start": s.c1_start, "A": s.anneal_a,
        "Csync": s.c_sync, "C2": s.c2, "seed": cfg.seed, "seeds": cfg.seeds,
        "restarts": cfg.restarts, "weighted": bool(args.weighted), "method": cfg.method,
    }


def _load(args):
    if args.problem == "tsp":
        return fio.load_distance_matrix(args.instance)
    return fio.load_graph(args.instance, weighted=args.weighted)


def run_solver(args, inst, cfg: RunConfig):
    """Returns ``(record, best_run)``; ``best_run`` is None for set-valued problems."""
    p = args.problem
    name = Path(args.instance).name
    if p == "tsp":
        n, m = inst.shape[0], inst.shape[0] * (inst.shape[0] - 1) // 2
    else:
        n, m = inst.n, inst.m
    common = dict(problem=p, instance=name, n=n, m=m, params=_params(args, cfg), timestamp=fio.timestamp())

    if p in ("coloring", "mis", "clique"):
        if p == "coloring":
            res = chromatic_search(inst, cfg, sigma=args.sigma)
            rec = fio.ResultRecord(best_score=float(res.k), valid=res.success, discreteness=None,
                                   solution=[int(x) for x in res.coloring], energy_start=None, energy_end=None,
                                   extra={"attempts": [list(a) for a in res.attempts],
                                          "internal_edges": res.internal_edges}, **common)
        else:
            fn = approximate_mis if p == "mis" else approximate_max_clique
            nodes = fn(inst, cfg, sigma=args.sigma)
            rec = fio.ResultRecord(best_score=float(len(nodes)), valid=True, discreteness=None,
                                   solution=[int(x) for x in nodes], energy_start=None, energy_end=None,
                                   **common)
        return rec, None

    if p in ("maxcut", "maxkcut"):
        out = solve_max_k_cut(inst, _k(args), cfg, args.sigma)
    elif p == "tsp":
        out = solve_tsp(inst, cfg, args.sigma)
    elif p == "hc":
        out = solve_hamiltonian(inst, cfg, args.sigma)
    else:
        out = solve_graph_partition(inst, cfg)
    best, run = out.best, out.best_run
    trials = [{"seed": t.seed, "score": t.score, "discreteness": t.discreteness, "valid": t.valid,
               "energy_start": t.energy_start, "energy_end": t.energy_end} for t in out.trials]
    rec = fio.ResultRecord(best_score=float(best.score), valid=bool(best.valid),
                           discreteness=float(best.discreteness),
                           solution=[int(x) for x in best.payload],
                           energy_start=float(run.energies[0]), energy_end=float(run.energies[-1]),
                           trials=trials, extra={k: v for k, v in best.detail.items()}, **common)
    return rec, run


def oracle_value(problem: str, inst, k: int | None = None):
    """Exact optimum as a number (``hc`` gives 0 missing edges for a cycle, 1 for a path, else None)."""
    if problem in ("maxcut", "maxkcut"):
        return oracle.exact_max_k_cut(inst, 2 if problem == "maxcut" else (k or 3))[0]
    if problem == "tsp":
        return oracle.exact_tsp(inst)[0]
    if problem == "hc":
        status, _ = oracle.exact_hamiltonian(inst)
        return {"cycle": 0, "path": 1}.get(status)
    if problem == "gp":
        return oracle.exact_balanced_partition(inst)[0]
    if problem == "mis":
        return oracle.exact_mis(inst)[0]
    if problem == "clique":
        return oracle.exact_mis(complement(inst))[0]
    return oracle.exact_chromatic(inst)[0]


def _fmt(x) -> str:
    if x is None:
        return "none"
    return f"{x:g}" if isinstance(x, float) else str(x)


def _cmd_solve(args) -> int:
    cfg = config_from_args(args)
    inst = _load(args)
    rec, run = run_solver(args, inst, cfg)
    if args.out:
        fio.write_result(rec, args.out)
    if args.trace:
        if run is None:
            raise ValueError(f"--trace is not available for {args.problem}")
        fio.write_trajectory(run, args.trace, include_phases=True if args.trace_phases else None)
    print(f"{rec.problem} {rec.instance}: score {_fmt(rec.best_score)} valid {str(rec.valid).lower()}")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    inst = _load(args)
    print(_fmt(oracle_value(args.problem, inst, args.k)))
    return EXIT_OK


def _cmd_compare(args) -> int:
    cfg = config_from_args(args)
    inst = _load(args)
    exact = oracle_value(args.problem, inst, _k(args) if args.problem in ("maxcut", "maxkcut") else None)
    rec, _ = run_solver(args, inst, cfg)
    h = rec.best_score
    if exact is None or exact == 0:
        ratio = 1.0 if h == (exact or 0) else float("inf")
    else:
        ratio = h / exact
    print(f"heuristic {_fmt(h)} oracle {_fmt(exact)} ratio {ratio:.4f}")
    return EXIT_OK


def _cmd_gen(args) -> int:
    g = mobius_ladder(args.n) if args.family == "mobius" else random_graph(args.n, args.p, args.seed)
    text = fio.format_edge_list(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    handler = {"solve": _cmd_solve, "oracle": _cmd_oracle, "compare": _cmd_compare, "gen": _cmd_gen}
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return handler[args.command](args)
    except oracle.OracleBudgetError as exc:
        print(f"oscopt: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, GraphError) as exc:
        print(f"oscopt: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"oscopt: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(cli_main())
