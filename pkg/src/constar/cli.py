"""Command-line surface.

Subcommands: generate (graph construction to edge-list files), simulate
(one trace to CSV), extract (star family to JSON), threshold (bound report
to JSON), experiment (JSON config to stats CSVs).

Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import experiments, thresholds
from .engine import SirsParams, simulate
from .generators import GenSpec, generate
from .graph import load_edge_list, save_edge_list
from .structure import StarFamily, extract_disjointed_star, verify_star_family


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    p = _Parser(prog="constar", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a graph", parents=[],
                       add_help=True)
    g.add_argument("--model", required=True,
                   choices=["star", "disjointed-star", "constar",
                            "chung-lu", "hrg", "girg"])
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--leaves", "-l", dest="ell", type=int)
    g.add_argument("--gamma", type=float)
    g.add_argument("--topology", choices=["path", "clique"], default="path")
    g.add_argument("--avg-degree", type=float, default=10.0)
    g.add_argument("--dim", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True, help="edge list output path")
    g.add_argument("--family-out", help="write the planted StarFamily JSON here")
    g.add_argument("--sidecar", help="write vertex,weight,coord... CSV here")

    s = sub.add_parser("simulate", help="simulate one run, write trace CSV")
    s.add_argument("--graph", required=True)
    s.add_argument("--lambda", dest="lam", type=float, required=True)
    s.add_argument("--rho", type=float, default=1.0)
    s.add_argument("--mode", choices=["SIRS", "SIS"], default="SIRS")
    s.add_argument("--init", default="highest-degree",
                   help="highest-degree | star-center | vertex:<id>")
    s.add_argument("--family", help="StarFamily JSON (for star-center init)")
    s.add_argument("--cap", type=float, default=1e4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)

    x = sub.add_parser("extract", help="extract a disjointed star family")
    x.add_argument("--graph", required=True)
    x.add_argument("--k", type=int, required=True)
    x.add_argument("--leaves", "-l", dest="ell", type=int, required=True)
    x.add_argument("--out", required=True, help="StarFamily JSON output path")

    t = sub.add_parser("threshold", help="evaluate closed-form bounds")
    t.add_argument("--n", type=int)
    t.add_argument("--k", type=int)
    t.add_argument("--leaves", "-l", dest="ell", type=int)
    t.add_argument("--gamma", type=float)
    t.add_argument("--rho", type=float, default=1.0)
    t.add_argument("--eps", type=float, default=0.5)
    t.add_argument("--lambda", dest="lam", type=float)
    t.add_argument("--c-const", type=float, default=1.0)
    t.add_argument("--p-constant", type=float, default=1.0)
    t.add_argument("--out", help="JSON output path (default stdout)")

    e = sub.add_parser("experiment", help="run a JSON experiment config")
    e.add_argument("--config", required=True)
    e.add_argument("--out", help="output path prefix (overrides config)")
    e.add_argument("--workers", type=int, help="overrides config")
    return p


def _cmd_generate(args) -> None:
    spec = GenSpec(model=args.model, n=args.n, k=args.k, ell=args.ell,
                   gamma=args.gamma, topology=args.topology,
                   avg_degree=args.avg_degree, dim=args.dim, seed=args.seed)
    result = generate(spec)
    with open(args.out, "w") as fh:
        save_edge_list(result.graph, fh)
    if args.family_out:
        if result.family is None:
            raise RuntimeError(f"model {args.model} produces no star family")
        with open(args.family_out, "w") as fh:
            fh.write(result.family.to_json())
    if args.sidecar:
        with open(args.sidecar, "w") as fh:
            if result.coords is not None:
                fh.write("vertex,weight,radius,angle\n")
                for v in range(result.graph.n):
                    fh.write(f"{v},,{float(result.coords.radii[v])!r},"
                             f"{float(result.coords.angles[v])!r}\n")
            elif result.weights is not None:
                fh.write("vertex,weight\n")
                for v in range(result.graph.n):
                    fh.write(f"{v},{float(result.weights[v])!r}\n")
            else:
                raise RuntimeError(f"model {args.model} has no sidecar data")


def _cmd_simulate(args) -> None:
    with open(args.graph) as fh:
        g = load_edge_list(fh)
    family = None
    if args.family:
        with open(args.family) as fh:
            family = StarFamily.from_json(fh.read())
    if args.init.startswith("vertex:"):
        rule = experiments.InitRule(kind="vertex", vertex=int(args.init.split(":")[1]))
    else:
        rule = experiments.InitRule(kind=args.init)
    init = rule.resolve(g, family)
    params = SirsParams(lam=args.lam, rho=args.rho, mode=args.mode)
    trace = simulate(g, params, init, args.cap, args.seed)
    with open(args.out, "w") as fh:
        trace.to_csv(fh)


def _cmd_extract(args) -> None:
    with open(args.graph) as fh:
        g = load_edge_list(fh)
    result = extract_disjointed_star(g, args.k, args.ell)
    if not result.ok:
        raise RuntimeError(
            f"extraction failed: center {result.failed_center} ran out of free neighbors")
    report = verify_star_family(g, result.family)
    with open(args.out, "w") as fh:
        fh.write(result.family.to_json())
    print(json.dumps({"centers_connected": result.family.centers_connected,
                      "valid_constar": report.valid_constar}))


def _cmd_threshold(args) -> None:
    report = thresholds.threshold_report(
        n=args.n, k=args.k, ell=args.ell, gamma=args.gamma, rho=args.rho,
        eps=args.eps, lam=args.lam, c=args.c_const, p_constant=args.p_constant)
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text)


def _cmd_experiment(args) -> None:
    with open(args.config) as fh:
        raw = json.load(fh)
    task = raw.get("task", "survival")
    workers = args.workers if args.workers is not None else int(raw.get("workers", 1))
    prefix = args.out if args.out is not None else raw.get("out", "experiment")

    if task in ("survival", "sweep"):
        cfg = experiments.ExperimentConfig.from_json(json.dumps(raw))
        cfg = dataclasses.replace(cfg, workers=workers)
        if task == "sweep":
            result = experiments.lambda_sweep(cfg)
            for lam, st in zip(result.lambdas, result.stats):
                with open(f"{prefix}_lambda_{lam!r}.csv", "w") as fh:
                    experiments.stats_to_csv(st, fh)
            with open(f"{prefix}_sweep.json", "w") as fh:
                json.dump({"lambdas": list(result.lambdas),
                           "censored_fraction": [s.censored_fraction for s in result.stats],
                           "crossing": result.crossing}, fh, indent=2)
        else:
            stats = experiments.estimate_survival(cfg)
            with open(f"{prefix}_survival.csv", "w") as fh:
                experiments.stats_to_csv(stats, fh)
    elif task == "phase-extinction":
        coef = float(raw.get("lambda_coef", 3.0))
        power = float(raw.get("lambda_power", -0.4))
        result = experiments.probe_phase_extinction(
            ells=raw["ells"], lam_rule=lambda e: coef * e ** power,
            rho=float(raw.get("rho", 1.0)), eps=float(raw.get("eps", 0.5)),
            replicas=int(raw["replicas"]), seed=int(raw.get("seed", 0)),
            workers=workers)
        with open(f"{prefix}_phase.csv", "w") as fh:
            experiments.phase_rows_to_csv(result, fh)
    elif task == "activation":
        result = experiments.probe_activation_prob(
            ell=int(raw["ell"]), lams=raw["lambdas"],
            rho=float(raw.get("rho", 1.0)), eps=float(raw.get("eps", 0.5)),
            replicas=int(raw["replicas"]), seed=int(raw.get("seed", 0)),
            workers=workers)
        with open(f"{prefix}_activation.csv", "w") as fh:
            experiments.activation_rows_to_csv(result, fh)
    elif task == "compare":
        result = experiments.compare_constar_vs_star(
            ell=int(raw["ell"]), k=int(raw["k"]),
            lam=float(raw["lambda"]), rho=float(raw.get("rho", 1.0)),
            replicas=int(raw["replicas"]), cap=float(raw["cap"]),
            seed=int(raw.get("seed", 0)),
            topology=raw.get("topology", "path"), workers=workers)
        with open(f"{prefix}_multi.csv", "w") as fh:
            experiments.stats_to_csv(result.multi, fh)
        with open(f"{prefix}_single.csv", "w") as fh:
            experiments.stats_to_csv(result.single, fh)
        with open(f"{prefix}_compare.json", "w") as fh:
            json.dump({"k": result.k, "ell": result.ell, "lambda": result.lam,
                       "median_ratio": result.median_ratio,
                       "censored_fraction_multi": result.multi.censored_fraction,
                       "censored_fraction_single": result.single.censored_fraction},
                      fh, indent=2)
    else:
        raise SystemExit(f"constar experiment: unknown task {task!r}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {"generate": _cmd_generate, "simulate": _cmd_simulate,
                "extract": _cmd_extract, "threshold": _cmd_threshold,
                "experiment": _cmd_experiment}
    try:
        handlers[args.command](args)
    except SystemExit as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (ValueError, OSError, RuntimeError, KeyError) as exc:
        print(f"constar: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
