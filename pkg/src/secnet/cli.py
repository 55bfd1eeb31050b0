"""Command-line interface.

Subcommands cover the analytic operations (report, critical-range, isolated,
pair-isolated, check-conditions, coupling) and the simulation sweep.  Exit
codes: 0 on success, 1 for domain or numerical errors, 2 for I/O failures.
"""

from __future__ import annotations

import argparse
import sys

from .asymptotics import (
    ConditionConstants,
    check_theorem1_conditions,
    check_theorem2_conditions,
    coupling_parameters,
    critical_range_square,
    critical_range_torus,
    isolated_prob_square,
    isolated_prob_torus,
    pair_isolation_torus,
    pair_isolation_torus_unconditioned,
)
from .combinatorics import KeyScheme
from .geometry import Region
from .graph_models import NetworkParams
from .harness import (
    SweepConfig,
    SweepMode,
    analytic_report,
    emit_csv,
    render_report,
    run_sweep,
)


def _add_scheme_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="number of sensors")
    p.add_argument("--k", type=int, required=True, help="keys per ring (K)")
    p.add_argument("--p", type=int, required=True, help="key pool size (P)")


def _add_region_arg(p: argparse.ArgumentParser, default: str | None = None) -> None:
    kwargs = {"choices": ["torus", "square"], "help": "deployment region"}
    if default is None:
        kwargs["required"] = True
    else:
        kwargs["default"] = default
    p.add_argument("--region", **kwargs)


def _add_constants_args(p: argparse.ArgumentParser) -> None:
    d = ConditionConstants()
    p.add_argument("--c1", type=float, default=d.c1, help="dense-regime ring upper constant")
    p.add_argument("--c2", type=float, default=d.c2, help="sparse-regime ring lower constant")
    p.add_argument("--c3", type=float, default=d.c3, help="sparse-regime gap exponent in (0,1)")
    p.add_argument("--c4", type=float, default=d.c4, help="sparse-regime ring upper constant")
    p.add_argument("--mu", type=float, default=d.mu, help="geometric ring lower constant")
    p.add_argument("--nu", type=float, default=d.nu, help="density ring upper constant")
    p.add_argument("--c0", type=float, default=d.c0, help="de-Poissonization exponent offset")
    p.add_argument("--eps1", type=float, default=d.eps1, help="comparison family exponent 1")
    p.add_argument("--eps2", type=float, default=d.eps2, help="comparison family exponent 2")


def _constants(args: argparse.Namespace) -> ConditionConstants:
    return ConditionConstants(
        c1=args.c1,
        c2=args.c2,
        c3=args.c3,
        c4=args.c4,
        mu=args.mu,
        nu=args.nu,
        c0=args.c0,
        eps1=args.eps1,
        eps2=args.eps2,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secnet",
        description="Connectivity analytics and simulation for key-predistribution sensor networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_report = sub.add_parser("report", help="full analytic report at one parameter point")
    _add_scheme_args(p_report)
    p_report.add_argument("--r", type=float, required=True, help="communication radius")
    _add_region_arg(p_report)
    _add_constants_args(p_report)

    p_crit = sub.add_parser("critical-range", help="connectivity threshold radius")
    _add_scheme_args(p_crit)
    _add_region_arg(p_crit)

    p_sweep = sub.add_parser("sweep", help="Monte Carlo connectivity sweep over radii")
    _add_scheme_args(p_sweep)
    _add_region_arg(p_sweep)
    p_sweep.add_argument("--r-min", type=float, required=True)
    p_sweep.add_argument("--r-max", type=float, required=True)
    p_sweep.add_argument("--r-steps", type=int, required=True)
    p_sweep.add_argument("--trials", type=int, default=500)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument(
        "--mode", choices=["independent", "coupled"], default="coupled",
        help="coupled reuses one sample per trial across all radii",
    )
    p_sweep.add_argument("--workers", type=int, default=None, help="trial-level process pool size")
    p_sweep.add_argument("--out", type=str, default=None, help="CSV output path (default stdout)")

    p_iso = sub.add_parser("isolated", help="analytic isolation probability")
    _add_scheme_args(p_iso)
    p_iso.add_argument("--r", type=float, required=True)
    _add_region_arg(p_iso)

    p_pair = sub.add_parser("pair-isolated", help="joint isolation probability of a torus pair")
    _add_scheme_args(p_pair)
    p_pair.add_argument("--r", type=float, required=True)
    p_pair.add_argument(
        "--u", type=int, default=None,
        help="ring overlap to condition on (omit for the overlap-averaged value)",
    )

    p_check = sub.add_parser("check-conditions", help="finite-n hypothesis checks for both regimes")
    _add_scheme_args(p_check)
    _add_constants_args(p_check)

    p_coup = sub.add_parser("coupling", help="dominated Erdos-Renyi coupling parameters")
    _add_scheme_args(p_coup)

    return parser


def _checks_lines(title: str, checks: dict) -> list[str]:
    lines = [title]
    for name, ok in checks.items():
        lines.append(f"  {name}: {'yes' if ok else 'NO'}")
    return lines


def _run(args: argparse.Namespace) -> int:
    scheme = KeyScheme(args.k, args.p) if hasattr(args, "k") else None

    if args.command == "report":
        rep = analytic_report(args.n, scheme, args.r, Region(args.region), _constants(args))
        print(render_report(rep))

    elif args.command == "critical-range":
        if args.region == "torus":
            print(f"r* = {critical_range_torus(args.n, scheme):.9g}")
        else:
            r_star, branch = critical_range_square(args.n, scheme)
            print(f"r* = {r_star:.9g} ({branch.value} branch)")

    elif args.command == "sweep":
        config = SweepConfig(
            region=Region(args.region),
            n=args.n,
            scheme=scheme,
            r_min=args.r_min,
            r_max=args.r_max,
            r_steps=args.r_steps,
            trials=args.trials,
            seed=args.seed,
            mode=SweepMode(args.mode),
        )
        result = run_sweep(config, workers=args.workers)
        if args.out is None:
            emit_csv(result, sys.stdout)
        else:
            emit_csv(result, args.out)

    elif args.command == "isolated":
        region = Region(args.region)
        params = NetworkParams(args.n, scheme, args.r, region)
        if region is Region.TORUS:
            print(f"isolation probability = {isolated_prob_torus(params):.9g}")
        else:
            z = isolated_prob_square(params)
            print(f"isolation probability = {z.total:.9g}")
            print(
                f"  interior={z.interior:.9g} near_band={z.near_band:.9g}"
                f" far_band={z.far_band:.9g} corner={z.corner:.9g}"
            )

    elif args.command == "pair-isolated":
        params = NetworkParams(args.n, scheme, args.r, Region.TORUS)
        if args.u is None:
            val = pair_isolation_torus_unconditioned(params)
            print(f"pair isolation probability (overlap-averaged) = {val:.9g}")
        else:
            val = pair_isolation_torus(params, args.u)
            print(f"pair isolation probability (overlap u={args.u}) = {val:.9g}")

    elif args.command == "check-conditions":
        consts = _constants(args)
        for line in _checks_lines(
            "dense-regime hypotheses:", check_theorem1_conditions(args.n, scheme, consts)
        ):
            print(line)
        for line in _checks_lines(
            "sparse-regime hypotheses:", check_theorem2_conditions(args.n, scheme, consts)
        ):
            print(line)

    elif args.command == "coupling":
        c = coupling_parameters(args.n, scheme)
        print(f"p = {c.p:.9g}")
        print(f"s = {c.s:.9g}")
        print(f"s/(K^2/P) = {c.share_ratio:.9g}")
        for line in _checks_lines("validity checks:", c.checks):
            print(line)

    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
