"""Command-line front end: minimize, constants, sweep, verify, bumps.

All payloads are JSON or CSV and contain no timestamps, so identical
flags (and seed) reproduce identical bytes.  A JSON config file can
provide any flag value (keyed by the flag name with underscores); explicit
flags override it, and the SPSS_SEED environment variable overrides the
seed from either source.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .grid import load_field_csv, make_grid, save_field_csv
from .functionals import ModelParams, cut_gaussian_bump, g_from_breakdown, multi_bump
from .minimizer import SolveOptions, SolveStatus, minimize
from .constants import constants_report
from .phase import SUITES, sweep, verify_suite, write_sweep_csv


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliError(message)


_COMMON_DEFAULTS = {
    "R": 40.0,
    "N": 4000,
    "tol_el": 1e-6,
    "max_iter": 50000,
    "step0": 1e-2,
    "backtrack": 0.5,
    "scaling_period": 50,
    "disperse_floor": 1e-3,
    "seed": 0,
    "jobs": 1,
}


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON file with default flag values")
    sub.add_argument("--R", type=float, help="outer radius (default 40)")
    sub.add_argument("--N", type=int, help="grid intervals (default 4000)")
    sub.add_argument("--tol-el", dest="tol_el", type=float,
                     help="stationarity stopping tolerance (default 1e-6)")
    sub.add_argument("--max-iter", dest="max_iter", type=int, help="iteration cap")
    sub.add_argument("--step0", type=float, help="initial descent step")
    sub.add_argument("--backtrack", type=float, help="backtracking factor in (0,1)")
    sub.add_argument("--scaling-period", dest="scaling_period", type=int,
                     help="iterations between dilation line searches")
    sub.add_argument("--disperse-floor", dest="disperse_floor", type=float,
                     help="dilation threshold signalling dispersion")
    sub.add_argument("--seed", type=int, help="seed for randomized initial data")
    sub.add_argument("--jobs", type=int, help="concurrent solves (sweep only)")


def build_parser() -> _Parser:
    parser = _Parser(prog="spss", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", metavar="command")

    p_min = subs.add_parser("minimize", help="solve one constrained minimization")
    p_min.add_argument("--alpha", type=float)
    p_min.add_argument("--coupling", type=float)
    p_min.add_argument("--mass", type=float)
    p_min.add_argument("--init", default=None,
                       help="gaussian | exp | random | path to a field CSV")
    p_min.add_argument("--out", required=True, help="report JSON path")
    p_min.add_argument("--field-out", dest="field_out",
                       help="field CSV path (default: <out>.field.csv)")
    _add_common(p_min)

    p_const = subs.add_parser("constants", help="estimate the sharp constants")
    p_const.add_argument("--alpha", type=float)
    p_const.add_argument("--coupling", type=float,
                         help="coupling for the critical-mass estimate")
    p_const.add_argument("--out", required=True, help="report JSON path")
    p_const.add_argument("--maximizer-out", dest="maximizer_out",
                         help="quotient maximizer CSV (default: <out>.maximizer.csv)")
    _add_common(p_const)

    p_sweep = subs.add_parser("sweep", help="classify a parameter grid")
    p_sweep.add_argument("--alphas", help="comma-separated exponents")
    p_sweep.add_argument("--couplings", help="comma-separated couplings")
    p_sweep.add_argument("--masses", help="comma-separated masses")
    p_sweep.add_argument("--out", required=True, help="sweep CSV path")
    _add_common(p_sweep)

    p_verify = subs.add_parser("verify", help="run a named identity suite")
    p_verify.add_argument("--suite", choices=SUITES)
    p_verify.add_argument("--coupling", type=float,
                          help="coupling override for the cubic suite")
    p_verify.add_argument("--out", help="summary JSON path")
    _add_common(p_verify)

    p_bumps = subs.add_parser("bumps", help="scan separated-bump aggregates")
    p_bumps.add_argument("--alpha", type=float)
    p_bumps.add_argument("--coupling", type=float)
    p_bumps.add_argument("--mass", type=float)
    p_bumps.add_argument("--max-n", dest="max_n", type=int, default=None,
                         help="largest bump count scanned (default 2^30)")
    p_bumps.add_argument("--out", required=True, help="scan CSV path")
    _add_common(p_bumps)
    return parser


def _resolve(args: argparse.Namespace, key: str, required: bool = False):
    """Flag value, else config value, else built-in default."""
    val = getattr(args, key, None)
    if val is None:
        val = getattr(args, "_config", {}).get(key)
    if val is None:
        val = _COMMON_DEFAULTS.get(key)
    if val is None and required:
        raise _CliError(f"missing required option --{key.replace('_', '-')}")
    return val


def _load_config(args: argparse.Namespace) -> None:
    cfg = {}
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
        if not isinstance(cfg, dict):
            raise _CliError("config file must hold a JSON object")
    args._config = cfg


def _solve_options(args: argparse.Namespace) -> SolveOptions:
    seed = _resolve(args, "seed")
    env_seed = os.environ.get("SPSS_SEED")
    if env_seed is not None:
        seed = int(env_seed)
    return SolveOptions(
        tol_el=_resolve(args, "tol_el"),
        max_iter=int(_resolve(args, "max_iter")),
        step0=_resolve(args, "step0"),
        backtrack=_resolve(args, "backtrack"),
        scaling_period=int(_resolve(args, "scaling_period")),
        disperse_scale_floor=_resolve(args, "disperse_floor"),
        seed=int(seed),
    )


def _write_json(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_minimize(args: argparse.Namespace) -> int:
    opts = _solve_options(args)
    p = ModelParams(
        alpha=_resolve(args, "alpha", required=True),
        coupling=_resolve(args, "coupling", required=True),
        mass=_resolve(args, "mass", required=True),
    )
    grid = make_grid(_resolve(args, "R"), int(_resolve(args, "N")))
    init = _resolve(args, "init")
    if isinstance(init, str) and init not in ("gaussian", "exp", "random"):
        init = load_field_csv(init)
    rep = minimize(p, init=init, opts=opts, grid=grid)
    field_path = args.field_out or f"{args.out}.field.csv"
    save_field_csv(rep.field, field_path)
    _write_json(rep.to_json_dict(field_csv=field_path), args.out)
    return 0 if rep.status is not SolveStatus.MAXITER else 2


def cmd_constants(args: argparse.Namespace) -> int:
    opts = _solve_options(args)
    alpha = _resolve(args, "alpha", required=True)
    grid = make_grid(_resolve(args, "R"), int(_resolve(args, "N")))
    rep = constants_report(alpha, opts, coupling=_resolve(args, "coupling"), grid=grid)
    max_path = args.maximizer_out or f"{args.out}.maximizer.csv"
    save_field_csv(rep.quotient_maximizer, max_path)
    _write_json(rep.to_json_dict(maximizer_csv=max_path), args.out)
    return 0


def _parse_list(text: str | None, name: str) -> list[float]:
    if not text:
        raise _CliError(f"missing required option --{name}")
    try:
        values = [float(tok) for tok in str(text).split(",") if tok.strip()]
    except ValueError as exc:
        raise _CliError(f"bad value in --{name}: {exc}")
    if not values:
        raise _CliError(f"--{name} must list at least one value")
    return values


def cmd_sweep(args: argparse.Namespace) -> int:
    opts = _solve_options(args)
    alphas = _parse_list(getattr(args, "alphas", None) or args._config.get("alphas"), "alphas")
    couplings = _parse_list(getattr(args, "couplings", None) or args._config.get("couplings"), "couplings")
    masses = _parse_list(getattr(args, "masses", None) or args._config.get("masses"), "masses")
    points = sweep(alphas, couplings, masses, opts,
                   jobs=int(_resolve(args, "jobs")),
                   grid_R=_resolve(args, "R"), grid_N=int(_resolve(args, "N")))
    write_sweep_csv(points, args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    opts = _solve_options(args)
    suite = getattr(args, "suite", None) or args._config.get("suite")
    if suite is None:
        raise _CliError("missing required option --suite")
    summary = verify_suite(suite, opts, grid_R=_resolve(args, "R"),
                           grid_N=int(_resolve(args, "N")),
                           coupling=_resolve(args, "coupling"))
    _write_json(summary, getattr(args, "out", None))
    return 0 if summary["passed"] else 1


def cmd_bumps(args: argparse.Namespace) -> int:
    opts = _solve_options(args)
    alpha = _resolve(args, "alpha", required=True)
    coupling = _resolve(args, "coupling", required=True)
    target_mass = _resolve(args, "mass", required=True)
    if not (1.0 / 3.0 - 1e-9 <= alpha < 0.5):
        raise _CliError(
            f"bump scan applies for alpha in [1/3, 1/2), got {alpha}; smaller "
            "exponents reach negative energies by pure dilation"
        )
    max_n = args.max_n or (1 << 30)
    p = ModelParams(alpha=alpha, coupling=coupling, mass=target_mass)
    eta = cut_gaussian_bump(make_grid(1.0, int(_resolve(args, "N"))), target_mass)
    rows = []
    found = None
    n = 1
    while n <= max_n:
        bd, sep = multi_bump(eta, n, p)
        g_val, _ = g_from_breakdown(bd)
        rows.append((n, bd.kinetic_integral, bd.coulomb, g_val, sep))
        if g_val < 0.0:
            found = n
            break
        n *= 2
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("n,kinetic,coulomb_bound,G,separation\n")
        for n_, k_, d_, g_, s_ in rows:
            fh.write(f"{n_},{k_!r},{d_!r},{g_!r},{s_!r}\n")
    if found is None:
        print(f"no negative G up to n={max_n}", file=sys.stderr)
        return 2
    return 0


_COMMANDS = {
    "minimize": cmd_minimize,
    "constants": cmd_constants,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "bumps": cmd_bumps,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise _CliError("choose a command: " + ", ".join(_COMMANDS))
        _load_config(args)
        return _COMMANDS[args.command](args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
