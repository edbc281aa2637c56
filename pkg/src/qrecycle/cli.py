"""Command-line entry point.

Subcommands: optimize (filter parameters for one gamma), sweep (gamma range
to CSV/JSON), breakdown (per-outcome contributions at one gamma), inspect
(print an intermediate state with its quality measures), ppt (entanglement
test of the twice-reflected state).

Exit codes: 0 success, 1 usage or I/O error, 2 infeasible.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .channel import DampingParams, apply_channel, epr_state
from .experiment import (SweepSpec, SweepStatus, breakdown, evaluate_gamma,
                         run_sweep, summarize, write_csv, write_json)
from .filtering import Povm, SchemeKind, filter_branch
from .metrics import concurrence, fidelity, ppt_report
from .optimize import OptimizerConfig, solve_tier1, solve_tier2

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1, not argparse's default 2 (2 means "infeasible" here)
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _unit_interval(name, open_left=False, open_right=False):
    def parse(text):
        try:
            v = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number, got {text!r}")
        lo_ok = v > 0.0 if open_left else v >= 0.0
        hi_ok = v < 1.0 if open_right else v <= 1.0
        if not (lo_ok and hi_ok):
            raise argparse.ArgumentTypeError(f"{name}={v} is out of range")
        return v
    return parse


_GAMMA = _unit_interval("gamma")
_FTH = _unit_interval("fth", open_left=True, open_right=True)
_ALPHA = _unit_interval("alpha", open_left=True, open_right=True)


def _scheme(args) -> SchemeKind:
    return SchemeKind.FULL if args.scheme == "full" else SchemeKind.PARTIAL


def _fmt(x) -> str:
    return format(float(x), ".10g")


def _solution_dict(tag, sol) -> dict:
    return {
        "tier": tag,
        "feasible": sol.feasible,
        "alpha": None if np.isnan(sol.alpha_star) else float(_fmt(sol.alpha_star)),
        "beta": None if np.isnan(sol.beta_star) else float(_fmt(sol.beta_star)),
        "survival": float(_fmt(sol.objective_value)),
        "constraint_fidelity": float(_fmt(sol.constraint_fidelity)),
    }


def _print_solution(tag, sol) -> None:
    if not sol.feasible:
        print(f"{tag}: infeasible (best reachable fidelity "
              f"{_fmt(sol.constraint_fidelity)})")
        return
    print(f"{tag}: alpha = {_fmt(sol.alpha_star)}, beta = {_fmt(sol.beta_star)}, "
          f"survival = {_fmt(sol.objective_value)}, "
          f"min counted fidelity = {_fmt(sol.constraint_fidelity)}")


def cmd_optimize(args) -> int:
    scheme = _scheme(args)
    rho_p = apply_channel(epr_state(), DampingParams(args.gamma))
    cfg = OptimizerConfig(f_threshold=args.fth, grid_points=args.grid_points)
    t1 = solve_tier1(rho_p, scheme, cfg)
    if not t1.feasible:
        if args.json:
            print(json.dumps({"gamma": args.gamma, "fth": args.fth,
                              "scheme": args.scheme, "feasible": False,
                              "tier1": _solution_dict("tier1", t1)}, indent=2))
        else:
            print(f"gamma = {_fmt(args.gamma)}, F_th = {_fmt(args.fth)}, "
                  f"scheme = {args.scheme}")
            _print_solution("tier1", t1)
        return EXIT_INFEASIBLE
    t2 = solve_tier2(rho_p, t1, scheme, cfg, restricted_rr_only=args.restricted_rr)
    if args.json:
        print(json.dumps({"gamma": args.gamma, "fth": args.fth,
                          "scheme": args.scheme, "feasible": True,
                          "tier1": _solution_dict("tier1", t1),
                          "tier2": _solution_dict("tier2", t2)}, indent=2))
    else:
        print(f"gamma = {_fmt(args.gamma)}, F_th = {_fmt(args.fth)}, "
              f"scheme = {args.scheme}")
        _print_solution("tier1 (benchmark)", t1)
        _print_solution("tier2 (recycled)", t2)
        print(f"gain = {_fmt(100.0 * (t2.objective_value - t1.objective_value))} points")
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = SweepSpec(scheme=_scheme(args), f_threshold=args.fth,
                     gamma_start=args.gamma_start, gamma_end=args.gamma_end,
                     gamma_step=args.gamma_step,
                     restricted_rr_only=args.restricted_rr)
    rows = run_sweep(spec)
    try:
        if args.format == "csv":
            write_csv(rows, args.output)
        else:
            write_json(spec, rows, args.output)
    except OSError as exc:
        print(f"cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    s = summarize(rows)
    print(f"rows: {len(rows)}, feasible: {s['n_feasible']}")
    if s["n_feasible"]:
        print(f"feasible gamma range: ({_fmt(s['feasible_gamma_min'])}, "
              f"{_fmt(s['feasible_gamma_max'])})")
        print(f"max gain: {_fmt(s['max_gain_points'])} points")
        print(f"max recycled survival: {_fmt(s['max_recycled_survival'])}")
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_breakdown(args) -> int:
    spec = SweepSpec(scheme=_scheme(args), f_threshold=args.fth,
                     gamma_start=0.0, gamma_end=1.0,
                     restricted_rr_only=args.restricted_rr)
    row = evaluate_gamma(args.gamma, spec)
    print(f"gamma = {_fmt(args.gamma)}, status = {row.status.value}")
    if row.status is not SweepStatus.FEASIBLE:
        return EXIT_INFEASIBLE
    for label, prob in breakdown(row):
        print(f"  Pr[{label}] = {_fmt(prob)}")
    print(f"benchmark survival = {_fmt(row.benchmark_survival)}")
    print(f"recycled survival  = {_fmt(row.recycled_survival)}")
    print(f"gain = {_fmt(row.gain_points)} points")
    return EXIT_OK


_STATE_OPS = {
    # state key -> (needs alpha, description, (op_a, op_b) builder)
    "rho-prime": None,
    "tt": lambda p: (p.m1, p.m1),
    "tr": lambda p: (p.m1, p.m0),
    "rt": lambda p: (p.m0, p.m1),
    "rr": lambda p: (p.m0, p.m0),
    "t": lambda p: (p.m1, None),
    "r": lambda p: (p.m0, None),
}


def _print_matrix(mat) -> None:
    for row in np.asarray(mat):
        print("  [" + "  ".join(f"{v.real:+.6f}{v.imag:+.6f}j" for v in row) + "]")


def cmd_inspect(args) -> int:
    rho_p = apply_channel(epr_state(), DampingParams(args.gamma))
    if args.state == "rho-prime":
        prob, state = 1.0, rho_p
    else:
        if args.alpha is None:
            print("--alpha is required for filtered states", file=sys.stderr)
            return EXIT_USAGE
        ops = _STATE_OPS[args.state](Povm.from_alpha(args.alpha))
        prob, state = filter_branch(rho_p, *ops)
    print(f"state = {args.state}, gamma = {_fmt(args.gamma)}"
          + (f", alpha = {_fmt(args.alpha)}" if args.alpha is not None else ""))
    print(f"branch probability = {_fmt(prob)}")
    if state is None:
        print("branch probability is zero; no conditional state")
        return EXIT_OK
    _print_matrix(state.mat)
    rep = ppt_report(state)
    print(f"trace = {_fmt(state.trace)}")
    print(f"fidelity with |Phi+> = {_fmt(fidelity(epr_state(), state))}")
    print(f"concurrence = {_fmt(concurrence(state))}")
    print("partial-transpose eigenvalues: "
          + ", ".join(_fmt(v) for v in rep.eigenvalues))
    print(f"entangled (PPT): {rep.is_entangled}")
    return EXIT_OK


def cmd_ppt(args) -> int:
    rho_p = apply_channel(epr_state(), DampingParams(args.gamma))
    povm = Povm.from_alpha(args.alpha)
    prob, state = filter_branch(rho_p, povm.m0, povm.m0)
    if state is None:
        print("twice-reflected branch has zero probability")
        return EXIT_OK
    rep = ppt_report(state.mat * prob)  # unnormalized reflected-pair matrix
    print(f"gamma = {_fmt(args.gamma)}, alpha = {_fmt(args.alpha)}, "
          f"beta = {_fmt(1.0 - args.alpha)}")
    print("partial-transpose eigenvalues (unnormalized): "
          + ", ".join(_fmt(v) for v in rep.eigenvalues))
    print(f"min eigenvalue = {_fmt(rep.min_eigenvalue)}")
    print(f"entangled: {rep.is_entangled}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="qrecycle",
                     description="Entanglement distillation with Gisin filters and qubit recycling")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_scheme(p):
        p.add_argument("--scheme", choices=("full", "partial"), default="full")

    def add_fth(p):
        p.add_argument("--fth", type=_FTH, required=True,
                       help="minimum acceptable fidelity F_th, in (0, 1)")

    p = sub.add_parser("optimize", help="optimize both filter tiers for one gamma")
    add_scheme(p)
    add_fth(p)
    p.add_argument("--gamma", type=_GAMMA, required=True)
    p.add_argument("--grid-points", type=int, default=2001)
    p.add_argument("--restricted-rr", action="store_true",
                   help="restrict the recycled success set to the twice-reflected outcome")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", help="sweep a gamma range and write CSV/JSON results")
    add_scheme(p)
    add_fth(p)
    p.add_argument("--gamma-start", type=_GAMMA, default=0.0)
    p.add_argument("--gamma-end", type=_GAMMA, default=0.5)
    p.add_argument("--gamma-step", type=float, default=1e-3)
    p.add_argument("--restricted-rr", action="store_true")
    p.add_argument("--output", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("breakdown", help="per-outcome survival contributions at one gamma")
    add_scheme(p)
    add_fth(p)
    p.add_argument("--gamma", type=_GAMMA, required=True)
    p.add_argument("--restricted-rr", action="store_true")
    p.set_defaults(func=cmd_breakdown)

    p = sub.add_parser("inspect", help="print an intermediate state and its quality measures")
    p.add_argument("--gamma", type=_GAMMA, required=True)
    p.add_argument("--alpha", type=_ALPHA, default=None)
    p.add_argument("--state", choices=tuple(_STATE_OPS), default="rho-prime")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("ppt", help="PPT entanglement test of the twice-reflected state")
    p.add_argument("--gamma", type=_GAMMA, required=True)
    p.add_argument("--alpha", type=_ALPHA, required=True)
    p.set_defaults(func=cmd_ppt)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
