"""Gamma sweeps: benchmark vs recycled survival, feasibility ranges, breakdowns.

For each gamma the pipeline builds the damped EPR state, optimizes the tier-1
filter under the fidelity floor, optimizes the tier-2 (recycling) filter, and
records both survival rates plus the per-outcome contributions. A gamma is
classified as:

* NO_FILTER_NEEDED - the unfiltered state already meets F_th (survival 1);
* FEASIBLE         - filtering can meet F_th; both optimizations run;
* INFEASIBLE       - no filter parameter reaches F_th.

Results serialize to CSV (one row per gamma) and JSON (spec + rows + summary).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .channel import DampingParams, apply_channel, epr_state
from .filtering import (FULL_SUCCESS_LABELS, PARTIAL_SUCCESS_LABELS, Povm,
                        SchemeKind, enumerate_full_outcomes,
                        enumerate_partial_outcomes)
from .metrics import fidelity
from .optimize import (FEASIBILITY_SLACK, FilterSolution, OptimizerConfig,
                       solve_tier1, solve_tier2)

RESTRICTED_SUCCESS_LABELS = ("TT", "RR:TT")

BOUNDARY_WINDOW = 0.02  # densify the gamma grid this far around status changes
DENSIFY_FACTOR = 10


class SweepStatus(Enum):
    NO_FILTER_NEEDED = "no_filter_needed"
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: scheme, fidelity floor, and the gamma grid to walk."""

    scheme: SchemeKind
    f_threshold: float
    gamma_start: float = 0.0
    gamma_end: float = 0.5
    gamma_step: float = 1e-3
    restricted_rr_only: bool = False
    grid_points: int = 2001

    def __post_init__(self):
        if not (0.0 <= self.gamma_start < self.gamma_end <= 1.0):
            raise ValueError("need 0 <= gamma_start < gamma_end <= 1")
        if self.gamma_step <= 0.0:
            raise ValueError("gamma_step must be positive")
        if not (0.0 < self.f_threshold < 1.0):
            raise ValueError("f_threshold must lie in (0, 1)")
        if self.restricted_rr_only and self.scheme is not SchemeKind.FULL:
            raise ValueError("restricted twice-reflected mode is defined for the full scheme only")


@dataclass(frozen=True)
class SweepRow:
    gamma: float
    status: SweepStatus
    benchmark_survival: float
    recycled_survival: float
    gain_points: float
    per_outcome: dict = field(default_factory=dict)
    alpha1: float = float("nan")
    alpha2: float = float("nan")


def no_filter_fidelity(gamma: float) -> float:
    """Fidelity of the unfiltered damped state with |Phi+>: 1 - g + g^2/2."""
    return 1.0 - gamma + gamma * gamma / 2.0


def success_labels(spec: SweepSpec):
    if spec.restricted_rr_only:
        return RESTRICTED_SUCCESS_LABELS
    return FULL_SUCCESS_LABELS if spec.scheme is SchemeKind.FULL else PARTIAL_SUCCESS_LABELS


def evaluate_gamma(gamma: float, spec: SweepSpec) -> SweepRow:
    """Classify one gamma and, when feasible, run both optimizations."""
    fth = spec.f_threshold
    if no_filter_fidelity(gamma) >= fth:
        return SweepRow(gamma, SweepStatus.NO_FILTER_NEEDED, 1.0, 1.0, 0.0)

    rho_p = apply_channel(epr_state(), DampingParams(gamma))
    cfg = OptimizerConfig(f_threshold=fth, grid_points=spec.grid_points)
    t1 = solve_tier1(rho_p, spec.scheme, cfg)
    if not t1.feasible:
        return SweepRow(gamma, SweepStatus.INFEASIBLE, 0.0, 0.0, 0.0)
    t2 = solve_tier2(rho_p, t1, spec.scheme, cfg,
                     restricted_rr_only=spec.restricted_rr_only)

    tier1 = Povm.from_alpha(t1.alpha_star)
    tier2 = Povm.from_alpha(t2.alpha_star)
    if spec.scheme is SchemeKind.FULL:
        records = enumerate_full_outcomes(rho_p, tier1, tier2)
    else:
        records = enumerate_partial_outcomes(rho_p, tier1, tier2)

    epr = epr_state()
    labels = success_labels(spec)
    per_outcome = {}
    for r in records:
        if r.label not in labels:
            continue
        f = fidelity(epr, r.state) if r.state is not None else 0.0
        per_outcome[r.label] = r.probability if f >= fth - FEASIBILITY_SLACK else 0.0

    benchmark = per_outcome[labels[0]]  # tier-1-only survival ("TT" or "T")
    recycled = float(sum(per_outcome.values()))
    return SweepRow(gamma, SweepStatus.FEASIBLE, benchmark, recycled,
                    100.0 * (recycled - benchmark), per_outcome,
                    alpha1=t1.alpha_star, alpha2=t2.alpha_star)


def _gamma_grid(spec: SweepSpec) -> np.ndarray:
    n = int(round((spec.gamma_end - spec.gamma_start) / spec.gamma_step))
    grid = spec.gamma_start + spec.gamma_step * np.arange(n + 1)
    return grid[grid <= spec.gamma_end + 1e-12]


def run_sweep(spec: SweepSpec):
    """Walk the gamma grid, densifying near feasibility boundaries.

    The coarse pass uses gamma_step; wherever the status changes between
    neighbouring points, a second pass fills in a DENSIFY_FACTOR finer grid
    within BOUNDARY_WINDOW of the change. Rows come back sorted by gamma.
    """
    coarse = _gamma_grid(spec)
    rows = {round(float(g), 12): evaluate_gamma(float(g), spec) for g in coarse}

    ordered = sorted(rows)
    fine_step = spec.gamma_step / DENSIFY_FACTOR
    extra = set()
    for g_prev, g_next in zip(ordered, ordered[1:]):
        if rows[g_prev].status is rows[g_next].status:
            continue
        lo = max(spec.gamma_start, g_prev - BOUNDARY_WINDOW)
        hi = min(spec.gamma_end, g_next + BOUNDARY_WINDOW)
        n = int(round((hi - lo) / fine_step))
        for k in range(n + 1):
            g = round(lo + k * fine_step, 12)
            if g not in rows:
                extra.add(g)
    for g in sorted(extra):
        rows[g] = evaluate_gamma(g, spec)
    return [rows[g] for g in sorted(rows)]


def run_restricted_rr(spec: SweepSpec):
    """Sweep with the success set restricted to {TT, RR:TT} (full scheme only)."""
    if not spec.restricted_rr_only:
        raise ValueError("spec.restricted_rr_only must be set")
    if spec.scheme is not SchemeKind.FULL:
        raise ValueError("restricted twice-reflected mode is defined for the full scheme only")
    return run_sweep(spec)


def breakdown(row: SweepRow):
    """Per-outcome contributions to the recycled survival, in canonical order."""
    if row.status is not SweepStatus.FEASIBLE:
        raise ValueError("breakdown is only defined for feasible rows")
    order = [lbl for lbl in ("TT", "TR:T", "RT:T", "RR:TT", "T", "R:T")
             if lbl in row.per_outcome]
    return [(lbl, row.per_outcome[lbl]) for lbl in order]


def summarize(rows) -> dict:
    """Feasible-range endpoints and peak gain / recycled survival."""
    feas = [r for r in rows if r.status is SweepStatus.FEASIBLE]
    if not feas:
        return {"n_feasible": 0, "feasible_gamma_min": None, "feasible_gamma_max": None,
                "max_gain_points": None, "max_recycled_survival": None}
    return {
        "n_feasible": len(feas),
        "feasible_gamma_min": min(r.gamma for r in feas),
        "feasible_gamma_max": max(r.gamma for r in feas),
        "max_gain_points": max(r.gain_points for r in feas),
        "max_recycled_survival": max(r.recycled_survival for r in feas),
    }


def _fmt(x: float) -> str:
    return format(float(x), ".10g")


def _outcome_columns(rows):
    seen = []
    for r in rows:
        for lbl in r.per_outcome:
            if lbl not in seen:
                seen.append(lbl)
    order = ("TT", "TR:T", "RT:T", "RR:TT", "T", "R:T")
    return [lbl for lbl in order if lbl in seen]


def write_csv(rows, path) -> None:
    cols = _outcome_columns(rows)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["gamma", "status", "benchmark_survival", "recycled_survival",
                    "gain_points", "alpha1", "alpha2"] + [f"pr[{c}]" for c in cols])
        for r in rows:
            w.writerow([_fmt(r.gamma), r.status.value, _fmt(r.benchmark_survival),
                        _fmt(r.recycled_survival), _fmt(r.gain_points),
                        _fmt(r.alpha1), _fmt(r.alpha2)]
                       + [_fmt(r.per_outcome.get(c, 0.0)) for c in cols])


def _row_dict(r: SweepRow) -> dict:
    return {
        "gamma": float(_fmt(r.gamma)),
        "status": r.status.value,
        "benchmark_survival": float(_fmt(r.benchmark_survival)),
        "recycled_survival": float(_fmt(r.recycled_survival)),
        "gain_points": float(_fmt(r.gain_points)),
        "alpha1": None if np.isnan(r.alpha1) else float(_fmt(r.alpha1)),
        "alpha2": None if np.isnan(r.alpha2) else float(_fmt(r.alpha2)),
        "per_outcome": {k: float(_fmt(v)) for k, v in r.per_outcome.items()},
    }


def write_json(spec: SweepSpec, rows, path) -> None:
    doc = {
        "spec": {
            "scheme": spec.scheme.value,
            "f_threshold": spec.f_threshold,
            "gamma_start": spec.gamma_start,
            "gamma_end": spec.gamma_end,
            "gamma_step": spec.gamma_step,
            "restricted_rr_only": spec.restricted_rr_only,
            "grid_points": spec.grid_points,
        },
        "summary": summarize(rows),
        "rows": [_row_dict(r) for r in rows],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
