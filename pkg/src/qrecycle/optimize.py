"""Constrained filter-parameter optimization.

Two one-dimensional problems per scheme (the POVM constraint alpha + beta = 1
removes one degree of freedom):

* tier 1: maximize the transmitted-state survival subject to a hard fidelity
  floor F_th on the transmitted state;
* tier 2: maximize the total counted survival, where each success outcome
  contributes its probability only if its conditional state meets F_th
  (a discontinuous indicator objective).

Both are solved by a dense grid scan with feasibility masking, followed by
golden-section refinement around the best grid point. On objective plateaus
the smallest alpha (weakest filtering) wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .channel import DensityMatrix
from .filtering import SchemeKind

FEASIBILITY_SLACK = 1e-9

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OptimizerConfig:
    """Grid/refinement parameters plus the fidelity floor F_th."""

    f_threshold: float
    grid_points: int = 2001
    refine_iters: int = 60

    def __post_init__(self):
        if self.grid_points < 3:
            raise ValueError("grid_points must be >= 3")
        if not (0.0 < self.f_threshold < 1.0):
            raise ValueError("f_threshold must lie in (0, 1)")
        if self.refine_iters < 0:
            raise ValueError("refine_iters must be >= 0")


@dataclass(frozen=True)
class FilterSolution:
    """Optimized filter parameters and the survival they achieve."""

    alpha_star: float
    beta_star: float
    objective_value: float
    feasible: bool
    constraint_fidelity: float


def _alpha_grid(cfg: OptimizerConfig) -> np.ndarray:
    # Open interval (0, 1): the POVM type excludes the endpoints.
    return np.linspace(0.0, 1.0, cfg.grid_points + 2)[1:-1]


def _golden_max(f, lo: float, hi: float, iters: int):
    """Golden-section maximization of a quasiconcave f on [lo, hi]; returns (x, f(x))."""
    best_x, best_v = lo, f(lo)
    for x in (hi,):
        v = f(x)
        if v > best_v:
            best_x, best_v = x, v
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc > best_v:
            best_x, best_v = c, fc
        if fd > best_v:
            best_x, best_v = d, fd
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = f(d)
    return best_x, best_v


def _tier1_curves(state, alphas, scheme_kind: SchemeKind):
    if scheme_kind is SchemeKind.FULL:
        return kernels.tier1_full(state, alphas)
    return kernels.tier1_partial(state, alphas)


def solve_tier1(rho_prime: DensityMatrix, scheme_kind: SchemeKind,
                cfg: OptimizerConfig) -> FilterSolution:
    """Maximize tier-1 survival over alpha subject to fidelity >= F_th.

    Returns an infeasible solution (alpha_star = NaN, objective 0) when no
    alpha on the refined grid satisfies the constraint; constraint_fidelity
    then reports the best fidelity the filter family can reach.
    """
    state = kernels.coherent_form(rho_prime.mat)
    alphas = _alpha_grid(cfg)
    surv, fid = _tier1_curves(state, alphas, scheme_kind)
    ok = fid >= cfg.f_threshold
    if not ok.any():
        return FilterSolution(
            alpha_star=math.nan, beta_star=math.nan, objective_value=0.0,
            feasible=False, constraint_fidelity=float(fid.max()))

    i = int(np.argmax(np.where(ok, surv, -1.0)))
    best_a, best_v = float(alphas[i]), float(surv[i])

    def masked(a: float) -> float:
        s, f = _tier1_curves(state, np.array([a]), scheme_kind)
        return float(s[0]) if f[0] >= cfg.f_threshold else -1.0

    lo = float(alphas[max(i - 1, 0)])
    hi = float(alphas[min(i + 1, len(alphas) - 1)])
    ref_a, ref_v = _golden_max(masked, lo, hi, cfg.refine_iters)
    if ref_v > best_v:
        best_a, best_v = ref_a, ref_v

    _, f = _tier1_curves(state, np.array([best_a]), scheme_kind)
    return FilterSolution(
        alpha_star=best_a, beta_star=1.0 - best_a, objective_value=best_v,
        feasible=True, constraint_fidelity=float(f[0]))


def _tier2_terms(state, alpha1: float, alphas2, scheme_kind: SchemeKind,
                 restricted_rr_only: bool):
    """(probability, fidelity) array pairs for the recycled success outcomes."""
    if scheme_kind is SchemeKind.FULL:
        pr_tr, f_tr, pr_rt, f_rt, pr_rr, f_rr = kernels.tier2_full(state, alpha1, alphas2)
        if restricted_rr_only:
            return [(pr_rr, f_rr)]
        return [(pr_tr, f_tr), (pr_rt, f_rt), (pr_rr, f_rr)]
    pr_r, f_r = kernels.tier2_partial(state, alpha1, alphas2)
    return [(pr_r, f_r)]


def solve_tier2(rho_prime: DensityMatrix, tier1: FilterSolution,
                scheme_kind: SchemeKind, cfg: OptimizerConfig,
                restricted_rr_only: bool = False) -> FilterSolution:
    """Maximize the counted survival of the recycled outcome set over alpha'.

    The always-transmitted term (tier-1 survival) is constant in alpha' and
    is included in the objective; each recycled term contributes only when
    its conditional state meets F_th.
    """
    if not tier1.feasible:
        raise ValueError("tier-2 optimization requires a feasible tier-1 solution")
    if restricted_rr_only and scheme_kind is not SchemeKind.FULL:
        raise ValueError("the restricted twice-reflected mode is defined for the full scheme only")

    state = kernels.coherent_form(rho_prime.mat)
    fth = cfg.f_threshold
    tt_term = tier1.objective_value if tier1.constraint_fidelity >= fth - FEASIBILITY_SLACK else 0.0

    alphas2 = _alpha_grid(cfg)
    terms = _tier2_terms(state, tier1.alpha_star, alphas2, scheme_kind, restricted_rr_only)
    obj = tt_term + sum(pr * (f >= fth) for pr, f in terms)

    i = int(np.argmax(obj))
    best_a, best_v = float(alphas2[i]), float(obj[i])

    def objective(a: float) -> float:
        ts = _tier2_terms(state, tier1.alpha_star, np.array([a]), scheme_kind, restricted_rr_only)
        return tt_term + sum(float(pr[0]) for pr, f in ts if f[0] >= fth)

    lo = float(alphas2[max(i - 1, 0)])
    hi = float(alphas2[min(i + 1, len(alphas2) - 1)])
    ref_a, ref_v = _golden_max(objective, lo, hi, cfg.refine_iters)
    if ref_v > best_v:
        best_a, best_v = ref_a, ref_v

    ts = _tier2_terms(state, tier1.alpha_star, np.array([best_a]), scheme_kind, restricted_rr_only)
    counted = [float(f[0]) for pr, f in ts if f[0] >= fth]
    if tt_term > 0.0:
        counted.append(tier1.constraint_fidelity)
    return FilterSolution(
        alpha_star=best_a, beta_star=1.0 - best_a, objective_value=best_v,
        feasible=True,
        constraint_fidelity=min(counted) if counted else float("nan"))
