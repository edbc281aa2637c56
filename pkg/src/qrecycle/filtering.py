"""Gisin local filters and the two-tier recycling outcome spaces.

A filter is a binary POVM {M0, M1}: M1 = diag(beta, alpha) transmits (the
outcome Alice and Bob keep), M0 = diag(alpha, beta) reflects. Reflected
photons are not discarded; they are sent through a second, independently
parameterized filter. Photons reflected twice are measured out.

Outcome labels
--------------
Full scheme (filters on both arms), tier-1 outcome then tier-2 outcome:
    "TT"                      both transmitted; no second filter involved
    "TR:T" / "TR:R"           Alice transmitted, Bob reflected then T / R
    "RT:T" / "RT:R"           mirror image of the above
    "RR:TT", "RR:TR",
    "RR:RT", "RR:RR"          both reflected, then each hits a second filter
Partial scheme (Alice filters, Bob does not):
    "T", "R:T", "R:R"

Success sets: {"TT", "TR:T", "RT:T", "RR:TT"} and {"T", "R:T"}.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import qmath
from .channel import DensityMatrix

POVM_SUM_TOL = 1e-12
PROB_FLOOR = 1e-14

FULL_SUCCESS_LABELS = ("TT", "TR:T", "RT:T", "RR:TT")
PARTIAL_SUCCESS_LABELS = ("T", "R:T")


@dataclass(frozen=True)
class Povm:
    """Binary filter POVM parameterized by the transmissivity pair (alpha, beta).

    alpha + beta = 1 is required, so M0 + M1 = I holds by construction.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0 and 0.0 < self.beta < 1.0):
            raise ValueError("alpha and beta must lie in the open interval (0, 1)")
        if abs(self.alpha + self.beta - 1.0) > POVM_SUM_TOL:
            raise ValueError(f"alpha + beta must equal 1, got {self.alpha + self.beta}")

    @classmethod
    def from_alpha(cls, alpha: float) -> "Povm":
        return cls(alpha=alpha, beta=1.0 - alpha)

    @property
    def m0(self) -> np.ndarray:
        """Reflection element diag(alpha, beta)."""
        return np.diag([self.alpha, self.beta]).astype(complex)

    @property
    def m1(self) -> np.ndarray:
        """Transmission element diag(beta, alpha)."""
        return np.diag([self.beta, self.alpha]).astype(complex)


class SchemeKind(Enum):
    FULL = "full"
    PARTIAL = "partial"


@dataclass(frozen=True)
class FilterScheme:
    """Filter placement plus the tier-1 and (optional) tier-2 POVMs."""

    kind: SchemeKind
    tier1: Povm
    tier2: Povm | None = None


@dataclass(frozen=True)
class OutcomeRecord:
    """One terminal element of a filter outcome space.

    ``state`` is the normalized conditional state, or None when the branch
    probability falls below PROB_FLOOR and no conditional state exists.
    """

    label: str
    probability: float
    state: DensityMatrix | None
    in_success_set: bool


def _check_povm_element(op) -> np.ndarray:
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise ValueError(f"POVM element must be 2x2, got shape {op.shape}")
    w = qmath.hermitian_eigenvalues(op)
    if w[0] < -qmath.PSD_TOL or w[-1] > 1.0 + qmath.PSD_TOL:
        raise ValueError(f"POVM element eigenvalues outside [0, 1]: {w}")
    return op


def filter_branch(rho: DensityMatrix, op_a=None, op_b=None):
    """Apply sqrt(op_a) (x) sqrt(op_b) to ``rho``; an absent operator is the identity arm.

    Returns ``(probability, state)`` where probability is the trace of the
    filtered product and state is the renormalized conditional state (None
    when the probability vanishes).
    """
    if not rho.normalized:
        raise ValueError("filter_branch requires a normalized input state")
    ka = qmath.psd_sqrt(_check_povm_element(op_a)) if op_a is not None else np.eye(2, dtype=complex)
    kb = qmath.psd_sqrt(_check_povm_element(op_b)) if op_b is not None else np.eye(2, dtype=complex)
    k = qmath.tensor(ka, kb)
    num = k @ rho.mat @ k.conj().T
    prob = float(np.real(np.trace(num)))
    if prob < PROB_FLOOR:
        return max(prob, 0.0), None
    return prob, DensityMatrix(num / prob)


def _tier2_step(prefix: str, p1: float, state1: DensityMatrix | None,
                branches, success_label: str):
    """Expand one tier-1 branch through its tier-2 filter(s).

    ``branches`` is a list of (suffix, op_a, op_b) tier-2 alternatives that
    partition the branch (their joint probabilities sum to p1).
    """
    records = []
    for suffix, op_a, op_b in branches:
        label = f"{prefix}:{suffix}"
        if state1 is None:
            records.append(OutcomeRecord(label, 0.0, None, label == success_label))
            continue
        p2, state2 = filter_branch(state1, op_a, op_b)
        records.append(OutcomeRecord(label, p1 * p2, state2, label == success_label))
    return records


def enumerate_full_outcomes(rho_prime: DensityMatrix, tier1: Povm, tier2: Povm):
    """All terminal outcomes of the two-tier full-filtering tree.

    Tier 1 applies {M0, M1} on both arms. A transmitted photon waits; a
    reflected photon passes to the tier-2 filter on its own arm; twice
    reflected photons are measured out. The returned probabilities cover a
    complete outcome space (they sum to 1).
    """
    out = []

    p_tt, s_tt = filter_branch(rho_prime, tier1.m1, tier1.m1)
    out.append(OutcomeRecord("TT", p_tt, s_tt, True))

    p_tr, s_tr = filter_branch(rho_prime, tier1.m1, tier1.m0)
    out += _tier2_step("TR", p_tr, s_tr,
                       [("T", None, tier2.m1), ("R", None, tier2.m0)], "TR:T")

    p_rt, s_rt = filter_branch(rho_prime, tier1.m0, tier1.m1)
    out += _tier2_step("RT", p_rt, s_rt,
                       [("T", tier2.m1, None), ("R", tier2.m0, None)], "RT:T")

    p_rr, s_rr = filter_branch(rho_prime, tier1.m0, tier1.m0)
    out += _tier2_step("RR", p_rr, s_rr,
                       [("TT", tier2.m1, tier2.m1), ("TR", tier2.m1, tier2.m0),
                        ("RT", tier2.m0, tier2.m1), ("RR", tier2.m0, tier2.m0)],
                       "RR:TT")
    return out


def enumerate_partial_outcomes(rho_prime: DensityMatrix, tier1: Povm, tier2: Povm):
    """All terminal outcomes when only Alice filters (partial scheme)."""
    out = []

    p_t, s_t = filter_branch(rho_prime, tier1.m1, None)
    out.append(OutcomeRecord("T", p_t, s_t, True))

    p_r, s_r = filter_branch(rho_prime, tier1.m0, None)
    out += _tier2_step("R", p_r, s_r,
                       [("T", tier2.m1, None), ("R", tier2.m0, None)], "R:T")
    return out


def survival_rate(records) -> float:
    """Total probability mass of the success-set outcomes."""
    return float(sum(r.probability for r in records if r.in_success_set))
