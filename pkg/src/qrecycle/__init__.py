"""Photonic entanglement distillation with Gisin local filters and qubit recycling.

Pipeline: an EPR pair traverses symmetric amplitude-damping channels, a
tier-1 local filter distills the transmitted photons under a fidelity floor,
and a tier-2 filter recycles the reflected photons that still carry usable
entanglement, raising the high-fidelity survival rate.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .channel import DampingParams, DensityMatrix, apply_channel, epr_state, kraus_pair
from .experiment import (SweepRow, SweepSpec, SweepStatus, breakdown,
                         run_restricted_rr, run_sweep, summarize, write_csv,
                         write_json)
from .filtering import (FilterScheme, OutcomeRecord, Povm, SchemeKind,
                        enumerate_full_outcomes, enumerate_partial_outcomes,
                        filter_branch, survival_rate)
from .metrics import PptReport, concurrence, fidelity, ppt_report
from .optimize import FilterSolution, OptimizerConfig, solve_tier1, solve_tier2

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "DampingParams", "DensityMatrix", "apply_channel", "epr_state", "kraus_pair",
    "SweepRow", "SweepSpec", "SweepStatus", "breakdown", "run_restricted_rr",
    "run_sweep", "summarize", "write_csv", "write_json",
    "FilterScheme", "OutcomeRecord", "Povm", "SchemeKind",
    "enumerate_full_outcomes", "enumerate_partial_outcomes", "filter_branch",
    "survival_rate",
    "PptReport", "concurrence", "fidelity", "ppt_report",
    "FilterSolution", "OptimizerConfig", "solve_tier1", "solve_tier2",
]
