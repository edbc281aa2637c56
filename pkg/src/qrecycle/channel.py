"""Amplitude-damping channel acting on an ideal EPR pair.

The source emits |Phi+> = (|00> + |11>)/sqrt(2). Each photon then traverses an
independent amplitude-damping channel in which |1> decays to |0> with
probability gamma. Both arms share the same gamma; an asymmetric entry point
exists for verification only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import qmath

TRACE_TOL = 1e-10


@dataclass(frozen=True)
class DampingParams:
    """Damping factor gamma in [0, 1] for one amplitude-damping channel."""

    gamma: float

    def __post_init__(self):
        if not (0.0 <= self.gamma <= 1.0):
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")

    @classmethod
    def from_decay_time(cls, t: float, t1: float) -> "DampingParams":
        """Build from an elapsed time t and relaxation time T1: gamma = 1 - exp(-t/T1)."""
        if t < 0 or t1 <= 0:
            raise ValueError("need t >= 0 and T1 > 0")
        return cls(gamma=1.0 - math.exp(-t / t1))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A 4x4 two-qubit density matrix (optionally unnormalized).

    Validates Hermiticity, positive semidefiniteness, and (when the
    ``normalized`` flag is set) unit trace.
    """

    mat: np.ndarray
    normalized: bool = True
    _validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        m = np.asarray(self.mat, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        object.__setattr__(self, "mat", m)
        if not self._validate:
            return
        if not qmath.is_hermitian(m):
            raise ValueError("density matrix is not Hermitian within tolerance")
        w = np.linalg.eigvalsh(m)
        if w[0] < -qmath.PSD_TOL:
            raise ValueError(f"density matrix is not PSD: min eigenvalue {w[0]:.3e}")
        if self.normalized and abs(self.trace - 1.0) > TRACE_TOL:
            raise ValueError(f"normalized flag set but trace = {self.trace!r}")

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.mat)))


def epr_state() -> DensityMatrix:
    """Projector onto |Phi+> = (|00> + |11>)/sqrt(2)."""
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[0, 3] = m[3, 0] = m[3, 3] = 0.5
    return DensityMatrix(m)


def kraus_pair(p: DampingParams):
    """Kraus operators (E0, E1) of one amplitude-damping channel.

    E0 = diag(1, sqrt(1 - gamma)), E1 = sqrt(gamma) |0><1|; they satisfy the
    completeness relation E0^dag E0 + E1^dag E1 = I.
    """
    g = p.gamma
    e0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - g)]], dtype=complex)
    e1 = np.array([[0.0, math.sqrt(g)], [0.0, 0.0]], dtype=complex)
    return e0, e1


def _apply_channel_asymmetric(rho: DensityMatrix, pa: DampingParams, pb: DampingParams) -> DensityMatrix:
    # Verification-only entry point; production use fixes gamma_A = gamma_B.
    if not rho.normalized:
        raise ValueError("apply_channel requires a normalized input state")
    ka = kraus_pair(pa)
    kb = kraus_pair(pb)
    out = np.zeros((4, 4), dtype=complex)
    for ea in ka:
        for eb in kb:
            k = qmath.tensor(ea, eb)
            out += k @ rho.mat @ k.conj().T
    return DensityMatrix(out)


def apply_channel(rho: DensityMatrix, p: DampingParams) -> DensityMatrix:
    """Send both qubits of ``rho`` through amplitude damping with the same gamma."""
    return _apply_channel_asymmetric(rho, p, p)


def damped_epr_closed_form(p: DampingParams) -> DensityMatrix:
    """Closed-form channel output for the |Phi+> input; test oracle for apply_channel.

    Nonzero entries: (1 + g^2)/2 on |00>, g(1-g)/2 on |01> and |10>,
    (1-g)^2/2 on |11>, and coherence (1-g)/2 between |00> and |11>.
    """
    g = p.gamma
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = (1.0 + g * g) / 2.0
    m[1, 1] = m[2, 2] = g * (1.0 - g) / 2.0
    m[3, 3] = (1.0 - g) ** 2 / 2.0
    m[0, 3] = m[3, 0] = (1.0 - g) / 2.0
    return DensityMatrix(m)
