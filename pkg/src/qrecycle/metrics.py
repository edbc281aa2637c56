"""State-quality measures: fidelity, PPT entanglement test, Wootters concurrence.

Fidelity here is the *squared* Uhlmann form F(rho, sigma) =
Tr[sqrt(sqrt(rho) sigma sqrt(rho))]^2. Both conventions circulate in the
literature; every threshold in this package refers to the squared form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qmath
from .channel import DensityMatrix

PURITY_TOL = 1e-10
ENTANGLEMENT_TOL = 1e-10

_SIGMA_YY = np.array(
    [[0, 0, 0, -1],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [-1, 0, 0, 0]], dtype=complex)


@dataclass(frozen=True)
class PptReport:
    """Partial-transpose spectrum of a (possibly unnormalized) two-qubit state."""

    eigenvalues: tuple
    min_eigenvalue: float
    is_entangled: bool


def _require_normalized(*states: DensityMatrix):
    for s in states:
        if not s.normalized:
            raise ValueError("this metric requires normalized states")


def fidelity_general(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Squared Uhlmann fidelity via the general mixed-state formula."""
    _require_normalized(rho, sigma)
    sq = qmath.psd_sqrt(rho.mat)
    w = qmath.hermitian_eigenvalues(sq @ sigma.mat @ sq)
    w = np.clip(w, 0.0, None)
    # eigensolver noise on true-zero eigenvalues (~1e-17) would blow up to
    # ~1e-9 under the square root; drop anything far below the top eigenvalue
    if w[-1] > 0.0:
        w[w < w[-1] * 1e-12] = 0.0
    f = float(np.sqrt(w).sum()) ** 2
    return min(max(f, 0.0), 1.0)


def fidelity(rho_target: DensityMatrix, sigma: DensityMatrix) -> float:
    """Squared Uhlmann fidelity; uses the <psi|sigma|psi> shortcut for a pure target."""
    _require_normalized(rho_target, sigma)
    w, v = qmath.hermitian_eigensystem(rho_target.mat)
    if w[-2] < PURITY_TOL:  # rank 1: all weight on the top eigenvector
        psi = v[:, -1]
        f = float(np.real(psi.conj() @ sigma.mat @ psi))
        return min(max(f, 0.0), 1.0)
    return fidelity_general(rho_target, sigma)


def ppt_report(rho) -> PptReport:
    """PPT entanglement test on a Hermitian PSD input of any positive scale.

    A negative partial-transpose eigenvalue certifies entanglement; for two
    qubits the criterion is also necessary. The entangled flag uses a
    threshold proportional to the trace, so it is invariant under positive
    rescaling of the input.
    """
    mat = rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    w_in = qmath.hermitian_eigenvalues(mat)
    tr = float(np.real(np.trace(mat)))
    if w_in[0] < -qmath.PSD_TOL * max(1.0, tr):
        raise ValueError(f"input is not PSD: min eigenvalue {w_in[0]:.3e}")
    w = qmath.hermitian_eigenvalues(qmath.partial_transpose_b(mat))
    min_eig = float(w[0])
    return PptReport(
        eigenvalues=tuple(float(x) for x in w),
        min_eigenvalue=min_eig,
        is_entangled=min_eig < -ENTANGLEMENT_TOL * max(tr, np.finfo(float).tiny),
    )


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence of a normalized two-qubit state.

    C = max(0, mu1 - mu2 - mu3 - mu4) where the mu_i are the descending
    square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
    """
    _require_normalized(rho)
    r = rho.mat @ _SIGMA_YY @ rho.mat.conj() @ _SIGMA_YY
    w = np.linalg.eigvals(r)
    w = np.clip(np.real(w), 0.0, None)
    mu = np.sort(np.sqrt(w))[::-1]
    return float(max(0.0, mu[0] - mu[1] - mu[2] - mu[3]))
