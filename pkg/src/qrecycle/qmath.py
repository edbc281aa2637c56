"""Dense complex-matrix kernel for the 2x2 and 4x4 Hermitian operators used everywhere else.

Basis convention (fixed for the whole package): two-qubit states are ordered
|00>, |01>, |10>, |11> with Alice as the left (most-significant) qubit.
"""

from __future__ import annotations

import numpy as np

HERMITICITY_TOL = 1e-10
PSD_TOL = 1e-10
IMAG_DISCARD_TOL = 1e-12


def _as_square(a, dims=(2, 4)) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in dims:
        raise ValueError(f"expected a square matrix with dim in {dims}, got shape {a.shape}")
    return a


def is_hermitian(a, tol: float = HERMITICITY_TOL) -> bool:
    a = np.asarray(a)
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def tensor(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 operators, Alice as the left factor."""
    a = _as_square(a, dims=(2,))
    b = _as_square(b, dims=(2,))
    return np.kron(a, b)


def partial_transpose_b(rho) -> np.ndarray:
    """Transpose the second-qubit (Bob) index of a 4x4 operator.

    Entry ((ia, ib), (ja, jb)) moves to ((ia, jb), (ja, ib)). The eigenvalue
    spectrum is the same whichever qubit is transposed, so only the B-side
    variant is provided.
    """
    rho = _as_square(rho, dims=(4,))
    r = rho.reshape(2, 2, 2, 2)
    return r.transpose(0, 3, 2, 1).reshape(4, 4)


def hermitian_eigensystem(a):
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix."""
    a = _as_square(a)
    if not is_hermitian(a):
        raise ValueError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(a)
    return w, v


def hermitian_eigenvalues(a) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted ascending."""
    w, _ = hermitian_eigensystem(a)
    return w


def psd_sqrt(a) -> np.ndarray:
    """Unique PSD square root of a Hermitian PSD matrix.

    Eigenvalues in [-PSD_TOL, 0) are treated as floating-point noise and
    clamped to zero; anything more negative raises.
    """
    w, v = hermitian_eigensystem(a)
    if w[0] < -PSD_TOL:
        raise ValueError(f"matrix is not PSD: min eigenvalue {w[0]:.3e}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T
