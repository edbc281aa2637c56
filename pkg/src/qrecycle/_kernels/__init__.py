"""Grid-scan kernels for the optimizer's hot loop.

The compiled Cython extension is preferred; the numpy implementation is the
fallback when the extension was not built (or when QRECYCLE_PURE_PYTHON is
set). Both expose identical functions over the compact 5-vector state form;
``coherent_form`` converts a 4x4 matrix into that form.
"""

from __future__ import annotations

import os

import numpy as np

from . import pyimpl

if os.environ.get("QRECYCLE_PURE_PYTHON"):
    impl = pyimpl
    BACKEND = "python"
else:
    try:
        from . import _fast as impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        impl = pyimpl
        BACKEND = "python"

tier1_full = impl.tier1_full
tier1_partial = impl.tier1_partial
tier2_full = impl.tier2_full
tier2_partial = impl.tier2_partial

_FORM_TOL = 1e-10


def coherent_form(mat) -> np.ndarray:
    """Compact (p00, p01, p10, p11, x) form of a diagonal-plus-|00><11|-coherence matrix.

    Raises if the matrix has structure outside that family (any other
    off-diagonal entry, or a complex coherence).
    """
    m = np.asarray(mat, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    allowed = np.zeros((4, 4), dtype=bool)
    np.fill_diagonal(allowed, True)
    allowed[0, 3] = allowed[3, 0] = True
    if np.max(np.abs(m[~allowed])) > _FORM_TOL:
        raise ValueError("matrix is not of the diagonal-plus-coherence form")
    vals = np.array([m[0, 0], m[1, 1], m[2, 2], m[3, 3], m[0, 3]])
    if np.max(np.abs(vals.imag)) > _FORM_TOL:
        raise ValueError("matrix entries must be real in this family")
    return vals.real.copy()
