"""Pure-numpy grid kernels; reference implementation and import-time fallback.

All functions operate on the compact 5-vector form of the states that arise
in this model: (p00, p01, p10, p11, x) where the p's are the diagonal
populations and x is the real |00><11| coherence. Diagonal filters keep
states inside this family, so a whole filter cascade reduces to scalar
arithmetic. Fidelity with |Phi+> is (p00 + p11 + 2x) / (2 * trace).
"""

from __future__ import annotations

import numpy as np

_PROB_FLOOR = 1e-300


def _fid(q00, q01, q10, q11, y):
    s = q00 + q01 + q10 + q11
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.where(s > _PROB_FLOOR, (q00 + q11 + 2.0 * y) / (2.0 * s), 0.0)
    return s, f


def tier1_full(state, alphas):
    """Survival and fidelity of the both-transmitted state vs the tier-1 alpha grid."""
    p00, p01, p10, p11, x = state
    a = np.asarray(alphas, dtype=float)
    b = 1.0 - a
    return _fid(b * b * p00, b * a * p01, a * b * p10, a * a * p11, a * b * x)


def tier1_partial(state, alphas):
    """Survival and fidelity of the Alice-transmitted state (no filter on Bob)."""
    p00, p01, p10, p11, x = state
    a = np.asarray(alphas, dtype=float)
    b = 1.0 - a
    return _fid(b * p00, b * p01, a * p10, a * p11, np.sqrt(a * b) * x)


def tier2_full(state, alpha1, alphas2):
    """Recycled-outcome probabilities and fidelities vs the tier-2 alpha grid.

    Returns (pr_tr, f_tr, pr_rt, f_rt, pr_rr, f_rr): the joint probability and
    final-state fidelity of the TR:T, RT:T, and RR:TT outcomes.
    """
    p00, p01, p10, p11, x = state
    a, b = alpha1, 1.0 - alpha1
    ap = np.asarray(alphas2, dtype=float)
    bp = 1.0 - ap
    sq = np.sqrt(ap * bp)

    # Unnormalized tier-1 branch states; y picks up a*b on every branch.
    y = a * b * x
    # TR: Alice transmits (beta, alpha), Bob reflects (alpha, beta).
    tr = (b * a * p00, b * b * p01, a * a * p10, a * b * p11)
    pr_tr, f_tr = _fid(tr[0] * bp, tr[1] * ap, tr[2] * bp, tr[3] * ap, y * sq)
    # RT: mirror image; the second filter acts on Alice.
    rt = (a * b * p00, a * a * p01, b * b * p10, b * a * p11)
    pr_rt, f_rt = _fid(rt[0] * bp, rt[1] * bp, rt[2] * ap, rt[3] * ap, y * sq)
    # RR: both reflected, both pass through second filters.
    rr = (a * a * p00, a * b * p01, a * b * p10, b * b * p11)
    pr_rr, f_rr = _fid(rr[0] * bp * bp, rr[1] * bp * ap, rr[2] * ap * bp,
                       rr[3] * ap * ap, y * ap * bp)
    return pr_tr, f_tr, pr_rt, f_rt, pr_rr, f_rr


def tier2_partial(state, alpha1, alphas2):
    """Probability and fidelity of the reflect-then-transmit outcome (partial scheme)."""
    p00, p01, p10, p11, x = state
    a, b = alpha1, 1.0 - alpha1
    ap = np.asarray(alphas2, dtype=float)
    bp = 1.0 - ap
    y = np.sqrt(a * b) * x
    r = (a * p00, a * p01, b * p10, b * p11)
    return _fid(r[0] * bp, r[1] * bp, r[2] * ap, r[3] * ap, y * np.sqrt(ap * bp))
