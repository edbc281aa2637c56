# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid kernels; same contract as pyimpl, scalar C loops instead of numpy."""

import numpy as np

from libc.math cimport sqrt

DEF PROB_FLOOR = 1e-300


cdef inline double _fid1(double q00, double q01, double q10, double q11,
                         double y, double *prob) nogil:
    cdef double s = q00 + q01 + q10 + q11
    prob[0] = s
    if s > PROB_FLOOR:
        return (q00 + q11 + 2.0 * y) / (2.0 * s)
    return 0.0


def tier1_full(state, alphas):
    cdef double p00, p01, p10, p11, x
    p00, p01, p10, p11, x = state
    cdef double[::1] a = np.ascontiguousarray(alphas, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0], i
    surv_arr = np.empty(n)
    fid_arr = np.empty(n)
    cdef double[::1] surv = surv_arr
    cdef double[::1] fid = fid_arr
    cdef double ai, bi, s
    for i in range(n):
        ai = a[i]
        bi = 1.0 - ai
        fid[i] = _fid1(bi * bi * p00, bi * ai * p01, ai * bi * p10,
                       ai * ai * p11, ai * bi * x, &s)
        surv[i] = s
    return surv_arr, fid_arr


def tier1_partial(state, alphas):
    cdef double p00, p01, p10, p11, x
    p00, p01, p10, p11, x = state
    cdef double[::1] a = np.ascontiguousarray(alphas, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0], i
    surv_arr = np.empty(n)
    fid_arr = np.empty(n)
    cdef double[::1] surv = surv_arr
    cdef double[::1] fid = fid_arr
    cdef double ai, bi, s
    for i in range(n):
        ai = a[i]
        bi = 1.0 - ai
        fid[i] = _fid1(bi * p00, bi * p01, ai * p10, ai * p11,
                       sqrt(ai * bi) * x, &s)
        surv[i] = s
    return surv_arr, fid_arr


def tier2_full(state, double alpha1, alphas2):
    cdef double p00, p01, p10, p11, x
    p00, p01, p10, p11, x = state
    cdef double a = alpha1, b = 1.0 - alpha1
    cdef double[::1] ap = np.ascontiguousarray(alphas2, dtype=np.float64)
    cdef Py_ssize_t n = ap.shape[0], i
    out = tuple(np.empty(n) for _ in range(6))
    cdef double[::1] pr_tr = out[0]
    cdef double[::1] f_tr = out[1]
    cdef double[::1] pr_rt = out[2]
    cdef double[::1] f_rt = out[3]
    cdef double[::1] pr_rr = out[4]
    cdef double[::1] f_rr = out[5]
    cdef double y = a * b * x
    # Unnormalized tier-1 branch populations (TR, RT, RR).
    cdef double tr0 = b * a * p00, tr1 = b * b * p01, tr2 = a * a * p10, tr3 = a * b * p11
    cdef double rt0 = a * b * p00, rt1 = a * a * p01, rt2 = b * b * p10, rt3 = b * a * p11
    cdef double rr0 = a * a * p00, rr1 = a * b * p01, rr2 = a * b * p10, rr3 = b * b * p11
    cdef double api, bpi, sq, s
    for i in range(n):
        api = ap[i]
        bpi = 1.0 - api
        sq = sqrt(api * bpi)
        f_tr[i] = _fid1(tr0 * bpi, tr1 * api, tr2 * bpi, tr3 * api, y * sq, &s)
        pr_tr[i] = s
        f_rt[i] = _fid1(rt0 * bpi, rt1 * bpi, rt2 * api, rt3 * api, y * sq, &s)
        pr_rt[i] = s
        f_rr[i] = _fid1(rr0 * bpi * bpi, rr1 * bpi * api, rr2 * api * bpi,
                        rr3 * api * api, y * api * bpi, &s)
        pr_rr[i] = s
    return out


def tier2_partial(state, double alpha1, alphas2):
    cdef double p00, p01, p10, p11, x
    p00, p01, p10, p11, x = state
    cdef double a = alpha1, b = 1.0 - alpha1
    cdef double[::1] ap = np.ascontiguousarray(alphas2, dtype=np.float64)
    cdef Py_ssize_t n = ap.shape[0], i
    pr_arr = np.empty(n)
    fid_arr = np.empty(n)
    cdef double[::1] pr = pr_arr
    cdef double[::1] fid = fid_arr
    cdef double y = sqrt(a * b) * x
    cdef double r0 = a * p00, r1 = a * p01, r2 = b * p10, r3 = b * p11
    cdef double api, bpi, s
    for i in range(n):
        api = ap[i]
        bpi = 1.0 - api
        fid[i] = _fid1(r0 * bpi, r1 * bpi, r2 * api, r3 * api,
                       y * sqrt(api * bpi), &s)
        pr[i] = s
    return pr_arr, fid_arr
