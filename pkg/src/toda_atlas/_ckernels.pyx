# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation of weighted Puiseux column norms.

For ``P = sum_u w_u |f_u|**2`` with ``f_u = sum_k c_k z**p_k`` this returns,
at each point ``z = exp(logr + i*theta)``, ``log P`` and the Laplacian
``(log P)_{z zbar}``, the latter through the Lagrange identity

    P P_{z zbar} - |P_z|**2 = 1/2 sum_{u,v} w_u w_v |f_u f_v' - f_v f_u'|**2

so no cancellation occurs.  All terms are scaled by the largest monomial
modulus at the point, which keeps ``|z|`` up to 1e6 finite.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, log, sin

cnp.import_array()


cdef void _eval_range(const long[:] row_ptr, const double[:] exps,
                      const double[:] cre, const double[:] cim,
                      const double[:] weights,
                      const double[:] logr, const double[:] theta,
                      double[:] out_logp, double[:] out_lap,
                      double[:] fre, double[:] fim, double[:] gre, double[:] gim,
                      long start, long stop) noexcept nogil:
    cdef long ncomp = weights.shape[0]
    cdef long nterm = exps.shape[0]
    cdef long m, u, v, k
    cdef double lr, th, s, a, mag, ph, re, im, p, wsum, lag, dre, dim_
    for m in range(start, stop):
        lr = logr[m]
        th = theta[m]
        s = -1e300
        for k in range(nterm):
            a = exps[k] * lr
            if a > s:
                s = a
        for u in range(ncomp):
            fre[u] = 0.0
            fim[u] = 0.0
            gre[u] = 0.0
            gim[u] = 0.0
            for k in range(row_ptr[u], row_ptr[u + 1]):
                p = exps[k]
                mag = exp(p * lr - s)
                ph = p * th
                re = mag * (cre[k] * cos(ph) - cim[k] * sin(ph))
                im = mag * (cre[k] * sin(ph) + cim[k] * cos(ph))
                fre[u] += re
                fim[u] += im
                gre[u] += p * re
                gim[u] += p * im
        wsum = 0.0
        for u in range(ncomp):
            wsum += weights[u] * (fre[u] * fre[u] + fim[u] * fim[u])
        lag = 0.0
        for u in range(ncomp):
            for v in range(u + 1, ncomp):
                # f_u g_v - f_v g_u
                dre = (fre[u] * gre[v] - fim[u] * gim[v]) - (fre[v] * gre[u] - fim[v] * gim[u])
                dim_ = (fre[u] * gim[v] + fim[u] * gre[v]) - (fre[v] * gim[u] + fim[v] * gre[u])
                lag += weights[u] * weights[v] * (dre * dre + dim_ * dim_)
        out_logp[m] = log(wsum) + 2.0 * s
        out_lap[m] = lag / (wsum * wsum) * exp(-2.0 * lr)


def logp_and_laplacian(row_ptr, exps, coefs, weights, logr, theta, start=0, stop=None,
                       out_logp=None, out_lap=None):
    """Evaluate ``log P`` and ``(log P)_{z zbar}`` on ``points[start:stop]``.

    Releases the GIL, so disjoint ranges may run in parallel threads that
    share the output arrays.
    """
    cdef long[:] rp = np.ascontiguousarray(row_ptr, dtype=np.int_)
    cdef double[:] ex = np.ascontiguousarray(exps, dtype=np.float64)
    coefs = np.ascontiguousarray(coefs, dtype=np.complex128)
    cdef double[:] cre = np.ascontiguousarray(coefs.real)
    cdef double[:] cim = np.ascontiguousarray(coefs.imag)
    cdef double[:] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef double[:] lr = np.ascontiguousarray(logr, dtype=np.float64)
    cdef double[:] th = np.ascontiguousarray(theta, dtype=np.float64)
    cdef long n = lr.shape[0]
    if stop is None:
        stop = n
    if out_logp is None:
        out_logp = np.empty(n)
    if out_lap is None:
        out_lap = np.empty(n)
    cdef double[:] ol = out_logp
    cdef double[:] oz = out_lap
    cdef long ncomp = w.shape[0]
    cdef double[:] fre = np.empty(ncomp)
    cdef double[:] fim = np.empty(ncomp)
    cdef double[:] gre = np.empty(ncomp)
    cdef double[:] gim = np.empty(ncomp)
    cdef long a = start, b = stop
    with nogil:
        _eval_range(rp, ex, cre, cim, w, lr, th, ol, oz, fre, fim, gre, gim, a, b)
    return out_logp, out_lap
