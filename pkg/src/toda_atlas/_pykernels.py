"""Pure numpy twin of the compiled kernel (same inputs, same outputs)."""

from __future__ import annotations

import numpy as np


def logp_and_laplacian(row_ptr, exps, coefs, weights, logr, theta, start=0, stop=None,
                       out_logp=None, out_lap=None):
    """Evaluate ``log P`` and ``(log P)_{z zbar}`` on ``points[start:stop]``.

    See :mod:`toda_atlas._ckernels` for the formulas.
    """
    logr = np.asarray(logr, dtype=float)
    theta = np.asarray(theta, dtype=float)
    n = logr.shape[0]
    stop = n if stop is None else stop
    if out_logp is None:
        out_logp = np.empty(n)
    if out_lap is None:
        out_lap = np.empty(n)
    lr, th = logr[start:stop], theta[start:stop]
    exps = np.asarray(exps, dtype=float)
    coefs = np.asarray(coefs, dtype=complex)
    weights = np.asarray(weights, dtype=float)
    s = np.max(np.outer(lr, exps), axis=1)
    # (points, terms) monomials, scaled
    mono = np.exp(np.outer(lr, exps) - s[:, None] + 1j * np.outer(th, exps)) * coefs
    seg = np.asarray(row_ptr)
    comp = np.repeat(np.arange(len(weights)), np.diff(seg))
    f = np.zeros((len(lr), len(weights)), dtype=complex)
    g = np.zeros_like(f)
    np.add.at(f.T, comp, mono.T)
    np.add.at(g.T, comp, (mono * exps).T)
    wsum = (np.abs(f) ** 2) @ weights
    # sum_{u<v} w_u w_v |f_u g_v - f_v g_u|^2 = 1/2 sum_{u,v}
    cross = f[:, :, None] * g[:, None, :]
    det = cross - np.swapaxes(cross, 1, 2)
    lag = 0.5 * np.einsum("u,v,muv->m", weights, weights, np.abs(det) ** 2)
    out_logp[start:stop] = np.log(wsum) + 2.0 * s
    out_lap[start:stop] = lag / wsum**2 * np.exp(-2.0 * lr)
    return out_logp, out_lap
