"""Backend selection and threaded driver for the evaluation kernel.

The compiled extension is used when it imports; setting
``TODA_ATLAS_PURE_PYTHON=1`` forces the numpy twin.  ``TODA_ATLAS_THREADS``
caps the number of worker threads (default: CPU count).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _pykernels

if os.environ.get("TODA_ATLAS_PURE_PYTHON", "") not in ("", "0"):
    _impl, BACKEND = _pykernels, "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl, BACKEND = _pykernels, "python"

_MIN_CHUNK = 256


def thread_count() -> int:
    env = os.environ.get("TODA_ATLAS_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def logp_and_laplacian(row_ptr, exps, coefs, weights, logr, theta, backend=None):
    """``(log P, (log P)_{z zbar})`` at every point; see :mod:`._ckernels`."""
    impl = {"cython": _impl, "python": _pykernels, None: _impl}[backend]
    logr = np.ascontiguousarray(logr, dtype=float)
    theta = np.ascontiguousarray(theta, dtype=float)
    n = logr.shape[0]
    out_logp, out_lap = np.empty(n), np.empty(n)
    workers = min(thread_count(), max(1, n // _MIN_CHUNK))
    if workers == 1:
        impl.logp_and_laplacian(row_ptr, exps, coefs, weights, logr, theta, 0, n, out_logp, out_lap)
        return out_logp, out_lap
    bounds = np.linspace(0, n, workers + 1).astype(int)
    with ThreadPoolExecutor(workers) as pool:
        jobs = [pool.submit(impl.logp_and_laplacian, row_ptr, exps, coefs, weights, logr, theta,
                            int(a), int(b), out_logp, out_lap)
                for a, b in zip(bounds[:-1], bounds[1:])]
        for j in jobs:
            j.result()
    return out_logp, out_lap
