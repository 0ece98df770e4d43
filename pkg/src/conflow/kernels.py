"""Backend selection for the hot kernels.

The compiled extension is used when it imports; set ``CONFLOW_PURE_PYTHON=1``
to force the numpy fallback.
"""
import logging
import os

import numpy as np

from . import _pykernels

log = logging.getLogger(__name__)

_ext = None
if os.getenv("CONFLOW_PURE_PYTHON") != "1":
    try:
        from . import _ckernels as _ext
    except ImportError:  # pragma: no cover - depends on the build
        log.debug("compiled kernels unavailable, using numpy fallback")

BACKEND = "cython" if _ext is not None else "numpy"


def resonant_sum(alpha, szego=False):
    """Return ``T_n = sum_j sum_k C(n,j,k,n+j-k) conj(a_j) a_k a_{n+j-k}``.

    ``C`` is ``min(n, j, k, n+j-k) + 1`` for the conformal flow and 1 for the
    cubic Szego equation. Terms with an index outside the window are dropped.
    """
    alpha = np.ascontiguousarray(alpha, dtype=np.complex128)
    if _ext is not None:
        return _ext.resonant_sum(alpha, bool(szego))
    return _pykernels.resonant_sum(alpha, szego)


def cubic_forcing(c):
    """Return ``F_n = sum_{j,k,l} S_jkln c_j c_k c_l`` for real ``c``."""
    c = np.ascontiguousarray(c, dtype=np.float64)
    if _ext is not None:
        return _ext.cubic_forcing(c)
    return _pykernels.cubic_forcing(c)


# below this size the direct sum beats the transform
FFT_THRESHOLD = 48


def szego_sum(alpha):
    """``T_n`` with unit coefficients, via ``conj(u) u u`` for long spectra.

    The truncated sum equals the ``z^n`` coefficient of ``conj(u(z)) u(z)^2``
    for the polynomial ``u`` built from the window, ``0 <= n < N``; the
    product spans ``3N - 2`` powers, so a transform of length ``>= 3N``
    leaves those coefficients unaliased.
    """
    alpha = np.ascontiguousarray(alpha, dtype=np.complex128)
    N = alpha.size
    if N < FFT_THRESHOLD:
        return resonant_sum(alpha, szego=True)
    L = 1 << int(np.ceil(np.log2(3 * N)))
    fa = np.fft.fft(alpha, L)
    # conj(u) on the circle has coefficient conj(alpha_j) at power -j
    fc = np.conj(fa)
    return np.fft.ifft(fc * fa * fa)[:N]
