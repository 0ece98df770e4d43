"""Pure numpy implementations of the hot kernels.

These are the reference paths. The compiled module ``_ckernels`` exposes the
same three functions and is compared against this file in the test suite.
"""
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=16)
def _resonant_table(N, szego):
    """Flat index table of every resonant triple inside the truncation window.

    Row ``t`` encodes the term ``coef[t] * conj(a[j]) * a[k] * a[m]`` that
    contributes to recipient ``n`` with ``m = n + j - k``.
    """
    n, j, k = np.meshgrid(np.arange(N), np.arange(N), np.arange(N), indexing="ij")
    m = n + j - k
    keep = (m >= 0) & (m < N)
    n, j, k, m = n[keep], j[keep], k[keep], m[keep]
    if szego:
        coef = np.ones(n.size)
    else:
        coef = (np.minimum(np.minimum(n, j), np.minimum(k, m)) + 1).astype(float)
    for arr in (n, j, k, m, coef):
        arr.setflags(write=False)
    return n, j, k, m, coef


def resonant_sum(alpha, szego=False):
    """Trilinear sum ``T_n = sum_{j,k} C ~a_j a_k a_{n+j-k}`` over the window."""
    alpha = np.asarray(alpha, dtype=complex)
    N = alpha.size
    if N == 0:
        return np.zeros(0, dtype=complex)
    n, j, k, m, coef = _resonant_table(N, bool(szego))
    terms = coef * np.conj(alpha[j]) * alpha[k] * alpha[m]
    re = np.bincount(n, weights=terms.real, minlength=N)
    im = np.bincount(n, weights=terms.imag, minlength=N)
    return re + 1j * im


def coupling_dense(N):
    """Dense array ``S[j, k, l, n]`` of the general interaction coefficients.

    Uses the Chebyshev-U product count: ``U_j U_k = sum U_m`` over
    ``m = |j-k|, |j-k|+2, ..., j+k``, so the coefficient counts the ``m``
    shared by the two pair expansions.
    """
    i = np.arange(N)
    j, k, l, n = np.meshgrid(i, i, i, i, indexing="ij", sparse=True)
    lo = np.maximum(np.abs(j - k), np.abs(l - n))
    hi = np.minimum(j + k, l + n)
    same_parity = (j + k - l - n) % 2 == 0
    count = np.where(same_parity & (hi >= lo), (hi - lo) // 2 + 1, 0)
    return count.astype(float)


@lru_cache(maxsize=8)
def _cached_dense(N):
    S = coupling_dense(N)
    S.setflags(write=False)
    return S


def cubic_forcing(c):
    """``F_n = sum_{j,k,l} S_jkln c_j c_k c_l`` for real coefficients ``c``."""
    c = np.asarray(c, dtype=float)
    N = c.size
    if N == 0:
        return np.zeros(0)
    S = _cached_dense(N)
    return np.einsum("jkln,j,k,l->n", S, c, c, c, optimize=True)
