# cython: language_level=3
"""Compiled versions of the hot kernels in ``_pykernels``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline Py_ssize_t _min4(Py_ssize_t a, Py_ssize_t b, Py_ssize_t c, Py_ssize_t d) nogil:
    if b < a:
        a = b
    if c < a:
        a = c
    if d < a:
        a = d
    return a


def resonant_sum(double complex[::1] alpha, bint szego=False):
    cdef Py_ssize_t N = alpha.shape[0]
    cdef Py_ssize_t n, j, k, m, klo, khi
    cdef double complex acc, inner, aj
    cdef double coef
    out_arr = np.zeros(N, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    with nogil:
        for n in range(N):
            acc = 0
            for j in range(N):
                aj = alpha[j].conjugate()
                # keep m = n + j - k inside [0, N)
                klo = n + j - N + 1
                if klo < 0:
                    klo = 0
                khi = n + j
                if khi > N - 1:
                    khi = N - 1
                inner = 0
                for k in range(klo, khi + 1):
                    m = n + j - k
                    if szego:
                        coef = 1.0
                    else:
                        coef = _min4(n, j, k, m) + 1.0
                    inner = inner + coef * alpha[k] * alpha[m]
                acc = acc + aj * inner
            out[n] = acc
    return out_arr


def cubic_forcing(double[::1] c):
    # S_jkln counts the Chebyshev-U indices shared by U_j U_k and U_l U_n, so
    # the cubic term factors through d = (sum c_j U_j)^2 in the U basis.
    # Both stages use step-2 difference arrays, O(N^2) overall.
    cdef Py_ssize_t N = c.shape[0]
    cdef Py_ssize_t L = 2 * N + 2
    cdef Py_ssize_t j, k, n, l, m, lo, hi
    cdef double s, acc
    out_arr = np.zeros(N, dtype=np.float64)
    if N == 0:
        return out_arr
    cdef double[::1] out = out_arr
    diff_arr = np.zeros(L + 2, dtype=np.float64)
    cum_arr = np.zeros(L + 2, dtype=np.float64)
    cdef double[::1] diff = diff_arr
    cdef double[::1] cum = cum_arr
    with nogil:
        for j in range(N):
            for k in range(N):
                lo = j - k if j >= k else k - j
                hi = j + k
                diff[lo] += c[j] * c[k]
                diff[hi + 2] -= c[j] * c[k]
        # d[m] = running step-2 sum of diff, stored back into diff
        for m in range(L + 2):
            if m >= 2:
                diff[m] += diff[m - 2]
        # cum[m] = d[m] + d[m-2] + ...
        for m in range(L + 2):
            cum[m] = diff[m]
            if m >= 2:
                cum[m] += cum[m - 2]
        for n in range(N):
            acc = 0.0
            for l in range(N):
                lo = n - l if n >= l else l - n
                hi = n + l
                s = cum[hi]
                if lo >= 2:
                    s -= cum[lo - 2]
                acc += c[l] * s
            out[n] = acc
    return out_arr
