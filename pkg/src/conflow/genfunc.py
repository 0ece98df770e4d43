"""Generating functions ``u(z) = sum alpha_n z^n`` and the summation identities
behind the complex-plane form of the conformal flow.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .resonant import as_modes


@dataclass(frozen=True)
class RationalGenFn:
    """``u(z) = numerator(z) / denominator(z)`` with ascending coefficient lists.

    The denominator must have ``denominator[0] != 0`` and all its roots
    outside the closed unit disk, so that ``u`` is holomorphic on a disk of
    radius > 1.
    """

    numerator: tuple
    denominator: tuple = (1.0,)

    def __post_init__(self):
        den = np.asarray(self.denominator, dtype=complex)
        if den.size == 0 or den[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")
        if np.any(np.abs(self.pole_parameters) >= 1):
            raise DomainError("pole parameters must lie strictly inside the unit disk")

    @property
    def pole_parameters(self):
        """The ``p_k`` in ``denominator = d0 * prod (1 - p_k z)``."""
        den = np.trim_zeros(np.asarray(self.denominator, dtype=complex), "b")
        if den.size <= 1:
            return np.zeros(0, dtype=complex)
        # roots of den are 1/p_k; the reversed polynomial has roots p_k
        return np.roots(den)

    @classmethod
    def from_poles(cls, numerator, poles):
        den = np.array([1.0 + 0j])
        for p in poles:
            den = np.convolve(den, [1.0, -p])
        return cls(tuple(complex(c) for c in numerator), tuple(den))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        num = np.polyval(np.asarray(self.numerator, dtype=complex)[::-1], z)
        den = np.polyval(np.asarray(self.denominator, dtype=complex)[::-1], z)
        return num / den


def geometric(p, c=1.0):
    """``c / (1 - p z)``."""
    return RationalGenFn.from_poles([c], [p])


def subspace_genfn(b, a, p):
    """``(b + (a - b) p z) / (1 - p z)^2``, whose coefficients are ``(b + a n) p^n``."""
    return RationalGenFn.from_poles([b, (a - b) * p], [p, p])


def blaschke(c, poles):
    """``c * prod (conj(p_k) - z) / (1 - p_k z)``."""
    num = np.array([complex(c)])
    for p in poles:
        num = np.convolve(num, [np.conj(p), -1.0])
    return RationalGenFn.from_poles(num, poles)


def decimated_genfn(c, p, N, shift=None):
    """``c z^shift / (1 - p^N z^N)``; ``shift`` defaults to ``N - 1``."""
    shift = N - 1 if shift is None else shift
    num = np.zeros(shift + 1, dtype=complex)
    num[shift] = c
    den = np.zeros(N + 1, dtype=complex)
    den[0], den[N] = 1.0, -(p**N)
    return RationalGenFn(tuple(num), tuple(den))


def taylor_coeffs(f, N):
    """First ``N`` Taylor coefficients of a rational generating function.

    Solves ``den * u = num`` term by term, so the result is exact up to
    rounding in the recurrence.
    """
    num = np.asarray(f.numerator, dtype=complex)
    den = np.asarray(f.denominator, dtype=complex)
    out = np.zeros(N, dtype=complex)
    for n in range(N):
        acc = num[n] if n < num.size else 0.0
        top = min(n, den.size - 1)
        if top >= 1:
            acc = acc - np.dot(den[1 : top + 1], out[n - 1 :: -1][:top])
        out[n] = acc / den[0]
    return out


def _brute_limit(modulus, n, tol):
    """Number of outer terms after which a geometric tail in ``modulus`` drops below ``tol``."""
    if modulus == 0:
        return 1
    J = 1
    # tail ~ poly(J) * modulus**J; the J**3 factor covers the polynomial weights
    while (J + n + 2) ** 4 * modulus**J / max(1e-300, 1 - modulus) > tol:
        J += 1
    return J


def master_sum(rho, theta, n):
    """``sum_j sum_{k<=n+j} (min(n,j,k,n+j-k)+1) rho^j theta^k`` in closed form."""
    if theta == 1:
        head = n + 1
    else:
        head = (1 - theta ** (n + 1)) / (1 - theta)
    return head / ((1 - rho) * (1 - theta * rho))


def master_sum_brute(rho, theta, n, tol=1e-15):
    """Direct double sum of ``master_sum``, truncated once the tail is below ``tol``."""
    if not (abs(rho) < 1 and abs(theta * rho) < 1):
        raise ValueError("need |rho| < 1 and |theta rho| < 1")
    J = _brute_limit(max(abs(rho), abs(theta * rho)), n, tol)
    total = 0j
    for j in range(J):
        k = np.arange(n + j + 1)
        coef = np.minimum(np.minimum(n, j), np.minimum(k, n + j - k)) + 1
        total += rho**j * np.sum(coef * theta ** k.astype(float))
    return total


# (power of j, power of k) for the eight sums, in the order they are listed
SUM_WEIGHTS = ((0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (1, 1), (2, 1), (1, 2))


def appendix_sums(n, rho):
    """Closed forms of ``sum_j sum_k (min+1) j^K k^L rho^j`` for the eight weights.

    Works with any numeric type supporting field operations (floats,
    ``fractions.Fraction``). Each value carries a factor ``n + 1``.
    """
    if not rho < 1:
        raise DomainError("rho = |p|^2 must be < 1")
    d = 1 - rho
    return (
        (n + 1) / d**2,
        2 * (n + 1) * rho / d**3,
        n * (n + 1) / (2 * d**2) + (n + 1) * rho / d**3,
        2 * (n + 1) * rho / d**3 + 6 * (n + 1) * rho**2 / d**4,
        n * (n + 1) * (2 * n + 1) / (6 * d**2) + (n + 1) ** 2 * rho / d**3 + 2 * (n + 1) * rho**2 / d**4,
        (n + 1) ** 2 * rho / d**3 + 3 * (n + 1) * rho**2 / d**4,
        (n + 1) ** 2 * rho / d**3 + 3 * (n + 1) * (n + 3) * rho**2 / d**4 + 12 * (n + 1) * rho**3 / d**5,
        (n + 1) * (2 * n**2 + 4 * n + 3) * rho / (3 * d**3)
        + (n + 1) * (3 * n + 7) * rho**2 / d**4
        + 8 * (n + 1) * rho**3 / d**5,
    )


def weighted_sum_brute(n, rho, K, L, tol=1e-15):
    """``sum_j sum_{k<=n+j} (min(n,j,k,n+j-k)+1) j^K k^L rho^j`` by direct summation."""
    if not 0 <= rho < 1:
        raise ValueError("rho must lie in [0, 1)")
    J = _brute_limit(rho, n + K + L, tol)
    total = 0.0
    for j in range(J):
        k = np.arange(n + j + 1, dtype=float)
        coef = np.minimum(np.minimum(n, j), np.minimum(k, n + j - k)) + 1
        total += rho**j * float(j) ** K * np.sum(coef * k**L)
    return total


def appendix_sums_brute(n, rho, tol=1e-15):
    return tuple(weighted_sum_brute(n, rho, K, L, tol) for K, L in SUM_WEIGHTS)


class ContourResolutionError(ValueError):
    """The contour sampling cannot resolve the requested state."""


def rhs_via_contour(alpha, n_samples=None, radius=0.8, s_radius=1.0, tail_tol=1e-8):
    """Conformal flow derivative from the complex-plane representation.

    Evaluates ``(1/2 pi i) oint ds/s conj-u(s) ((s u(s) - z u(z)) / (s - z))^2``
    by uniform sampling of ``|s| = s_radius`` for ``z`` on ``|z| = radius``;
    a discrete Fourier transform in ``z`` then yields ``i(n+1) d alpha_n/dt``.
    """
    alpha = as_modes(alpha)
    N = alpha.size
    M = n_samples or 8 * max(N, 1)
    if M < 4 * N or M & (M - 1):
        raise ContourResolutionError(f"n_samples must be a power of two >= {4 * N}, got {M}")
    if not 0 < radius < 1 or abs(s_radius - radius) < 1e-3:
        raise ValueError("need 0 < radius < 1 and s_radius away from radius")
    phase = np.exp(2j * np.pi * np.arange(M) / M)
    s = s_radius * phase
    z = radius * phase
    coeffs = alpha[::-1]
    us = np.polyval(coeffs, s)
    uz = np.polyval(coeffs, z)
    # conj-u(s) = sum conj(alpha_n) s^-n
    ut = np.polyval(np.conj(coeffs), 1.0 / s)
    ratio = (s[None, :] * us[None, :] - (z * uz)[:, None]) / (s[None, :] - z[:, None])
    F = np.mean(ut[None, :] * ratio**2, axis=1)
    spectrum = np.fft.fft(F) / M
    scaled = spectrum / radius ** np.arange(M)
    top = 2 * N - 1
    if top < M:
        # coefficients past 2N-2 are aliasing only
        tail = np.max(np.abs(spectrum[top:])) if top < M else 0.0
        if tail > tail_tol * max(np.max(np.abs(spectrum[:top])), 1e-300):
            raise ContourResolutionError(f"aliased tail {tail:.3g} exceeds tolerance")
    T = scaled[:N]
    return -1j * T / np.arange(1, N + 1)
