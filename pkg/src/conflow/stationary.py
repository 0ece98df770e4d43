"""Stationary states ``alpha_n(t) = A_n exp(-i (lam - n omega) t)`` of the conformal flow."""
from dataclasses import dataclass

import numpy as np

from . import genfunc, kernels
from .errors import DomainError
from .resonant import charges
from .subspace import SubspaceState, lift

P_STAR = 2.0 - np.sqrt(3.0)
DEFAULT_SIZE = 128


@dataclass(frozen=True)
class StationaryState:
    amplitudes: np.ndarray
    lam: float
    omega: float
    decay: float = 0.0
    zeros: int | None = None

    @property
    def frequencies(self):
        return self.lam - np.arange(self.amplitudes.size) * self.omega

    def at(self, t):
        """Mode spectrum at time ``t``."""
        return self.amplitudes * np.exp(-1j * self.frequencies * t)


def defect(amplitudes, lam, omega):
    """``(n+1)(lam - n omega) A_n - T_n(A)`` on the truncation window."""
    A = np.asarray(amplitudes, dtype=complex)
    n = np.arange(A.size)
    return (n + 1) * (lam - n * omega) * A - kernels.resonant_sum(A)


def residual(st):
    A = st.amplitudes
    if A.size == 0:
        return 0.0
    return float(np.max(np.abs(defect(A, st.lam, st.omega))))


def tail_bound(st):
    """Size of the terms dropped by truncating a geometrically decaying family.

    Every dropped term has an index ``>= N``, so it carries ``decay**N``;
    there are at most ``N**2`` of them per recipient, each with a polynomial
    prefactor of degree <= 2 in the indices.
    """
    A = st.amplitudes
    N = A.size
    if st.decay == 0 or N == 0:
        return 0.0
    scale = float(np.max(np.abs(A))) if N else 0.0
    return scale**3 * (N + 1) ** 4 * st.decay**N / (1 - st.decay) ** 3


def one_mode(N, c, size=None):
    size = N + 1 if size is None else size
    if size <= N:
        raise ValueError("window must contain mode N")
    A = np.zeros(size, dtype=complex)
    A[N] = c
    return StationaryState(A, lam=abs(c) ** 2, omega=0.0, zeros=N)


def family_a0(c, p, size=DEFAULT_SIZE):
    """``u = c / (1 - p z)``, ``A_n = c p^n``, ``lam = Q``."""
    _check_disk(p)
    A = c * complex(p) ** np.arange(size)
    lam = abs(c) ** 2 / (1 - abs(p) ** 2) ** 2
    return StationaryState(A, lam=lam, omega=0.0, decay=abs(p), zeros=0)


def family_omega0(c, p, size=DEFAULT_SIZE):
    """Subspace family with ``b = -2c|p|^2``, ``a = c(1 - |p|^2)`` and ``omega = 0``."""
    _check_disk(p)
    r = abs(p) ** 2
    s = SubspaceState(b=-2 * c * r, a=c * (1 - r), p=p)
    lam = abs(c) ** 2 * r / (1 - r) ** 2
    return StationaryState(lift(s, size), lam=lam, omega=0.0, decay=abs(p), zeros=1)


def kappa(p):
    """``sqrt(|p|^4 - 14|p|^2 + 1)``; real for ``|p| <= 2 - sqrt(3)``."""
    r = abs(p) ** 2
    k2 = r * r - 14 * r + 1
    if k2 < 0:
        if k2 > -1e-12:
            return 0.0
        raise DomainError(f"|p| = {abs(p):.6g} exceeds p* = 2 - sqrt(3) = {P_STAR:.6g}")
    return float(np.sqrt(k2))


def pm_parameters(c, p, branch):
    """``(b, a, lam, omega)`` of the ``omega != 0`` families; ``branch`` is +1 or -1."""
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    if abs(p) > P_STAR * (1 + 1e-12):
        raise DomainError(f"|p| = {abs(p):.6g} exceeds p* = 2 - sqrt(3) = {P_STAR:.6g}")
    k = branch * kappa(p)
    r = abs(p) ** 2
    c2 = abs(c) ** 2
    b = -c * (1 + 5 * r + k)
    a = 2 * c * (1 - r)
    omega = c2 / 3 * (1 + r + k) / (1 - r)
    lam = 2 * c2 / 3 * ((3 - 4 * r) / (1 - r) + (3 + 4 * r) * k / (1 - r) ** 2)
    return b, a, lam, omega


def family_pm(c, p, branch, size=DEFAULT_SIZE):
    b, a, lam, omega = pm_parameters(c, p, branch)
    s = SubspaceState(b=b, a=a, p=p)
    return StationaryState(lift(s, size), lam=lam, omega=omega, decay=abs(p))


def blaschke_state(c, poles, size=DEFAULT_SIZE):
    """Finite Blaschke product times ``c``; ``lam = |c|^2``, ``omega = 0``."""
    for p in poles:
        _check_disk(p)
    A = genfunc.taylor_coeffs(genfunc.blaschke(c, poles), size)
    decay = max((abs(p) for p in poles), default=0.0)
    return StationaryState(A, lam=abs(c) ** 2, omega=0.0, decay=decay, zeros=len(poles))


def decimated_state(c, p, N, size=DEFAULT_SIZE):
    """``u = c z^(N-1) / (1 - p^N z^N)``: only every ``N``-th mode is populated."""
    if N < 1:
        raise ValueError("N must be >= 1")
    _check_disk(p)
    A = genfunc.taylor_coeffs(genfunc.decimated_genfn(c, p, N), size)
    lam = abs(c) ** 2 / (1 - abs(p) ** (2 * N)) ** 2
    return StationaryState(A, lam=lam, omega=0.0, decay=abs(p), zeros=N - 1)


def _check_disk(p):
    if not abs(p) < 1:
        raise DomainError(f"|p| must be < 1, got {abs(p)}")


def k_functional(alpha, lam, omega):
    """``K = H/2 - lam Q + omega (E - Q)``; stationary states are its critical points."""
    alpha = np.asarray(alpha, dtype=complex)
    ch = charges(alpha)
    return 0.5 * ch.H - lam * ch.Q + omega * (ch.E - ch.Q)


def k_gradient(alpha, lam, omega, step=1e-5):
    """Central-difference gradient of ``K`` over ``(Re A_n, Im A_n)``."""
    alpha = np.asarray(alpha, dtype=complex)
    grad = np.empty(2 * alpha.size)
    for i in range(alpha.size):
        for part, unit in ((0, 1.0), (1, 1j)):
            up, down = alpha.copy(), alpha.copy()
            up[i] += step * unit
            down[i] -= step * unit
            grad[2 * i + part] = (k_functional(up, lam, omega) - k_functional(down, lam, omega)) / (2 * step)
    return grad


def k_gradient_norm(alpha, lam, omega, step=1e-5):
    return float(np.linalg.norm(k_gradient(alpha, lam, omega, step)))


def zero_count_quantization(st):
    """``Q / (zeros + 1)``, which equals ``lam`` for the ``omega = 0`` families."""
    if st.zeros is None:
        raise ValueError("state does not record its number of zeros")
    return charges(st.amplitudes).Q / (st.zeros + 1)

