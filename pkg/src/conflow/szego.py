"""The cubic Szego equation ``i alpha_n' = sum conj(a_j) a_k a_{n+j-k}``.

Shares the truncation convention of the conformal flow: all coupling
coefficients equal 1 and terms with an index outside the window are dropped.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import genfunc, kernels
from .errors import DomainError
from .stationary import StationaryState


class SzegoCharges(NamedTuple):
    M: float
    P: float
    H: float


def szego_rhs(alpha):
    return -1j * kernels.szego_sum(alpha)


def szego_hamiltonian(alpha):
    alpha = np.asarray(alpha, dtype=complex)
    return float(np.real(np.vdot(alpha, kernels.szego_sum(alpha))))


def szego_charges(alpha):
    alpha = np.asarray(alpha, dtype=complex)
    power = np.abs(alpha) ** 2
    return SzegoCharges(
        M=float(power.sum()),
        P=float(np.dot(np.arange(alpha.size), power)),
        H=szego_hamiltonian(alpha),
    )


def szego_monitor(alpha):
    return szego_charges(alpha)._asdict()


@dataclass(frozen=True)
class SzegoPoleState:
    """``u(z) = (b + a z) / (1 - p z)`` with ``|p| < 1``."""

    a: complex
    b: complex
    p: complex

    def __post_init__(self):
        if not abs(self.p) < 1:
            raise DomainError(f"|p| must be < 1, got {abs(self.p)}")

    def modes(self, N):
        """``alpha_0 = b``, ``alpha_n = (a + b p) p^(n-1)``."""
        out = np.zeros(N, dtype=complex)
        if N:
            out[0] = self.b
        if N > 1:
            out[1:] = (self.a + self.b * self.p) * self.p ** np.arange(N - 1)
        return out

    @property
    def mass(self):
        return abs(self.b) ** 2 + abs(self.a + self.b * self.p) ** 2 / (1 - abs(self.p) ** 2)

    @property
    def momentum(self):
        return abs(self.a + self.b * self.p) ** 2 / (1 - abs(self.p) ** 2) ** 2

    def as_array(self):
        return np.array([self.a, self.b, self.p], dtype=complex)

    @classmethod
    def from_array(cls, arr):
        a, b, p = arr
        return cls(complex(a), complex(b), complex(p))


def pole_rhs(state):
    """Reduced equations ``(a', b', p')`` on the single-pole subspace."""
    M, P = state.mass, state.momentum
    a, b, p = state.a, state.b, state.p
    return (-1j * M * a, -1j * ((M + P) * b + P * a * np.conj(p)), -1j * (M * p + a * np.conj(b)))


def pole_rhs_array(z):
    return np.array(pole_rhs(SzegoPoleState.from_array(z)), dtype=complex)


def pole_frequency(a0, b0, p0):
    s = SzegoPoleState(a0, b0, p0)
    M, P = s.mass, s.momentum
    return 0.5 * np.sqrt(max((M + P) ** 2 - 4 * P * a0**2, 0.0))


def single_pole_solution(a0, b0, p0, t):
    """Closed-form evolution of real single-pole data ``(a0, b0, p0)``."""
    for name, v in (("a0", a0), ("b0", b0), ("p0", p0)):
        if np.imag(v) != 0:
            raise ValueError(f"{name} must be real")
    a0, b0, p0 = float(np.real(a0)), float(np.real(b0)), float(np.real(p0))
    s0 = SzegoPoleState(a0, b0, p0)
    M, P = s0.mass, s0.momentum
    w = 0.5 * np.sqrt(max((M + P) ** 2 - 4 * P * a0**2, 0.0))
    cos = np.cos(w * t)
    # sin(w t) / (2 w), continuous at w = 0
    half_sinc = np.sin(w * t) / (2 * w) if w > 0 else 0.5 * t
    a = a0 * np.exp(-1j * M * t)
    b = (b0 * cos - 1j * (b0 * (M + P) + 2 * a0 * p0 * P) * half_sinc) * np.exp(-0.5j * (M + P) * t)
    p = (p0 * cos - 1j * (p0 * (M + P) + 2 * a0 * b0) * half_sinc) * np.exp(-0.5j * (M - P) * t)
    return SzegoPoleState(complex(a), complex(b), complex(p))


def mass_spectrum(M, P, p_abs, N):
    """``|alpha_n|^2`` of a single-pole state from its charges and ``|p|``."""
    r = p_abs**2
    out = np.empty(N)
    if N:
        out[0] = M - P * (1 - r)
    if N > 1:
        out[1:] = P * (1 - r) ** 2 * r ** np.arange(N - 1)
    return out


class TwoModeInstability(NamedTuple):
    omega: float
    sup_p: float
    t_peak: float
    envelope: np.ndarray


def two_mode_instability(eps, N=32):
    """Data ``u = 2 eps + z``: frequency, ``sup_t |p(t)|`` and the mass spectrum at the peak."""
    if eps <= 0:
        raise DomainError("eps must be positive")
    omega = 2 * eps * np.sqrt(1 + eps**2)
    sup_p = 1 / np.sqrt(1 + eps**2)
    s0 = SzegoPoleState(1.0, 2 * eps, 0.0)
    envelope = mass_spectrum(s0.mass, s0.momentum, sup_p, N)
    return TwoModeInstability(omega, sup_p, np.pi / (2 * omega), envelope)


def two_mode_p(eps, t):
    """``p(t) = -i sin(omega t) exp(-2 i eps^2 t) / sqrt(1 + eps^2)``."""
    omega = 2 * eps * np.sqrt(1 + eps**2)
    return -1j * np.sin(omega * np.asarray(t)) * np.exp(-2j * eps**2 * np.asarray(t)) / np.sqrt(1 + eps**2)


def szego_defect(amplitudes, lam, omega):
    """``(lam - n omega) A_n - T_n(A)`` with unit couplings."""
    A = np.asarray(amplitudes, dtype=complex)
    n = np.arange(A.size)
    return (lam - n * omega) * A - kernels.szego_sum(A)


def szego_residual(st):
    if st.amplitudes.size == 0:
        return 0.0
    return float(np.max(np.abs(szego_defect(st.amplitudes, st.lam, st.omega))))


def decimated_frequencies(c, p, N):
    """``(lam, omega)`` of ``c z^l / (1 - p^N z^N)`` as printed for the Szego equation."""
    r = abs(p) ** (2 * N)
    return abs(c) ** 2 / (1 - r) ** 2, abs(c) ** 2 / (N * (1 - r))


def szego_stationary(kind, size=128, **params):
    """Build a Szego stationary state and return it with its residual.

    ``kind="blaschke"`` takes ``c`` and ``poles``; ``kind="decimated"``
    takes ``c``, ``p``, ``N`` and ``shift`` (``0 <= shift <= N-1``).
    The returned state uses the frequency profile ``lam - n omega``.
    """
    if kind == "blaschke":
        c, poles = params["c"], params["poles"]
        A = genfunc.taylor_coeffs(genfunc.blaschke(c, poles), size)
        decay = max((abs(p) for p in poles), default=0.0)
        st = StationaryState(A, lam=abs(c) ** 2, omega=0.0, decay=decay, zeros=len(poles))
    elif kind == "decimated":
        c, p, N = params["c"], params["p"], params["N"]
        shift = params.get("shift", N - 1)
        if not 0 <= shift <= N - 1:
            raise DomainError("shift must satisfy 0 <= shift <= N - 1")
        lam, omega = decimated_frequencies(c, p, N)
        A = genfunc.taylor_coeffs(genfunc.decimated_genfn(c, p, N, shift), size)
        # mode shift + mN rotates as exp(-i(lam + m N omega) t)
        st = StationaryState(A, lam=lam - shift * omega, omega=-omega, decay=abs(p))
    else:
        raise ValueError(f"unknown stationary kind {kind!r}")
    return st, szego_residual(st)
