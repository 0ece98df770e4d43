"""The three-dimensional invariant subspace ``alpha_n = (b + a n) p**n``.

On this subspace ``y = |p|^2 / (1 - |p|^2)`` performs a harmonic oscillation
whose frequency and turning points follow from the conserved ``Q``, ``E`` and
``S``; the mode energy spectrum is therefore exactly periodic.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError

# discriminants down to this value are treated as a stationary orbit (A = 0)
REALIZABILITY_TOL = 1e-12


@dataclass(frozen=True)
class SubspaceState:
    b: complex
    a: complex
    p: complex

    def __post_init__(self):
        if not abs(self.p) < 1:
            raise DomainError(f"|p| must be < 1, got {abs(self.p)}")

    @property
    def y(self):
        r = abs(self.p) ** 2
        return r / (1.0 - r)

    def as_array(self):
        return np.array([self.b, self.a, self.p], dtype=complex)

    @classmethod
    def from_array(cls, arr):
        b, a, p = arr
        return cls(complex(b), complex(a), complex(p))


class SubspaceCharges(NamedTuple):
    Q: float
    E: float
    S: float
    H: float


class YOscillation(NamedTuple):
    """``y(t) = B + A sin(Omega t + psi)`` with turning points ``y_minus, y_plus``."""

    B: float
    A: float
    Omega: float
    psi: float

    @property
    def y_minus(self):
        return self.B - self.A

    @property
    def y_plus(self):
        return self.B + self.A

    @property
    def period(self):
        return 2 * np.pi / self.Omega

    @property
    def cascade_ratio(self):
        return (1 + self.y_plus) / (1 + self.y_minus)

    def __call__(self, t):
        return self.B + self.A * np.sin(self.Omega * np.asarray(t) + self.psi)


def lift(s, N, return_tail=False):
    """Mode spectrum ``(b + a n) p**n`` for ``n < N``.

    With ``return_tail`` also returns the discarded charge-weighted tail
    ``sum_{n >= N} (n+1)^2 |alpha_n|^2``, summed until it converges.
    """
    if not abs(s.p) < 1:
        raise DomainError("|p| must be < 1")
    n = np.arange(N)
    alpha = ((s.b + s.a * n) * s.p**n).astype(complex)
    if not return_tail:
        return alpha
    r = abs(s.p) ** 2
    tail = 0.0
    if r > 0:
        m = N
        while True:
            term = (m + 1) ** 2 * abs(s.b + s.a * m) ** 2 * r**m
            tail += term
            m += 1
            if term <= 1e-18 * max(tail, 1e-300) or m > N + 100000:
                break
    return alpha, tail


def subspace_rhs(s):
    """Reduced equations of motion ``(db/dt, da/dt, dp/dt)``."""
    b, a, p = s.b, s.a, s.p
    r = abs(p) ** 2
    if not r < 1:
        raise DomainError("|p| must be < 1")
    y = r / (1 - r)
    f = (1 + y) ** 2
    ab2, aa2 = abs(b) ** 2, abs(a) ** 2
    bc_a = np.conj(b) * a
    pdot = -1j * f * p / 6 * (2 * y * aa2 + bc_a)
    adot = -1j * f * a / 6 * (
        5 * ab2 + (18 * y**2 + 4 * y) * aa2 + (6 * y - 1) * bc_a + 10 * y * np.conj(a) * b
    )
    bdot = -1j * f * (
        b * (ab2 + (6 * y**2 + 2 * y) * aa2 + 2 * y * b * np.conj(a))
        + a * (2 * y * ab2 + (4 * y + 2) * y**2 * aa2 + y**2 * bc_a)
    )
    return complex(bdot), complex(adot), complex(pdot)


def subspace_rhs_array(z):
    """``subspace_rhs`` on a packed ``[b, a, p]`` array, for the integrator."""
    return np.array(subspace_rhs(SubspaceState.from_array(z)), dtype=complex)


def ydot(s):
    """``dy/dt = y (1+y)^3 Im(conj(b) a) / 3``."""
    y = s.y
    return y * (1 + y) ** 3 * np.imag(np.conj(s.b) * s.a) / 3


def subspace_charges(s):
    y = s.y
    ab2, aa2 = abs(s.b) ** 2, abs(s.a) ** 2
    re = np.real(np.conj(s.b) * s.a)
    f = (1 + y) ** 2
    Q = f * (ab2 + 4 * y * re + 2 * y * (3 * y + 1) * aa2)
    E = f * ((1 + 2 * y) * ab2 + 4 * y * (3 * y + 2) * re + 4 * y * (6 * y**2 + 6 * y + 1) * aa2)
    S = aa2 * y * (1 + y) ** 3
    return SubspaceCharges(Q=float(Q), E=float(E), S=float(S), H=float(Q**2 - 2 * S**2))


def two_mode_charges(alpha0, alpha1):
    """Charges of two-mode data, the ``p -> 0`` edge of the subspace.

    ``S`` tends to ``|alpha_1|^2`` because ``alpha_1 = (b + a) p`` with
    ``y ~ |p|^2``.
    """
    m0, m1 = abs(alpha0) ** 2, abs(alpha1) ** 2
    Q, E, S = m0 + 2 * m1, m0 + 4 * m1, m1
    return SubspaceCharges(Q=Q, E=E, S=S, H=Q**2 - 2 * S**2)


def y_quadratic(Q, E, S):
    """Coefficients ``(beta, q)`` of ``y^2 + beta y + q`` in the energy relation."""
    D = Q**2 + 12 * S**2
    beta = 1 - E * (Q + 2 * S) / D
    q = (E - Q - 2 * S) ** 2 / (4 * D)
    return beta, q


def y_oscillation(Q, E, S, y0, direction):
    """Closed-form oscillation of ``y`` for the given charges.

    ``direction`` is the sign of ``dy/dt`` at ``t = 0`` (0 at a turning
    point). Raises ``DomainError`` when the charges admit no real orbit.
    """
    D = Q**2 + 12 * S**2
    if D <= 0:
        raise ValueError("zero state has no y oscillation")
    beta, q = y_quadratic(Q, E, S)
    B = -0.5 * beta
    disc = B * B - q
    if disc < -REALIZABILITY_TOL * max(1.0, B * B):
        raise DomainError(f"charges (Q={Q}, E={E}, S={S}) are not realizable")
    A = np.sqrt(max(disc, 0.0))
    Omega = np.sqrt(D) / 6
    if A == 0:
        psi = 0.0
    else:
        sin_psi = np.clip((y0 - B) / A, -1.0, 1.0)
        cos_psi = np.sign(direction) * np.sqrt(1.0 - sin_psi**2)
        psi = float(np.arctan2(sin_psi, cos_psi))
    return YOscillation(B=float(B), A=float(A), Omega=float(Omega), psi=psi)


def oscillation_of(s):
    """``y_oscillation`` for the orbit through the subspace state ``s``."""
    Q, E, S, _ = subspace_charges(s)
    return y_oscillation(Q, E, S, s.y, np.sign(ydot(s)))


def spectrum_from_charges(Q, E, S, y, N):
    """Mode energies ``|alpha_n|^2`` for ``n < N`` from the charges and ``y``.

    Written in terms of ``|a|^2 |p|^2`` and ``Re(conj(b) a) |p|^2`` so the
    two-mode edge ``y = 0`` stays finite.
    """
    n = np.arange(N)
    g = (1 + y) ** 3
    b2 = (2 * Q - E + 3 * y * (Q + 2 * S)) / g
    rho = y / (1 + y)
    # |a|^2 rho and Re(conj(b) a) rho, both finite as y -> 0
    a2_rho = S / ((1 + y) * g)
    re_rho = (E - Q - 2 * S - 2 * y * (Q + 6 * S)) / (4 * (1 + y) * g)
    out = np.empty(N)
    if N:
        out[0] = b2
    if N > 1:
        m = n[1:]
        out[1:] = (b2 * rho + 2 * m * re_rho + m**2 * a2_rho) * rho ** (m - 1)
    return out


def moduli_from_charges(Q, E, S, y):
    """``(|b|^2, |a|^2, Re(conj(b) a))`` reconstructed from charges and ``y > 0``."""
    g = (1 + y) ** 3
    b2 = (2 * Q - E + 3 * y * (Q + 2 * S)) / g
    a2 = S / (y * g)
    re = (E - Q - 2 * S - 2 * y * (Q + 6 * S)) / (4 * y * g)
    return b2, a2, re


def spectrum_series(s0, t, N):
    """Mode energies at times ``t`` along the orbit of ``s0`` (closed form)."""
    Q, E, S, _ = subspace_charges(s0)
    osc = y_oscillation(Q, E, S, s0.y, np.sign(ydot(s0)))
    t = np.atleast_1d(np.asarray(t, dtype=float))
    return np.array([spectrum_from_charges(Q, E, S, osc(ti), N) for ti in t])
