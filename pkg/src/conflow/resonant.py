"""Conformal flow on truncated mode spectra.

A mode spectrum is a 1-D complex numpy array ``alpha`` of length ``N``. The
flow is derived from the Hamiltonian truncated to indices ``< N``, so every
sum simply drops terms that reference an index outside the window. With that
convention the truncated flow conserves the truncated ``Q``, ``E`` and ``H``
exactly.
"""
from typing import NamedTuple

import numpy as np

from . import kernels


class ChargeSet(NamedTuple):
    Q: float
    E: float
    H: float


def as_modes(alpha):
    """Validate and copy a mode spectrum into a complex array."""
    alpha = np.array(alpha, dtype=complex, ndmin=1)
    if alpha.ndim != 1:
        raise ValueError("mode spectrum must be one-dimensional")
    if not np.all(np.isfinite(alpha)):
        raise ValueError("mode spectrum contains non-finite amplitudes")
    return alpha


def interaction_coefficient(j, k, l, n):
    """General interaction coefficient ``S_jkln`` for nonnegative indices.

    ``sin((m+1)x)/sin(x)`` is the Chebyshev polynomial ``U_m(cos x)``, and the
    defining integral is the orthonormal inner product of ``U_j U_k`` with
    ``U_l U_n``. Each pair product expands as ``U_{|j-k|} + U_{|j-k|+2} +
    ... + U_{j+k}``, so the coefficient counts the shared terms.
    """
    if min(j, k, l, n) < 0:
        raise ValueError("indices must be nonnegative")
    if (j + k - l - n) % 2:
        return 0
    lo = max(abs(j - k), abs(l - n))
    hi = min(j + k, l + n)
    return max(0, (hi - lo) // 2 + 1)


def resonant_coefficient(n, j, k):
    """``min(n, j, k, n+j-k) + 1``, valid on the resonant set only."""
    return min(n, j, k, n + j - k) + 1


def flow_rhs(alpha):
    """Time derivative of the conformal flow, ``-i T_n / (n+1)``."""
    alpha = np.asarray(alpha, dtype=complex)
    T = kernels.resonant_sum(alpha)
    return -1j * T / np.arange(1, alpha.size + 1)


def hamiltonian(alpha):
    alpha = np.asarray(alpha, dtype=complex)
    T = kernels.resonant_sum(alpha)
    return float(np.real(np.vdot(alpha, T)))


def hamiltonian_gradient(alpha):
    """Wirtinger derivative ``dH/d(conj alpha_n) = 2 T_n``."""
    return 2.0 * kernels.resonant_sum(np.asarray(alpha, dtype=complex))


def charges(alpha):
    alpha = np.asarray(alpha, dtype=complex)
    w = np.arange(1, alpha.size + 1)
    power = np.abs(alpha) ** 2
    return ChargeSet(
        Q=float(np.sum(w * power)),
        E=float(np.sum(w**2 * power)),
        H=hamiltonian(alpha),
    )


def charge_monitor(alpha):
    """Charges as a plain dict, in the form the integrator logs."""
    return charges(alpha)._asdict()


def apply_symmetry(alpha, scale=1.0, global_phase=0.0, mode_phase=0.0):
    """Map ``alpha_n -> scale * exp(i global_phase) * exp(i n mode_phase) * alpha_n``.

    The scaling symmetry also rescales time by ``scale**2``; that part acts on
    trajectories, not on snapshots.
    """
    alpha = np.asarray(alpha, dtype=complex)
    n = np.arange(alpha.size)
    return scale * np.exp(1j * global_phase) * np.exp(1j * n * mode_phase) * alpha


def decimate(alpha, N, size=None):
    """Embed ``u(z) -> z**N u(z**(N+1))``: ``alpha'_{m(N+1)+N} = alpha_m``.

    ``size`` is the output truncation; it defaults to the smallest window that
    holds every input mode, ``N + (len(alpha) - 1)(N + 1) + 1``.
    """
    alpha = np.asarray(alpha, dtype=complex)
    if N < 0:
        raise ValueError("decimation order must be nonnegative")
    need = N + (alpha.size - 1) * (N + 1) + 1 if alpha.size else 0
    if size is None:
        size = need
    elif size < need:
        raise ValueError(f"output truncation {size} too small, need at least {need}")
    out = np.zeros(size, dtype=complex)
    out[N : N + alpha.size * (N + 1) : N + 1] = alpha
    return out
