"""The parent oscillator system and a quantitative check of time averaging.

The string equation ``v_tt - v_xx + v^3/sin^2 x = 0`` is solved by Galerkin
projection on ``sin((n+1)x)``. The cubic term is exact in mode space through
the coupling tensor, so no spatial grid enters the dynamics.
"""
import warnings
from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from . import kernels
from .errors import DomainError
from .integrate import IntegratorConfig, integrate, sample_times
from .resonant import as_modes, flow_rhs, interaction_coefficient


class TailOverflowError(RuntimeError):
    """Energy reached the truncation boundary."""


@dataclass(frozen=True)
class FieldState:
    c: np.ndarray
    cdot: np.ndarray
    epsilon: float = 1.0

    def __post_init__(self):
        if np.shape(self.c) != np.shape(self.cdot):
            raise ValueError("c and cdot differ in shape")

    @property
    def N(self):
        return len(self.c)

    def pack(self):
        return np.concatenate([self.c, self.cdot]).astype(float)

    @classmethod
    def unpack(cls, y, epsilon=1.0):
        N = len(y) // 2
        return cls(np.asarray(y[:N]), np.asarray(y[N:]), epsilon)


class CouplingTensor:
    """Interaction coefficients ``S_jkln`` for all indices ``< N``.

    Only sorted quadruples ``j <= k <= l <= n`` are stored, with the number
    of distinct orderings of each.
    """

    def __init__(self, N):
        self.N = N
        quads = list(combinations_with_replacement(range(N), 4))
        self.index = np.array(quads, dtype=np.int64).reshape(-1, 4)
        self.values = np.array([interaction_coefficient(*q) for q in quads], dtype=float)
        self.multiplicity = np.array([len(set(permutations(q))) for q in quads], dtype=np.int64)

    def __getitem__(self, key):
        if any(i >= self.N for i in key):
            raise IndexError(f"index outside truncation {self.N}")
        return interaction_coefficient(*key)

    def dense(self):
        out = np.zeros((self.N,) * 4)
        for q, v in zip(self.index, self.values):
            if v:
                for perm in set(permutations(q)):
                    out[perm] = v
        return out


def full_tensor(N):
    return CouplingTensor(N)


def quadrature_coefficient(j, k, l, n):
    """The defining integral of ``S_jkln``, evaluated by adaptive quadrature."""

    def f(x):
        s = np.sin(x)
        return np.sin((j + 1) * x) * np.sin((k + 1) * x) * np.sin((l + 1) * x) * np.sin((n + 1) * x) / (s * s)

    with warnings.catch_warnings():
        # vanishing integrals trip the roundoff detector; the value is still accurate
        warnings.simplefilter("ignore", IntegrationWarning)
        val, _ = quad(f, 0.0, np.pi, epsabs=1e-13, epsrel=1e-13, limit=400)
    return 2.0 / np.pi * val


def oscillator_rhs(y):
    """Packed ``[c, cdot] -> [cdot, cddot]`` for the Galerkin oscillator system."""
    N = len(y) // 2
    c, cdot = y[:N], y[N:]
    w2 = np.arange(1, N + 1) ** 2
    return np.concatenate([cdot, -w2 * c - kernels.cubic_forcing(c)])


def oscillator_accel(fs):
    y = oscillator_rhs(fs.pack())
    return y[fs.N :]


def field_energy(y):
    """``1/2 sum cdot^2 + 1/2 sum (n+1)^2 c^2 + 1/4 sum S c c c c``."""
    N = len(y) // 2
    c, cdot = y[:N], y[N:]
    w2 = np.arange(1, N + 1) ** 2
    quartic = float(np.dot(c, kernels.cubic_forcing(c)))
    return 0.5 * float(np.dot(cdot, cdot)) + 0.5 * float(np.dot(w2 * c, c)) + 0.25 * quartic


def field_monitor(y):
    return {"energy": field_energy(y)}


def from_envelope(beta, t=0.0, epsilon=1.0):
    """Variation of constants: envelopes ``beta_n`` to ``(c_n, cdot_n)`` at time ``t``."""
    beta = np.asarray(beta, dtype=complex)
    w = np.arange(1, beta.size + 1)
    rot = beta * np.exp(1j * w * t)
    return FieldState(2 * rot.real, -2 * w * rot.imag, epsilon)


def to_envelope(fs, t=0.0):
    """``beta_n = (c_n - i cdot_n/(n+1)) exp(-i(n+1)t) / 2``."""
    c = np.asarray(fs.c)
    cdot = np.asarray(fs.cdot)
    w = np.arange(1, c.size + 1)
    return 0.5 * (c - 1j * cdot / w) * np.exp(-1j * w * t)


def envelopes_along(times, states):
    """Envelope of every packed oscillator state in a sampled run."""
    N = states.shape[1] // 2
    w = np.arange(1, N + 1)
    c, cdot = states[:, :N], states[:, N:]
    return 0.5 * (c - 1j * cdot / w) * np.exp(-1j * np.outer(times, w))


def averaged_rhs(alpha):
    """Slow-time derivative of the averaged system, factors 2 and -3 kept.

    ``2i(n+1) d alpha_n/d tau = -3 T_n``.
    """
    alpha = np.asarray(alpha, dtype=complex)
    T = kernels.resonant_sum(alpha)
    return 1.5j * T / np.arange(1, alpha.size + 1)


def envelope_forcing(beta, t):
    """Exact envelope derivative ``d beta_n/dt`` before averaging, at frozen ``beta``."""
    fs = from_envelope(beta, t)
    w = np.arange(1, fs.N + 1)
    F = kernels.cubic_forcing(fs.c)
    return -F * np.exp(-1j * w * t) / (2j * w)


def fast_period_average(beta, samples=256):
    """Mean of ``envelope_forcing`` over one fast period ``[0, 2 pi)``.

    All fast phases are integer multiples of ``t``, so the uniform rule is
    exact once ``samples`` exceeds the largest frequency; the mean keeps only
    the resonant terms.
    """
    ts = 2 * np.pi * np.arange(samples) / samples
    return np.mean([envelope_forcing(beta, t) for t in ts], axis=0)


def grid_evaluate(fs, x):
    """``v(x) = sum c_n sin((n+1)x)`` and ``phi = v / sin x`` on a grid.

    ``phi`` is summed as ``sum c_n U_n(cos x)`` so it is finite at the poles.
    """
    x = np.asarray(x, dtype=float)
    c = np.asarray(fs.c, dtype=float)
    w = np.arange(1, c.size + 1)
    v = np.sin(np.multiply.outer(x, w)) @ c
    # Chebyshev U recurrence: U_0 = 1, U_1 = 2 cos x, U_{m+1} = 2 cos x U_m - U_{m-1}
    ct = np.cos(x)
    phi = np.zeros_like(x)
    u_prev, u = np.zeros_like(x), np.ones_like(x)
    for cn in c:
        phi += cn * u
        u_prev, u = u, 2 * ct * u - u_prev
    return v, phi


@dataclass
class AveragingReport:
    epsilon: float
    horizon: float
    N: int
    error: float
    scaled_error: float
    relative_error: float
    times: np.ndarray
    error_history: np.ndarray
    energy_drift: float
    tail_fraction: float


def validate_averaging(alpha0, epsilon, horizon=1.0, N=None, cfg=None, tail_tol=1e-8):
    """Compare the full oscillator system with the averaged system.

    Runs the oscillator system from ``beta_n(0) = epsilon alpha_n(0)`` up to
    ``t = horizon / epsilon**2`` and the averaged system in slow time
    ``tau = epsilon**2 t``; reports ``max |beta_n(t) - epsilon alpha_n(tau)|``.
    """
    if not 0 < epsilon <= 0.2:
        raise DomainError("epsilon must lie in (0, 0.2]")
    alpha0 = as_modes(alpha0)
    N = N or alpha0.size
    if alpha0.size > N:
        raise ValueError("initial data longer than truncation")
    alpha0 = np.pad(alpha0, (0, N - alpha0.size))
    cfg = cfg or IntegratorConfig(rel_tol=1e-11, abs_tol=1e-13, sample_interval=0.05)

    t_end = horizon / epsilon**2
    times = sample_times(t_end, cfg.sample_interval)
    fs0 = from_envelope(epsilon * alpha0)
    full = integrate(oscillator_rhs, fs0.pack(), t_end, cfg, t_eval=times)
    beta = envelopes_along(times, full.states)

    energies = np.array([field_energy(s) for s in full.states[:: max(1, len(times) // 200)]])
    energy_drift = float(np.max(np.abs(energies - energies[0])) / max(abs(energies[0]), 1e-300))

    power = np.abs(beta) ** 2
    total = power.sum(axis=1)
    tail = power[:, -2:].sum(axis=1)
    tail_fraction = float(np.max(np.divide(tail, total, out=np.zeros_like(tail), where=total > 0)))
    if tail_fraction > tail_tol:
        raise TailOverflowError(f"energy fraction {tail_fraction:.3g} in the last two modes")

    slow_cfg = IntegratorConfig(rel_tol=cfg.rel_tol, abs_tol=cfg.abs_tol, sample_interval=1.0)
    slow = integrate(averaged_rhs, alpha0, horizon, slow_cfg, t_eval=epsilon**2 * times)
    diff = np.abs(beta - epsilon * slow.states).max(axis=1)
    err = float(diff.max())
    return AveragingReport(
        epsilon=epsilon,
        horizon=horizon,
        N=N,
        error=err,
        scaled_error=err / epsilon**2,
        relative_error=err / epsilon,
        times=times,
        error_history=diff,
        energy_drift=energy_drift,
        tail_fraction=tail_fraction,
    )


def time_map_deviation(alpha0, tau_end, cfg=None, samples=64):
    """Max distance between the averaged system at ``tau`` and the flow at ``-3 tau / 2``.

    The averaged system keeps its factors 2 and -3; the conformal flow drops
    them, which amounts to ``t_flow = -(3/2) tau``.
    """
    alpha0 = as_modes(alpha0)
    cfg = cfg or IntegratorConfig(rel_tol=1e-11, abs_tol=1e-13)
    taus = np.linspace(0.0, tau_end, samples + 1)
    slow = integrate(averaged_rhs, alpha0, tau_end, cfg, t_eval=taus)
    flow = integrate(flow_rhs, alpha0, -1.5 * tau_end, cfg, t_eval=-1.5 * taus)
    return float(np.max(np.abs(slow.states - flow.states)))
