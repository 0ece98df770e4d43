import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from conflow.integrate import (
    IntegrationError,
    IntegratorConfig,
    StrictDOP853,
    Trajectory,
    conservation_drift,
    integrate,
    sample_times,
)
from conflow.resonant import charge_monitor, flow_rhs

from conftest import random_modes

W = np.array([1.0, 2.0, 3.5])


def rotation(y):
    return -1j * W * y


@pytest.mark.parametrize("kw", [dict(rel_tol=0), dict(abs_tol=1.5), dict(max_step=0), dict(sample_interval=-1)])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        IntegratorConfig(**kw)


@given(st.floats(0.01, 50), st.floats(0.001, 3))
def test_sample_times_cover_interval(t_end, dt):
    t = sample_times(t_end, dt)
    assert t[0] == 0 and t[-1] == pytest.approx(t_end)
    assert np.all(np.diff(t) <= dt * (1 + 1e-9))


@pytest.mark.parametrize("t_end", [7.0, -7.0])
def test_linear_rotation_forward_and_backward(t_end):
    y0 = np.array([1.0, 0.5j, -0.2])
    traj = integrate(rotation, y0, t_end, IntegratorConfig(sample_interval=0.5))
    exact = y0 * np.exp(-1j * np.outer(traj.times, W))
    assert np.max(np.abs(traj.states - exact)) < 1e-9
    assert traj.times[-1] == pytest.approx(t_end)


def test_zero_horizon():
    traj = integrate(rotation, np.ones(3, dtype=complex), 0.0, monitor=lambda y: {"m": float(np.sum(abs(y) ** 2))})
    assert traj.states.shape == (1, 3)
    assert conservation_drift(traj) == {"m": 0.0}


def test_nonfinite_derivative_raises():
    with pytest.raises(IntegrationError) as info:
        integrate(lambda y: y * np.nan, np.ones(2), 1.0)
    assert info.value.t_reached == 0.0


def test_blowup_reports_failure():
    with pytest.raises(IntegrationError):
        integrate(lambda y: y**2, np.ones(1), 2.0)


def test_trajectory_requires_monotone_times():
    with pytest.raises(ValueError):
        Trajectory(np.array([0.0, 1.0, 0.5]), np.zeros((3, 2)))
    with pytest.raises(ValueError):
        Trajectory(np.array([0.0, 1.0]), np.zeros((3, 2)))


def test_strict_control_is_tighter_than_stock():
    a = random_modes(12, seed=3)
    t_eval = np.linspace(0, 40, 9)
    kw = dict(t_eval=t_eval, rtol=1e-9, atol=1e-12)
    fine = solve_ivp(lambda t, y: flow_rhs(y), (0, 40), a, method="DOP853", t_eval=t_eval, rtol=1e-13, atol=1e-14)
    stock = solve_ivp(lambda t, y: flow_rhs(y), (0, 40), a, method="DOP853", **kw)
    strict = solve_ivp(lambda t, y: flow_rhs(y), (0, 40), a, method=StrictDOP853, **kw)
    err_stock = np.max(np.abs(stock.y - fine.y))
    err_strict = np.max(np.abs(strict.y - fine.y))
    assert err_strict < err_stock
    assert err_strict < 40 * 1e-9


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_random_flow_conserves_charges(seed):
    traj = integrate(flow_rhs, random_modes(16, seed), 100.0, IntegratorConfig(sample_interval=5.0), monitor=charge_monitor)
    drift = conservation_drift(traj)
    assert max(drift.values()) <= 1e-9


def test_drift_floor_for_vanishing_charges():
    traj = Trajectory(np.array([0.0, 1.0]), np.zeros((2, 1)), {"Q": np.array([0.0, 1e-14])})
    assert conservation_drift(traj)["Q"] == pytest.approx(1e-2)


def test_real_snapshot_of_complex_system():
    traj = integrate(rotation, np.array([1.0, 2.0, 0.0]), 1.0)
    assert np.iscomplexobj(traj.states)
    assert np.allclose(traj.final, np.array([1.0, 2.0, 0.0]) * np.exp(-1j * W), atol=1e-9)
