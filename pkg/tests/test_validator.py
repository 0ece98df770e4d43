import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conflow import validator as val
from conflow.errors import DomainError
from conflow.integrate import IntegratorConfig, conservation_drift, integrate
from conflow.resonant import flow_rhs

from conftest import mode_arrays, random_modes


def test_tensor_entries():
    T = val.full_tensor(4)
    assert T[0, 0, 0, 0] == 1 and T[0, 0, 1, 1] == 1 and T[0, 0, 0, 1] == 0
    assert T.multiplicity.sum() == 4**4
    with pytest.raises(IndexError):
        T[0, 0, 0, 4]


def test_dense_tensor_symmetric():
    D = val.full_tensor(5).dense()
    for axes in [(1, 0, 2, 3), (2, 3, 0, 1), (0, 3, 2, 1), (3, 1, 2, 0)]:
        assert np.array_equal(D, D.transpose(axes))


@pytest.mark.parametrize("quad", [(0, 1, 2, 5), (3, 3, 4, 6), (1, 2, 2, 7)])
def test_tensor_spot_quadrature(quad):
    assert val.full_tensor(8)[quad] == pytest.approx(val.quadrature_coefficient(*quad), abs=1e-10)


def test_linear_limit_is_harmonic(monkeypatch):
    monkeypatch.setattr(val.kernels, "cubic_forcing", lambda c: np.zeros_like(c))
    c0, v0 = np.array([0.3, -0.1, 0.2]), np.array([0.0, 0.5, -0.4])
    w = np.arange(1, 4)
    traj = integrate(val.oscillator_rhs, np.concatenate([c0, v0]), 5.0, IntegratorConfig(sample_interval=0.5))
    exact = c0 * np.cos(np.outer(traj.times, w)) + v0 / w * np.sin(np.outer(traj.times, w))
    assert np.max(np.abs(traj.states[:, :3] - exact)) < 1e-9


def test_single_mode_frequency_shift():
    # hardening: omega ~ 1 + 3A^2/8 for amplitude A of the lowest mode
    A = 0.02
    traj = integrate(val.oscillator_rhs, np.array([A, 0.0]), 200.0, IntegratorConfig(sample_interval=0.05))
    c = traj.states[:, 0]
    idx = np.where((c[:-1] < 0) & (c[1:] >= 0))[0]
    cross = traj.times[idx] - c[idx] * (traj.times[idx + 1] - traj.times[idx]) / (c[idx + 1] - c[idx])
    omega = 2 * np.pi / np.mean(np.diff(cross))
    assert omega > 1
    assert omega - 1 == pytest.approx(3 * A**2 / 8, rel=1e-2)


@pytest.mark.slow
def test_energy_conservation():
    beta = 0.1 * np.pad(np.ones(2, dtype=complex), (0, 30))
    y0 = val.from_envelope(beta).pack()
    traj = integrate(val.oscillator_rhs, y0, 100.0, IntegratorConfig(sample_interval=1.0), monitor=val.field_monitor)
    assert conservation_drift(traj)["energy"] <= 1e-9


@given(mode_arrays(max_size=12), st.floats(-20, 20))
@settings(max_examples=50, deadline=None)
def test_envelope_round_trip(beta, t):
    fs = val.from_envelope(beta, t)
    assert np.allclose(val.to_envelope(fs, t), beta, atol=1e-14, rtol=1e-13)
    again = val.from_envelope(val.to_envelope(fs, t), t)
    assert np.allclose(again.c, fs.c, atol=1e-13) and np.allclose(again.cdot, fs.cdot, atol=1e-12)


@pytest.mark.parametrize("t", [0.0, 0.4, 3.0])
def test_pure_cosine_envelope(t):
    w = np.arange(1, 4)
    fs = val.FieldState(np.cos(w * t), -w * np.sin(w * t))
    assert np.allclose(val.to_envelope(fs, t), 0.5)


def test_averaged_rhs_relations():
    c = 0.7 + 0.2j
    assert np.allclose(val.averaged_rhs([c, 0]), [1.5j * abs(c) ** 2 * c, 0])
    a = np.ones(2, dtype=complex)
    assert np.allclose(val.averaged_rhs(a), -1.5 * flow_rhs(a))
    assert not np.any(val.averaged_rhs(np.zeros(3)))


def test_time_map():
    tau_end = 2 * np.pi / (np.sqrt(9 + 12) / 6) / 1.5
    assert val.time_map_deviation(np.ones(2), tau_end) <= 1e-8


def test_fast_average_keeps_resonant_terms():
    eps = 0.1
    beta = eps * np.pad(random_modes(6, 2), (0, 10))
    avg = val.fast_period_average(beta)
    assert np.max(np.abs(avg - val.averaged_rhs(beta))) <= 1e-3 * eps**3
    # a single instant is far from the average
    assert np.max(np.abs(val.envelope_forcing(beta, 0.3) - avg)) > 1e-2 * eps**3


def test_grid_evaluation():
    fs = val.FieldState(np.array([1.0, 0, 0]), np.zeros(3))
    v, phi = val.grid_evaluate(fs, np.array([np.pi / 2]))
    assert v[0] == pytest.approx(1.0)
    c = np.array([0.5, -0.2, 0.3, 0.1])
    fs = val.FieldState(c, np.zeros(4))
    v, phi = val.grid_evaluate(fs, np.array([0.0, np.pi]))
    assert np.allclose(v, 0, atol=1e-15)
    assert phi[0] == pytest.approx(np.sum(c * np.arange(1, 5)))
    x = np.linspace(0.1, 3.0, 7)
    v, phi = val.grid_evaluate(fs, x)
    assert np.allclose(phi * np.sin(x), v)


def test_odd_modes_reflection():
    c = np.array([0.0, 0.4, 0.0, -0.3, 0.0, 0.2])
    x = np.linspace(0.0, np.pi, 11)
    _, phi = val.grid_evaluate(val.FieldState(c, np.zeros(6)), x)
    _, phi_r = val.grid_evaluate(val.FieldState(c, np.zeros(6)), np.pi - x)
    assert np.allclose(phi, -phi_r, atol=1e-13)


def test_validate_zero_data():
    rep = val.validate_averaging(np.zeros(2), 0.1, horizon=0.05, N=4)
    assert rep.error == 0.0


def test_validate_small_run():
    rep = val.validate_averaging(np.ones(2), 0.2, horizon=0.5, N=16)
    assert 0 < rep.error < 10 * 0.2**3
    assert rep.energy_drift < 1e-10
    assert rep.tail_fraction < 1e-8


def test_validate_domain():
    with pytest.raises(DomainError):
        val.validate_averaging(np.ones(2), 0.3)
    with pytest.raises(ValueError):
        val.validate_averaging(np.ones(5), 0.1, N=3)


def test_tail_overflow_detected():
    with pytest.raises(val.TailOverflowError):
        val.validate_averaging(np.ones(3), 0.2, horizon=0.05, N=3)
